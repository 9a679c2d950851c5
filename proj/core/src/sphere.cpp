#include "geodid/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "geodid/numeric.hpp"

namespace geodid {

namespace {

constexpr double kTangentFloor = 1e-12;

void require_same_dimension(std::size_t a, std::size_t b) {
  if (a != b) {
    throw GridMismatch("sphere dimensions differ: " + std::to_string(a) + " vs " +
                       std::to_string(b));
  }
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
  return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

// Angle between unit vectors, accurate near 0 and pi.
double angle(std::span<const double> a, std::span<const double> b) {
  double diff = 0.0;
  double sum = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    diff += (a[j] - b[j]) * (a[j] - b[j]);
    sum += (a[j] + b[j]) * (a[j] + b[j]);
  }
  return 2.0 * std::atan2(std::sqrt(diff), std::sqrt(sum));
}

// Unit direction of b - (a'b) a.
std::vector<double> tangent_direction(std::span<const double> base, std::span<const double> toward,
                                      double& length) {
  const double ip = dot(base, toward);
  std::vector<double> v(base.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = toward[j] - ip * base[j];
  length = norm(v);
  if (length > 0.0) {
    for (double& x : v) x /= length;
  }
  return v;
}

UnitCompositionPoint rotate(std::span<const double> base, std::span<const double> direction,
                            double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  std::vector<double> out(base.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = c * base[j] + s * direction[j];
  return UnitCompositionPoint::normalized(std::move(out));
}

}  // namespace

UnitCompositionPoint::UnitCompositionPoint(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) {
    throw InvariantViolation("sphere.nonempty", "sphere point has no coordinates");
  }
  for (double x : coords_) {
    if (!std::isfinite(x)) throw InvariantViolation("sphere.finite", "sphere coordinate is not finite");
  }
  const double n = norm(coords_);
  if (std::abs(n - 1.0) > 1e-10) {
    throw InvariantViolation("sphere.unit_norm",
                             "sphere point has norm " + std::to_string(n) + ", expected 1");
  }
}

UnitCompositionPoint UnitCompositionPoint::normalized(std::vector<double> coords) {
  const double n = norm(coords);
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw InvariantViolation("sphere.unit_norm", "cannot normalize a zero or non-finite vector");
  }
  for (double& x : coords) x /= n;
  return UnitCompositionPoint(std::move(coords));
}

bool UnitCompositionPoint::in_orthant(double slack) const noexcept {
  return std::all_of(coords_.begin(), coords_.end(), [&](double x) { return x >= -slack; });
}

double sphere_distance(const UnitCompositionPoint& a, const UnitCompositionPoint& b) {
  require_same_dimension(a.dimension(), b.dimension());
  return angle(a.coords(), b.coords());
}

UnitCompositionPoint sphere_interpolate(const UnitCompositionPoint& a,
                                        const UnitCompositionPoint& b, double t) {
  require_same_dimension(a.dimension(), b.dimension());
  if (t == 0.0) return a;
  if (t == 1.0) return b;
  const double theta = angle(a.coords(), b.coords());
  if (theta <= kTangentFloor) return a;
  double length = 0.0;
  const auto dir = tangent_direction(a.coords(), b.coords(), length);
  if (length < kTangentFloor) {
    throw DegenerateTangent("geodesic between antipodal points is not unique");
  }
  return rotate(a.coords(), dir, theta * t);
}

UnitCompositionPoint sphere_transport(const UnitCompositionPoint& alpha,
                                      const UnitCompositionPoint& beta,
                                      const UnitCompositionPoint& omega, WarningLog* log) {
  require_same_dimension(alpha.dimension(), beta.dimension());
  require_same_dimension(alpha.dimension(), omega.dimension());
  const double theta = angle(alpha.coords(), beta.coords());
  if (theta <= kTangentFloor) return omega;

  // v_{alpha,beta} = beta - (alpha'beta) alpha, then projected at omega.
  const double ab = dot(alpha.coords(), beta.coords());
  std::vector<double> v(alpha.dimension());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = beta[j] - ab * alpha[j];
  const double wv = dot(omega.coords(), v);
  for (std::size_t j = 0; j < v.size(); ++j) v[j] -= wv * omega[j];
  const double vn = norm(v);
  if (vn < kTangentFloor) {
    throw DegenerateTangent("transport direction vanishes in the tangent space at omega");
  }
  for (double& x : v) x /= vn;

  auto out = rotate(omega.coords(), v, theta);
  if (log != nullptr && !out.in_orthant()) {
    const auto worst = *std::min_element(out.coords().begin(), out.coords().end());
    log->push_back({WarningKind::OrthantExit,
                    "transported point left the positive orthant (min coordinate " +
                        std::to_string(worst) + ")"});
  }
  return out;
}

std::vector<double> sphere_log(const UnitCompositionPoint& base, const UnitCompositionPoint& x) {
  require_same_dimension(base.dimension(), x.dimension());
  const double theta = angle(base.coords(), x.coords());
  std::vector<double> out(base.dimension(), 0.0);
  if (theta <= kTangentFloor) {
    // First-order: the chord is the tangent vector.
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = x[j] - base[j];
    return out;
  }
  double length = 0.0;
  const auto dir = tangent_direction(base.coords(), x.coords(), length);
  if (length < kTangentFloor) {
    throw NonConvergence("log map undefined: point is antipodal to the base point");
  }
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = theta * dir[j];
  return out;
}

UnitCompositionPoint sphere_exp(const UnitCompositionPoint& base, std::span<const double> tangent) {
  require_same_dimension(base.dimension(), tangent.size());
  const double len = norm(tangent);
  if (len == 0.0) return base;
  std::vector<double> dir(tangent.begin(), tangent.end());
  for (double& x : dir) x /= len;
  return rotate(base.coords(), dir, len);
}

UnitCompositionPoint embed_composition(std::span<const double> shares) {
  if (shares.empty()) throw InvariantViolation("composition.nonempty", "composition has no shares");
  CompensatedSum total;
  for (std::size_t j = 0; j < shares.size(); ++j) {
    if (!std::isfinite(shares[j])) {
      throw InvariantViolation("composition.finite",
                               "share " + std::to_string(j) + " is not finite");
    }
    if (shares[j] < -1e-8) {
      throw InvariantViolation("composition.nonnegative",
                               "share " + std::to_string(j) + " is negative");
    }
    total.add(shares[j]);
  }
  const double sum = total.value();
  if (std::abs(sum - 1.0) > 1e-8) {
    throw InvariantViolation("composition.sum_to_one",
                             "shares sum to " + std::to_string(sum) + ", expected 1");
  }
  std::vector<double> coords(shares.size());
  for (std::size_t j = 0; j < coords.size(); ++j) {
    coords[j] = std::sqrt(std::max(0.0, shares[j]) / sum);
  }
  return UnitCompositionPoint::normalized(std::move(coords));
}

std::vector<double> unembed(const UnitCompositionPoint& point) {
  std::vector<double> shares(point.dimension());
  for (std::size_t j = 0; j < shares.size(); ++j) shares[j] = point[j] * point[j];
  return shares;
}

}  // namespace geodid
