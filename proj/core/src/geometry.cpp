#include "geodid/geometry.hpp"

#include <type_traits>

#include "geodid/numeric.hpp"

namespace geodid {

namespace {

template <class P>
struct SpaceFor;
template <>
struct SpaceFor<QuantileCurve> {
  using type = WassersteinSpace;
};
template <>
struct SpaceFor<UnitCompositionPoint> {
  using type = SphereSpace;
};
template <>
struct SpaceFor<SymmetricMatrixPoint> {
  using type = FrobeniusSpace;
};

[[noreturn]] void mismatch(const SpacePoint& a, const SpacePoint& b) {
  throw SpaceMismatch(std::string("points live in different spaces: ") + to_string(space_of(a)) +
                      " vs " + to_string(space_of(b)));
}

void require_same_space(const SpacePoint& a, const SpacePoint& b) {
  if (a.index() != b.index()) mismatch(a, b);
}

}  // namespace

const char* to_string(SpaceId id) {
  switch (id) {
    case SpaceId::Wasserstein:
      return "wasserstein";
    case SpaceId::Sphere:
      return "sphere";
    case SpaceId::Frobenius:
      return "frobenius";
  }
  return "unknown";
}

SpaceId space_id_from_string(const std::string& name) {
  if (name == "wasserstein") return SpaceId::Wasserstein;
  if (name == "sphere") return SpaceId::Sphere;
  if (name == "frobenius" || name == "network" || name == "matrix") return SpaceId::Frobenius;
  throw InvalidArgument("unknown space '" + name + "'");
}

SpaceId space_of(const SpacePoint& p) noexcept { return static_cast<SpaceId>(p.index()); }

bool is_path_independent(SpaceId id) noexcept {
  switch (id) {
    case SpaceId::Wasserstein:
      return WassersteinSpace::path_independent;
    case SpaceId::Sphere:
      return SphereSpace::path_independent;
    case SpaceId::Frobenius:
      return FrobeniusSpace::path_independent;
  }
  return false;
}

Geodesic::Geodesic(SpacePoint start, SpacePoint end) : start_(std::move(start)), end_(std::move(end)) {
  require_same_space(start_, end_);
}

double distance(const SpacePoint& a, const SpacePoint& b) {
  require_same_space(a, b);
  return std::visit(
      [&](const auto& pa) -> double {
        using P = std::decay_t<decltype(pa)>;
        return SpaceFor<P>::type::distance(pa, std::get<P>(b));
      },
      a);
}

SpacePoint evaluate_geodesic(const Geodesic& g, double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw InvalidArgument("geodesic parameter " + std::to_string(t) + " outside [0, 1]");
  }
  return std::visit(
      [&](const auto& a) -> SpacePoint {
        using P = std::decay_t<decltype(a)>;
        return SpaceFor<P>::type::interpolate(a, std::get<P>(g.end()), t);
      },
      g.start());
}

SpacePoint transport(const SpacePoint& alpha, const SpacePoint& beta, const SpacePoint& omega,
                     WarningLog* log) {
  require_same_space(alpha, beta);
  require_same_space(alpha, omega);
  return std::visit(
      [&](const auto& a) -> SpacePoint {
        using P = std::decay_t<decltype(a)>;
        return SpaceFor<P>::type::transport(a, std::get<P>(beta), std::get<P>(omega), log);
      },
      alpha);
}

Geodesic concatenate(const Geodesic& first, const Geodesic& second) {
  if (distance(first.end(), second.start()) > kPointTolerance) {
    throw InvalidArgument("concatenation needs the first geodesic to end where the second starts");
  }
  return Geodesic(first.start(), second.end());
}

Geodesic reverse(const Geodesic& g) { return Geodesic(g.end(), g.start()); }

Geodesic geodesic_difference(const Geodesic& sub, const Geodesic& min, WarningLog* log) {
  require_same_space(sub.start(), min.start());
  return Geodesic(transport(sub.start(), sub.end(), min.start(), log), min.end());
}

double quotient_distance(const Geodesic& g1, const Geodesic& g2, const SpacePoint& reference) {
  require_same_space(g1.start(), g2.start());
  require_same_space(g1.start(), reference);
  return distance(transport(g1.start(), g1.end(), reference),
                  transport(g2.start(), g2.end(), reference));
}

double quotient_distance(const GeodesicClass& c1, const GeodesicClass& c2) {
  require_same_space(c1.reference_point, c2.reference_point);
  if (distance(c1.reference_point, c2.reference_point) > kPointTolerance) {
    throw InvalidArgument("geodesic classes were pinned to different reference points");
  }
  return quotient_distance(c1.representative, c2.representative, c1.reference_point);
}

}  // namespace geodid
