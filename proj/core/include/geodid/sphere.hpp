#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "geodid/error.hpp"

namespace geodid {

/// A point on the unit sphere S^{d-1}; compositional data live on its
/// positive orthant through the square-root embedding.
///
/// Unit norm (within 1e-10) is enforced on construction. Orthant membership
/// is checked by `embed_composition` and reported by `in_orthant`, since
/// transported points may leave the orthant.
class UnitCompositionPoint {
 public:
  UnitCompositionPoint() = default;
  explicit UnitCompositionPoint(std::vector<double> coords);

  /// Divides by the Euclidean norm first.
  static UnitCompositionPoint normalized(std::vector<double> coords);

  std::size_t dimension() const noexcept { return coords_.size(); }
  std::span<const double> coords() const noexcept { return coords_; }
  double operator[](std::size_t j) const { return coords_[j]; }

  bool in_orthant(double slack = 1e-12) const noexcept;

  friend bool operator==(const UnitCompositionPoint&, const UnitCompositionPoint&) = default;

 private:
  std::vector<double> coords_;
};

/// Geodesic (great-circle) distance in [0, pi].
double sphere_distance(const UnitCompositionPoint& a, const UnitCompositionPoint& b);

/// Slerp along the minimizing great circle. Throws DegenerateTangent for
/// antipodal endpoints.
UnitCompositionPoint sphere_interpolate(const UnitCompositionPoint& a,
                                        const UnitCompositionPoint& b, double t);

/// Rotates omega along the direction of the alpha -> beta geodesic by its
/// length: cos(theta) omega + sin(theta) v / |v|, with v the projection of
/// beta - (alpha'beta) alpha onto the tangent space at omega.
///
/// Appends an OrthantExit warning to `log` when the result leaves the
/// positive orthant; the point is returned regardless.
UnitCompositionPoint sphere_transport(const UnitCompositionPoint& alpha,
                                      const UnitCompositionPoint& beta,
                                      const UnitCompositionPoint& omega,
                                      WarningLog* log = nullptr);

/// Riemannian log map at `base`. Throws NonConvergence if x is antipodal.
std::vector<double> sphere_log(const UnitCompositionPoint& base, const UnitCompositionPoint& x);
UnitCompositionPoint sphere_exp(const UnitCompositionPoint& base, std::span<const double> tangent);

/// Component-wise square root of a composition. Shares must be >= -1e-8 and
/// sum to 1 within 1e-8; they are renormalized before the root.
UnitCompositionPoint embed_composition(std::span<const double> shares);

/// Inverse of the embedding: squared coordinates.
std::vector<double> unembed(const UnitCompositionPoint& point);

}  // namespace geodid
