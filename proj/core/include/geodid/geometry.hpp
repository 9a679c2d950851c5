#pragma once

#include <concepts>
#include <string>
#include <variant>

#include "geodid/error.hpp"
#include "geodid/matrix_space.hpp"
#include "geodid/sphere.hpp"
#include "geodid/wasserstein.hpp"

namespace geodid {

enum class SpaceId { Wasserstein, Sphere, Frobenius };

const char* to_string(SpaceId id);
SpaceId space_id_from_string(const std::string& name);

/// Contract shared by the backends: a unique geodesic space with a
/// closed-form geodesic and a geodesic transport map.
template <class S>
concept GeodesicSpace = requires(const typename S::Point& p, double t, WarningLog* log) {
  { S::id } -> std::convertible_to<SpaceId>;
  { S::path_independent } -> std::convertible_to<bool>;
  { S::distance(p, p) } -> std::same_as<double>;
  { S::interpolate(p, p, t) } -> std::same_as<typename S::Point>;
  { S::transport(p, p, p, log) } -> std::same_as<typename S::Point>;
};

struct WassersteinSpace {
  using Point = QuantileCurve;
  static constexpr SpaceId id = SpaceId::Wasserstein;
  static constexpr bool path_independent = true;
  static double distance(const Point& a, const Point& b) { return w2_distance(a, b); }
  static Point interpolate(const Point& a, const Point& b, double t) {
    return wasserstein_interpolate(a, b, t);
  }
  static Point transport(const Point& a, const Point& b, const Point& w, WarningLog*) {
    return wasserstein_transport(a, b, w);
  }
};

struct SphereSpace {
  using Point = UnitCompositionPoint;
  static constexpr SpaceId id = SpaceId::Sphere;
  static constexpr bool path_independent = false;
  static double distance(const Point& a, const Point& b) { return sphere_distance(a, b); }
  static Point interpolate(const Point& a, const Point& b, double t) {
    return sphere_interpolate(a, b, t);
  }
  static Point transport(const Point& a, const Point& b, const Point& w, WarningLog* log) {
    return sphere_transport(a, b, w, log);
  }
};

struct FrobeniusSpace {
  using Point = SymmetricMatrixPoint;
  static constexpr SpaceId id = SpaceId::Frobenius;
  static constexpr bool path_independent = true;
  static double distance(const Point& a, const Point& b) { return frobenius_distance(a, b); }
  static Point interpolate(const Point& a, const Point& b, double t) {
    return matrix_interpolate(a, b, t);
  }
  static Point transport(const Point& a, const Point& b, const Point& w, WarningLog* log) {
    return matrix_transport(a, b, w, log);
  }
};

static_assert(GeodesicSpace<WassersteinSpace>);
static_assert(GeodesicSpace<SphereSpace>);
static_assert(GeodesicSpace<FrobeniusSpace>);

/// Alternative order matches SpaceId.
using SpacePoint = std::variant<QuantileCurve, UnitCompositionPoint, SymmetricMatrixPoint>;

SpaceId space_of(const SpacePoint& p) noexcept;

/// True when transport composes along intermediate points
/// (Gamma_{z,b} o Gamma_{a,z} == Gamma_{a,b}).
bool is_path_independent(SpaceId id) noexcept;

/// The constant-speed geodesic between two points, stored by its endpoints.
class Geodesic {
 public:
  /// Throws SpaceMismatch when the endpoints live in different spaces.
  Geodesic(SpacePoint start, SpacePoint end);

  const SpacePoint& start() const noexcept { return start_; }
  const SpacePoint& end() const noexcept { return end_; }
  SpaceId space() const noexcept { return space_of(start_); }

 private:
  SpacePoint start_;
  SpacePoint end_;
};

/// A geodesic's equivalence class, pinned to the reference point used to
/// measure it.
struct GeodesicClass {
  Geodesic representative;
  SpacePoint reference_point;
};

double distance(const SpacePoint& a, const SpacePoint& b);

/// Throws InvalidArgument for t outside [0, 1].
SpacePoint evaluate_geodesic(const Geodesic& g, double t);

SpacePoint transport(const SpacePoint& alpha, const SpacePoint& beta, const SpacePoint& omega,
                     WarningLog* log = nullptr);

/// Concatenation gamma_{a,z} + gamma_{z,b} = gamma_{a,b}; the inner
/// endpoints must agree within kPointTolerance.
Geodesic concatenate(const Geodesic& first, const Geodesic& second);

Geodesic reverse(const Geodesic& g);

/// Aligns `sub` with the start of `min` by transport and returns
/// gamma_{Gamma_{sub}(min.start), min.end}.
Geodesic geodesic_difference(const Geodesic& sub, const Geodesic& min, WarningLog* log = nullptr);

/// d(Gamma_{g1}(reference), Gamma_{g2}(reference)).
double quotient_distance(const Geodesic& g1, const Geodesic& g2, const SpacePoint& reference);

/// Same metric on classes; throws InvalidArgument if the two classes carry
/// different reference points.
double quotient_distance(const GeodesicClass& c1, const GeodesicClass& c2);

}  // namespace geodid
