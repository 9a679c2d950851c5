#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "geodid/error.hpp"
#include "geodid/numeric.hpp"
#include "geodid/wasserstein.hpp"
#include "oracles.hpp"

namespace geodid {
namespace {

using testing::gaussian_quantiles_oracle;
using testing::sup_norm_interior;

TEST(QuantileCurve, RejectsDecreasingValues) {
  try {
    QuantileCurve({0.0, 1.0, 0.5});
    FAIL();
  } catch (const InvariantViolation& e) {
    EXPECT_EQ(e.rule(), "quantile.monotone");
  }
  EXPECT_THROW(QuantileCurve({0.0, std::nan("")}), InvariantViolation);
  EXPECT_THROW(QuantileCurve(std::vector<double>{}), InvariantViolation);
}

TEST(QuantileCurve, RepairIsIsotonicProjection) {
  const auto q = QuantileCurve::repaired({0.0, 2.0, 1.0, 3.0});
  EXPECT_EQ(std::vector<double>(q.values().begin(), q.values().end()),
            (std::vector<double>{0.0, 1.5, 1.5, 3.0}));
}

TEST(QuantileCurve, GaussianMatchesOracle) {
  const auto q = QuantileCurve::gaussian(1.0, 2.0, 200);
  const auto ref = gaussian_quantiles_oracle(1.0, 2.0, 200);
  EXPECT_LT(sup_norm_interior(q.values(), ref, 0), 2e-9);
}

TEST(W2Distance, Examples) {
  const auto a = QuantileCurve::gaussian(0, 1, 1000);
  EXPECT_EQ(w2_distance(a, a), 0.0);
  EXPECT_NEAR(w2_distance(a, QuantileCurve::gaussian(1, 1, 1000)), 1.0, 1e-6);
  EXPECT_NEAR(w2_distance(a, QuantileCurve::gaussian(0, 2, 1000)), 1.0, 1e-3);
}

TEST(W2Distance, GridMismatch) {
  EXPECT_THROW(w2_distance(QuantileCurve::gaussian(0, 1, 10), QuantileCurve::gaussian(0, 1, 11)),
               GridMismatch);
}

TEST(Interpolate, LinearInQuantiles) {
  const auto q0 = QuantileCurve::gaussian(0, 1, 100);
  const auto q1 = QuantileCurve::gaussian(1, 1, 100);
  const auto mid = wasserstein_interpolate(q0, q1, 0.3);
  for (std::size_t k = 0; k < 100; ++k) EXPECT_NEAR(mid[k], 0.3 + q0[k], 1e-12);
  EXPECT_EQ(wasserstein_interpolate(q0, q1, 0.0), q0);
  EXPECT_EQ(wasserstein_interpolate(q0, q1, 1.0), q1);
}

TEST(Transport, EndpointAndIdentity) {
  testing::Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    const auto a = testing::random_curve(rng);
    const auto b = testing::random_curve(rng);
    const auto w = testing::random_curve(rng);
    const auto ab = wasserstein_transport(a, b, a);
    const auto aa = wasserstein_transport(a, a, w);
    for (std::size_t k = 0; k < a.grid_size(); ++k) {
      EXPECT_NEAR(ab[k], b[k], 1e-10);
      EXPECT_NEAR(aa[k], w[k], 1e-10);
    }
  }
}

TEST(Transport, GaussianComposition) {
  // F_b^{-1} o F_a o F_w^{-1} with a = N(0,1), b = N(1,1), w = N(0,4) is N(1,4).
  constexpr std::size_t M = 1000;
  const auto out = wasserstein_transport(QuantileCurve::gaussian(0, 1, M), QuantileCurve::gaussian(1, 1, M),
                                         QuantileCurve::gaussian(0, 2, M));
  const auto ref = gaussian_quantiles_oracle(1.0, 2.0, M);
  // Interior: the points where w stays inside the support of a's grid.
  EXPECT_LT(sup_norm_interior(out.values(), ref, M / 10), 1e-3);
}

TEST(Transport, LocationFamilyShifts) {
  const auto a = QuantileCurve::gaussian(0, 1, 100);
  std::vector<double> shifted(a.values().begin(), a.values().end());
  for (double& x : shifted) x += 0.7;
  const QuantileCurve b(shifted);
  // Exact wherever omega stays inside alpha's grid range.
  const auto w = QuantileCurve::gaussian(0.2, 0.5, 100);
  const auto out = wasserstein_transport(a, b, w);
  for (std::size_t k = 0; k < 100; ++k) EXPECT_NEAR(out[k], w[k] + 0.7, 1e-12);

  // Outside it, F_alpha clamps and the tails land on beta's extremes.
  const auto wide = QuantileCurve::gaussian(0.0, 3.0, 100);
  const auto clamped = wasserstein_transport(a, b, wide);
  EXPECT_EQ(clamped[0], b[0]);
  EXPECT_EQ(clamped[99], b[99]);
  EXPECT_NEAR(clamped[50], wide[50] + 0.7, 1e-12);
}

TEST(Transport, PointMassSourceIsDegenerate) {
  const QuantileCurve point(std::vector<double>(10, 1.0));
  const auto q = QuantileCurve::gaussian(0, 1, 10);
  EXPECT_THROW(wasserstein_transport(point, q, q), DegenerateTransport);
}

TEST(QuantileFromSamples, TwoSamplesHandComputed) {
  // Type-7: h = (n-1) p; p = 0.25, 0.75 on {0, 1}.
  const std::vector<double> s{1.0, 0.0};
  const auto q = quantile_from_samples(s, 2);
  EXPECT_DOUBLE_EQ(q[0], 0.25);
  EXPECT_DOUBLE_EQ(q[1], 0.75);
}

TEST(QuantileFromSamples, ConstantAndLinear) {
  const std::vector<double> c(20, 3.5);
  const auto flat = quantile_from_samples(c, 7);
  for (double x : flat.values()) EXPECT_EQ(x, 3.5);

  std::vector<double> s(100);
  std::iota(s.begin(), s.end(), 1.0);
  const auto q = quantile_from_samples(s, 100);
  for (std::size_t k = 0; k < 100; ++k) {
    // Brute force: rank-interpolated sorted sample at 99 p_k.
    const double p = (k + 0.5) / 100.0;
    EXPECT_NEAR(q[k], 1.0 + 99.0 * p, 1e-12);
  }
  EXPECT_THROW(quantile_from_samples(std::vector<double>{1.0}, 5), InvalidArgument);
}

TEST(QuantileCurve, CdfQuantileRoundTrip) {
  testing::Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    const auto q = testing::random_curve(rng, 64);
    for (std::size_t k = 0; k < q.grid_size(); ++k) {
      EXPECT_NEAR(q.cdf(q[k]), QuantileCurve::grid_probability(k, q.grid_size()), 1e-8);
      EXPECT_NEAR(q.quantile(q.cdf(q[k])), q[k], 1e-8);
    }
  }
}

}  // namespace
}  // namespace geodid
