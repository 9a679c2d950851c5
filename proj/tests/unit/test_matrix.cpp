#include <gtest/gtest.h>

#include <cmath>

#include "geodid/error.hpp"
#include "geodid/matrix_space.hpp"
#include "oracles.hpp"

namespace geodid {
namespace {

SymmetricMatrixPoint free(Eigen::MatrixXd m) { return SymmetricMatrixPoint(std::move(m), MatrixKind::Free); }

TEST(Frobenius, Examples) {
  testing::Rng rng(1);
  const auto a = testing::random_symmetric(rng);
  EXPECT_EQ(frobenius_distance(a, a), 0.0);
  EXPECT_NEAR(frobenius_distance(free(Eigen::MatrixXd::Zero(3, 3)), free(Eigen::MatrixXd::Identity(3, 3))),
              std::sqrt(3.0), 1e-15);
}

TEST(Frobenius, Interpolation) {
  testing::Rng rng(4);
  const auto b = testing::random_symmetric(rng);
  const auto mid = matrix_interpolate(free(Eigen::MatrixXd::Zero(3, 3)), b, 0.5);
  EXPECT_TRUE(mid.entries().isApprox(b.entries() / 2, 1e-15));
}

TEST(Frobenius, TransportIsTranslation) {
  testing::Rng rng(6);
  const auto b = testing::random_symmetric(rng);
  const auto w = testing::random_symmetric(rng);
  const auto out = matrix_transport(free(Eigen::MatrixXd::Zero(3, 3)), b, w);
  EXPECT_TRUE(out.entries().isApprox(w.entries() + b.entries(), 1e-15));
  EXPECT_EQ(matrix_transport(b, b, w).entries(), w.entries());
}

TEST(Frobenius, TransportIsometry) {
  testing::Rng rng(8);
  for (int i = 0; i < 1000; ++i) {
    const auto a = testing::random_symmetric(rng), b = testing::random_symmetric(rng);
    const auto w = testing::random_symmetric(rng), z = testing::random_symmetric(rng);
    EXPECT_NEAR(frobenius_distance(matrix_transport(a, b, w), matrix_transport(a, b, z)),
                frobenius_distance(w, z), 1e-12);
  }
}

// Two-block SBM population Laplacian built entry by entry:
// off-diagonal (j,k) = -p_{l(j) l(k)} * weight, diagonal = minus the row sum.
Eigen::MatrixXd sbm_mean(double weight, double p_in, double p_out, int m1, int m) {
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(m, m);
  for (int j = 0; j < m; ++j) {
    for (int k = 0; k < m; ++k) {
      if (j == k) continue;
      const bool same = (j < m1) == (k < m1);
      l(j, k) = -(same ? p_in : p_out) * weight;
    }
  }
  for (int j = 0; j < m; ++j) l(j, j) = -l.row(j).sum();
  return l;
}

TEST(Frobenius, SbmMeansTransport) {
  // Unit parameters: nu_{d,t} weight = 1 + t + d + d t.
  const auto lap = [](double w) {
    return SymmetricMatrixPoint(sbm_mean(w, 0.5, 0.2, 5, 10), MatrixKind::Laplacian);
  };
  const auto nu00 = lap(1), nu01 = lap(2), nu10 = lap(2);
  WarningLog log;
  const auto cf = matrix_transport(nu00, nu01, nu10, &log);
  EXPECT_TRUE(log.empty());
  EXPECT_NEAR(cf.entries()(0, 1), -3 * 0.5, 1e-14);
  EXPECT_NEAR(cf.entries()(0, 7), -3 * 0.2, 1e-14);
  EXPECT_NEAR(frobenius_distance(nu00, nu01), (sbm_mean(1, 0.5, 0.2, 5, 10) - sbm_mean(2, 0.5, 0.2, 5, 10)).norm(),
              1e-14);
}

TEST(Frobenius, KindViolationWarning) {
  Eigen::MatrixXd c = Eigen::MatrixXd::Identity(2, 2);
  const SymmetricMatrixPoint a(c, MatrixKind::Covariance), w(c * 0.1, MatrixKind::Covariance);
  const SymmetricMatrixPoint b(Eigen::MatrixXd::Zero(2, 2), MatrixKind::Covariance);
  WarningLog log;
  const auto out = matrix_transport(a, b, w, &log);
  EXPECT_EQ(out.kind(), MatrixKind::Covariance);
  ASSERT_EQ(log.size(), 1u);
  EXPECT_EQ(log[0].kind, WarningKind::KindViolation);
}

TEST(Laplacian, FromAdjacency) {
  EXPECT_EQ(laplacian_from_adjacency(Eigen::MatrixXd::Zero(3, 3)).entries(), Eigen::MatrixXd::Zero(3, 3));
  Eigen::MatrixXd w(2, 2);
  w << 0, 2.5, 2.5, 0;
  Eigen::MatrixXd expected(2, 2);
  expected << 2.5, -2.5, -2.5, 2.5;
  EXPECT_EQ(laplacian_from_adjacency(w).entries(), expected);

  Eigen::MatrixXd tri = Eigen::MatrixXd::Ones(3, 3) - Eigen::MatrixXd::Identity(3, 3);
  const auto l = laplacian_from_adjacency(tri);
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) EXPECT_EQ(l.entries()(j, k), j == k ? 2.0 : -1.0);
  }
  EXPECT_EQ(l.kind(), MatrixKind::Laplacian);
}

TEST(Laplacian, RejectsBadAdjacency) {
  Eigen::MatrixXd w = Eigen::MatrixXd::Ones(2, 2);
  EXPECT_THROW(laplacian_from_adjacency(w), InvariantViolation);
  w << 0, -1, -1, 0;
  EXPECT_THROW(laplacian_from_adjacency(w), InvariantViolation);
}

TEST(SymmetricMatrixPoint, Validation) {
  Eigen::MatrixXd a(2, 2);
  a << 1, 2, 3, 1;
  EXPECT_THROW(free(a), InvariantViolation);
  a << 1, 2, 2, 1;  // indefinite
  EXPECT_THROW(SymmetricMatrixPoint(a, MatrixKind::Covariance), InvariantViolation);
  EXPECT_THROW(SymmetricMatrixPoint(a, MatrixKind::Laplacian), InvariantViolation);
  EXPECT_THROW(frobenius_distance(free(a), free(Eigen::MatrixXd::Zero(3, 3))), GridMismatch);
}

}  // namespace
}  // namespace geodid
