#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "kreinlab/errors.hpp"
#include "kreinlab/random.hpp"
#include "test_util.hpp"

namespace kreinlab {
namespace {

using test::column;
using test::diag;
using test::real_matrix;

const TolerancePolicy kTol{};

TEST(RangeBasis, IdentityIsItsOwnBasis) {
  const CMatrix b = orthonormal_range_basis(CMatrix::Identity(2, 2), kTol);
  ASSERT_EQ(b.cols(), 2);
  EXPECT_TRUE(same_subspace(b, CMatrix::Identity(2, 2), 1e-14));
}

TEST(RangeBasis, ColumnIsNormalized) {
  const CMatrix b = orthonormal_range_basis(column({3, 4}), kTol);
  ASSERT_EQ(b.cols(), 1);
  // Equal to (0.6, 0.8) up to a unit phase.
  const Complex phase = b(0, 0) / 0.6;
  EXPECT_NEAR(std::abs(phase), 1.0, 1e-14);
  EXPECT_NEAR(std::abs(b(1, 0) - 0.8 * phase), 0.0, 1e-14);
}

TEST(RangeBasis, ZeroMatrixHasEmptyBasis) {
  const CMatrix b = orthonormal_range_basis(CMatrix::Zero(3, 3), kTol);
  EXPECT_EQ(b.rows(), 3);
  EXPECT_EQ(b.cols(), 0);
}

TEST(NullspaceBasis, Examples) {
  EXPECT_EQ(nullspace_basis(CMatrix::Identity(3, 3), kTol).cols(), 0);
  const CMatrix n = nullspace_basis(real_matrix({{1, 1}}), kTol);
  ASSERT_EQ(n.cols(), 1);
  EXPECT_TRUE(same_subspace(n, column({1, -1}) / std::sqrt(2.0), 1e-14));
  EXPECT_EQ(nullspace_basis(CMatrix::Zero(4, 4), kTol).cols(), 4);
}

TEST(IntersectAndSum, CoordinateExamples) {
  const CMatrix e1 = column({1, 0, 0});
  const CMatrix e12 = real_matrix({{1, 0}, {0, 1}, {0, 0}});
  const CMatrix meet = intersect(e1, e12, kTol);
  ASSERT_EQ(meet.cols(), 1);
  EXPECT_TRUE(same_subspace(meet, e1, 1e-14));
  EXPECT_EQ(sum_span(e1, column({0, 1, 0}), kTol).cols(), 2);
  const CMatrix a = column({1, 1}) / std::sqrt(2.0);
  const CMatrix b = column({1, -1}) / std::sqrt(2.0);
  EXPECT_EQ(intersect(a, b, kTol).cols(), 0);
}

TEST(PrincipalAngles, HandComputedCases) {
  const CMatrix e1 = column({1, 0});
  EXPECT_NEAR(principal_angles(e1, e1).front(), 0.0, 1e-15);
  EXPECT_NEAR(principal_angles(e1, column({0, 1})).front(), std::numbers::pi / 2, 1e-15);
  EXPECT_NEAR(principal_angles(e1, column({1, 1}) / std::sqrt(2.0)).front(), std::numbers::pi / 4, 1e-15);
}

TEST(PrincipalAngles, SmallAngleKeepsRelativeAccuracy) {
  const double theta = 1e-9;
  const CMatrix tilted = column({std::cos(theta), std::sin(theta)});
  const double got = principal_angles(column({1, 0}), tilted).front();
  EXPECT_NEAR(got / theta, 1.0, 1e-6);
}

TEST(HermitianEig, DiagonalSignature) {
  const HermitianEig e = hermitian_eig(diag({1, -1}));
  ASSERT_EQ(e.values.size(), 2);
  EXPECT_DOUBLE_EQ(e.values(0), -1.0);
  EXPECT_DOUBLE_EQ(e.values(1), 1.0);
}

TEST(HermitianEig, RejectsNonHermitian) {
  try {
    hermitian_eig(real_matrix({{0, 1}, {0, 0}}));
    FAIL() << "expected NotHermitian";
  } catch (const KreinError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNotHermitian);
  }
}

TEST(LowrankNorm, MatchesDenseProduct) {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = rng.index(5, 40);
    const Index k = rng.index(1, 4);
    const CMatrix x = rng.gaussian(n, k);
    const CMatrix m = rng.gaussian(k, k);
    const CMatrix y = rng.gaussian(n, k);
    const double dense = operator_norm(x * m * y.adjoint());
    EXPECT_NEAR(lowrank_norm(x, m, y), dense, 1e-12 * dense);
  }
}

// Regression: divide-and-conquer SVD lost a singular value on this kind of
// input (a prefix sum of a random normal family).
TEST(ThinSvd, ReconstructsSumsOfNormalProjections) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Rng rng(seed);
    const Index n = rng.index(8, 30);
    const KreinSpace space = random_space(rng, n, rng.index(1, n - 1));
    std::vector<Index> blocks;
    for (Index left = n; left > 0 && blocks.size() < 8;) {
      const Index s = rng.index(1, std::min<Index>(left, 4));
      blocks.push_back(s);
      left -= s;
    }
    CMatrix sum = CMatrix::Zero(n, n);
    for (const ProjectionOp& q : random_normal_family(rng, space, blocks)) sum += q.matrix();
    const Svd svd = thin_svd(sum);
    const CMatrix back = svd.u * svd.sigma.cast<Complex>().asDiagonal() * svd.v.adjoint();
    EXPECT_LE((back - sum).norm(), 1e-12 * (1.0 + sum.norm())) << "seed " << seed;
  }
}

TEST(ThinSvd, LargeMatrixPathReconstructs) {
  Rng rng(5);
  const CMatrix a = rng.gaussian(200, 12) * rng.gaussian(12, 150);
  const Svd svd = thin_svd(a);
  const CMatrix back = svd.u * svd.sigma.cast<Complex>().asDiagonal() * svd.v.adjoint();
  EXPECT_LE((back - a).norm(), 1e-10 * a.norm());
  EXPECT_EQ(numerical_rank(a, kTol), 12);
}

TEST(Tolerance, ThresholdScalesWithShapeAndNorm) {
  const TolerancePolicy tol{1e-10};
  EXPECT_DOUBLE_EQ(tol.threshold(3, 7, 2.0), 7 * 1e-10 * 2.0);
  EXPECT_DOUBLE_EQ(tol.unit_threshold(5, 2), 5e-10);
}

TEST(DecisionMonitor, CountsNearAndOverriddenDecisions) {
  DecisionMonitor::reset();
  DecisionMonitor::note(1e-17, 1e-11);
  DecisionMonitor::note(0.5, 1e-11);
  EXPECT_EQ(DecisionMonitor::near_count(), 0u);
  DecisionMonitor::note(5e-11, 1e-11);
  EXPECT_EQ(DecisionMonitor::near_count(), 1u);
  // A coarse policy zeroes 1e-5, which the default would keep.
  DecisionMonitor::reset(1e-2);
  DecisionMonitor::note(1e-5, 1e-2);
  EXPECT_EQ(DecisionMonitor::near_count(), 1u);
  DecisionMonitor::note(1e-16, 1e-2);
  EXPECT_EQ(DecisionMonitor::near_count(), 1u);
  DecisionMonitor::reset();
}

}  // namespace
}  // namespace kreinlab
