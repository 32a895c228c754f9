#include <gtest/gtest.h>

#include <cmath>

#include "kreinlab/random.hpp"
#include "test_util.hpp"

namespace kreinlab {
namespace {

using test::column;
using test::dist;
using test::kind_of;
using test::real_matrix;

KreinSpace four() { return KreinSpace::diagonal({1, -1, 1, -1}); }

// Selfadjoint projections onto span{(cosh t, sinh t)} placed in consecutive 2x2 blocks.
std::vector<ProjectionOp> cosh_family(const KreinSpace& space, const std::vector<double>& ts) {
  std::vector<ProjectionOp> out;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    CMatrix v = CMatrix::Zero(space.dim(), 1);
    v(2 * k, 0) = std::cosh(ts[k]);
    v(2 * k + 1, 0) = std::sinh(ts[k]);
    out.push_back(selfadjoint_projection(Subspace::span_of(space, v)));
  }
  return out;
}

CMatrix hyperbolic(double t) {
  return real_matrix({{std::cosh(t), std::sinh(t)}, {std::sinh(t), std::cosh(t)}});
}

TEST(RegularFamily, CoordinateProjections) {
  const KreinSpace e = KreinSpace::euclidean(4);
  std::vector<ProjectionOp> es;
  for (Index k = 0; k < 4; ++k) {
    CMatrix p = CMatrix::Zero(4, 4);
    p(k, k) = 1.0;
    es.push_back(ProjectionOp::from_matrix(e, p));
  }
  const RegularFamilyReport r = analyze_regular_family(e, es);
  EXPECT_NEAR(r.c.value, 1.0, 1e-14);
  EXPECT_NEAR(r.c1, 1.0, 1e-12);
  EXPECT_NEAR(r.c2, 1.0, 1e-12);
  EXPECT_TRUE(r.flags.c1 && r.flags.c2 && r.flags.c3 && r.flags.c5);
  EXPECT_TRUE(r.flags_agree);
}

TEST(RegularFamily, CoshBlocks) {
  const KreinSpace space = four();
  const RegularFamilyReport r = analyze_regular_family(space, cosh_family(space, {0.0, 1.0}));
  EXPECT_GE(r.c.value, std::cosh(2.0) - 1e-12);
  EXPECT_GE(r.c.value, 3.76);
  EXPECT_TRUE(r.flags.c1 && r.flags.c2 && r.flags.c3 && r.flags.c5);
  // The two block vectors are Euclidean-orthogonal, so the frame bounds are both 1.
  EXPECT_NEAR(r.c1, 1.0, 1e-12);
  EXPECT_NEAR(r.c2, 1.0, 1e-12);
  ASSERT_TRUE(r.p_sum.has_value());
  EXPECT_TRUE(r.p_sum->flags().j_selfadjoint);
}

TEST(RegularFamily, SingleMember) {
  Rng rng(17);
  const KreinSpace space = random_space(rng, 5, 2);
  const std::vector<ProjectionOp> es = random_regular_family(rng, space, {2});
  const RegularFamilyReport r = analyze_regular_family(space, es);
  EXPECT_NEAR(r.c.value, es[0].norm(), 1e-12 * es[0].norm());
  EXPECT_NEAR(r.c1, 1.0, 1e-10);
  EXPECT_NEAR(r.c2, 1.0, 1e-10);
  EXPECT_TRUE(r.flags_agree);
}

TEST(RegularFamily, FrameInequalityOnRandomVectors) {
  Rng rng(23);
  const KreinSpace space = random_space(rng, 9, 4);
  const std::vector<ProjectionOp> es = random_regular_family(rng, space, {1, 2, 2});
  const RegularFamilyReport r = analyze_regular_family(space, es);
  const CMatrix span = orthonormal_range_basis(r.p_sum->matrix(), {});
  for (int i = 0; i < 100; ++i) {
    const CVector f = span * rng.gaussian(span.cols(), 1);
    double energy = 0.0;
    for (const ProjectionOp& e : es) energy += (e.matrix() * f).squaredNorm();
    const double f2 = f.squaredNorm();
    EXPECT_GE(energy, r.c1 * f2 - 1e-9 * f2);
    EXPECT_LE(energy, r.c2 * f2 + 1e-9 * f2);
  }
}

TEST(RegularFamily, RejectsNonOrthogonalMembers) {
  const KreinSpace space = KreinSpace::diagonal({1, 1});
  const ProjectionOp a = selfadjoint_projection(Subspace::span_of(space, column({1, 0})));
  const ProjectionOp b = selfadjoint_projection(Subspace::span_of(space, column({1, 1})));
  EXPECT_EQ(kind_of([&] { analyze_regular_family(space, {a, b}); }), ErrorKind::kNotOrthogonalFamily);
}

TEST(RegularFamily, RejectsNonSelfadjointMembers) {
  const KreinSpace space = KreinSpace::euclidean(2);
  const ProjectionOp p = ProjectionOp::from_matrix(space, real_matrix({{1, 1}, {0, 0}}));
  EXPECT_EQ(kind_of([&] { analyze_regular_family(space, {p}); }), ErrorKind::kNotSelfadjointFamily);
}

TEST(Similarity, ModuleExamples) {
  const KreinSpace e = KreinSpace::euclidean(2);
  const ProjectionOp herm = ProjectionOp::from_matrix(e, 0.5 * real_matrix({{1, 1}, {1, 1}}));
  EXPECT_TRUE(verify_similarity_condition({herm}, CMatrix::Identity(2, 2)));

  const KreinSpace space = four();
  const std::vector<double> ts = {0.0, 1.0};
  CMatrix x = CMatrix::Zero(4, 4);
  x.block(0, 0, 2, 2) = hyperbolic(-ts[0]);
  x.block(2, 2, 2, 2) = hyperbolic(-ts[1]);
  EXPECT_TRUE(verify_similarity_condition(cosh_family(space, ts), x));

  const ProjectionOp oblique = ProjectionOp::from_matrix(e, real_matrix({{1, 1}, {0, 0}}));
  EXPECT_FALSE(verify_similarity_condition({oblique}, CMatrix::Identity(2, 2)));
}

TEST(Similarity, SingularXThrows) {
  const KreinSpace e = KreinSpace::euclidean(2);
  const ProjectionOp p = ProjectionOp::from_matrix(e, test::diag({1, 0}));
  EXPECT_EQ(kind_of([&] { verify_similarity_condition({p}, test::diag({1, 0})); }), ErrorKind::kSingularX);
}

TEST(NetLimit, ConstantNet) {
  const KreinSpace space = KreinSpace::diagonal({1, -1});
  const ProjectionOp p = normal_projection(Subspace::span_of(space, column({1, 1})));
  const NetLimit lim = net_limit(NetOfProjections::build({p, p, p}));
  EXPECT_LE(dist(lim.limit.matrix(), p.matrix()), 1e-14);
  EXPECT_TRUE(lim.range_identity && lim.kernel_identity);
  EXPECT_TRUE(lim.all_normal && lim.limit_normal);
}

TEST(NetLimit, NestedCoordinateProjections) {
  const KreinSpace e = KreinSpace::euclidean(5);
  std::vector<ProjectionOp> members;
  for (Index d = 1; d <= 3; ++d) {
    CMatrix p = CMatrix::Zero(5, 5);
    for (Index i = 0; i < d; ++i) p(i, i) = 1.0;
    members.push_back(ProjectionOp::from_matrix(e, p));
  }
  const NetLimit lim = net_limit(NetOfProjections::build(members));
  EXPECT_LE(dist(lim.limit.matrix(), test::diag({1, 1, 1, 0, 0})), 1e-14);
  EXPECT_EQ(lim.stabilization_index, 2u);
  EXPECT_TRUE(lim.range_identity && lim.kernel_identity);
}

TEST(NetLimit, CumulativeNeutralBlocks) {
  const KreinSpace space = KreinSpace::diagonal({1, -1, 1, -1, 1, -1});
  const CMatrix half = 0.5 * real_matrix({{1, 1}, {1, 1}});
  std::vector<ProjectionOp> members;
  CMatrix acc = CMatrix::Zero(6, 6);
  for (Index b = 0; b < 3; ++b) {
    acc.block(2 * b, 2 * b, 2, 2) = half;
    members.push_back(ProjectionOp::from_matrix(space, acc));
  }
  const NetLimit lim = net_limit(NetOfProjections::build(members));
  EXPECT_TRUE(lim.all_normal);
  EXPECT_TRUE(lim.limit_normal);
  EXPECT_TRUE(lim.range_identity && lim.kernel_identity);
  EXPECT_LE(lim.kadjoint_discrepancy, 1e-12);
}

TEST(NetLimit, IncompatibleNetThrows) {
  const KreinSpace e = KreinSpace::euclidean(2);
  const ProjectionOp a = ProjectionOp::from_matrix(e, test::diag({1, 0}));
  const ProjectionOp b = ProjectionOp::from_matrix(e, test::diag({0, 1}));
  EXPECT_EQ(kind_of([&] { net_limit(NetOfProjections::build({a, b})); }),
            ErrorKind::kIncompatibleNet);
}

TEST(NormalFamily, FourDimensionalExample) {
  const KreinSpace space = four();
  CMatrix q1 = CMatrix::Zero(4, 4);
  CMatrix q2 = CMatrix::Zero(4, 4);
  q1.block(0, 0, 2, 2) = 0.5 * real_matrix({{1, 1}, {1, 1}});
  q2.block(2, 2, 2, 2) = 0.5 * real_matrix({{1, 1}, {1, 1}});
  const NormalFamilySum s =
      sum_normal_family(space, {ProjectionOp::from_matrix(space, q1), ProjectionOp::from_matrix(space, q2)});
  const CMatrix q = s.q.matrix();
  const CMatrix qk = kadjoint(q, space);
  EXPECT_LE(operator_norm(q * qk), 1e-14);
  EXPECT_LE(operator_norm(qk * q), 1e-14);
  EXPECT_TRUE(s.q.flags().normal);
  EXPECT_TRUE(s.partial_sums_normal && s.range_identity && s.kernel_identity && s.ranges_independent);
  EXPECT_TRUE(same_subspace(s.q.range_basis(), real_matrix({{1, 0}, {1, 0}, {0, 1}, {0, 1}}) / std::sqrt(2.0), 1e-12));
}

TEST(NormalFamily, DuplicateMemberNamesThePair) {
  const KreinSpace space = four();
  CMatrix q1 = CMatrix::Zero(4, 4);
  q1.block(0, 0, 2, 2) = 0.5 * real_matrix({{1, 1}, {1, 1}});
  const ProjectionOp q = ProjectionOp::from_matrix(space, q1);
  try {
    sum_normal_family(space, {q, q});
    FAIL() << "expected ConditionViolated";
  } catch (const KreinError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kConditionViolated);
    EXPECT_NE(e.violated().find("pair 0,1"), std::string::npos) << e.violated();
  }
}

TEST(NormalFamily, SelfadjointPairSumsToSelfadjoint) {
  const KreinSpace space = four();
  const std::vector<ProjectionOp> es = cosh_family(space, {0.3, 0.7});
  const NormalFamilySum s = sum_normal_family(space, es);
  EXPECT_TRUE(s.q.flags().j_selfadjoint);
  EXPECT_LE(dist(s.q.matrix(), es[0].matrix() + es[1].matrix()), 1e-13);
}

TEST(QprFamily, FourDimensionalExample) {
  const KreinSpace space = four();
  const ProjectionOp e = selfadjoint_projection(Subspace::span_of(space, column({1, 0, 0, 0})));
  const CMatrix w = column({0, 0, 1, 1});
  const QprFamilySum s = sum_qpr_family(space, {e}, {w * w.adjoint()});
  EXPECT_EQ(s.m_basis.cols(), 2);
  EXPECT_TRUE(same_subspace(s.m_basis, orthonormal_range_basis(real_matrix({{1, 0}, {0, 0}, {0, 1}, {0, 1}}), {}), 1e-12));
  EXPECT_LE(s.neutrality_residual, 1e-14);
  EXPECT_LE(s.orthogonality_residual, 1e-14);
  EXPECT_TRUE(s.n_meets_p_trivially);
  EXPECT_TRUE(s.sampled_containment && s.sampled_reconstruction);
}

TEST(QprFamily, ZeroTsReduceToRegularFamily) {
  const KreinSpace space = four();
  const std::vector<ProjectionOp> es = cosh_family(space, {0.0, 1.0});
  const QprFamilySum s = sum_qpr_family(space, es, {CMatrix::Zero(4, 4)});
  EXPECT_EQ(s.n_basis.cols(), 0);
  EXPECT_TRUE(same_subspace(s.m_basis, s.p().range_basis(), 1e-12));
  EXPECT_EQ(s.m_basis.cols(), 2);
}

TEST(QprFamily, ScalingKeepsTheSum) {
  const KreinSpace space = KreinSpace::diagonal({1, -1, 1, -1, 1, -1});
  const ProjectionOp e = selfadjoint_projection(Subspace::span_of(space, column({1, 0, 0, 0, 0, 0})));
  const CMatrix w1 = column({0, 0, 1, 1, 0, 0});
  const CMatrix w2 = column({0, 0, 0, 0, 1, 1});
  const std::vector<CMatrix> ts = {w1 * w1.adjoint(), w2 * w2.adjoint(), w1 * w1.adjoint()};
  QprFamilyOptions scaled;
  scaled.scale_ts = true;
  const QprFamilySum a = sum_qpr_family(space, {e}, ts);
  const QprFamilySum b = sum_qpr_family(space, {e}, ts, scaled);
  EXPECT_TRUE(same_subspace(a.m_basis, b.m_basis, 1e-12));
}

TEST(QprFamily, NonNeutralTThrows) {
  const KreinSpace space = four();
  const ProjectionOp e = selfadjoint_projection(Subspace::span_of(space, column({1, 0, 0, 0})));
  const CMatrix w = column({0, 0, 1, 0});
  EXPECT_EQ(kind_of([&] { sum_qpr_family(space, {e}, {w * w.adjoint()}); }), ErrorKind::kNotNeutralRange);
}

}  // namespace
}  // namespace kreinlab
