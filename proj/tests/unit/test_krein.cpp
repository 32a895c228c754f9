#include <gtest/gtest.h>

#include <cmath>

#include "kreinlab/errors.hpp"
#include "kreinlab/random.hpp"
#include "test_util.hpp"

namespace kreinlab {
namespace {

using test::column;
using test::diag;
using test::kind_of;
using test::real_matrix;

const double kRoot2 = std::sqrt(2.0);

KreinSpace plane() { return KreinSpace::diagonal({1, -1}); }

TEST(KreinSpace, RejectsNonInvolution) {
  EXPECT_EQ(kind_of([] { (void)KreinSpace(diag({2, -1})); }), ErrorKind::kInvalidSymmetry);
  EXPECT_EQ(kind_of([] { (void)KreinSpace(real_matrix({{0, 1}, {0, 0}})); }), ErrorKind::kInvalidSymmetry);
  EXPECT_EQ(kind_of([] { KreinSpace::diagonal({1, 0}); }), ErrorKind::kInvalidSymmetry);
}

TEST(KreinSpace, LargeSpaceUsesProbeCheck) {
  std::vector<int> signs(600, 1);
  for (std::size_t i = 0; i < signs.size(); i += 3) signs[i] = -1;
  const KreinSpace ok = KreinSpace::diagonal(signs);
  EXPECT_EQ(ok.negative_index(), 200);
  CMatrix bad = ok.j();
  bad(7, 7) = 0.5;
  EXPECT_EQ(kind_of([&] { (void)KreinSpace(bad); }), ErrorKind::kInvalidSymmetry);
}

TEST(KreinSpace, InnerProductIsLinearInFirstSlot) {
  const KreinSpace space = plane();
  CVector x(2);
  x << Complex(1, 2), Complex(0, 1);
  CVector y(2);
  y << Complex(3, 0), Complex(1, -1);
  // y^H J x = conj(3)*(1+2i) - conj(1-i)*(i) = 3+6i - (1+i)i = 4+5i
  EXPECT_NEAR(std::abs(space.kip(x, y) - Complex(4, 5)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(space.kip(Complex(0, 1) * x, y) - Complex(0, 1) * space.kip(x, y)), 0.0, 1e-15);
}

TEST(Subspace, FromOrthonormalRejectsSkewedBasis) {
  EXPECT_EQ(kind_of([] { Subspace::from_orthonormal(plane(), column({1, 1})); }), ErrorKind::kNotOrthonormal);
}

TEST(OrthoCompanion, NeutralLineIsItsOwnCompanion) {
  const Subspace s = Subspace::span_of(plane(), column({1, 1}));
  const Subspace c = ortho_companion(s);
  ASSERT_EQ(c.dim(), 1);
  // Oracle: nullspace of (J B)^H.
  const CMatrix oracle = nullspace_basis(plane().apply_j(s.basis()).adjoint(), {});
  EXPECT_TRUE(same_subspace(c.basis(), oracle, 1e-14));
  EXPECT_TRUE(same_subspace(c.basis(), s.basis(), 1e-14));
}

TEST(OrthoCompanion, EuclideanAndWholeSpace) {
  const KreinSpace e = KreinSpace::euclidean(3);
  const Subspace s = Subspace::span_of(e, column({1, 0, 0}));
  EXPECT_TRUE(same_subspace(ortho_companion(s).basis(), real_matrix({{0, 0}, {1, 0}, {0, 1}}), 1e-14));
  EXPECT_EQ(ortho_companion(Subspace::whole(e)).dim(), 0);
}

TEST(Classify, ModuleExamples) {
  const Classification pos = classify(Subspace::span_of(plane(), column({1, 0})));
  EXPECT_EQ(pos.kind, SubspaceKind::kPositive);
  EXPECT_TRUE(pos.regular);
  EXPECT_NEAR(pos.regularity_margin, 1.0, 1e-15);

  const Classification neu = classify(Subspace::span_of(plane(), column({1, 1}) / kRoot2));
  EXPECT_EQ(neu.kind, SubspaceKind::kNeutral);
  EXPECT_FALSE(neu.regular);
  EXPECT_NEAR(neu.regularity_margin, 0.0, 1e-15);

  const KreinSpace c3 = KreinSpace::diagonal({1, -1, 1});
  const Subspace s = Subspace::span_of(c3, real_matrix({{1 / kRoot2, 0}, {1 / kRoot2, 0}, {0, 1}}));
  const Classification deg = classify(s);
  EXPECT_EQ(deg.kind, SubspaceKind::kDegenerate);
  EXPECT_EQ(deg.isotropic_dim, 1);
  EXPECT_EQ(deg.positive_dim, 1);
}

TEST(Classify, IndefiniteNondegenerate) {
  const Classification c = classify(Subspace::whole(plane()));
  EXPECT_EQ(c.kind, SubspaceKind::kIndefiniteNondegenerate);
  EXPECT_EQ(c.positive_dim, 1);
  EXPECT_EQ(c.negative_dim, 1);
}

TEST(Classify, BorderlineWhenGramNearThreshold) {
  const KreinSpace space = plane();
  const double thr = space.tolerance().unit_threshold(2, 1);
  // Gram of (cos a, sin a) is cos 2a; pick it at 3x the threshold.
  const double a = 0.5 * std::acos(3.0 * thr);
  const Classification c = classify(Subspace::span_of(space, column({std::cos(a), std::sin(a)})));
  EXPECT_TRUE(c.borderline);
  EXPECT_TRUE(c.regular);
}

TEST(IsotropicPart, ModuleExamples) {
  EXPECT_EQ(isotropic_part(Subspace::span_of(plane(), column({1, 0}))).dim(), 0);
  const Subspace neutral = Subspace::span_of(plane(), column({1, 1}));
  EXPECT_TRUE(same_subspace(isotropic_part(neutral).basis(), neutral.basis(), 1e-14));

  const KreinSpace c3 = KreinSpace::diagonal({1, -1, 1});
  const Subspace s = Subspace::span_of(c3, real_matrix({{1, 0}, {1, 0}, {0, 1}}));
  EXPECT_TRUE(same_subspace(isotropic_part(s).basis(), column({1, 1, 0}) / kRoot2, 1e-14));
}

TEST(DecomposeQpr, ModuleExamples) {
  const Subspace reg = Subspace::span_of(plane(), column({1, 0}));
  QprDecomposition d = decompose_qpr(reg);
  EXPECT_TRUE(same_subspace(d.regular_part.basis(), reg.basis(), 1e-14));
  EXPECT_EQ(d.isotropic_part.dim(), 0);

  const Subspace neutral = Subspace::span_of(plane(), column({1, 1}));
  d = decompose_qpr(neutral);
  EXPECT_EQ(d.regular_part.dim(), 0);
  EXPECT_TRUE(same_subspace(d.isotropic_part.basis(), neutral.basis(), 1e-14));

  const KreinSpace c3 = KreinSpace::diagonal({1, -1, 1});
  const Subspace s = Subspace::span_of(c3, real_matrix({{1, 0}, {1, 0}, {0, 1}}));
  d = decompose_qpr(s);
  EXPECT_TRUE(same_subspace(d.regular_part.basis(), column({0, 0, 1}), 1e-14));
  EXPECT_TRUE(same_subspace(d.isotropic_part.basis(), column({1, 1, 0}) / kRoot2, 1e-14));
}

TEST(AdaptedSymmetry, ModuleExamples) {
  const CMatrix j1 = adapted_symmetry(Subspace::span_of(plane(), column({1, 0})));
  EXPECT_LE(test::dist(j1, plane().j()), 1e-14);

  Rng rng(3);
  const KreinSpace e = KreinSpace::euclidean(4);
  const CMatrix j2 = adapted_symmetry(random_subspace(rng, e, 2));
  EXPECT_LE(test::dist(j2, CMatrix::Identity(4, 4)), 1e-13);

  const Subspace r = Subspace::span_of(plane(), column({std::cosh(1.0), std::sinh(1.0)}));
  const CMatrix j3 = adapted_symmetry(r);
  EXPECT_LE(test::dist(j3 * j3, CMatrix::Identity(2, 2)), 1e-12);
  EXPECT_LE(containment_gap(orthonormal_range_basis(j3 * r.basis(), {}), r.basis()), 1e-12);
  const Subspace comp = ortho_companion(r);
  EXPECT_LE(containment_gap(orthonormal_range_basis(j3 * comp.basis(), {}), comp.basis()), 1e-12);
}

TEST(AdaptedSymmetry, RejectsDegenerate) {
  EXPECT_EQ(kind_of([] { adapted_symmetry(Subspace::span_of(plane(), column({1, 1}))); }), ErrorKind::kNotRegular);
}

TEST(QprCriterion, ModuleExamples) {
  const KreinSpace e = KreinSpace::euclidean(3);
  const CompanionSumCheck a = check_qpr_criterion(Subspace::span_of(e, column({1, 2, 0})));
  EXPECT_EQ(a.sum_dim, 3);
  EXPECT_NEAR(a.sum_with_companion_margin, 1.0, 1e-14);

  const CompanionSumCheck b = check_qpr_criterion(Subspace::span_of(plane(), column({1, 1})));
  EXPECT_EQ(b.sum_dim, 1);
  EXPECT_NEAR(b.sum_with_companion_margin, 1.0, 1e-14);
  EXPECT_TRUE(b.is_qpr);
}

// Seeded property: the Gram-kernel isotropic part equals S ∩ S^perp.
TEST(IsotropicPart, MatchesIntersectionOnRandomInputs) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    const Index n = rng.index(2, 10);
    const KreinSpace space = random_space(rng, n, rng.index(0, n));
    const Index k = rng.index(0, std::min(space.positive_index(), space.negative_index()));
    const Subspace s = random_degenerate_subspace(rng, space, rng.index(k == 0 ? 1 : 0, n - 2 * k), k);
    const Subspace iso = isotropic_part(s);
    const CMatrix inter = intersect(s.basis(), ortho_companion(s).basis(), {});
    ASSERT_EQ(iso.dim(), k) << "seed " << seed;
    EXPECT_TRUE(same_subspace(iso.basis(), inter, 1e-8)) << "seed " << seed;
  }
}

}  // namespace
}  // namespace kreinlab
