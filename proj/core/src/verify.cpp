#include "kreinlab/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include "kreinlab/errors.hpp"
#include "kreinlab/harness.hpp"
#include "kreinlab/random.hpp"

namespace kreinlab {

namespace {

struct Trial {
  bool pass = true;
  bool borderline = false;
  double worst = 0.0;
  std::string note;

  void expect(bool cond, const std::string& what) {
    if (!cond && pass) {
      pass = false;
      note = what;
    }
  }
  void residual(double r) { worst = std::max(worst, r); }
  void mark(const Classification& c) { borderline = borderline || c.borderline; }
};

using TrialFn = std::function<void(Rng&, const TolerancePolicy&, Trial&)>;

struct Property {
  const char* suite;
  const char* name;
  const char* description;
  std::size_t trials;  // 0: deterministic, runs once
  TrialFn run;
};

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t seed, const std::string& name, std::size_t trial) {
  std::uint64_t h = mix(seed);
  for (char ch : name) h = mix(h ^ static_cast<unsigned char>(ch));
  return mix(h ^ trial);
}

KreinSpace draw_space(Rng& rng, const TolerancePolicy& tol, Index lo, Index hi, Index max_minus = -1) {
  const Index n = rng.index(lo, hi);
  const Index cap = max_minus < 0 ? n : std::min(max_minus, n);
  return random_space(rng, n, rng.index(0, cap)).with_tolerance(tol);
}

/// Subspace with a planted isotropic part of random dimension.
Subspace draw_degenerate(Rng& rng, const KreinSpace& space) {
  const Index n = space.dim();
  const Index k_max = std::min(space.positive_index(), space.negative_index());
  const Index iso = rng.index(0, k_max);
  const Index reg = rng.index(iso == 0 ? 1 : 0, n - 2 * iso);
  return random_degenerate_subspace(rng, space, reg, iso);
}

/// Regular subspace of dimension in [1, n]; redraws a few times when the
/// generic draw lands near degenerate.
std::optional<Subspace> draw_regular(Rng& rng, const KreinSpace& space, Trial& t) {
  for (int attempt = 0; attempt < 8; ++attempt) {
    const Subspace r = random_subspace(rng, space, rng.index(1, space.dim()));
    const Classification c = classify(r);
    if (c.regular && !c.borderline) return r;
  }
  t.borderline = true;
  return std::nullopt;
}

double scale1(double x) { return std::max(1.0, x); }

CMatrix hcat(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows(), a.cols() + b.cols());
  out << a, b;
  return out;
}

// ---------------------------------------------------------------- lemmas

void numeric_basics(Rng& rng, const TolerancePolicy& tol, Trial& t) {
  const Index n = rng.index(1, 14);
  const Index r = rng.index(0, n);
  const Index m = rng.index(1, 14);
  const CMatrix a = rng.gaussian(n, r) * rng.gaussian(r, m);
  const CMatrix range = orthonormal_range_basis(a, tol);
  const CMatrix null = nullspace_basis(a, tol);
  // Independent oracle for the rank: Jacobi singular values against the same cutoff.
  const RVector sv = Eigen::JacobiSVD<CMatrix>(a).singularValues();
  const double cutoff = sv.size() > 0 ? tol.threshold(n, m, sv(0)) : 0.0;
  const Index expected = (sv.array() > cutoff).count();
  t.expect(expected == std::min(r, m) || tol.relative_eps > 1e-12, "planted rank resolved");
  t.expect(range.cols() == expected, "rank of a planted product");
  t.expect(range.cols() + null.cols() == m, "rank + nullity = columns");
  const double proj = operator_norm(a - range * (range.adjoint() * a)) / scale1(operator_norm(a));
  t.residual(proj);
  t.expect(proj <= 1e-10, "range basis reproduces A");
  if (null.cols() > 0) {
    const double kres = operator_norm(a * null) / scale1(operator_norm(a));
    t.residual(kres);
    t.expect(kres <= 1e-10, "A N = 0");
  }
  const CMatrix b1 = orthonormal_range_basis(rng.gaussian(n, rng.index(1, n)), tol);
  const CMatrix b2 = orthonormal_range_basis(rng.gaussian(n, rng.index(1, n)), tol);
  std::vector<double> a12 = principal_angles(b1, b2);
  std::vector<double> a21 = principal_angles(b2, b1);
  t.expect(a12.size() == a21.size(), "angle count symmetric");
  for (std::size_t i = 0; i < std::min(a12.size(), a21.size()); ++i) {
    t.residual(std::abs(a12[i] - a21[i]));
    t.expect(std::abs(a12[i] - a21[i]) <= 1e-10, "principal angles symmetric");
  }
  const KreinSpace space = random_space(rng, n, rng.index(0, n)).with_tolerance(tol);
  const CVector x = rng.gaussian(n, 1);
  const CVector y = rng.gaussian(n, 1);
  const double sym = std::abs(space.kip(x, y) - std::conj(space.kip(y, x))) / (x.norm() * y.norm());
  t.residual(sym);
  t.expect(sym <= 1e-12, "<x,y> = conj <y,x>");
}

void isotropic_matches_intersection(Rng& rng, const TolerancePolicy& tol, Trial& t) {
  const KreinSpace space = draw_space(rng, tol, 2, 12);
  const Subspace s = draw_degenerate(rng, space);
  const Classification c = classify(s);
  t.mark(c);
  const Subspace iso = isotropic_part(s);
  const CMatrix inter = intersect(s.basis(), ortho_companion(s).basis(), tol);
  t.expect(iso.dim() == inter.cols(), "dim S^0 equals dim (S ∩ S^perp)");
  t.expect(iso.dim() == c.isotropic_dim, "classification isotropic dimension");
  if (iso.dim() == inter.cols()) {
    const double gap = std::max(containment_gap(iso.basis(), inter), containment_gap(inter, iso.basis()));
    t.residual(gap);
    t.expect(gap <= 1e-8, "S^0 equals S ∩ S^perp");
  }
  const QprDecomposition d = decompose_qpr(s);
  t.expect(d.regular_part.dim() + d.isotropic_part.dim() == s.dim(), "dim R + dim N = dim S");
  t.expect(same_subspace(d.isotropic_part.basis(), iso.basis(), 1e-8), "N = S^0");
  if (d.regular_part.dim() > 0) {
    const Classification cr = classify(d.regular_part);
    t.mark(cr);
    t.expect(cr.regular, "R regular");
  }
  const CMatrix joined = sum_span(d.regular_part.basis(), d.isotropic_part.basis(), tol);
  t.expect(same_subspace(joined, s.basis(), 1e-8), "R + N = S");
  const double orth = operator_norm(d.isotropic_part.basis().adjoint() * space.apply_j(s.basis()));
  t.residual(orth);
  t.expect(orth <= 1e-8, "N K-orthogonal to S");
}

void complement_independent(Rng& rng, const TolerancePolicy& tol, Trial& t) {
  const KreinSpace space = draw_space(rng, tol, 2, 12);
  const std::optional<Subspace> r = draw_regular(rng, space, t);
  if (!r) return;
  const Subspace comp = ortho_companion(*r);
  const Index m = rng.index(0, comp.dim());
  const CMatrix m_basis = m > 0 ? orthonormal_range_basis(comp.basis() * rng.gaussian(comp.dim(), m), tol)
                                : CMatrix::Zero(space.dim(), 0);
  t.expect(intersect(r->basis(), m_basis, tol).cols() == 0, "R ∩ M = 0");
  t.expect(sum_span(r->basis(), m_basis, tol).cols() == r->dim() + m_basis.cols(), "dim (R + M) = dim R + dim M");
  t.expect(comp.dim() == space.dim() - r->dim(), "dim R^perp = n - dim R");
}

void companion_sum_dimension(Rng& rng, const TolerancePolicy& tol, Trial& t) {
  const KreinSpace space = draw_space(rng, tol, 2, 12);
  const Subspace s = draw_degenerate(rng, space);
  const Classification c = classify(s);
  t.mark(c);
  const CompanionSumCheck q = check_qpr_criterion(s);
  t.expect(q.sum_dim == space.dim() - c.isotropic_dim, "dim (S + S^perp) = n - dim S^0");
  t.expect(q.is_qpr, "finite-dimensional S is quasi-regular");
}

void orthogonal_sum_projection(Rng& rng, const TolerancePolicy& tol, Trial& t) {
  const KreinSpace space = draw_space(rng, tol, 2, 12);
  const Index n = space.dim();
  const Index total = rng.index(1, n);
  std::vector<Index> ranks;
  for (Index left = total; left > 0;) {
    const Index r = rng.index(1, std::min<Index>(left, 4));
    ranks.push_back(r);
    left -= r;
  }
  const std::vector<ProjectionOp> es = random_regular_family(rng, space, ranks);
  CMatrix gens(n, 0);
  CMatrix sum = CMatrix::Zero(n, n);
  for (const ProjectionOp& e : es) {
    gens = hcat(gens, e.range_basis());
    sum += e.matrix();
  }
  const Subspace span = Subspace::span_of(space, gens);
  const Classification c = classify(span);
  t.mark(c);
  t.expect(c.regular, "orthogonal sum of regular subspaces is regular");
  if (!c.regular) return;
  const ProjectionOp p = selfadjoint_projection(span);
  const double err = operator_norm(p.matrix() - sum) / scale1(p.norm());
  t.residual(err);
  t.expect(err <= 1e-9, "P_span equals the sum of the members");
}

void orthogonal_isotropic_additivity(Rng& rng, const TolerancePolicy& tol, Trial& t) {
  const KreinSpace space = draw_space(rng, tol, 2, 12);
  const Index n = space.dim();
  const KOrthonormalBasis w = random_k_orthonormal(rng, space, n);
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::shuffle(order.begin(), order.end(), rng.engine());
  const Index g1 = rng.index(1, n);
  std::vector<Index> group1(order.begin(), order.begin() + g1);
  std::vector<Index> group2(order.begin() + g1, order.end());

  struct Part {
    CMatrix basis;
    CMatrix iso;
    CMatrix reg;
  };
  auto plant = [&](const std::vector<Index>& group) {
    Part out{CMatrix::Zero(n, 0), CMatrix::Zero(n, 0), CMatrix::Zero(n, 0)};
    if (group.empty()) return out;
    std::vector<int> signs;
    for (Index i : group) signs.push_back(w.signs[static_cast<std::size_t>(i)]);
    const KreinSpace local = KreinSpace::diagonal(signs, tol);
    const Subspace s = draw_degenerate(rng, local);
    const QprDecomposition d = decompose_qpr(s);
    const CMatrix map = w.w(Eigen::all, group);
    out.basis = map * s.basis();
    out.iso = map * d.isotropic_part.basis();
    out.reg = map * d.regular_part.basis();
    return out;
  };
  const Part p1 = plant(group1);
  const Part p2 = plant(group2);
  const Subspace s = Subspace::span_of(space, hcat(p1.basis, p2.basis));
  const Classification c = classify(s);
  t.mark(c);
  const Subspace iso = isotropic_part(s);
  const CMatrix expected = orthonormal_range_basis(hcat(p1.iso, p2.iso), tol);
  t.expect(iso.dim() == expected.cols(), "dim (S1 + S2)^0 = dim S1^0 + dim S2^0");
  if (iso.dim() == expected.cols()) {
    const double gap = std::max(containment_gap(iso.basis(), expected), containment_gap(expected, iso.basis()));
    t.residual(gap);
    t.expect(gap <= 1e-8, "(S1 + S2)^0 = S1^0 + S2^0");
  }
  const CMatrix reg = hcat(p1.reg, p2.reg);
  if (reg.cols() > 0) {
    const Classification cr = classify(Subspace::span_of(space, reg));
    t.mark(cr);
    t.expect(cr.regular, "R1 + R2 regular");
  }
}

void small_negative_index(Rng& rng, const TolerancePolicy& tol, Trial& t) {
  const KreinSpace space = draw_space(rng, tol, 2, 12, 2);
  const Subspace s = rng.index(0, 1) == 0 ? draw_degenerate(rng, space)
                                          : random_subspace(rng, space, rng.index(1, space.dim()));
  const Classification c = classify(s);
  t.mark(c);
  const QprDecomposition d = decompose_qpr(s);
  const double thr = tol.unit_threshold(space.dim(), space.dim());
  if (d.regular_part.dim() > 0) {
    t.expect(d.regular_margin > thr, "regular part margin above threshold");
  }
  const CMatrix inter = intersect(s.basis(), ortho_companion(s).basis(), tol);
  t.expect(same_subspace(d.isotropic_part.basis(), inter, 1e-8), "N = S ∩ S^perp");
}

void classification_basis_invariant(Rng& rng, const TolerancePolicy& tol, Trial& t) {
  const KreinSpace space = draw_space(rng, tol, 2, 12);
  const Subspace s = draw_degenerate(rng, space);
  const Subspace rotated = Subspace::span_of(space, s.basis() * random_unitary(rng, s.dim()));
  const Classification a = classify(s);
  const Classification b = classify(rotated);
  t.mark(a);
  t.mark(b);
  t.expect(a.kind == b.kind, "kind independent of basis");
  t.expect(a.isotropic_dim == b.isotropic_dim && a.positive_dim == b.positive_dim &&
               a.negative_dim == b.negative_dim,
           "inertia independent of basis");
  const double dm = std::abs(a.regularity_margin - b.regularity_margin);
  t.residual(dm);
  t.expect(dm <= 1e-10, "margin independent of basis");
}

void adapted_symmetry_invariants(Rng& rng, const TolerancePolicy& tol, Trial& t) {
  const KreinSpace space = draw_space(rng, tol, 2, 12);
  const std::optional<Subspace> r = draw_regular(rng, space, t);
  if (!r) return;
  const CMatrix jp = adapted_symmetry(*r);
  const Index n = space.dim();
  const double scale = scale1(operator_norm(jp));
  const double inv = operator_norm(jp * jp - CMatrix::Identity(n, n)) / (scale * scale);
  t.residual(inv);
  t.expect(inv <= 1e-9, "J'^2 = I");
  const CMatrix image = orthonormal_range_basis(jp * r->basis(), tol);
  const double inv_r = containment_gap(image, r->basis());
  t.residual(inv_r);
  t.expect(inv_r <= 1e-8, "J'R ⊆ R");
  const Subspace comp = ortho_companion(*r);
  if (comp.dim() > 0) {
    const double inv_c = containment_gap(orthonormal_range_basis(jp * comp.basis(), tol), comp.basis());
    t.residual(inv_c);
    t.expect(inv_c <= 1e-8, "J'R^perp ⊆ R^perp");
  }
  const CMatrix jj = space.j() * jp;
  const double skew = operator_norm(jj - jj.adjoint()) / scale;
  t.residual(skew);
  t.expect(skew <= 1e-9, "J J' Hermitian");
  const HermitianEig eig = hermitian_eig(0.5 * (jj + jj.adjoint()));
  t.expect(eig.values.minCoeff() > 0.0, "J J' positive definite");
}

void kadjoint_properties(Rng& rng, const TolerancePolicy& tol, Trial& t) {
  const KreinSpace space = draw_space(rng, tol, 1, 12);
  const Index n = space.dim();
  const CMatrix a = rng.gaussian(n, n);
  const CMatrix as = kadjoint(a, space);
  const CVector x = rng.gaussian(n, 1);
  const CVector y = rng.gaussian(n, 1);
  const double err = std::abs(space.kip(a * x, y) - space.kip(x, as * y)) / (operator_norm(a) * x.norm() * y.norm());
  t.residual(err);
  t.expect(err <= 1e-10, "<Ax, y> = <x, A* y>");
  const double invol = operator_norm(kadjoint(as, space) - a) / operator_norm(a);
  t.residual(invol);
  t.expect(invol <= 1e-12, "A** = A");
}

/// Oblique projection with a well-conditioned range/kernel pair.
ProjectionOp draw_oblique(Rng& rng, const KreinSpace& space, Index rank) {
  const Index n = space.dim();
  RVector scales(n);
  for (Index i = 0; i < n; ++i) scales(i) = rng.uniform(0.5, 2.0);
  const CMatrix x = random_unitary(rng, n) * scales.cast<Complex>().asDiagonal() * random_unitary(rng, n);
  const CMatrix x_inv = x.fullPivLu().inverse();
  return ProjectionOp::from_lowrank(space, x.leftCols(rank), CMatrix::Identity(rank, rank),
                                    x_inv.topRows(rank).adjoint());
}

void complement_properties(Rng& rng, const TolerancePolicy& tol, Trial& t) {
  const KreinSpace space = draw_space(rng, tol, 1, 12);
  const Index n = space.dim();
  const ProjectionOp p = draw_oblique(rng, space, rng.index(0, n));
  const ProjectionOp c = p.complement();
  const double scale = scale1(p.norm());
  const double sum = operator_norm(p.matrix() + c.matrix() - CMatrix::Identity(n, n)) / scale;
  t.residual(sum);
  t.expect(sum <= 1e-9, "P + (I - P) = I");
  t.expect(c.idempotency_residual() <= 1e-9 * (1.0 + c.norm() * c.norm()), "complement idempotent");
  t.expect(same_subspace(c.range().basis(), p.kernel().basis(), 1e-8), "ran (I - P) = ker P");
  t.expect(same_subspace(c.kernel().basis(), p.range().basis(), 1e-8), "ker (I - P) = ran P");
}

void normal_projection_contract(Rng& rng, const TolerancePolicy& tol, Trial& t) {
  const KreinSpace space = draw_space(rng, tol, 2, 12);
  const Subspace s = draw_degenerate(rng, space);
  t.mark(classify(s));
  const QprDecomposition d = decompose_qpr(s);
  if (d.regular_part.dim() > 0) t.mark(classify(d.regular_part));
  const ProjectionOp q = normal_projection(s);
  const double scale = scale1(q.norm());
  t.expect(q.idempotency_residual() <= 1e-9 * (1.0 + q.norm() * q.norm()), "Q^2 = Q");
  const double fix = operator_norm(q.apply(s.basis()) - s.basis()) / scale;
  t.residual(fix);
  t.expect(fix <= 1e-9, "Q fixes S");
  t.expect(q.flags().normal, "Q normal");
  const CMatrix qm = q.matrix();
  const CMatrix pr = d.regular_part.dim() > 0 ? selfadjoint_projection(d.regular_part).matrix()
                                              : CMatrix::Zero(space.dim(), space.dim());
  const double prod = operator_norm(qm * kadjoint(qm, space) - pr) / (scale * scale);
  t.residual(prod);
  t.expect(prod <= 1e-9, "Q Q* = P_R");
  const ProjectionOp qs = q.kadjoint();
  t.expect(qs.flags().normal, "Q* normal");
  const CMatrix expected = sum_span(d.regular_part.basis(), d.adapted_j * d.isotropic_part.basis(), tol);
  t.expect(same_subspace(qs.range().basis(), expected, 1e-8), "ran Q* = R + J'N");
}

void selfadjoint_basis_independent(Rng& rng, const TolerancePolicy& tol, Trial& t) {
  const KreinSpace space = draw_space(rng, tol, 1, 12);
  const std::optional<Subspace> r = draw_regular(rng, space, t);
  if (!r) return;
  RVector scales(r->dim());
  for (Index i = 0; i < r->dim(); ++i) scales(i) = rng.uniform(0.5, 2.0);
  const CMatrix mix = random_unitary(rng, r->dim()) * scales.cast<Complex>().asDiagonal() * random_unitary(rng, r->dim());
  const Subspace r2 = Subspace::span_of(space, r->basis() * mix);
  const ProjectionOp p1 = selfadjoint_projection(*r);
  const ProjectionOp p2 = selfadjoint_projection(r2);
  const double d = projection_distance(p1, p2) / scale1(p1.norm());
  t.residual(d);
  t.expect(d <= 1e-9, "P_R independent of the basis");
  t.expect(p1.flags().j_selfadjoint, "P_R selfadjoint");
}

void order_relations(Rng& rng, const TolerancePolicy& tol, Trial& t) {
  const KreinSpace space = draw_space(rng, tol, 2, 12);
  const Index n = space.dim();
  const Index r1 = rng.index(0, n - 1);
  const Index r2 = rng.index(r1 + 1, n);
  const std::vector<ProjectionOp> nested = random_nested_oblique(rng, space, {r1, r2});
  auto consistent = [&](const OrderCheck& o) {
    t.expect(o.ran_contained == o.geometric_ran_contained, "P2 P1 = P1 iff ran P1 ⊆ ran P2");
    t.expect(o.ker_contains == o.geometric_ker_contains, "P1 P2 = P1 iff ker P1 ⊇ ker P2");
  };
  const OrderCheck up = check_order(nested[0], nested[1]);
  consistent(up);
  t.residual(std::max(up.ran_residual, up.ker_residual));
  t.expect(up.products_ok, "nested pair ordered");
  const OrderCheck down = check_order(nested[1], nested[0]);
  consistent(down);
  t.expect(!down.ran_contained, "reversed pair not ordered");
  // Commuting but unordered: X diag(1,0,1,...) X^{-1} against X diag(1,1,0,...) X^{-1}.
  if (n >= 3) {
    const ProjectionOp p = draw_oblique(rng, space, n);
    const CMatrix x = p.range_basis();
    const CMatrix y = p.corange_basis() * p.coupling().adjoint();
    std::vector<Index> a = {0, 2};
    std::vector<Index> b = {0, 1};
    const ProjectionOp pa = ProjectionOp::from_lowrank(space, x(Eigen::all, a), CMatrix::Identity(2, 2), y(Eigen::all, a));
    const ProjectionOp pb = ProjectionOp::from_lowrank(space, x(Eigen::all, b), CMatrix::Identity(2, 2), y(Eigen::all, b));
    const OrderCheck side = check_order(pa, pb);
    consistent(side);
    t.expect(!side.ran_contained && !side.ker_contains, "unordered commuting pair");
  }
}

// ---------------------------------------------------------------- sums

IndexedFamily geometric_family(std::uint64_t seed, Index dim, double rho, std::size_t count) {
  IndexedFamily fam;
  fam.rows = dim;
  fam.cols = 1;
  fam.count = count;
  fam.element_at = [seed, dim, rho](std::size_t k) {
    Rng local(mix(seed ^ k));
    CVector v = local.gaussian(dim, 1);
    return CMatrix(v.normalized() * std::pow(rho, static_cast<double>(k)));
  };
  fam.tail_envelope = [rho](std::size_t k) { return std::pow(rho, static_cast<double>(k)) / (1.0 - rho); };
  return fam;
}

void ms_rearrangement(Rng& rng, const TolerancePolicy&, Trial& t) {
  const Index dim = rng.index(1, 8);
  const double rho = rng.uniform(0.1, 0.9);
  const bool countable = rng.index(0, 1) == 1;
  const std::uint64_t seed = rng.engine()();
  IndexedFamily fam = geometric_family(seed, dim, rho, countable ? IndexedFamily::kCountable : 40);
  const MSResult res = ms_sum(fam, 1e-10, seed);
  t.expect(res.certificate.status == MSStatus::kSummable, "absolutely summable family summable");
  t.expect(res.certificate.tail_bound < 1e-10, "tail bound below eps");
  t.residual(res.certificate.max_permutation_discrepancy);
  t.expect(res.certificate.max_permutation_discrepancy <= res.certificate.permutation_tolerance,
           "permuted partial sums agree");
  // Independent reference: sum in reverse order over the same prefix.
  CMatrix reverse = CMatrix::Zero(dim, 1);
  for (std::size_t k = res.certificate.f0_size; k-- > 0;) reverse += fam.element_at(k);
  const double diff = (reverse - res.sum).norm();
  t.expect(diff <= 1e-12 * (1.0 + fam.tail_envelope(0)), "reverse-order sum agrees");
}

void absolute_sum_bound(Rng& rng, const TolerancePolicy&, Trial& t) {
  const Index n = rng.index(1, 10);
  const Index m = rng.index(1, 12);
  std::vector<CMatrix> ts;
  std::vector<CVector> xs;
  double norm_sum = 0.0;
  double sup_x = 0.0;
  for (Index k = 0; k < m; ++k) {
    ts.push_back(rng.gaussian(n, n) * rng.uniform(0.0, 2.0));
    norm_sum += operator_norm(ts.back());
    xs.push_back(rng.gaussian(n, 1));
    sup_x = std::max(sup_x, xs.back().norm());
  }
  const RowOp op = row_operator_abs(IndexedFamily::from_list(ts));
  const RowOp::Applied out = op.apply(xs);
  const double ratio = out.value.norm() / (sup_x * norm_sum);
  t.residual(ratio);
  t.expect(ratio <= 1.0 + 1e-12, "||sum T x|| <= sup ||x|| sum ||T||");
  CVector direct = CVector::Zero(n);
  for (Index k = 0; k < m; ++k) direct += ts[static_cast<std::size_t>(k)] * xs[static_cast<std::size_t>(k)];
  t.expect((direct - out.value).norm() <= 1e-12 * scale1(sup_x * norm_sum), "row operator applies the sum");
}

std::vector<CMatrix> draw_bounded_members(Rng& rng, const KreinSpace& space) {
  const Index n = space.dim();
  const Index m = rng.index(1, 20);
  std::vector<CMatrix> ts;
  switch (rng.index(0, 2)) {
    case 0: {
      std::vector<Index> ranks;
      for (Index left = rng.index(1, n); left > 0 && static_cast<Index>(ranks.size()) < m;) {
        const Index r = rng.index(1, left);
        ranks.push_back(r);
        left -= r;
      }
      for (const ProjectionOp& e : random_regular_family(rng, space, ranks)) ts.push_back(e.matrix());
      break;
    }
    case 1:
      for (Index k = 0; k < m; ++k) ts.push_back(rng.gaussian(n, n) / static_cast<double>(k + 1));
      break;
    default:
      for (Index k = 0; k < m; ++k) ts.push_back(rng.gaussian(n, 1) * rng.gaussian(n, 1).adjoint());
      break;
  }
  return ts;
}

void adjoint_bound(Rng& rng, const TolerancePolicy& tol, Trial& t) {
  const KreinSpace space = draw_space(rng, tol, 2, 12);
  const std::vector<CMatrix> ts = draw_bounded_members(rng, space);
  BoundedRowOptions opts;
  opts.subsets.seed = rng.engine()();
  const BoundedRowResult res = row_operator_bounded(space, ts, opts);
  t.residual(res.adjoint_check.bound > 0.0 ? res.adjoint_check.max_ratio / res.adjoint_check.bound : 0.0);
  t.expect(res.adjoint_check.holds, "sum ||T* u||^2 <= 4 C^2 ||u||^2");
  // Independent check of the largest ratio against 4 C^2.
  const CVector u = rng.gaussian(space.dim(), 1);
  double acc = 0.0;
  for (const CMatrix& m : ts) acc += (kadjoint(m, space) * u).squaredNorm();
  t.expect(acc <= 4.0 * res.c.value * res.c.value * u.squaredNorm() * (1.0 + 1e-9), "bound on a fresh u");
}

void scaling_preserves_range(Rng& rng, const TolerancePolicy& tol, Trial& t) {
  const Index n = rng.index(2, 10);
  const Index m = rng.index(1, 6);
  CMatrix plain(n, 0);
  CMatrix scaled(n, 0);
  for (Index k = 0; k < m; ++k) {
    const Index r = rng.index(1, n - 1);
    const CMatrix tk = rng.gaussian(n, r) * rng.gaussian(r, n);
    plain = hcat(plain, tk);
    scaled = hcat(scaled, tk * rng.uniform(1e-3, 1.0));
  }
  const CMatrix a = orthonormal_range_basis(plain, tol);
  const CMatrix b = orthonormal_range_basis(scaled, tol);
  t.expect(same_subspace(a, b, 1e-8), "ran [c T] = ran [T]");
  t.residual(a.cols() == b.cols() ? containment_gap(a, b) : 1.0);
}

std::vector<Index> random_ranks(Rng& rng, Index total_cap, Index members_cap, Index rank_cap) {
  std::vector<Index> ranks;
  Index left = rng.index(1, total_cap);
  while (left > 0 && static_cast<Index>(ranks.size()) < members_cap) {
    const Index r = rng.index(1, std::min(left, rank_cap));
    ranks.push_back(r);
    left -= r;
  }
  return ranks;
}

void regular_family_flags(Rng& rng, const TolerancePolicy& tol, Trial& t) {
  const KreinSpace space = draw_space(rng, tol, 2, 16);
  const std::vector<Index> ranks = random_ranks(rng, space.dim(), 8, 4);
  const std::vector<ProjectionOp> es = random_regular_family(rng, space, ranks);
  SubsetNormOptions opts;
  opts.seed = rng.engine()();
  const RegularFamilyReport rep = analyze_regular_family(space, es, opts);
  t.expect(rep.flags_agree, "C1, C2, C3, C5 agree");
  t.expect(rep.flags.c1 && rep.flags.c2 && rep.flags.c3 && rep.flags.c5, "finite family satisfies every condition");
  CMatrix gens(space.dim(), 0);
  for (const ProjectionOp& e : es) gens = hcat(gens, e.range_basis());
  const CMatrix span = orthonormal_range_basis(gens, tol);
  const double slack = 1e-9 * scale1(rep.c2);
  for (int k = 0; k < 100; ++k) {
    const CVector f = span * rng.gaussian(span.cols(), 1);
    double energy = 0.0;
    for (const ProjectionOp& e : es) energy += e.apply(f).squaredNorm();
    const double ratio = energy / f.squaredNorm();
    t.expect(ratio >= rep.c1 - slack && ratio <= rep.c2 + slack, "frame inequality on the span");
  }
  t.residual(rep.c.value);
}

/// J-unitary U = (I - A)^{-1} (I + A) from a small J-skew A = J S, S^H = -S.
CMatrix random_j_unitary(Rng& rng, const KreinSpace& space, double scale) {
  const Index n = space.dim();
  const CMatrix g = rng.gaussian(n, n);
  const CMatrix a = space.apply_j(0.5 * scale * (g - g.adjoint()) / static_cast<double>(n));
  const CMatrix id = CMatrix::Identity(n, n);
  return (id - a).fullPivLu().solve(id + a);
}

void flags_norm_independent(Rng& rng, const TolerancePolicy& tol, Trial& t) {
  const KreinSpace space = draw_space(rng, tol, 2, 10);
  const std::vector<ProjectionOp> es = random_regular_family(rng, space, random_ranks(rng, space.dim(), 5, 3));
  const CMatrix u = random_j_unitary(rng, space, rng.uniform(0.1, 1.0));
  const CMatrix u_inv = kadjoint(u, space);
  const double unitarity = operator_norm(u * u_inv - CMatrix::Identity(space.dim(), space.dim()));
  t.residual(unitarity);
  t.expect(unitarity <= 1e-9 * scale1(operator_norm(u) * operator_norm(u)), "U J-unitary");
  std::vector<ProjectionOp> moved;
  for (const ProjectionOp& e : es) moved.push_back(ProjectionOp::from_matrix(space, u * e.matrix() * u_inv));
  const RegularFamilyReport a = analyze_regular_family(space, es);
  const RegularFamilyReport b = analyze_regular_family(space, moved);
  t.expect(a.flags.c1 == b.flags.c1 && a.flags.c2 == b.flags.c2 && a.flags.c3 == b.flags.c3 && a.flags.c5 == b.flags.c5,
           "conditions unchanged under a change of associated norm");
  t.expect(b.flags_agree, "flags agree after the change");
  t.expect(a.span_dim == b.span_dim, "span dimension unchanged");
}

void normal_family_sum(Rng& rng, const TolerancePolicy& tol, Trial& t) {
  const KreinSpace space = draw_space(rng, tol, 4, 16);
  const std::vector<Index> blocks = random_ranks(rng, space.dim(), 5, 4);
  const std::vector<ProjectionOp> qs = random_normal_family(rng, space, blocks);
  const NormalFamilySum res = sum_normal_family(space, qs);
  t.expect(res.q.flags().normal, "sum normal");
  t.expect(res.partial_sums_normal, "partial sums normal");
  t.expect(res.range_identity, "ran Q = sum of ranges");
  t.expect(res.kernel_identity, "ker Q = intersection of kernels");
  t.expect(res.ranges_independent, "ranges independent");
  const double disc = res.kadjoint_discrepancy / scale1(res.q.norm());
  t.residual(disc);
  t.expect(disc <= 1e-9, "Q* = sum Q_k*");
  std::vector<ProjectionOp> bad = qs;
  bad.push_back(qs[static_cast<std::size_t>(rng.index(0, static_cast<Index>(qs.size()) - 1))]);
  try {
    (void)sum_normal_family(space, bad);
    t.expect(false, "repeated member accepted");
  } catch (const KreinError& e) {
    t.expect(e.kind() == ErrorKind::kConditionViolated, "repeated member raises ConditionViolated");
    t.expect(e.violated().find("pair") != std::string::npos, "violation names the pair");
  }
}

void net_limits(Rng& rng, const TolerancePolicy& tol, Trial& t) {
  const KreinSpace space = draw_space(rng, tol, 4, 32);
  const Index n = space.dim();
  const Index len = rng.index(2, 10);
  std::vector<ProjectionOp> members;
  if (rng.index(0, 1) == 0) {
    std::vector<Index> ranks;
    for (Index k = 0; k < len; ++k) ranks.push_back(rng.index(1, n));
    std::sort(ranks.begin(), ranks.end());
    members = random_nested_oblique(rng, space, ranks);
  } else {
    members = random_nested_normal(rng, space, random_ranks(rng, n, len, 4));
  }
  const NetOfProjections net = NetOfProjections::build(members);
  t.expect(net.compatible, "nested family compatible");
  if (!net.compatible) return;
  const NetLimit lim = net_limit(net);
  t.expect(lim.range_identity, "ran P = span of ranges");
  t.expect(lim.kernel_identity, "ker P = intersection of kernels");
  const double dl = projection_distance(lim.limit, members.back()) / scale1(lim.limit.norm());
  t.residual(dl);
  t.expect(dl <= 1e-9, "limit equals the last member");
  if (lim.all_normal) {
    t.expect(lim.limit_normal, "limit of normal projections normal");
    t.expect(lim.kadjoint_discrepancy <= 1e-9 * scale1(lim.limit.norm()), "P* = lim P_d*");
  }
}

void qpr_family_sum(Rng& rng, const TolerancePolicy& tol, Trial& t) {
  const KreinSpace space = draw_space(rng, tol, 4, 16);
  const Index n = space.dim();
  if (space.positive_index() == 0 || space.negative_index() == 0) {
    // Definite space: no neutral vectors, only the regular part is exercised.
    const std::vector<ProjectionOp> es = random_regular_family(rng, space, random_ranks(rng, n, 4, 3));
    const QprFamilySum res = sum_qpr_family(space, es, {});
    t.expect(res.m_basis.cols() == res.p().rank(), "M = ran P without neutral part");
    return;
  }
  const KOrthonormalBasis w = random_k_orthonormal(rng, space, n);
  std::vector<Index> plus;
  std::vector<Index> minus;
  for (Index i = 0; i < n; ++i) (w.signs[static_cast<std::size_t>(i)] > 0 ? plus : minus).push_back(i);
  const Index pairs = std::min<Index>(static_cast<Index>(std::min(plus.size(), minus.size())), 3);
  const Index t_count = rng.index(1, pairs);
  std::vector<CMatrix> ts;
  for (Index k = 0; k < t_count; ++k) {
    const CVector u = (w.w.col(plus[static_cast<std::size_t>(k)]) + w.w.col(minus[static_cast<std::size_t>(k)]));
    ts.push_back(u.normalized() * rng.gaussian(n, 1).adjoint());
  }
  std::vector<Index> rest;
  rest.insert(rest.end(), plus.begin() + t_count, plus.end());
  rest.insert(rest.end(), minus.begin() + t_count, minus.end());
  std::vector<ProjectionOp> es;
  const Index e_count = rng.index(0, std::min<Index>(static_cast<Index>(rest.size()), 4));
  for (Index k = 0; k < e_count; ++k) {
    es.push_back(selfadjoint_projection(Subspace::span_of(space, w.w.col(rest[static_cast<std::size_t>(k)]))));
  }
  QprFamilyOptions opts;
  opts.seed = rng.engine()();
  opts.subsets.seed = opts.seed;
  const QprFamilySum res = sum_qpr_family(space, es, ts, opts);
  t.residual(res.neutrality_residual);
  t.expect(res.neutrality_residual <= 1e-9, "N neutral");
  t.expect(res.orthogonality_residual <= 1e-9 * scale1(res.c), "N K-orthogonal to ran P");
  t.expect(res.n_meets_p_trivially, "N ∩ ran P = 0");
  t.expect(res.sampled_containment && res.sampled_reconstruction, "sampled members of M decompose");
  t.expect(res.adjoint_check.holds, "adjoint bound");
  t.expect(res.m_basis.cols() == e_count + t_count, "dim M = rank P + rank of the T's");
}

void similarity_condition(Rng& rng, const TolerancePolicy&, Trial& t) {
  const Index m = rng.index(1, 4);
  const Index n = 2 * m;
  std::vector<int> signs;
  for (Index k = 0; k < m; ++k) {
    signs.push_back(1);
    signs.push_back(-1);
  }
  const KreinSpace space = KreinSpace::diagonal(signs);
  CMatrix x_inv = CMatrix::Zero(n, n);  // block-diagonal hyperbolic rotations
  std::vector<ProjectionOp> es;
  bool any_tilted = false;
  for (Index k = 0; k < m; ++k) {
    const double s = rng.uniform(0.0, 1.5);
    any_tilted = any_tilted || s > 1e-3;
    CMatrix h(2, 2);
    h << std::cosh(s), std::sinh(s), std::sinh(s), std::cosh(s);
    x_inv.block(2 * k, 2 * k, 2, 2) = h;
    CMatrix v = CMatrix::Zero(n, 1);
    v.block(2 * k, 0, 2, 1) = h.col(0);
    es.push_back(selfadjoint_projection(Subspace::span_of(space, v)));
  }
  const CMatrix x = x_inv.inverse();
  t.expect(verify_similarity_condition(es, x), "hyperbolic rotation makes the family orthogonal");
  if (any_tilted) {
    t.expect(!verify_similarity_condition(es, CMatrix::Identity(n, n)), "tilted family not orthogonal for X = I");
  }
  const KreinSpace flat = KreinSpace::euclidean(n);
  std::vector<ProjectionOp> hs;
  hs.push_back(selfadjoint_projection(Subspace::span_of(flat, rng.gaussian(n, rng.index(1, n)))));
  t.expect(verify_similarity_condition(hs, CMatrix::Identity(n, n)), "orthogonal projections with X = I");
}

// ---------------------------------------------------------------- scenarios

void check_purity(const MetricSeries& series, Trial& t) {
  const VerdictResult again = judge(series.scenario, series.rows);
  t.expect(again.verdict == series.verdict && again.failed_checks == series.failed_checks, "verdict is a pure function of the rows");
}

void expect_confirmed(const MetricSeries& series, Trial& t) {
  std::string what = series.scenario + " verdict confirmed";
  if (!series.failed_checks.empty()) what += " (" + series.failed_checks.front() + ")";
  t.expect(series.verdict == Verdict::kConfirmed, what);
  check_purity(series, t);
}

MetricSeries run(const std::string& name, std::uint64_t seed, std::vector<Index> sizes = {}) {
  Scenario s;
  s.name = name;
  s.seed = seed;
  s.sizes = std::move(sizes);
  return run_scenario(s);
}

std::uint64_t scenario_seed = 0;

void toeplitz_spectrum(Rng&, const TolerancePolicy&, Trial& t) {
  const MetricSeries probe = run("toeplitz", scenario_seed, {4, 64, 512});
  for (const MetricRow& row : probe.rows) {
    t.residual(row.get("eig_max_error"));
    t.expect(row.get("eig_max_error") <= 1e-10, "eigenvalues match the closed form");
  }
  for (std::size_t i = 1; i < probe.rows.size(); ++i) {
    t.expect(probe.rows[i].get("min_eig") < probe.rows[i - 1].get("min_eig"), "smallest eigenvalue decreases");
    t.expect(probe.rows[i].get("condition") > probe.rows[i - 1].get("condition"), "condition grows");
  }
  expect_confirmed(run("toeplitz", scenario_seed), t);
}

void zero_angle_sum(Rng&, const TolerancePolicy&, Trial& t) {
  const MetricSeries s = run("zero_angle", scenario_seed);
  for (const MetricRow& row : s.rows) {
    t.residual(row.get("angle_error"));
    t.expect(row.get("angle_error") <= 1e-10, "angle matches the closed form");
  }
  expect_confirmed(s, t);
}

void range_closure(Rng&, const TolerancePolicy&, Trial& t) {
  const MetricSeries s = run("identical_range_closure", scenario_seed);
  for (const MetricRow& row : s.rows) {
    t.residual(row.get("sum_y_over_x"));
    t.expect(row.get("sum_y_over_x") <= 3.0, "sum ||y_k|| <= 3 ||x||");
  }
  expect_confirmed(s, t);
}

void blowup_dichotomy(Rng&, const TolerancePolicy&, Trial& t) {
  const MetricSeries s = run("blowup_family", scenario_seed);
  for (std::size_t i = 1; i < s.rows.size(); ++i) {
    t.expect(s.rows[i].get("C_log") > s.rows[i - 1].get("C_log"), "C grows with log k");
  }
  const MetricRow& first = s.rows.front();
  const MetricRow& last = s.rows.back();
  t.expect(last.get("C_log") > 10.0 * first.get("C_log"), "C grows tenfold over the ladder");
  t.expect(first.get("span_margin_log") >= 10.0 * last.get("span_margin_log"), "span margin drops tenfold");
  double c_lo = first.get("C_const");
  double c_hi = c_lo;
  double margin_lo = first.get("span_margin_const");
  for (const MetricRow& row : s.rows) {
    c_lo = std::min(c_lo, row.get("C_const"));
    c_hi = std::max(c_hi, row.get("C_const"));
    margin_lo = std::min(margin_lo, row.get("span_margin_const"));
  }
  t.residual(c_hi - c_lo);
  t.expect(c_hi - c_lo <= 1e-9, "constant parameter keeps C fixed");
  t.expect(margin_lo >= 0.5 * first.get("span_margin_const"), "constant parameter keeps the margin");
  for (const MetricRow& row : s.rows) {
    t.expect(row.get("flags_agree_log") > 0.5, "flags agree at every size");
    t.expect(row.get("flags_true_const") > 0.5, "constant parameter satisfies every condition");
  }
  expect_confirmed(s, t);
}

void remaining_scenarios(Rng&, const TolerancePolicy&, Trial& t) {
  for (const char* name : {"unbounded_functional", "qpr_sum_nonunique", "all_ones_row"}) {
    expect_confirmed(run(name, scenario_seed), t);
  }
}

const std::vector<Property>& registry() {
  static const std::vector<Property> props = {
      {"lemmas", "numeric_basics", "range and null bases, angle and inner product symmetry", 300, numeric_basics},
      {"lemmas", "isotropic_part_matches_intersection", "S^0 from the Gram kernel equals S ∩ S^perp", 1000,
       isotropic_matches_intersection},
      {"lemmas", "complement_independent", "regular R and M ⊆ R^perp are independent", 300, complement_independent},
      {"lemmas", "companion_sum_dimension", "dim (S + S^perp) = n - dim S^0", 300, companion_sum_dimension},
      {"lemmas", "orthogonal_sum_projection", "selfadjoint projection onto an orthogonal sum", 300,
       orthogonal_sum_projection},
      {"lemmas", "orthogonal_isotropic_additivity", "isotropic parts add over K-orthogonal sums", 300,
       orthogonal_isotropic_additivity},
      {"lemmas", "small_negative_index_decomposes", "decomposition with negative index at most 2", 1000,
       small_negative_index},
      {"lemmas", "classification_basis_invariant", "classification independent of the basis", 300,
       classification_basis_invariant},
      {"lemmas", "adapted_symmetry_invariants", "J' is a fundamental symmetry leaving R invariant", 300,
       adapted_symmetry_invariants},
      {"lemmas", "kadjoint_properties", "K-adjoint identity and involution", 300, kadjoint_properties},
      {"lemmas", "complement_properties", "complementary projection", 300, complement_properties},
      {"lemmas", "normal_projection_contract", "normal projection onto a degenerate subspace", 300,
       normal_projection_contract},
      {"lemmas", "selfadjoint_basis_independent", "selfadjoint projection independent of the basis", 300,
       selfadjoint_basis_independent},
      {"lemmas", "order_relations", "product and geometric order agree", 300, order_relations},
      {"sums", "ms_rearrangement_invariant", "unordered sums with certificates", 200, ms_rearrangement},
      {"sums", "absolute_sum_bound", "row operator bound by absolute norms", 300, absolute_sum_bound},
      {"sums", "adjoint_square_bound", "sum ||T* u||^2 <= 4 C^2 ||u||^2", 300, adjoint_bound},
      {"sums", "scaling_preserves_range", "positive scalings keep the range", 300, scaling_preserves_range},
      {"sums", "regular_family_flags_agree", "regular family conditions and frame bounds", 500,
       regular_family_flags},
      {"sums", "flags_norm_independent", "conditions invariant under a J-unitary change of norm", 200,
       flags_norm_independent},
      {"sums", "normal_family_sum", "sums of normal families and violation reports", 300, normal_family_sum},
      {"sums", "net_limits", "limits of nets of projections", 300, net_limits},
      {"sums", "qpr_family_sum", "sums with regular and neutral parts", 200, qpr_family_sum},
      {"sums", "similarity_condition", "similarity to an orthogonal family", 200, similarity_condition},
      {"scenarios", "toeplitz_spectrum", "Toeplitz spectrum ladder", 0, toeplitz_spectrum},
      {"scenarios", "zero_angle_sum", "zero-angle sum ladder", 0, zero_angle_sum},
      {"scenarios", "range_closure_bound", "identical range closure ladder", 0, range_closure},
      {"scenarios", "blowup_dichotomy", "parameterization dichotomy ladder", 0, blowup_dichotomy},
      {"scenarios", "remaining_scenarios", "remaining ladders confirm", 0, remaining_scenarios},
  };
  return props;
}

PropertyResult execute(const Property& p, const VerifyOptions& opts) {
  PropertyResult out;
  out.suite = p.suite;
  out.name = p.name;
  out.description = p.description;
  out.trials = p.trials == 0 ? 1 : opts.trials.value_or(p.trials);
  scenario_seed = opts.seed;
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < out.trials; ++i) {
    Rng rng(trial_seed(opts.seed, p.name, i));
    Trial t;
    DecisionMonitor::reset(opts.tol.relative_eps);
    try {
      p.run(rng, opts.tol, t);
    } catch (const KreinError& e) {
      t.pass = false;
      t.note = std::string(error_kind_name(e.kind())) + ": " + e.violated();
    }
    if (DecisionMonitor::near_count() > 0) t.borderline = true;
    out.worst = std::max(out.worst, t.worst);
    if (t.borderline) ++out.borderline;
    if (t.pass) {
      ++out.passed;
    } else if (t.borderline) {
      ++out.borderline_failures;
    } else {
      ++out.failed;
      if (out.first_failure.empty()) {
        std::ostringstream msg;
        msg << "trial " << i << ": " << t.note;
        out.first_failure = msg.str();
      }
    }
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

bool suite_matches(const std::string& suite, const Property& p) { return suite == "all" || suite == p.suite; }

void require_suite(const std::string& suite) {
  const std::vector<std::string> names = verify_suites();
  if (std::find(names.begin(), names.end(), suite) == names.end()) {
    throw KreinError(ErrorKind::kInvalidArgument, "suite in {all, lemmas, sums, scenarios}", "unknown suite: " + suite);
  }
}

}  // namespace

bool VerifyReport::all_passed() const {
  return std::all_of(properties.begin(), properties.end(), [](const PropertyResult& p) { return p.ok(); });
}

std::size_t VerifyReport::borderline_total() const {
  std::size_t total = 0;
  for (const PropertyResult& p : properties) total += p.borderline;
  return total;
}

const PropertyResult& VerifyReport::find(const std::string& name) const {
  for (const PropertyResult& p : properties) {
    if (p.name == name) return p;
  }
  throw KreinError(ErrorKind::kInvalidArgument, "known property", "no property named " + name);
}

std::vector<std::string> verify_suites() { return {"all", "lemmas", "sums", "scenarios"}; }

std::vector<std::string> property_names(const std::string& suite) {
  require_suite(suite);
  std::vector<std::string> out;
  for (const Property& p : registry()) {
    if (suite_matches(suite, p)) out.emplace_back(p.name);
  }
  return out;
}

VerifyReport run_verify(const VerifyOptions& opts) {
  require_suite(opts.suite);
  if (opts.trials && *opts.trials == 0) {
    throw KreinError(ErrorKind::kInvalidArgument, "trials >= 1", "trial count must be positive");
  }
  VerifyReport report;
  const auto start = std::chrono::steady_clock::now();
  for (const Property& p : registry()) {
    if (suite_matches(opts.suite, p)) report.properties.push_back(execute(p, opts));
  }
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

PropertyResult run_property(const std::string& name, const VerifyOptions& opts) {
  if (opts.trials && *opts.trials == 0) {
    throw KreinError(ErrorKind::kInvalidArgument, "trials >= 1", "trial count must be positive");
  }
  for (const Property& p : registry()) {
    if (name == p.name) return execute(p, opts);
  }
  throw KreinError(ErrorKind::kInvalidArgument, "known property", "no property named " + name);
}

}  // namespace kreinlab
