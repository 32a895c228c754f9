#include "kreinlab/projections.hpp"

#include <algorithm>

#include "kreinlab/errors.hpp"

namespace kreinlab {

namespace {

constexpr double kIdempotencyTol = 1e-9;
constexpr double kFlagTol = 1e-9;
constexpr double kMaxCondition = 1e12;
constexpr double kContainmentTol = 1e-8;

void require_operator(const KreinSpace& space, const CMatrix& a, const char* what) {
  if (a.rows() != space.dim() || a.cols() != space.dim()) {
    throw KreinError(ErrorKind::kDimensionMismatch, "square of size dim H", what);
  }
}

CMatrix block_diag(const CMatrix& a, const CMatrix& b) {
  CMatrix out = CMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

CMatrix hcat(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows(), a.cols() + b.cols());
  out << a, b;
  return out;
}

}  // namespace

ProjectionOp::ProjectionOp(KreinSpace space, CMatrix b, CMatrix c, CMatrix m)
    : space_(std::move(space)), b_(std::move(b)), c_(std::move(c)), m_(std::move(m)) {
  if (rank() == 0) {
    flags_ = {true, true};
    return;
  }
  norm_ = operator_norm(m_);
  const CMatrix jb = space_.apply_j(b_);
  const CMatrix jc = space_.apply_j(c_);
  // J P - P^H J = [JB, C] diag(M, -M^H) [C, JB]^H
  sa_residual_ = lowrank_norm(hcat(jb, c_), block_diag(m_, -m_.adjoint()), hcat(c_, jb));
  // P P^{*K} - P^{*K} P = [B, JC] diag(M C^H J C M^H, -M^H B^H J B M) [JB, C]^H
  const CMatrix left = m_ * (c_.adjoint() * jc) * m_.adjoint();
  const CMatrix right = m_.adjoint() * (b_.adjoint() * jb) * m_;
  normal_residual_ = lowrank_norm(hcat(b_, jc), block_diag(left, -right), hcat(jb, c_));
  flags_.j_selfadjoint = sa_residual_ <= kFlagTol * norm_;
  flags_.normal = normal_residual_ <= kFlagTol * norm_ * norm_;
}

ProjectionOp ProjectionOp::from_matrix(const KreinSpace& space, const CMatrix& p) {
  require_operator(space, p, "projection matrix does not act on the space");
  if (!p.allFinite()) {
    throw KreinError(ErrorKind::kInvalidArgument, "finite entries", "projection matrix is not finite");
  }
  const double norm = operator_norm(p);
  if (operator_norm(p * p - p) > kIdempotencyTol * (1.0 + norm)) {
    throw KreinError(ErrorKind::kNotProjection, "P^2 = P", "matrix is not idempotent");
  }
  const Svd svd = thin_svd(p);
  const Index r = svd.sigma.size() == 0
                      ? 0
                      : numerical_rank(svd.sigma, space.tolerance().threshold(p.rows(), p.cols(), svd.sigma(0)));
  CMatrix b = svd.u.leftCols(r);
  CMatrix c = svd.v.leftCols(r);
  CMatrix m = svd.sigma.head(r).cast<Complex>().asDiagonal();
  ProjectionOp out(space, std::move(b), std::move(c), std::move(m));
  if (out.idempotency_residual() > kIdempotencyTol * (1.0 + out.norm())) {
    throw KreinError(ErrorKind::kNotProjection, "P^2 = P", "matrix is not idempotent");
  }
  return out;
}

ProjectionOp ProjectionOp::from_lowrank(const KreinSpace& space, const CMatrix& u, const CMatrix& k,
                                        const CMatrix& v) {
  if (u.rows() != space.dim() || v.rows() != space.dim() || k.rows() != u.cols() || k.cols() != v.cols()) {
    throw KreinError(ErrorKind::kDimensionMismatch, "U K V^H conformable with dim H",
                     "low-rank factors do not match the space");
  }
  const Index n = space.dim();
  if (u.cols() == 0 || v.cols() == 0) {
    return ProjectionOp(space, CMatrix::Zero(n, 0), CMatrix::Zero(n, 0), CMatrix::Zero(0, 0));
  }
  const Svd su = thin_svd(u);
  const Svd sv = thin_svd(v);
  const CMatrix core = su.sigma.cast<Complex>().asDiagonal() * (su.v.adjoint() * k * sv.v) *
                       sv.sigma.cast<Complex>().asDiagonal();
  const Svd sc = thin_svd(core);
  const Index r = sc.sigma.size() == 0 || sc.sigma(0) == 0.0
                      ? 0
                      : numerical_rank(sc.sigma, space.tolerance().threshold(n, n, sc.sigma(0)));
  CMatrix b = su.u * sc.u.leftCols(r);
  CMatrix c = sv.u * sc.v.leftCols(r);
  CMatrix m = sc.sigma.head(r).cast<Complex>().asDiagonal();
  ProjectionOp out(space, std::move(b), std::move(c), std::move(m));
  if (out.idempotency_residual() > kIdempotencyTol * (1.0 + out.norm())) {
    throw KreinError(ErrorKind::kNotProjection, "P^2 = P", "low-rank operator is not idempotent");
  }
  return out;
}

ProjectionOp ProjectionOp::from_range_corange(const KreinSpace& space, CMatrix range, CMatrix corange) {
  if (range.rows() != space.dim() || corange.rows() != space.dim() || range.cols() != corange.cols()) {
    throw KreinError(ErrorKind::kNotComplementary, "dim ran P + dim ker P = dim H",
                     "range and kernel dimensions do not add up");
  }
  const Index r = range.cols();
  if (r == 0) return ProjectionOp(space, std::move(range), std::move(corange), CMatrix::Zero(0, 0));
  const CMatrix cross = corange.adjoint() * range;
  const RVector sigma = singular_values(cross);
  // The ratio test alone misses rank one, where sigma(0) = sigma(r - 1).
  const double scale = operator_norm(range) * operator_norm(corange);
  const double cutoff = space.tolerance().threshold(r, r, scale);
  DecisionMonitor::note(sigma(r - 1), cutoff);
  if (sigma(r - 1) <= cutoff || sigma(0) / sigma(r - 1) > kMaxCondition) {
    throw KreinError(ErrorKind::kNotComplementary, "ran P ∩ ker P = {0}",
                     "range and kernel are not complementary");
  }
  CMatrix m = cross.fullPivLu().inverse();
  return ProjectionOp(space, std::move(range), std::move(corange), std::move(m));
}

CMatrix ProjectionOp::matrix() const {
  if (rank() == 0) return CMatrix::Zero(dim(), dim());
  return b_ * m_ * c_.adjoint();
}

CMatrix ProjectionOp::kernel_basis() const {
  return orthogonal_complement(c_);
}

double ProjectionOp::idempotency_residual() const {
  if (rank() == 0) return 0.0;
  return operator_norm(m_ * (c_.adjoint() * b_) * m_ - m_);
}

CMatrix ProjectionOp::apply(const CMatrix& x) const {
  if (x.rows() != dim()) {
    throw KreinError(ErrorKind::kDimensionMismatch, "rows = dim H", "operand does not match the projection");
  }
  if (rank() == 0) return CMatrix::Zero(x.rows(), x.cols());
  return b_ * (m_ * (c_.adjoint() * x));
}

CMatrix ProjectionOp::apply_adjoint(const CMatrix& x) const {
  if (x.rows() != dim()) {
    throw KreinError(ErrorKind::kDimensionMismatch, "rows = dim H", "operand does not match the projection");
  }
  if (rank() == 0) return CMatrix::Zero(x.rows(), x.cols());
  return c_ * (m_.adjoint() * (b_.adjoint() * x));
}

ProjectionOp ProjectionOp::complement() const {
  return from_range_corange(space_, orthogonal_complement(c_), orthogonal_complement(b_));
}

ProjectionOp ProjectionOp::kadjoint() const {
  return ProjectionOp(space_, space_.apply_j(c_), space_.apply_j(b_), m_.adjoint());
}

Subspace ProjectionOp::range() const {
  return Subspace::from_orthonormal(space_, b_);
}

Subspace ProjectionOp::kernel() const {
  return Subspace::from_orthonormal(space_, kernel_basis());
}

CMatrix kadjoint(const CMatrix& a, const KreinSpace& space) {
  require_operator(space, a, "operator does not act on the space");
  const CMatrix ja = space.apply_j(a);  // J A
  return space.apply_j(ja.adjoint());   // J (J A)^H = J A^H J
}

double projection_distance(const ProjectionOp& p1, const ProjectionOp& p2) {
  if (p1.dim() != p2.dim()) {
    throw KreinError(ErrorKind::kDimensionMismatch, "same space", "projections act on different spaces");
  }
  return lowrank_norm(hcat(p1.range_basis(), p2.range_basis()), block_diag(p1.coupling(), -p2.coupling()),
                      hcat(p1.corange_basis(), p2.corange_basis()));
}

ProjectionOp oblique_projection(const Subspace& range, const Subspace& kernel) {
  if (!range.space().same_as(kernel.space())) {
    throw KreinError(ErrorKind::kDimensionMismatch, "same space", "range and kernel live in different spaces");
  }
  if (range.dim() + kernel.dim() != range.ambient_dim()) {
    throw KreinError(ErrorKind::kNotComplementary, "dim ran P + dim ker P = dim H",
                     "range and kernel dimensions do not add up");
  }
  return ProjectionOp::from_range_corange(range.space(), range.basis(), orthogonal_complement(kernel.basis()));
}

ProjectionOp selfadjoint_projection(const Subspace& r) {
  const KreinSpace& space = r.space();
  if (r.dim() == 0) return ProjectionOp::from_range_corange(space, r.basis(), r.basis());
  const Classification c = classify(r);
  if (!c.regular) {
    throw KreinError(ErrorKind::kNotRegular, "regularity margin > threshold",
                     "selfadjoint projection needs a regular subspace");
  }
  const CMatrix jb = space.apply_j(r.basis());
  const RVector sigma = singular_values(r.gram());
  if (sigma(0) / sigma(sigma.size() - 1) > kMaxCondition) {
    throw KreinError(ErrorKind::kNotRegular, "cond(B^H J B) <= 1e12", "Gram matrix is too ill-conditioned");
  }
  return ProjectionOp::from_range_corange(space, r.basis(), jb);
}

ProjectionOp normal_projection(const Subspace& s) {
  const KreinSpace& space = s.space();
  if (s.dim() == 0) return ProjectionOp::from_range_corange(space, s.basis(), s.basis());
  const QprDecomposition dec = decompose_qpr(s);
  if (dec.isotropic_part.dim() == 0) return selfadjoint_projection(s);
  const TolerancePolicy& tol = space.tolerance();
  const CMatrix jn = orthonormal_range_basis(dec.adapted_j * dec.isotropic_part.basis(), tol);
  CMatrix all(space.dim(), s.dim() + jn.cols());
  all << s.basis(), jn;
  const Subspace core = Subspace::span_of(space, all);
  const Subspace w = ortho_companion(core);
  const Subspace kernel = Subspace::span_of(space, hcat(jn, w.basis()));
  return oblique_projection(s, kernel);
}

OrderCheck check_order(const ProjectionOp& p1, const ProjectionOp& p2) {
  if (p1.dim() != p2.dim() || !p1.space().same_as(p2.space())) {
    throw KreinError(ErrorKind::kDimensionMismatch, "same space", "projections act on different spaces");
  }
  OrderCheck out;
  out.tolerance = kFlagTol * std::max(1.0, p1.norm() * std::max(1.0, p2.norm()));
  if (p1.rank() > 0) {
    // P2 P1 - P1 = -(1 - P2) B1 M1 C1^H and C1 is orthonormal.
    const CMatrix bm = p1.range_basis() * p1.coupling();
    out.ran_residual = operator_norm(bm - p2.apply(bm));
    // (P1 P2 - P1)^H = -(1 - P2^H) C1 M1^H B1^H.
    const CMatrix cm = p1.corange_basis() * p1.coupling().adjoint();
    out.ker_residual = operator_norm(cm - p2.apply_adjoint(cm));
  }
  out.ran_contained = out.ran_residual <= out.tolerance;
  out.ker_contains = out.ker_residual <= out.tolerance;
  out.products_ok = out.ran_contained && out.ker_contains;
  out.geometric_ran_contained = containment_gap(p1.range_basis(), p2.range_basis()) <= kContainmentTol;
  out.geometric_ker_contains = containment_gap(p1.corange_basis(), p2.corange_basis()) <= kContainmentTol;
  return out;
}

}  // namespace kreinlab
