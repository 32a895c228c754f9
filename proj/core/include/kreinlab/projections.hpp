#pragma once

// Projections in a Krein space. A projection of rank r is stored in factored
// form P = B M C^H with B an orthonormal basis of ran P, C an orthonormal
// basis of ran P^H = (ker P)^perp, and M = (C^H B)^{-1} an r x r coupling.
// Norms and flags are computed from the factors; the dense matrix and the
// kernel basis are formed only on request.

#include "kreinlab/krein.hpp"

namespace kreinlab {

struct ProjectionFlags {
  bool j_selfadjoint = false;
  bool normal = false;
};

class ProjectionOp {
 public:
  /// Throws KreinError(kNotProjection) unless P^2 = P within 1e-9 (1 + ||P||),
  /// kDimensionMismatch when P does not act on the space.
  static ProjectionOp from_matrix(const KreinSpace& space, const CMatrix& p);

  /// P = U K V^H given as low-rank factors (U, V tall). Same checks as from_matrix.
  static ProjectionOp from_lowrank(const KreinSpace& space, const CMatrix& u, const CMatrix& k,
                                   const CMatrix& v);

  /// Projection with the given range and corange (orthonormal bases of equal
  /// width). Throws kNotComplementary when C^H B is singular.
  static ProjectionOp from_range_corange(const KreinSpace& space, CMatrix range, CMatrix corange);

  const KreinSpace& space() const { return space_; }
  Index dim() const { return b_.rows(); }
  Index rank() const { return b_.cols(); }

  const CMatrix& range_basis() const { return b_; }
  const CMatrix& corange_basis() const { return c_; }
  const CMatrix& coupling() const { return m_; }

  CMatrix matrix() const;
  CMatrix kernel_basis() const;

  double norm() const { return norm_; }
  const ProjectionFlags& flags() const { return flags_; }
  /// ||J P - P^H J|| and ||P P^{*K} - P^{*K} P||, the quantities behind the flags.
  double selfadjoint_residual() const { return sa_residual_; }
  double normal_residual() const { return normal_residual_; }
  /// ||P^2 - P||, measured on the factors.
  double idempotency_residual() const;

  CMatrix apply(const CMatrix& x) const;
  /// P^H x, used for products on the left.
  CMatrix apply_adjoint(const CMatrix& x) const;

  /// 1 - P: range and kernel swapped.
  ProjectionOp complement() const;
  /// P^{*K} = J P^H J.
  ProjectionOp kadjoint() const;

  Subspace range() const;
  Subspace kernel() const;

 private:
  ProjectionOp(KreinSpace space, CMatrix b, CMatrix c, CMatrix m);
  KreinSpace space_;
  CMatrix b_;
  CMatrix c_;
  CMatrix m_;
  double norm_ = 0.0;
  double sa_residual_ = 0.0;
  double normal_residual_ = 0.0;
  ProjectionFlags flags_;
};

/// J A^H J. Throws kDimensionMismatch unless A is square of the space dimension.
CMatrix kadjoint(const CMatrix& a, const KreinSpace& space);

/// ||P1 - P2|| computed from the factors.
double projection_distance(const ProjectionOp& p1, const ProjectionOp& p2);

/// Unique P with ran P = range and ker P = kernel. Throws kNotComplementary.
ProjectionOp oblique_projection(const Subspace& range, const Subspace& kernel);

/// P = B (B^H J B)^{-1} B^H J. Throws kNotRegular for degenerate or
/// ill-conditioned (cond > 1e12) Gram matrices.
ProjectionOp selfadjoint_projection(const Subspace& r);

/// Normal projection onto S with kernel J'N ⊕ W, where S = R ∔ N,
/// J' adapts to R and W is the companion of R + N + J'N.
ProjectionOp normal_projection(const Subspace& s);

struct OrderCheck {
  bool ran_contained = false;  // ran P1 ⊆ ran P2, i.e. P2 P1 = P1
  bool ker_contains = false;   // ker P1 ⊇ ker P2, i.e. P1 P2 = P1
  bool products_ok = false;
  double ran_residual = 0.0;
  double ker_residual = 0.0;
  double tolerance = 0.0;
  bool geometric_ran_contained = false;
  bool geometric_ker_contains = false;
};

/// Throws kDimensionMismatch when the projections live in different spaces.
OrderCheck check_order(const ProjectionOp& p1, const ProjectionOp& p2);

}  // namespace kreinlab
