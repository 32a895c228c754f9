#pragma once

// Krein-space structure on C^n: a fundamental symmetry J, the indefinite
// inner product <x, y> = y^H J x, and the classification and decomposition
// of subspaces into regular and isotropic parts.

#include <memory>
#include <string_view>

#include "kreinlab/numeric.hpp"

namespace kreinlab {

/// C^n with a fundamental symmetry J (J = J^H, J^2 = I). Copies share the
/// underlying J, so passing a KreinSpace by value is cheap.
class KreinSpace {
 public:
  /// Throws KreinError(kInvalidSymmetry) unless J is a Hermitian involution
  /// within 1e-10.
  explicit KreinSpace(CMatrix j, TolerancePolicy tol = {});

  /// J = diag(signs); every entry must be +1 or -1.
  static KreinSpace diagonal(const std::vector<int>& signs, TolerancePolicy tol = {});
  static KreinSpace euclidean(Index dim, TolerancePolicy tol = {});

  Index dim() const { return data_->j.rows(); }
  const CMatrix& j() const { return data_->j; }
  const TolerancePolicy& tolerance() const { return data_->tol; }
  Index positive_index() const { return data_->n_plus; }
  Index negative_index() const { return data_->n_minus; }

  /// J * X, using the diagonal fast path when J is diagonal.
  CMatrix apply_j(const CMatrix& x) const;

  /// Same J with a different tolerance policy.
  KreinSpace with_tolerance(TolerancePolicy tol) const;

  /// <x, y>_K = y^H J x, linear in x.
  Complex kip(const CVector& x, const CVector& y) const;

  /// Gram matrix B^H J B.
  CMatrix gram(const CMatrix& b) const;

  bool same_as(const KreinSpace& other) const;

 private:
  struct Data {
    CMatrix j;
    TolerancePolicy tol;
    Index n_plus = 0;
    Index n_minus = 0;
    bool diagonal = false;
    RVector diag;
  };
  explicit KreinSpace(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
  std::shared_ptr<const Data> data_;
};

/// Subspace of a Krein space held as a Euclidean-orthonormal basis.
class Subspace {
 public:
  /// Orthonormal basis of the column span of `generators`.
  static Subspace span_of(const KreinSpace& space, const CMatrix& generators);
  /// Throws KreinError(kNotOrthonormal) unless B^H B = I within 1e-10.
  static Subspace from_orthonormal(const KreinSpace& space, CMatrix basis);
  static Subspace zero(const KreinSpace& space);
  static Subspace whole(const KreinSpace& space);

  const KreinSpace& space() const { return space_; }
  const CMatrix& basis() const { return basis_; }
  const TolerancePolicy& tol() const { return space_.tolerance(); }
  Index dim() const { return basis_.cols(); }
  Index ambient_dim() const { return basis_.rows(); }
  CMatrix gram() const { return space_.gram(basis_); }

  bool contains(const CVector& x, double tol) const;
  bool same_as(const Subspace& other, double angle_tol) const;

 private:
  Subspace(KreinSpace space, CMatrix basis) : space_(std::move(space)), basis_(std::move(basis)) {}
  KreinSpace space_;
  CMatrix basis_;
};

enum class SubspaceKind { kPositive, kNegative, kNeutral, kIndefiniteNondegenerate, kDegenerate };

std::string_view subspace_kind_name(SubspaceKind kind);

struct Classification {
  SubspaceKind kind = SubspaceKind::kNeutral;
  bool regular = true;
  double regularity_margin = 1.0;  // smallest singular value of the Gram
  Index isotropic_dim = 0;
  Index positive_dim = 0;
  Index negative_dim = 0;
  double threshold = 0.0;
  /// Some Gram eigenvalue lies within a factor 10 of the threshold.
  bool borderline = false;
};

struct QprDecomposition {
  Subspace regular_part;
  Subspace isotropic_part;
  CMatrix adapted_j;
  double regular_margin = 1.0;
};

struct CompanionSumCheck {
  double sum_with_companion_margin = 1.0;
  Index sum_dim = 0;
  bool is_qpr = true;
};

/// S^perp = { t : <s, t>_K = 0 for all s in S }.
Subspace ortho_companion(const Subspace& s);

Classification classify(const Subspace& s);

/// S^0 = S ∩ S^perp, computed from the kernel of the Gram matrix.
Subspace isotropic_part(const Subspace& s);

/// S = R ∔ N with N = S^0 and R the Euclidean complement of N inside S.
QprDecomposition decompose_qpr(const Subspace& s);

/// Fundamental symmetry J' with J'R = R and J'R^perp = R^perp. Throws
/// KreinError(kNotRegular) when R is degenerate.
CMatrix adapted_symmetry(const Subspace& r);

/// Margin of S + S^perp: smallest nonzero singular value of [B_S, B_S^perp].
CompanionSumCheck check_qpr_criterion(const Subspace& s);

}  // namespace kreinlab
