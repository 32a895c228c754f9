#include "kreinlab/krein.hpp"

#include <cmath>

#include "kreinlab/errors.hpp"

namespace kreinlab {

namespace {

constexpr double kStructureTol = 1e-10;
constexpr Index kDenseCheckLimit = 512;
constexpr Index kProbeCount = 8;

struct GramSpectrum {
  RVector values;  // ascending
  CMatrix vectors;
  double threshold = 0.0;
};

// The Gram of an orthonormal basis under a unitary J has norm at most one,
// so rank decisions use the unit-scale threshold rather than its own norm
// (a neutral Gram is ~1e-17 and would otherwise set a vanishing scale).
GramSpectrum gram_spectrum(const Subspace& s) {
  GramSpectrum out;
  const CMatrix g = s.gram();
  out.threshold = s.tol().unit_threshold(s.ambient_dim(), s.dim());
  if (g.rows() == 0) {
    out.values = RVector::Zero(0);
    out.vectors = CMatrix::Zero(0, 0);
    return out;
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(0.5 * (g + g.adjoint()));
  out.values = eig.eigenvalues();
  out.vectors = eig.eigenvectors();
  for (Index i = 0; i < out.values.size(); ++i) DecisionMonitor::note(out.values(i), out.threshold);
  return out;
}

// ||J^2 - I||_F, or for large J its action on a fixed set of unit probes.
double involution_residual(const CMatrix& j) {
  const Index n = j.rows();
  if (n <= kDenseCheckLimit) return (j * j - CMatrix::Identity(n, n)).norm();
  CMatrix probes(n, kProbeCount);
  for (Index c = 0; c < kProbeCount; ++c) {
    for (Index i = 0; i < n; ++i) {
      probes(i, c) = Complex(std::cos(0.7 * static_cast<double>(i * (c + 1)) + 0.3 * static_cast<double>(c)),
                             std::sin(1.3 * static_cast<double>(i + c)));
    }
    probes.col(c).normalize();
  }
  return (j * (j * probes) - probes).norm();
}

CMatrix select_columns(const CMatrix& m, const std::vector<Index>& idx) {
  CMatrix out(m.rows(), static_cast<Index>(idx.size()));
  for (std::size_t k = 0; k < idx.size(); ++k) out.col(static_cast<Index>(k)) = m.col(idx[k]);
  return out;
}

// B |G|^{-1} B^H J: the piece of an adapted fundamental symmetry living on span(B).
CMatrix signed_part(const KreinSpace& space, const CMatrix& b) {
  if (b.cols() == 0) return CMatrix::Zero(space.dim(), space.dim());
  const CMatrix g = space.gram(b);
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(0.5 * (g + g.adjoint()));
  const RVector inv_abs = eig.eigenvalues().cwiseAbs().cwiseInverse();
  const CMatrix inv_abs_g =
      eig.eigenvectors() * inv_abs.cast<Complex>().asDiagonal() * eig.eigenvectors().adjoint();
  return b * inv_abs_g * space.apply_j(b).adjoint();
}

}  // namespace

KreinSpace::KreinSpace(CMatrix j, TolerancePolicy tol) {
  if (j.rows() != j.cols() || j.rows() == 0) {
    throw KreinError(ErrorKind::kInvalidSymmetry, "J square and nonempty",
                     "fundamental symmetry must be a nonempty square matrix");
  }
  if (!j.allFinite()) {
    throw KreinError(ErrorKind::kInvalidSymmetry, "J finite", "fundamental symmetry has non-finite entries");
  }
  if (!(tol.relative_eps > 0.0)) {
    throw KreinError(ErrorKind::kInvalidArgument, "relative_eps > 0", "tolerance must be positive");
  }
  const Index n = j.rows();
  if ((j - j.adjoint()).norm() > kStructureTol) {
    throw KreinError(ErrorKind::kInvalidSymmetry, "J = J^H", "fundamental symmetry is not Hermitian");
  }
  auto data = std::make_shared<Data>();
  data->tol = tol;
  const CMatrix off = j - CMatrix(j.diagonal().asDiagonal());
  data->diagonal = off.cwiseAbs().maxCoeff() == 0.0;
  if (data->diagonal) {
    data->diag = j.diagonal().real();
    if ((data->diag.cwiseAbs2() - RVector::Ones(n)).cwiseAbs().maxCoeff() > kStructureTol) {
      throw KreinError(ErrorKind::kInvalidSymmetry, "J^2 = I", "fundamental symmetry is not an involution");
    }
  } else if (involution_residual(j) > kStructureTol) {
    throw KreinError(ErrorKind::kInvalidSymmetry, "J^2 = I", "fundamental symmetry is not an involution");
  }
  const double trace = j.trace().real();
  data->n_plus = static_cast<Index>(std::llround((static_cast<double>(n) + trace) / 2.0));
  data->n_minus = n - data->n_plus;
  data->j = std::move(j);
  data_ = std::move(data);
}

KreinSpace KreinSpace::diagonal(const std::vector<int>& signs, TolerancePolicy tol) {
  CMatrix j = CMatrix::Zero(static_cast<Index>(signs.size()), static_cast<Index>(signs.size()));
  for (std::size_t i = 0; i < signs.size(); ++i) {
    if (signs[i] != 1 && signs[i] != -1) {
      throw KreinError(ErrorKind::kInvalidSymmetry, "signs in {+1,-1}", "diagonal symmetry needs +1/-1 entries");
    }
    j(static_cast<Index>(i), static_cast<Index>(i)) = static_cast<double>(signs[i]);
  }
  return KreinSpace(std::move(j), tol);
}

KreinSpace KreinSpace::euclidean(Index dim, TolerancePolicy tol) {
  return KreinSpace(CMatrix::Identity(dim, dim), tol);
}

CMatrix KreinSpace::apply_j(const CMatrix& x) const {
  if (x.rows() != dim()) {
    throw KreinError(ErrorKind::kDimensionMismatch, "rows = dim H", "operand does not match the space dimension");
  }
  if (data_->diagonal) return data_->diag.cast<Complex>().asDiagonal() * x;
  return data_->j * x;
}

KreinSpace KreinSpace::with_tolerance(TolerancePolicy tol) const {
  auto data = std::make_shared<Data>(*data_);
  data->tol = tol;
  return KreinSpace(std::shared_ptr<const Data>(std::move(data)));
}

Complex KreinSpace::kip(const CVector& x, const CVector& y) const {
  if (x.size() != dim() || y.size() != dim()) {
    throw KreinError(ErrorKind::kDimensionMismatch, "vector length = dim H", "kip operands do not match the space");
  }
  return y.dot(apply_j(x).col(0));
}

CMatrix KreinSpace::gram(const CMatrix& b) const {
  return b.adjoint() * apply_j(b);
}

bool KreinSpace::same_as(const KreinSpace& other) const {
  if (data_ == other.data_) return true;
  return dim() == other.dim() && (j() - other.j()).norm() <= kStructureTol;
}

Subspace Subspace::span_of(const KreinSpace& space, const CMatrix& generators) {
  if (generators.rows() != space.dim()) {
    throw KreinError(ErrorKind::kDimensionMismatch, "generator rows = dim H",
                     "subspace generators do not match the space dimension");
  }
  if (!generators.allFinite()) {
    throw KreinError(ErrorKind::kInvalidArgument, "finite entries", "subspace generators are not finite");
  }
  return Subspace(space, orthonormal_range_basis(generators, space.tolerance()));
}

Subspace Subspace::from_orthonormal(const KreinSpace& space, CMatrix basis) {
  if (basis.rows() != space.dim()) {
    throw KreinError(ErrorKind::kDimensionMismatch, "basis rows = dim H",
                     "subspace basis does not match the space dimension");
  }
  const Index r = basis.cols();
  if (r > space.dim() || (basis.adjoint() * basis - CMatrix::Identity(r, r)).norm() > kStructureTol) {
    throw KreinError(ErrorKind::kNotOrthonormal, "B^H B = I", "subspace basis is not orthonormal");
  }
  return Subspace(space, std::move(basis));
}

Subspace Subspace::zero(const KreinSpace& space) {
  return Subspace(space, CMatrix::Zero(space.dim(), 0));
}

Subspace Subspace::whole(const KreinSpace& space) {
  return Subspace(space, CMatrix::Identity(space.dim(), space.dim()));
}

bool Subspace::contains(const CVector& x, double tol) const {
  const CVector residual = x - basis_ * (basis_.adjoint() * x);
  return residual.norm() <= tol * std::max(1.0, x.norm());
}

bool Subspace::same_as(const Subspace& other, double angle_tol) const {
  return same_subspace(basis_, other.basis_, angle_tol);
}

std::string_view subspace_kind_name(SubspaceKind kind) {
  switch (kind) {
    case SubspaceKind::kPositive: return "positive";
    case SubspaceKind::kNegative: return "negative";
    case SubspaceKind::kNeutral: return "neutral";
    case SubspaceKind::kIndefiniteNondegenerate: return "indefinite-nondegenerate";
    case SubspaceKind::kDegenerate: return "degenerate";
  }
  return "unknown";
}

Subspace ortho_companion(const Subspace& s) {
  // J is unitary, so J B is orthonormal and its complement is exact.
  const CMatrix jb = s.space().apply_j(s.basis());
  return Subspace::from_orthonormal(s.space(), orthogonal_complement(jb));
}

Classification classify(const Subspace& s) {
  Classification c;
  const GramSpectrum spec = gram_spectrum(s);
  c.threshold = spec.threshold;
  if (s.dim() == 0) return c;  // {0}: neutral and regular
  double margin = spec.values.cwiseAbs().minCoeff();
  for (Index i = 0; i < spec.values.size(); ++i) {
    const double v = spec.values(i);
    const double a = std::abs(v);
    if (v > spec.threshold) {
      ++c.positive_dim;
    } else if (v < -spec.threshold) {
      ++c.negative_dim;
    } else {
      ++c.isotropic_dim;
    }
    if (a > spec.threshold / 10.0 && a <= 10.0 * spec.threshold) c.borderline = true;
  }
  c.regular = c.isotropic_dim == 0;
  c.regularity_margin = margin;
  if (c.isotropic_dim == s.dim()) {
    c.kind = SubspaceKind::kNeutral;
  } else if (c.isotropic_dim > 0) {
    c.kind = SubspaceKind::kDegenerate;
  } else if (c.negative_dim == 0) {
    c.kind = SubspaceKind::kPositive;
  } else if (c.positive_dim == 0) {
    c.kind = SubspaceKind::kNegative;
  } else {
    c.kind = SubspaceKind::kIndefiniteNondegenerate;
  }
  return c;
}

namespace {

struct GramSplit {
  CMatrix isotropic;
  CMatrix regular;
  double regular_margin = 1.0;
};

GramSplit split_by_gram(const Subspace& s) {
  const GramSpectrum spec = gram_spectrum(s);
  std::vector<Index> zero_idx;
  std::vector<Index> nonzero_idx;
  double margin = 1.0;
  bool any_nonzero = false;
  for (Index i = 0; i < spec.values.size(); ++i) {
    if (std::abs(spec.values(i)) <= spec.threshold) {
      zero_idx.push_back(i);
    } else {
      nonzero_idx.push_back(i);
      margin = any_nonzero ? std::min(margin, std::abs(spec.values(i))) : std::abs(spec.values(i));
      any_nonzero = true;
    }
  }
  GramSplit out;
  out.isotropic = s.basis() * select_columns(spec.vectors, zero_idx);
  out.regular = s.basis() * select_columns(spec.vectors, nonzero_idx);
  out.regular_margin = margin;
  return out;
}

}  // namespace

Subspace isotropic_part(const Subspace& s) {
  if (s.dim() == 0) return s;
  return Subspace::from_orthonormal(s.space(), split_by_gram(s).isotropic);
}

QprDecomposition decompose_qpr(const Subspace& s) {
  if (s.dim() == 0) {
    return QprDecomposition{s, s, adapted_symmetry(s), 1.0};
  }
  GramSplit split = split_by_gram(s);
  Subspace r = Subspace::from_orthonormal(s.space(), std::move(split.regular));
  Subspace n = Subspace::from_orthonormal(s.space(), std::move(split.isotropic));
  CMatrix jr = adapted_symmetry(r);
  return QprDecomposition{std::move(r), std::move(n), std::move(jr), split.regular_margin};
}

CMatrix adapted_symmetry(const Subspace& r) {
  const Classification c = classify(r);
  if (!c.regular) {
    throw KreinError(ErrorKind::kNotRegular, "regularity margin > threshold",
                     "adapted symmetry needs a regular subspace");
  }
  const Subspace companion = ortho_companion(r);
  return signed_part(r.space(), r.basis()) + signed_part(r.space(), companion.basis());
}

CompanionSumCheck check_qpr_criterion(const Subspace& s) {
  CompanionSumCheck out;
  const Subspace companion = ortho_companion(s);
  CMatrix stacked(s.ambient_dim(), s.dim() + companion.dim());
  stacked << s.basis(), companion.basis();
  const RVector sigma = singular_values(stacked);
  if (sigma.size() == 0 || sigma(0) == 0.0) {
    out.sum_dim = 0;
    return out;
  }
  const double cutoff = s.tol().threshold(stacked.rows(), stacked.cols(), sigma(0));
  out.sum_dim = numerical_rank(sigma, cutoff);
  out.sum_with_companion_margin = sigma(out.sum_dim - 1) / sigma(0);
  out.is_qpr = true;  // every subspace of a finite-dimensional space is qpr
  return out;
}

}  // namespace kreinlab
