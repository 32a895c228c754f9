#include "kreinlab/numeric.hpp"

#include <algorithm>
#include <cmath>

#include "kreinlab/errors.hpp"

namespace kreinlab {

double TolerancePolicy::threshold(Index rows, Index cols, double largest_singular_value) const {
  return static_cast<double>(std::max(rows, cols)) * relative_eps * largest_singular_value;
}

double TolerancePolicy::threshold(const CMatrix& a) const {
  if (a.size() == 0) return 0.0;
  const RVector s = singular_values(a);
  return threshold(a.rows(), a.cols(), s.size() > 0 ? s(0) : 0.0);
}

namespace {

constexpr Index kJacobiCutoff = 128;

struct MonitorState {
  double default_ratio = 1.0;  // default cutoff / injected cutoff
  std::size_t near = 0;
};
thread_local MonitorState monitor;

Svd jacobi_svd(const CMatrix& a) {
  Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return {svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

}  // namespace

Svd thin_svd(const CMatrix& a) {
  Svd out;
  if (a.rows() == 0 || a.cols() == 0) {
    out.u = CMatrix::Zero(a.rows(), 0);
    out.sigma = RVector::Zero(0);
    out.v = CMatrix::Zero(a.cols(), 0);
    return out;
  }
  if (std::min(a.rows(), a.cols()) <= kJacobiCutoff) return jacobi_svd(a);
  Eigen::BDCSVD<CMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  out.u = svd.matrixU();
  out.sigma = svd.singularValues();
  out.v = svd.matrixV();
  // Divide and conquer occasionally loses accuracy on deflated problems.
  const double scale = out.sigma.size() > 0 ? out.sigma(0) : 0.0;
  const double err = (out.u * out.sigma.cast<Complex>().asDiagonal() * out.v.adjoint() - a).norm();
  if (!(err <= 1e-10 * std::max(scale, 1e-300) * std::sqrt(static_cast<double>(a.cols())))) return jacobi_svd(a);
  return out;
}

RVector singular_values(const CMatrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return RVector::Zero(0);
  if (std::min(a.rows(), a.cols()) <= kJacobiCutoff) return Eigen::JacobiSVD<CMatrix>(a).singularValues();
  return thin_svd(a).sigma;
}

void DecisionMonitor::reset(double injected_eps) {
  monitor.default_ratio = std::min(1.0, TolerancePolicy{}.relative_eps / injected_eps);
  monitor.near = 0;
}

std::size_t DecisionMonitor::near_count() { return monitor.near; }

void DecisionMonitor::note(double value, double cutoff) {
  if (!(cutoff > 0.0)) return;
  const double v = std::abs(value);
  const bool near = v >= 0.1 * cutoff && v <= 10.0 * cutoff;
  const bool overridden = v > monitor.default_ratio * cutoff && v < 0.1 * cutoff;
  if (near || overridden) ++monitor.near;
}

Index numerical_rank(const RVector& sigma, double cutoff) {
  for (Index i = 0; i < sigma.size(); ++i) DecisionMonitor::note(sigma(i), cutoff);
  Index r = 0;
  for (Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > cutoff) ++r;
  }
  return r;
}

Index numerical_rank(const CMatrix& a, const TolerancePolicy& tol) {
  const RVector s = singular_values(a);
  if (s.size() == 0) return 0;
  return numerical_rank(s, tol.threshold(a.rows(), a.cols(), s(0)));
}

CMatrix orthonormal_range_basis(const CMatrix& a, const TolerancePolicy& tol) {
  const Svd svd = thin_svd(a);
  if (svd.sigma.size() == 0) return CMatrix::Zero(a.rows(), 0);
  const Index r = numerical_rank(svd.sigma, tol.threshold(a.rows(), a.cols(), svd.sigma(0)));
  return svd.u.leftCols(r);
}

CMatrix orthogonal_complement(const CMatrix& basis) {
  const Index n = basis.rows();
  const Index r = basis.cols();
  if (r == 0) return CMatrix::Identity(n, n);
  if (r >= n) return CMatrix::Zero(n, 0);
  Eigen::HouseholderQR<CMatrix> qr(basis);
  CMatrix q = qr.householderQ();
  return q.rightCols(n - r);
}

CMatrix nullspace_basis(const CMatrix& a, const TolerancePolicy& tol) {
  if (a.rows() == 0 || a.cols() == 0) return CMatrix::Identity(a.cols(), a.cols());
  const Svd svd = thin_svd(a);
  const Index r = numerical_rank(svd.sigma, tol.threshold(a.rows(), a.cols(), svd.sigma(0)));
  return orthogonal_complement(svd.v.leftCols(r));
}

namespace {

void require_same_ambient(const CMatrix& b1, const CMatrix& b2) {
  if (b1.rows() != b2.rows()) {
    throw KreinError(ErrorKind::kDimensionMismatch, "ambient dimensions agree",
                     "subspace bases live in different ambient dimensions");
  }
}

}  // namespace

CMatrix intersect(const CMatrix& b1, const CMatrix& b2, const TolerancePolicy& tol) {
  require_same_ambient(b1, b2);
  if (b1.cols() == 0 || b2.cols() == 0) return CMatrix::Zero(b1.rows(), 0);
  CMatrix stacked(b1.rows(), b1.cols() + b2.cols());
  stacked << b1, -b2;
  const CMatrix z = nullspace_basis(stacked, tol);
  if (z.cols() == 0) return CMatrix::Zero(b1.rows(), 0);
  return orthonormal_range_basis(b1 * z.topRows(b1.cols()), tol);
}

CMatrix sum_span(const CMatrix& b1, const CMatrix& b2, const TolerancePolicy& tol) {
  require_same_ambient(b1, b2);
  CMatrix stacked(b1.rows(), b1.cols() + b2.cols());
  stacked << b1, b2;
  return orthonormal_range_basis(stacked, tol);
}

std::vector<double> principal_angles(const CMatrix& b1, const CMatrix& b2) {
  require_same_ambient(b1, b2);
  if (b1.cols() == 0 || b2.cols() == 0) {
    throw KreinError(ErrorKind::kEmptySubspace, "both subspaces nonzero",
                     "principal angles need two nonzero subspaces");
  }
  const CMatrix& wide = b1.cols() >= b2.cols() ? b1 : b2;
  const CMatrix& narrow = b1.cols() >= b2.cols() ? b2 : b1;
  const CMatrix cross = wide.adjoint() * narrow;
  const RVector cosines = singular_values(cross);              // descending
  const RVector sines = singular_values(narrow - wide * cross);  // descending
  const Index k = narrow.cols();
  std::vector<double> angles(static_cast<std::size_t>(k));
  for (Index i = 0; i < k; ++i) {
    const double c = std::min(1.0, std::max(0.0, cosines(i)));
    const double s = std::min(1.0, std::max(0.0, sines(k - 1 - i)));
    angles[static_cast<std::size_t>(i)] = (c * c >= 0.5) ? std::asin(s) : std::acos(c);
  }
  std::sort(angles.begin(), angles.end());
  return angles;
}

double containment_gap(const CMatrix& b1, const CMatrix& b2) {
  require_same_ambient(b1, b2);
  if (b1.cols() == 0) return 0.0;
  if (b2.cols() == 0) return 1.0;
  return operator_norm(b1 - b2 * (b2.adjoint() * b1));
}

bool same_subspace(const CMatrix& b1, const CMatrix& b2, double angle_tol) {
  if (b1.cols() != b2.cols()) return false;
  return containment_gap(b1, b2) <= angle_tol && containment_gap(b2, b1) <= angle_tol;
}

double operator_norm(const CMatrix& a) {
  const RVector s = singular_values(a);
  return s.size() > 0 ? s(0) : 0.0;
}

double min_singular(const CMatrix& a) {
  const RVector s = singular_values(a);
  return s.size() > 0 ? s(s.size() - 1) : 0.0;
}

namespace {

// Upper-trapezoidal factor R with X = Q R, or X itself when X is not tall.
CMatrix triangular_factor(const CMatrix& x) {
  if (x.cols() >= x.rows()) return x;
  Eigen::HouseholderQR<CMatrix> qr(x);
  return qr.matrixQR().topRows(x.cols()).triangularView<Eigen::Upper>();
}

}  // namespace

double lowrank_norm(const CMatrix& x, const CMatrix& k, const CMatrix& y) {
  if (x.cols() == 0 || y.cols() == 0) return 0.0;
  return operator_norm(triangular_factor(x) * k * triangular_factor(y).adjoint());
}

HermitianEig hermitian_eig(const CMatrix& a, const TolerancePolicy& tol) {
  if (a.rows() != a.cols()) {
    throw KreinError(ErrorKind::kDimensionMismatch, "square matrix",
                     "hermitian_eig needs a square matrix");
  }
  HermitianEig out;
  if (a.rows() == 0) {
    out.values = RVector::Zero(0);
    out.vectors = CMatrix::Zero(0, 0);
    return out;
  }
  const CMatrix sym = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(sym);
  out.values = eig.eigenvalues();
  out.vectors = eig.eigenvectors();
  const double scale = out.values.cwiseAbs().maxCoeff();
  const double skew = (a - a.adjoint()).norm();
  if (skew > tol.threshold(a.rows(), a.cols(), scale) && skew > 0.0) {
    throw KreinError(ErrorKind::kNotHermitian, "||A - A^H|| <= threshold",
                     "hermitian_eig received a non-Hermitian matrix");
  }
  return out;
}

bool all_finite(const CMatrix& a) {
  return a.allFinite();
}

}  // namespace kreinlab
