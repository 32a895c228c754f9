#pragma once

// Dense complex linear algebra shared by every kreinlab module. All rank
// decisions go through a single TolerancePolicy so classifications are
// reproducible.

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace kreinlab {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Rank rule: a singular value counts as nonzero when it exceeds
/// max(rows, cols) * relative_eps * (largest singular value).
struct TolerancePolicy {
  double relative_eps = 1e-12;

  double threshold(Index rows, Index cols, double largest_singular_value) const;
  double threshold(const CMatrix& a) const;

  /// Threshold for matrices whose natural scale is one, e.g. the Gram
  /// matrix B^H J B of an orthonormal basis under a unitary J.
  double unit_threshold(Index rows, Index cols) const { return threshold(rows, cols, 1.0); }
};

/// Per-thread tally of rank decisions that sit close to their cutoff: the
/// deciding value lies within a factor 10 of the cutoff, or between the
/// cutoff of the default policy and a coarser injected one. The property
/// suites reset it per trial; library code only reports into it.
class DecisionMonitor {
 public:
  /// `injected_eps` is the relative_eps in force; the default is 1e-12.
  static void reset(double injected_eps = TolerancePolicy{}.relative_eps);
  static std::size_t near_count();
  static void note(double value, double cutoff);
};

/// Thin singular value decomposition with singular values in descending order.
struct Svd {
  CMatrix u;
  RVector sigma;
  CMatrix v;
};

Svd thin_svd(const CMatrix& a);
RVector singular_values(const CMatrix& a);

/// Number of singular values above `cutoff`.
Index numerical_rank(const RVector& sigma, double cutoff);
Index numerical_rank(const CMatrix& a, const TolerancePolicy& tol);

CMatrix orthonormal_range_basis(const CMatrix& a, const TolerancePolicy& tol);
CMatrix nullspace_basis(const CMatrix& a, const TolerancePolicy& tol);

/// Orthonormal basis of the Euclidean orthogonal complement of the span of
/// the orthonormal columns of `basis`.
CMatrix orthogonal_complement(const CMatrix& basis);

CMatrix intersect(const CMatrix& b1, const CMatrix& b2, const TolerancePolicy& tol);
CMatrix sum_span(const CMatrix& b1, const CMatrix& b2, const TolerancePolicy& tol);

/// Principal angles in radians, ascending. Small angles are taken from sines
/// and large ones from cosines so both ends keep full relative accuracy.
std::vector<double> principal_angles(const CMatrix& b1, const CMatrix& b2);

/// Largest sine of the angles between span(b1) and span(b2); zero iff
/// span(b1) is contained in span(b2) (both orthonormal).
double containment_gap(const CMatrix& b1, const CMatrix& b2);
bool same_subspace(const CMatrix& b1, const CMatrix& b2, double angle_tol);

double operator_norm(const CMatrix& a);
double min_singular(const CMatrix& a);

/// ||X K Y^H|| without forming the product when X and Y are tall.
double lowrank_norm(const CMatrix& x, const CMatrix& k, const CMatrix& y);

struct HermitianEig {
  RVector values;  // ascending
  CMatrix vectors;
};

/// Throws KreinError(kNotHermitian) when ||A - A^H|| exceeds the policy threshold.
HermitianEig hermitian_eig(const CMatrix& a, const TolerancePolicy& tol = {});

bool all_finite(const CMatrix& a);

}  // namespace kreinlab
