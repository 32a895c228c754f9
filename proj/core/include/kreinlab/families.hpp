#pragma once

// Analyzers for families of projections: orthogonal families of selfadjoint
// projections and their sums, nets of compatible projections, sums of normal
// projections, and sums of families with regular and neutral parts.

#include <optional>

#include "kreinlab/projections.hpp"
#include "kreinlab/summation.hpp"

namespace kreinlab {

struct RegularFamilyConditions {
  bool c1 = false;  // ranges form a direct sum with a positive margin
  bool c2 = false;  // sup_F ||sum_F E_k|| finite
  bool c3 = false;  // sum E_k is the selfadjoint projection onto the span
  bool c5 = false;  // span regular and C1 > 0
};

struct RegularFamilyReport {
  SubsetNormBound c;
  double c1 = 0.0;  // frame bounds: c1 ||f||^2 <= sum ||E_k f||^2 <= c2 ||f||^2 on the span
  double c2 = 0.0;
  bool span_regular = true;
  double span_margin = 1.0;
  Index span_dim = 0;
  double independence_margin = 1.0;  // smallest singular value of the stacked range bases
  std::optional<ProjectionOp> p_sum;
  RegularFamilyConditions flags;
  bool flags_agree = true;
};

/// Throws kNotSelfadjointFamily / kNotOrthogonalFamily naming the offending
/// member or pair.
RegularFamilyReport analyze_regular_family(const KreinSpace& space, const std::vector<ProjectionOp>& es,
                                           const SubsetNormOptions& opts = {});

/// True iff every X E_k X^{-1} is a Hermitian idempotent. Throws kSingularX
/// when cond(X) >= 1e12.
bool verify_similarity_condition(const std::vector<ProjectionOp>& es, const CMatrix& x);

struct NetOfProjections {
  std::vector<ProjectionOp> members;
  bool compatible = true;
  double uniform_bound = 0.0;

  /// Checks P_d P_d' = P_d' P_d = P_d for every d <= d'.
  static NetOfProjections build(std::vector<ProjectionOp> members);
};

struct NetLimit {
  ProjectionOp limit;
  std::size_t stabilization_index = 0;
  double stabilized_spread = 0.0;  // max ||P_d - P_D|| for d >= D
  bool range_identity = false;     // ran P = span of all ran P_d
  bool kernel_identity = false;    // ker P = intersection of all ker P_d
  bool all_normal = false;
  bool limit_normal = false;
  double kadjoint_discrepancy = 0.0;  // ||P^{*K} - lim P_d^{*K}||
};

/// Throws kInvalidArgument for an empty net, kIncompatibleNet,
/// kUnboundedNet when uniform_bound exceeds `bound_cap`.
NetLimit net_limit(const NetOfProjections& net, double bound_cap = 1e12);

struct NormalFamilySum {
  ProjectionOp q;
  bool partial_sums_normal = false;  // every prefix sum is a normal projection
  bool range_identity = false;
  bool kernel_identity = false;
  bool ranges_independent = false;
  double kadjoint_discrepancy = 0.0;  // ||Q^{*K} - sum Q_k^{*K}||
};

/// Throws kNotNormalInput (member index) or kConditionViolated naming the
/// pair and the relation that fails.
NormalFamilySum sum_normal_family(const KreinSpace& space, const std::vector<ProjectionOp>& qs);

struct QprFamilyOptions {
  SubsetNormOptions subsets;
  /// Replace T_k by c_k T_k with sum c_k ||T_k|| <= 1 and waive the bound on the T's.
  bool scale_ts = false;
  std::size_t draws = 50;
  std::uint64_t seed = 0;
};

struct QprFamilySum {
  RegularFamilyReport regular;
  RowOp t_row;
  std::vector<CMatrix> ts_used;
  CMatrix n_basis;
  CMatrix m_basis;
  double c = 0.0;
  bool c_exact = true;
  double c_e = 0.0;
  double c_t = 0.0;
  AdjointBoundCheck adjoint_check;
  double neutrality_residual = 0.0;    // ||N^H J N||
  double orthogonality_residual = 0.0; // ||N^H J ran P||
  bool n_meets_p_trivially = true;     // N ∩ ran P = {0}
  std::size_t draws = 0;
  bool sampled_containment = true;
  bool sampled_reconstruction = true;

  const ProjectionOp& p() const { return *regular.p_sum; }
};

/// Throws kNotNeutralRange, kNotOrthogonalFamily, and the errors of
/// analyze_regular_family.
QprFamilySum sum_qpr_family(const KreinSpace& space, const std::vector<ProjectionOp>& es,
                            const std::vector<CMatrix>& ts, const QprFamilyOptions& opts = {});

}  // namespace kreinlab
