#pragma once

// Moore-Smith (unordered) summation with explicit certificates, row
// operators x = {x_k} -> sum_k T_k x_k, and the subset-norm bounds
// sup_F ||sum_{k in F} T_k|| used throughout the family analyzers.

#include <cstdint>
#include <functional>
#include <limits>
#include <string_view>
#include <vector>

#include "kreinlab/krein.hpp"

namespace kreinlab {

/// Family indexed by 0, 1, 2, ...; `count` is kCountable for families that
/// never end. Elements are vectors (one column) or matrices.
struct IndexedFamily {
  static constexpr std::size_t kCountable = std::numeric_limits<std::size_t>::max();

  Index rows = 0;
  Index cols = 1;
  std::size_t count = 0;
  std::function<CMatrix(std::size_t)> element_at;
  /// Bound on sum_{j >= k} ||element_at(j)||; empty means unknown (+inf).
  std::function<double(std::size_t)> tail_envelope;

  bool countable() const { return count == kCountable; }
  bool has_envelope() const { return static_cast<bool>(tail_envelope); }

  /// Finite family; the envelope is the exact tail of norms.
  static IndexedFamily from_list(std::vector<CMatrix> elements);
};

enum class MSStatus { kSummable, kNotSummable, kInconclusive };

std::string_view ms_status_name(MSStatus status);

struct MSCertificate {
  MSStatus status = MSStatus::kInconclusive;
  std::size_t f0_size = 0;  // number of leading terms summed
  double tail_bound = std::numeric_limits<double>::infinity();
  std::size_t permutation_trials = 0;
  double max_permutation_discrepancy = 0.0;
  double permutation_tolerance = 0.0;
  double probed_norm_sum = 0.0;  // sum of ||x_k|| over the probe prefix
};

struct MSResult {
  CMatrix sum;
  MSCertificate certificate;
};

/// Throws kInvalidArgument unless eps > 0.
MSResult ms_sum(const IndexedFamily& fam, double eps, std::uint64_t seed = 0);

/// Row operator H^m -> H, x = {x_k} -> sum_k T_k x_k, over a finite list of
/// members; `tail_norm_bound` bounds the dropped tail sum_{k >= m} ||T_k||.
class RowOp {
 public:
  RowOp() = default;
  RowOp(Index dim, std::vector<CMatrix> members, double norm_bound, double tail_norm_bound = 0.0);

  Index dim() const { return dim_; }
  std::size_t size() const { return members_.size(); }
  const std::vector<CMatrix>& members() const { return members_; }
  double norm_bound() const { return norm_bound_; }
  double tail_norm_bound() const { return tail_norm_bound_; }

  struct Applied {
    CVector value;
    /// Bound on the contribution of the dropped tail, (sup ||x_k||) * tail_norm_bound.
    double tail_bound = 0.0;
  };
  /// Throws kDimensionMismatch unless there is one x_k per member.
  Applied apply(const std::vector<CVector>& xs) const;

 private:
  Index dim_ = 0;
  std::vector<CMatrix> members_;
  double norm_bound_ = 0.0;
  double tail_norm_bound_ = 0.0;
};

/// Throws kEnvelopeMissing when the family carries no tail envelope.
/// Countable families are truncated where the envelope drops below
/// `truncation_eps` times its initial value.
RowOp row_operator_abs(const IndexedFamily& fam, double truncation_eps = 1e-15);

/// Operator given as a low-rank product U V^H.
struct LowRankTerm {
  CMatrix u;
  CMatrix v;
};

LowRankTerm factor_operator(const CMatrix& t, const TolerancePolicy& tol = {});

struct SubsetNormOptions {
  std::size_t exact_budget = 15;
  std::size_t random_subsets = 2000;
  std::uint64_t seed = 0;
};

struct SubsetNormBound {
  double value = 0.0;
  bool exact = true;  // false: maximum over prefixes and random subsets, a lower bound
  std::size_t subsets_evaluated = 0;
};

/// sup over finite F of ||sum_{k in F} U_k V_k^H||; exact when the family has
/// at most `exact_budget` members.
SubsetNormBound max_subset_norm(const std::vector<LowRankTerm>& terms, Index dim,
                                const SubsetNormOptions& opts = {});

struct AdjointBoundCheck {
  std::size_t trials = 0;
  double max_ratio = 0.0;  // max of sum_k ||T_k^{*K} u||^2 / ||u||^2
  double bound = 0.0;      // 4 C^2
  bool holds = true;
};

struct BoundedRowResult {
  RowOp op;
  SubsetNormBound c;
  AdjointBoundCheck adjoint_check;
};

struct BoundedRowOptions {
  SubsetNormOptions subsets;
  std::size_t u_trials = 100;
};

/// C = sup_F ||sum_{k in F} T_k|| and the check sum_k ||T_k^{*K} u||^2 <= 4 C^2 ||u||^2.
BoundedRowResult row_operator_bounded(const KreinSpace& space, const std::vector<CMatrix>& ts,
                                      const BoundedRowOptions& opts = {});

/// Same check for factored members, T_k = U_k V_k^H.
AdjointBoundCheck check_adjoint_bound(const KreinSpace& space, const std::vector<LowRankTerm>& terms,
                                      double c, std::size_t trials, std::uint64_t seed);

struct MembershipProbe {
  double residual = 0.0;
  double preimage_norm = 0.0;
  Index rank = 0;
};

/// Minimal-norm least-squares solve of T x = h. Throws kInvalidArgument for T = 0.
MembershipProbe range_membership_probe(const CMatrix& t, const CVector& h, const TolerancePolicy& tol = {});

}  // namespace kreinlab
