#include "kreinlab/summation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "kreinlab/errors.hpp"

namespace kreinlab {

namespace {

constexpr std::size_t kPermutationTrials = 20;
constexpr double kPermutationTol = 1e-12;
constexpr std::size_t kMaxCertifiedTerms = std::size_t{1} << 22;
constexpr std::size_t kDivergenceProbe = std::size_t{1} << 16;
constexpr std::size_t kDoublingMinTerms = std::size_t{1} << 12;
constexpr double kDivergenceFactor = 1e6;
constexpr double kFlatIncrementRatio = 0.9;
constexpr double kAdjointSlack = 1e-9;

double element_norm(const CMatrix& x) {
  return x.cols() == 1 ? x.norm() : operator_norm(x);
}

CMatrix checked_element(const IndexedFamily& fam, std::size_t k) {
  CMatrix x = fam.element_at(k);
  if (x.rows() != fam.rows || x.cols() != fam.cols) {
    throw KreinError(ErrorKind::kDimensionMismatch, "element shape = family shape",
                     "family element has the wrong shape");
  }
  return x;
}

// Smallest k <= limit with envelope(k) < eps, or limit + 1 when none exists.
std::size_t first_below(const std::function<double(std::size_t)>& envelope, double eps, std::size_t limit) {
  if (envelope(0) < eps) return 0;
  std::size_t lo = 0;  // envelope(lo) >= eps
  std::size_t hi = 1;
  while (true) {
    if (hi >= limit) {
      if (!(envelope(limit) < eps)) return limit + 1;
      hi = limit;
      break;
    }
    if (envelope(hi) < eps) break;
    lo = hi;
    hi *= 2;
  }
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (envelope(mid) < eps) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

void permutation_check(const std::vector<CMatrix>& terms, const CMatrix& sum, double norm_sum,
                       std::uint64_t seed, MSCertificate& cert) {
  std::vector<std::size_t> order(terms.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  cert.permutation_tolerance = kPermutationTol * (1.0 + norm_sum);
  cert.permutation_trials = kPermutationTrials;
  for (std::size_t t = 0; t < kPermutationTrials; ++t) {
    std::shuffle(order.begin(), order.end(), rng);
    CMatrix s = CMatrix::Zero(sum.rows(), sum.cols());
    for (std::size_t i : order) s += terms[i];
    cert.max_permutation_discrepancy = std::max(cert.max_permutation_discrepancy, (s - sum).norm());
  }
}

}  // namespace

IndexedFamily IndexedFamily::from_list(std::vector<CMatrix> elements) {
  IndexedFamily fam;
  fam.count = elements.size();
  if (!elements.empty()) {
    fam.rows = elements.front().rows();
    fam.cols = elements.front().cols();
  }
  std::vector<double> tails(elements.size() + 1, 0.0);
  for (std::size_t k = elements.size(); k-- > 0;) tails[k] = tails[k + 1] + element_norm(elements[k]);
  auto shared = std::make_shared<std::vector<CMatrix>>(std::move(elements));
  fam.element_at = [shared](std::size_t k) { return shared->at(k); };
  fam.tail_envelope = [tails = std::move(tails)](std::size_t k) {
    return k < tails.size() ? tails[k] : 0.0;
  };
  return fam;
}

std::string_view ms_status_name(MSStatus status) {
  switch (status) {
    case MSStatus::kSummable: return "summable";
    case MSStatus::kNotSummable: return "not_summable";
    case MSStatus::kInconclusive: return "inconclusive";
  }
  return "unknown";
}

MSResult ms_sum(const IndexedFamily& fam, double eps, std::uint64_t seed) {
  if (!(eps > 0.0)) {
    throw KreinError(ErrorKind::kInvalidArgument, "eps > 0", "Moore-Smith tolerance must be positive");
  }
  MSResult out;
  out.sum = CMatrix::Zero(fam.rows, fam.cols);
  MSCertificate& cert = out.certificate;

  auto sum_prefix = [&](std::size_t k, std::vector<CMatrix>* keep) {
    double norm_sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      CMatrix x = checked_element(fam, i);
      norm_sum += element_norm(x);
      out.sum += x;
      if (keep != nullptr) keep->push_back(std::move(x));
    }
    return norm_sum;
  };

  const bool finite = !fam.countable();
  if (fam.has_envelope() || finite) {
    std::size_t k = 0;
    double tail = 0.0;
    if (finite) {
      k = fam.count;
      if (fam.has_envelope()) {
        const std::size_t hit = first_below(fam.tail_envelope, eps, fam.count);
        if (hit <= fam.count) k = hit;
        tail = k < fam.count ? fam.tail_envelope(k) : 0.0;
      }
    } else {
      k = first_below(fam.tail_envelope, eps, kMaxCertifiedTerms);
      if (k > kMaxCertifiedTerms) {
        cert.status = MSStatus::kInconclusive;
        cert.f0_size = kMaxCertifiedTerms;
        cert.probed_norm_sum = sum_prefix(kMaxCertifiedTerms, nullptr);
        cert.tail_bound = fam.tail_envelope(kMaxCertifiedTerms);
        return out;
      }
      tail = fam.tail_envelope(k);
    }
    std::vector<CMatrix> terms;
    terms.reserve(k);
    const double norm_sum = sum_prefix(k, &terms);
    cert.f0_size = k;
    cert.tail_bound = tail;
    cert.probed_norm_sum = norm_sum;
    permutation_check(terms, out.sum, norm_sum, seed, cert);
    cert.status = cert.max_permutation_discrepancy <= cert.permutation_tolerance ? MSStatus::kSummable
                                                                                 : MSStatus::kInconclusive;
    return out;
  }

  // No envelope and no end: probe the scalar criterion sum ||x_k||.
  double norm_sum = 0.0;
  double first = 0.0;
  std::vector<double> at_powers;  // partial norm sums at k = 1, 2, 4, ...
  std::size_t next_power = 1;
  for (std::size_t i = 0; i < kDivergenceProbe; ++i) {
    const CMatrix x = checked_element(fam, i);
    const double nx = element_norm(x);
    if (i == 0) first = nx;
    norm_sum += nx;
    out.sum += x;
    if (i + 1 == next_power) {
      at_powers.push_back(norm_sum);
      next_power *= 2;
    }
  }
  cert.f0_size = kDivergenceProbe;
  cert.probed_norm_sum = norm_sum;
  bool diverges = first > 0.0 && norm_sum > kDivergenceFactor * first;
  if (!diverges && kDivergenceProbe >= kDoublingMinTerms && at_powers.size() >= 7) {
    const std::size_t last = at_powers.size() - 1;
    const double recent = at_powers[last] - at_powers[last - 1];
    const double earlier = at_powers[last - 5] - at_powers[last - 6];
    diverges = recent > 0.0 && recent >= kFlatIncrementRatio * earlier;
  }
  cert.status = diverges ? MSStatus::kNotSummable : MSStatus::kInconclusive;
  return out;
}

RowOp::RowOp(Index dim, std::vector<CMatrix> members, double norm_bound, double tail_norm_bound)
    : dim_(dim), members_(std::move(members)), norm_bound_(norm_bound), tail_norm_bound_(tail_norm_bound) {
  for (const CMatrix& t : members_) {
    if (t.rows() != dim_) {
      throw KreinError(ErrorKind::kDimensionMismatch, "member rows = dim H", "row operator member has wrong shape");
    }
  }
}

RowOp::Applied RowOp::apply(const std::vector<CVector>& xs) const {
  if (xs.size() != members_.size()) {
    throw KreinError(ErrorKind::kDimensionMismatch, "one x_k per member", "row operator input has wrong length");
  }
  Applied out;
  out.value = CVector::Zero(dim_);
  double sup = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (xs[k].size() != members_[k].cols()) {
      throw KreinError(ErrorKind::kDimensionMismatch, "x_k length = member cols", "row operator input has wrong shape");
    }
    out.value += members_[k] * xs[k];
    sup = std::max(sup, xs[k].norm());
  }
  out.tail_bound = sup * tail_norm_bound_;
  return out;
}

RowOp row_operator_abs(const IndexedFamily& fam, double truncation_eps) {
  if (!fam.has_envelope()) {
    throw KreinError(ErrorKind::kEnvelopeMissing, "tail envelope given", "row operator needs sum ||T_k|| < inf");
  }
  std::size_t k = fam.count;
  double tail = 0.0;
  if (fam.countable()) {
    const double total = fam.tail_envelope(0);
    if (!std::isfinite(total)) {
      throw KreinError(ErrorKind::kEnvelopeMissing, "tail envelope finite", "row operator needs sum ||T_k|| < inf");
    }
    k = first_below(fam.tail_envelope, std::max(truncation_eps * total, std::numeric_limits<double>::min()),
                    kMaxCertifiedTerms);
    if (k > kMaxCertifiedTerms) {
      throw KreinError(ErrorKind::kEnvelopeMissing, "tail envelope decays",
                       "tail envelope does not decay within the term limit");
    }
    tail = fam.tail_envelope(k);
  }
  std::vector<CMatrix> members;
  members.reserve(k);
  double sum_norms = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    members.push_back(checked_element(fam, i));
    sum_norms += element_norm(members.back());
  }
  return RowOp(fam.rows, std::move(members), sum_norms + tail, tail);
}

LowRankTerm factor_operator(const CMatrix& t, const TolerancePolicy& tol) {
  const Svd svd = thin_svd(t);
  if (svd.sigma.size() == 0 || svd.sigma(0) == 0.0) {
    return {CMatrix::Zero(t.rows(), 0), CMatrix::Zero(t.cols(), 0)};
  }
  const Index r = numerical_rank(svd.sigma, tol.threshold(t.rows(), t.cols(), svd.sigma(0)));
  return {svd.u.leftCols(r) * svd.sigma.head(r).cast<Complex>().asDiagonal(), svd.v.leftCols(r)};
}

namespace {

class SubsetNormEngine {
 public:
  SubsetNormEngine(const std::vector<LowRankTerm>& terms, Index dim) : terms_(terms), dim_(dim) {
    offsets_.reserve(terms.size() + 1);
    offsets_.push_back(0);
    for (const LowRankTerm& t : terms) {
      if (t.u.rows() != dim || t.v.rows() != dim || t.u.cols() != t.v.cols()) {
        throw KreinError(ErrorKind::kDimensionMismatch, "factors conformable with dim H",
                         "family member does not act on the space");
      }
      offsets_.push_back(offsets_.back() + t.u.cols());
    }
    const Index total = offsets_.back();
    CMatrix u(dim, total);
    CMatrix v(dim, total);
    for (std::size_t k = 0; k < terms.size(); ++k) {
      u.middleCols(offsets_[k], terms[k].u.cols()) = terms[k].u;
      v.middleCols(offsets_[k], terms[k].v.cols()) = terms[k].v;
    }
    gram_u_ = u.adjoint() * u;
    gram_v_ = v.adjoint() * v;
  }

  double norm(const std::vector<std::size_t>& subset) const {
    std::vector<Index> cols;
    for (std::size_t k : subset) {
      for (Index c = offsets_[k]; c < offsets_[k + 1]; ++c) cols.push_back(c);
    }
    const Index k = static_cast<Index>(cols.size());
    if (k == 0) return 0.0;
    if (k >= dim_) {
      CMatrix sum = CMatrix::Zero(dim_, dim_);
      for (std::size_t m : subset) sum += terms_[m].u * terms_[m].v.adjoint();
      return operator_norm(sum);
    }
    // ||U V^H||^2 = lambda_max(A_V G_U A_V^H) for any A_V with A_V^H A_V = G_V.
    const CMatrix gu = gram_u_(cols, cols);
    const CMatrix gv = gram_v_(cols, cols);
    Eigen::LDLT<CMatrix> ldlt(gv);
    const RVector d = ldlt.vectorD().real().cwiseMax(0.0).cwiseSqrt();
    CMatrix perm = CMatrix::Identity(k, k);
    perm = ldlt.transpositionsP() * perm;
    const CMatrix a_v = d.cast<Complex>().asDiagonal() * (CMatrix(ldlt.matrixU()) * perm);
    const CMatrix h = a_v * gu * a_v.adjoint();
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(0.5 * (h + h.adjoint()), Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, eig.eigenvalues()(k - 1)));
  }

 private:
  const std::vector<LowRankTerm>& terms_;
  Index dim_;
  std::vector<Index> offsets_;
  CMatrix gram_u_;
  CMatrix gram_v_;
};

}  // namespace

SubsetNormBound max_subset_norm(const std::vector<LowRankTerm>& terms, Index dim, const SubsetNormOptions& opts) {
  SubsetNormBound out;
  const std::size_t m = terms.size();
  if (m == 0) return out;
  const SubsetNormEngine engine(terms, dim);
  std::vector<std::size_t> subset;
  auto consider = [&](const std::vector<std::size_t>& s) {
    out.value = std::max(out.value, engine.norm(s));
    ++out.subsets_evaluated;
  };
  if (m <= opts.exact_budget && m < 63) {
    const std::uint64_t total = std::uint64_t{1} << m;
    for (std::uint64_t mask = 1; mask < total; ++mask) {
      subset.clear();
      for (std::size_t k = 0; k < m; ++k) {
        if ((mask >> k) & 1U) subset.push_back(k);
      }
      consider(subset);
    }
    out.exact = true;
    return out;
  }
  out.exact = false;
  subset.clear();
  for (std::size_t k = 0; k < m; ++k) {
    subset.push_back(k);
    consider(subset);
  }
  for (std::size_t k = 0; k < m; ++k) consider({k});
  std::mt19937_64 rng(opts.seed);
  std::bernoulli_distribution coin(0.5);
  for (std::size_t t = 0; t < opts.random_subsets; ++t) {
    subset.clear();
    for (std::size_t k = 0; k < m; ++k) {
      if (coin(rng)) subset.push_back(k);
    }
    if (!subset.empty()) consider(subset);
  }
  return out;
}

AdjointBoundCheck check_adjoint_bound(const KreinSpace& space, const std::vector<LowRankTerm>& terms, double c,
                                      std::size_t trials, std::uint64_t seed) {
  AdjointBoundCheck out;
  out.trials = trials;
  out.bound = 4.0 * c * c;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  const Index n = space.dim();
  for (std::size_t t = 0; t < trials; ++t) {
    CVector u(n);
    for (Index i = 0; i < n; ++i) u(i) = Complex(normal(rng), normal(rng));
    const CVector ju = space.apply_j(u);
    // ||T^{*K} u|| = ||J V U^H J u|| = ||V (U^H J u)||
    double total = 0.0;
    for (const LowRankTerm& term : terms) total += (term.v * (term.u.adjoint() * ju)).squaredNorm();
    const double uu = u.squaredNorm();
    out.max_ratio = std::max(out.max_ratio, total / uu);
    if (total > out.bound * uu * (1.0 + kAdjointSlack)) out.holds = false;
  }
  return out;
}

BoundedRowResult row_operator_bounded(const KreinSpace& space, const std::vector<CMatrix>& ts,
                                      const BoundedRowOptions& opts) {
  const Index n = space.dim();
  std::vector<LowRankTerm> terms;
  terms.reserve(ts.size());
  for (const CMatrix& t : ts) {
    if (t.rows() != n || t.cols() != n) {
      throw KreinError(ErrorKind::kDimensionMismatch, "members square of size dim H",
                       "row operator member does not act on the space");
    }
    terms.push_back(factor_operator(t, space.tolerance()));
  }
  BoundedRowResult out;
  out.c = max_subset_norm(terms, n, opts.subsets);
  out.adjoint_check = check_adjoint_bound(space, terms, out.c.value, opts.u_trials, opts.subsets.seed + 1);
  out.op = RowOp(n, ts, out.c.value);
  return out;
}

MembershipProbe range_membership_probe(const CMatrix& t, const CVector& h, const TolerancePolicy& tol) {
  if (h.size() != t.rows()) {
    throw KreinError(ErrorKind::kDimensionMismatch, "len h = rows T", "probe target does not match the operator");
  }
  const Svd svd = thin_svd(t);
  if (svd.sigma.size() == 0 || svd.sigma(0) == 0.0) {
    throw KreinError(ErrorKind::kInvalidArgument, "T nonzero", "range probe needs a nonzero operator");
  }
  MembershipProbe out;
  out.rank = numerical_rank(svd.sigma, tol.threshold(t.rows(), t.cols(), svd.sigma(0)));
  const CVector coeffs = (svd.u.leftCols(out.rank).adjoint() * h).cwiseQuotient(
      svd.sigma.head(out.rank).cast<Complex>());
  const CVector x = svd.v.leftCols(out.rank) * coeffs;
  out.preimage_norm = x.norm();
  out.residual = (t * x - h).norm();
  return out;
}

}  // namespace kreinlab
