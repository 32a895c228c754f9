#include "kreinlab/families.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "kreinlab/errors.hpp"

namespace kreinlab {

namespace {

constexpr double kRelationTol = 1e-9;
constexpr double kSubspaceTol = 1e-8;
constexpr double kMaxBound = 1e12;

double pair_tol(double a, double b) {
  return kRelationTol * std::max(1.0, a * b);
}

std::string pair_label(const char* relation, std::size_t i, std::size_t j) {
  return std::string(relation) + " (pair " + std::to_string(i) + "," + std::to_string(j) + ")";
}

void require_space(const KreinSpace& space, const ProjectionOp& p) {
  if (!p.space().same_as(space)) {
    throw KreinError(ErrorKind::kDimensionMismatch, "members act on the given space",
                     "family member lives in a different space");
  }
}

// Column blocks of a concatenation, one per member.
struct Stacked {
  CMatrix all;
  std::vector<Index> offsets;

  Index width(std::size_t k) const { return offsets[k + 1] - offsets[k]; }
  auto block(const CMatrix& m, std::size_t i, std::size_t j) const {
    return m.block(offsets[i], offsets[j], width(i), width(j));
  }
};

template <typename Get>
Stacked stack(Index rows, std::size_t count, Get get) {
  Stacked s;
  s.offsets.push_back(0);
  for (std::size_t k = 0; k < count; ++k) s.offsets.push_back(s.offsets.back() + get(k).cols());
  s.all.resize(rows, s.offsets.back());
  for (std::size_t k = 0; k < count; ++k) s.all.middleCols(s.offsets[k], s.offsets[k + 1] - s.offsets[k]) = get(k);
  return s;
}

ProjectionOp lowrank_sum(const KreinSpace& space, const std::vector<ProjectionOp>& ps, std::size_t count) {
  const Stacked bm = stack(space.dim(), count, [&](std::size_t k) -> CMatrix {
    return ps[k].range_basis() * ps[k].coupling();
  });
  const Stacked c = stack(space.dim(), count, [&](std::size_t k) -> const CMatrix& { return ps[k].corange_basis(); });
  return ProjectionOp::from_lowrank(space, bm.all, CMatrix::Identity(bm.all.cols(), c.all.cols()), c.all);
}

std::size_t stabilization_index(const std::vector<ProjectionOp>& ps) {
  std::size_t d = ps.size() - 1;
  while (d > 0 && ps[d - 1].rank() == ps.back().rank()) --d;
  return d;
}

CMatrix span_of_columns(const CMatrix& m, const TolerancePolicy& tol) {
  return m.cols() == 0 ? m : orthonormal_range_basis(m, tol);
}

}  // namespace

RegularFamilyReport analyze_regular_family(const KreinSpace& space, const std::vector<ProjectionOp>& es,
                                           const SubsetNormOptions& opts) {
  const Index n = space.dim();
  const TolerancePolicy& tol = space.tolerance();
  for (std::size_t k = 0; k < es.size(); ++k) {
    require_space(space, es[k]);
    if (!es[k].flags().j_selfadjoint) {
      throw KreinError(ErrorKind::kNotSelfadjointFamily, "E_k = E_k^{*K} (member " + std::to_string(k) + ")",
                       "family member is not a selfadjoint projection");
    }
  }
  const Stacked b = stack(n, es.size(), [&](std::size_t k) -> const CMatrix& { return es[k].range_basis(); });
  const Stacked c = stack(n, es.size(), [&](std::size_t k) -> const CMatrix& { return es[k].corange_basis(); });
  const CMatrix cross = c.all.adjoint() * b.all;
  for (std::size_t i = 0; i < es.size(); ++i) {
    for (std::size_t j = 0; j < es.size(); ++j) {
      if (i == j || es[i].rank() == 0 || es[j].rank() == 0) continue;
      const double r = operator_norm(es[i].coupling() * b.block(cross, i, j) * es[j].coupling());
      if (r > pair_tol(es[i].norm(), es[j].norm())) {
        throw KreinError(ErrorKind::kNotOrthogonalFamily, pair_label("E_i E_j = 0", i, j),
                         "family ranges are not orthogonal");
      }
    }
  }

  RegularFamilyReport out;
  std::vector<LowRankTerm> terms;
  terms.reserve(es.size());
  for (const ProjectionOp& e : es) terms.push_back({e.range_basis() * e.coupling(), e.corange_basis()});
  out.c = max_subset_norm(terms, n, opts);

  const Index total = b.all.cols();
  if (total == 0) {
    out.independence_margin = 1.0;
  } else if (total > n) {
    out.independence_margin = 0.0;
  } else {
    out.independence_margin = min_singular(b.all);
  }
  const Subspace span = Subspace::span_of(space, b.all.cols() == 0 ? CMatrix::Zero(n, 0) : b.all);
  out.span_dim = span.dim();
  const Classification cls = classify(span);
  out.span_regular = cls.regular;
  out.span_margin = cls.regularity_margin;

  if (span.dim() > 0) {
    CMatrix frame = CMatrix::Zero(span.dim(), span.dim());
    for (const ProjectionOp& e : es) {
      if (e.rank() == 0) continue;
      const CMatrix y = e.coupling() * (e.corange_basis().adjoint() * span.basis());
      frame += y.adjoint() * y;
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(0.5 * (frame + frame.adjoint()), Eigen::EigenvaluesOnly);
    out.c1 = eig.eigenvalues()(0);
    out.c2 = eig.eigenvalues()(span.dim() - 1);
  }

  try {
    out.p_sum = lowrank_sum(space, es, es.size());
  } catch (const KreinError& e) {
    if (e.kind() != ErrorKind::kNotProjection) throw;
  }

  const double unit = tol.unit_threshold(n, std::max<Index>(total, 1));
  DecisionMonitor::note(out.independence_margin, unit);
  DecisionMonitor::note(out.c1, unit);
  out.flags.c1 = total == 0 || out.independence_margin > unit;
  out.flags.c2 = std::isfinite(out.c.value) && out.c.value < kMaxBound;
  out.flags.c3 = out.p_sum.has_value() && out.p_sum->flags().j_selfadjoint && out.p_sum->rank() == span.dim() &&
                 (span.dim() == 0 || same_subspace(out.p_sum->range_basis(), span.basis(), kSubspaceTol));
  out.flags.c5 = out.span_regular && (span.dim() == 0 || out.c1 > unit);
  const bool f = out.flags.c1;
  out.flags_agree = out.flags.c2 == f && out.flags.c3 == f && out.flags.c5 == f;
  return out;
}

bool verify_similarity_condition(const std::vector<ProjectionOp>& es, const CMatrix& x) {
  if (x.rows() != x.cols() || (!es.empty() && x.rows() != es.front().dim())) {
    throw KreinError(ErrorKind::kDimensionMismatch, "X square of size dim H", "similarity has the wrong shape");
  }
  const RVector sigma = singular_values(x);
  if (sigma.size() == 0 || sigma(sigma.size() - 1) == 0.0 || sigma(0) / sigma(sigma.size() - 1) >= kMaxBound) {
    throw KreinError(ErrorKind::kSingularX, "cond(X) < 1e12", "similarity is singular or ill-conditioned");
  }
  const CMatrix x_inv = x.fullPivLu().inverse();
  for (const ProjectionOp& e : es) {
    const CMatrix f = x * e.matrix() * x_inv;
    const double nf = operator_norm(f);
    if (operator_norm(f - f.adjoint()) > kRelationTol * std::max(1.0, nf)) return false;
    if (operator_norm(f * f - f) > kRelationTol * (1.0 + nf)) return false;
  }
  return true;
}

NetOfProjections NetOfProjections::build(std::vector<ProjectionOp> members) {
  NetOfProjections net;
  net.members = std::move(members);
  for (std::size_t d = 0; d < net.members.size(); ++d) {
    net.uniform_bound = std::max(net.uniform_bound, net.members[d].norm());
    for (std::size_t e = d + 1; e < net.members.size(); ++e) {
      if (!check_order(net.members[d], net.members[e]).products_ok) net.compatible = false;
    }
  }
  return net;
}

NetLimit net_limit(const NetOfProjections& net, double bound_cap) {
  if (net.members.empty()) {
    throw KreinError(ErrorKind::kInvalidArgument, "net nonempty", "net has no members");
  }
  if (!net.compatible) {
    throw KreinError(ErrorKind::kIncompatibleNet, "P_d P_d' = P_d' P_d = P_d for d <= d'",
                     "net members are not compatible");
  }
  if (!(net.uniform_bound <= bound_cap)) {
    throw KreinError(ErrorKind::kUnboundedNet, "sup ||P_d|| <= cap", "net norms exceed the bound cap");
  }
  const std::vector<ProjectionOp>& ps = net.members;
  const KreinSpace& space = ps.front().space();
  const TolerancePolicy& tol = space.tolerance();
  const std::size_t d0 = stabilization_index(ps);
  NetLimit out{ps[d0]};
  out.stabilization_index = d0;
  for (std::size_t d = d0; d < ps.size(); ++d) {
    out.stabilized_spread = std::max(out.stabilized_spread, projection_distance(ps[d], ps[d0]));
  }
  const Stacked ranges = stack(space.dim(), ps.size(), [&](std::size_t k) -> const CMatrix& {
    return ps[k].range_basis();
  });
  const Stacked coranges = stack(space.dim(), ps.size(), [&](std::size_t k) -> const CMatrix& {
    return ps[k].corange_basis();
  });
  // ker P = ∩ ker P_d  <=>  (ker P)^perp = span of all (ker P_d)^perp
  out.range_identity = same_subspace(out.limit.range_basis(), span_of_columns(ranges.all, tol), kSubspaceTol);
  out.kernel_identity = same_subspace(out.limit.corange_basis(), span_of_columns(coranges.all, tol), kSubspaceTol);
  out.all_normal = std::all_of(ps.begin(), ps.end(), [](const ProjectionOp& p) { return p.flags().normal; });
  out.limit_normal = out.limit.flags().normal;
  std::vector<ProjectionOp> adjoints;
  adjoints.reserve(ps.size());
  for (const ProjectionOp& p : ps) adjoints.push_back(p.kadjoint());
  out.kadjoint_discrepancy = projection_distance(out.limit.kadjoint(), adjoints[stabilization_index(adjoints)]);
  return out;
}

NormalFamilySum sum_normal_family(const KreinSpace& space, const std::vector<ProjectionOp>& qs) {
  const Index n = space.dim();
  const TolerancePolicy& tol = space.tolerance();
  for (std::size_t k = 0; k < qs.size(); ++k) {
    require_space(space, qs[k]);
    if (!qs[k].flags().normal) {
      throw KreinError(ErrorKind::kNotNormalInput, "Q_k normal (member " + std::to_string(k) + ")",
                       "family member is not a normal projection");
    }
  }
  const Stacked b = stack(n, qs.size(), [&](std::size_t k) -> const CMatrix& { return qs[k].range_basis(); });
  const Stacked c = stack(n, qs.size(), [&](std::size_t k) -> const CMatrix& { return qs[k].corange_basis(); });
  const CMatrix cb = c.all.adjoint() * b.all;
  const CMatrix bjb = b.all.adjoint() * space.apply_j(b.all);
  const CMatrix cjc = c.all.adjoint() * space.apply_j(c.all);
  for (std::size_t mu = 0; mu < qs.size(); ++mu) {
    for (std::size_t la = 0; la < qs.size(); ++la) {
      if (mu == la || qs[mu].rank() == 0 || qs[la].rank() == 0) continue;
      const CMatrix& m_mu = qs[mu].coupling();
      const CMatrix& m_la = qs[la].coupling();
      const double t = pair_tol(qs[mu].norm(), qs[la].norm());
      if (operator_norm(m_mu * b.block(cb, mu, la) * m_la) > t) {
        throw KreinError(ErrorKind::kConditionViolated, pair_label("Q_mu Q_lambda = 0", mu, la),
                         "normal family violates Q_mu Q_lambda = 0");
      }
      if (operator_norm(m_mu.adjoint() * b.block(bjb, mu, la) * m_la) > t) {
        throw KreinError(ErrorKind::kConditionViolated, pair_label("Q_mu^{*K} Q_lambda = 0", mu, la),
                         "normal family violates Q_mu^{*K} Q_lambda = 0");
      }
      if (operator_norm(m_mu * c.block(cjc, mu, la) * m_la.adjoint()) > t) {
        throw KreinError(ErrorKind::kConditionViolated, pair_label("Q_mu Q_lambda^{*K} = 0", mu, la),
                         "normal family violates Q_mu Q_lambda^{*K} = 0");
      }
    }
  }
  NormalFamilySum out{lowrank_sum(space, qs, qs.size())};
  out.partial_sums_normal = true;
  for (std::size_t k = 1; k < qs.size(); ++k) {
    if (!lowrank_sum(space, qs, k).flags().normal) out.partial_sums_normal = false;
  }
  out.partial_sums_normal = out.partial_sums_normal && out.q.flags().normal;
  out.range_identity = same_subspace(out.q.range_basis(), span_of_columns(b.all, tol), kSubspaceTol);
  out.kernel_identity = same_subspace(out.q.corange_basis(), span_of_columns(c.all, tol), kSubspaceTol);
  out.ranges_independent = b.all.cols() == 0 || (b.all.cols() <= n && numerical_rank(b.all, tol) == b.all.cols());
  std::vector<ProjectionOp> adjoints;
  adjoints.reserve(qs.size());
  for (const ProjectionOp& q : qs) adjoints.push_back(q.kadjoint());
  out.kadjoint_discrepancy = projection_distance(out.q.kadjoint(), lowrank_sum(space, adjoints, adjoints.size()));
  return out;
}

QprFamilySum sum_qpr_family(const KreinSpace& space, const std::vector<ProjectionOp>& es,
                            const std::vector<CMatrix>& ts, const QprFamilyOptions& opts) {
  const Index n = space.dim();
  const TolerancePolicy& tol = space.tolerance();
  QprFamilySum out;

  std::vector<CMatrix> t_ranges;
  t_ranges.reserve(ts.size());
  for (std::size_t k = 0; k < ts.size(); ++k) {
    if (ts[k].rows() != n || ts[k].cols() != n) {
      throw KreinError(ErrorKind::kDimensionMismatch, "T_k square of size dim H", "T_k does not act on the space");
    }
    const Subspace r = Subspace::span_of(space, ts[k]);
    if (r.dim() > 0 && classify(r).kind != SubspaceKind::kNeutral) {
      throw KreinError(ErrorKind::kNotNeutralRange, "ran T_k neutral (member " + std::to_string(k) + ")",
                       "T_k does not have a neutral range");
    }
    t_ranges.push_back(r.basis());
  }

  out.regular = analyze_regular_family(space, es, opts.subsets);
  if (!out.regular.p_sum) {
    throw KreinError(ErrorKind::kConditionViolated, "sum E_k is a projection", "regular part does not sum");
  }

  // Pairwise orthogonality between every T range and every other member range.
  const double unit = tol.unit_threshold(n, n);
  auto check_pair = [&](const CMatrix& a, const CMatrix& b, const std::string& label) {
    if (a.cols() == 0 || b.cols() == 0) return;
    if (operator_norm(a.adjoint() * space.apply_j(b)) > std::max(kRelationTol, 10.0 * unit)) {
      throw KreinError(ErrorKind::kNotOrthogonalFamily, label, "family ranges are not K-orthogonal");
    }
  };
  for (std::size_t k = 0; k < ts.size(); ++k) {
    for (std::size_t e = 0; e < es.size(); ++e) {
      check_pair(t_ranges[k], es[e].range_basis(), "ran T_" + std::to_string(k) + " ⊥ ran E_" + std::to_string(e));
    }
    for (std::size_t l = k + 1; l < ts.size(); ++l) {
      check_pair(t_ranges[k], t_ranges[l], pair_label("ran T_k ⊥ ran T_l", k, l));
    }
  }

  out.ts_used = ts;
  if (opts.scale_ts) {
    for (std::size_t k = 0; k < ts.size(); ++k) {
      const double nt = operator_norm(ts[k]);
      if (nt > 0.0) out.ts_used[k] = ts[k] * (std::ldexp(1.0, -static_cast<int>(std::min<std::size_t>(k + 1, 1000))) / nt);
    }
  }
  BoundedRowOptions row_opts;
  row_opts.subsets = opts.subsets;
  BoundedRowResult row = row_operator_bounded(space, out.ts_used, row_opts);
  out.t_row = std::move(row.op);
  out.adjoint_check = row.adjoint_check;
  out.c_e = out.regular.c.value;
  out.c_t = row.c.value;
  out.c = opts.scale_ts ? out.c_e : std::max(out.c_e, out.c_t);
  out.c_exact = out.regular.c.exact && (opts.scale_ts || row.c.exact);

  std::vector<LowRankTerm> t_terms;
  t_terms.reserve(out.ts_used.size());
  for (const CMatrix& t : out.ts_used) t_terms.push_back(factor_operator(t, tol));
  const Stacked u = stack(n, t_terms.size(), [&](std::size_t k) -> const CMatrix& { return t_terms[k].u; });
  out.n_basis = span_of_columns(u.all, tol);
  if (out.n_basis.cols() == 0) out.n_basis = CMatrix::Zero(n, 0);
  const ProjectionOp& p = out.p();
  if (out.n_basis.cols() > 0) {
    out.neutrality_residual = operator_norm(out.n_basis.adjoint() * space.apply_j(out.n_basis));
    if (out.neutrality_residual > std::max(kRelationTol, 10.0 * unit)) {
      throw KreinError(ErrorKind::kNotNeutralRange, "ran T_row neutral", "combined T range is not neutral");
    }
    if (p.rank() > 0) out.orthogonality_residual = operator_norm(out.n_basis.adjoint() * space.apply_j(p.range_basis()));
  }
  CMatrix both(n, p.rank() + out.n_basis.cols());
  both << p.range_basis(), out.n_basis;
  out.m_basis = span_of_columns(both, tol);
  if (out.m_basis.cols() == 0) out.m_basis = CMatrix::Zero(n, 0);
  out.n_meets_p_trivially = out.m_basis.cols() == both.cols();

  // Sampled containment and Moore-Smith reconstruction.
  const Svd u_svd = thin_svd(u.all);
  const Index u_rank = u_svd.sigma.size() == 0 || u_svd.sigma(0) == 0.0
                           ? 0
                           : numerical_rank(u_svd.sigma, tol.threshold(u.all.rows(), u.all.cols(), u_svd.sigma(0)));
  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> normal;
  auto random_vector = [&](Index len) {
    CVector v(len);
    for (Index i = 0; i < len; ++i) v(i) = Complex(normal(rng), normal(rng));
    return v;
  };
  auto in_m = [&](const CVector& v) {
    const CVector r = v - out.m_basis * (out.m_basis.adjoint() * v);
    return r.norm() <= kSubspaceTol * std::max(1.0, v.norm());
  };
  out.draws = opts.draws;
  for (std::size_t d = 0; d < opts.draws; ++d) {
    CVector v = CVector::Zero(n);
    double scale = 1.0;
    for (const ProjectionOp& e : es) {
      v += scale * e.apply(random_vector(n));
      scale *= 0.5;
    }
    for (const CMatrix& t : out.ts_used) {
      v += scale * (t * random_vector(n));
      scale *= 0.5;
    }
    if (!in_m(v)) out.sampled_containment = false;

    if (out.m_basis.cols() == 0) continue;
    const CVector m = out.m_basis * random_vector(out.m_basis.cols());
    const CVector rest = m - p.apply(m);
    CVector coeffs = CVector::Zero(u.all.cols());
    if (u_rank > 0) {
      const CVector c = (u_svd.u.leftCols(u_rank).adjoint() * rest).cwiseQuotient(
          u_svd.sigma.head(u_rank).cast<Complex>());
      coeffs = u_svd.v.leftCols(u_rank) * c;
    }
    std::vector<CMatrix> terms;
    for (const ProjectionOp& e : es) terms.push_back(e.apply(m));
    for (std::size_t k = 0; k < t_terms.size(); ++k) {
      terms.push_back(t_terms[k].u * coeffs.segment(u.offsets[k], u.width(k)));
    }
    const MSResult ms = ms_sum(IndexedFamily::from_list(std::move(terms)), kRelationTol, opts.seed + d);
    const bool ok = ms.certificate.status == MSStatus::kSummable &&
                    (ms.sum.col(0) - m).norm() <= kSubspaceTol * std::max(1.0, m.norm());
    if (!ok) out.sampled_reconstruction = false;
  }
  return out;
}

}  // namespace kreinlab
