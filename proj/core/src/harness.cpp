#include "kreinlab/harness.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "kreinlab/errors.hpp"
#include "kreinlab/families.hpp"

namespace kreinlab {

namespace {

using RowFn = std::function<MetricRow(Index, const Scenario&)>;

struct Entry {
  ScenarioInfo info;
  Index min_size;
  std::function<Index(Index)> ambient;
  RowFn run;
};

// ---------------------------------------------------------------- toeplitz

MetricRow run_toeplitz(Index n, const Scenario&) {
  MetricRow row;
  row.size = n;
  Eigen::MatrixXd t = 2.0 * Eigen::MatrixXd::Identity(n, n);
  for (Index i = 0; i + 1 < n; ++i) t(i, i + 1) = t(i + 1, i) = 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(t, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& values = eig.eigenvalues();
  const double h = std::numbers::pi / static_cast<double>(n + 1);
  double err = 0.0;
  for (Index i = 0; i < n; ++i) {
    const double closed = 2.0 + 2.0 * std::cos(static_cast<double>(n - i) * h);
    err = std::max(err, std::abs(values(i) - closed));
  }
  const double closed_min = 2.0 + 2.0 * std::cos(static_cast<double>(n) * h);
  row.set("min_eig", values(0));
  row.set("min_eig_closed_form", closed_min);
  row.set("eig_max_error", err);
  row.set("condition", values(n - 1) / values(0));

  CVector target(n);
  for (Index k = 1; k <= n; ++k) target(k - 1) = (k % 2 == 1 ? 1.0 : -1.0) / static_cast<double>(k);
  const MembershipProbe probe = range_membership_probe(t.cast<Complex>(), target);
  row.set("preimage_norm", probe.preimage_norm);
  row.set("residual", probe.residual);
  if (n <= 64) row.arrays.emplace_back("eigenvalues", std::vector<double>(values.data(), values.data() + n));
  return row;
}

// -------------------------------------------------------------- zero_angle

MetricRow run_zero_angle(Index n, const Scenario&) {
  MetricRow row;
  row.size = n;
  const Index half = 2 * n;
  CMatrix j = CMatrix::Zero(2 * half, 2 * half);
  j.topRightCorner(half, half).setIdentity();
  j.bottomLeftCorner(half, half).setIdentity();
  const KreinSpace space(std::move(j));
  CMatrix bn = CMatrix::Zero(2 * half, n);
  CMatrix bn2 = CMatrix::Zero(2 * half, n);
  for (Index k = 1; k <= n; ++k) {
    const Index e = 2 * (k - 1);
    bn(e, k - 1) = 1.0;
    const double w = 1.0 / static_cast<double>(k);
    const double norm = std::sqrt(1.0 + w * w);
    bn2(e, k - 1) = 1.0 / norm;
    bn2(e + 1, k - 1) = w / norm;
  }
  const std::vector<double> angles = principal_angles(bn, bn2);
  const double closed = std::acos(1.0 / std::sqrt(1.0 + 1.0 / static_cast<double>(n * n)));
  row.set("min_angle", angles.front());
  row.set("min_angle_closed_form", closed);
  row.set("angle_error", std::abs(angles.front() - closed));
  CMatrix both(2 * half, 2 * n);
  both << bn, bn2;
  const RVector sigma = singular_values(both);
  const Index r = numerical_rank(sigma, space.tolerance().threshold(both.rows(), both.cols(), sigma(0)));
  row.set("sum_margin", sigma(r - 1));
  row.set("sum_dim", static_cast<double>(r));
  const Subspace sum = Subspace::span_of(space, both);
  row.set("sum_neutral", classify(sum).kind == SubspaceKind::kNeutral ? 1.0 : 0.0);
  return row;
}

// ---------------------------------------------------- unbounded_functional

MetricRow run_unbounded_functional(Index m, const Scenario&) {
  MetricRow row;
  row.size = m;
  const double n = static_cast<double>(m);
  CMatrix j = CMatrix::Identity(m, m);
  j(0, 0) = j(1, 1) = 0.0;
  j(0, 1) = j(1, 0) = 1.0;
  const KreinSpace space(std::move(j));
  // phi(v) = <v, w>_K with w = e2 + sqrt(n^2 - 1) z, z a unit vector on e3..em.
  CVector w = CVector::Zero(m);
  w(1) = 1.0;
  const double zscale = std::sqrt(n * n - 1.0) / std::sqrt(n - 2.0);
  for (Index i = 2; i < m; ++i) w(i) = zscale;
  const CVector jw = space.apply_j(w);  // phi(v) = (Jw)^H v
  CVector x = CVector::Zero(m);
  x(0) = 1.0;
  const Complex phi_x = jw.dot(x);
  const double phi_norm = jw.norm();
  const Subspace kernel = Subspace::from_orthonormal(space, orthogonal_complement(jw / phi_norm));
  const CVector resid = x - kernel.basis() * (kernel.basis().adjoint() * x);
  const Classification cls = classify(kernel);
  row.set("phi_x", std::abs(phi_x));
  row.set("phi_norm", phi_norm);
  row.set("dist_to_kernel", resid.norm());
  row.set("dist_closed_form", 1.0 / n);
  row.set("kernel_regular", cls.regular ? 1.0 : 0.0);
  row.set("kernel_margin", cls.regularity_margin);
  return row;
}

// ---------------------------------------------------------- blowup_family

struct BlowupColumns {
  double c = 0.0;
  bool exact = true;
  double span_margin = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  bool flags_agree = false;
  bool flags_true = false;
  double energy = 0.0;
  double qpr_margin = 0.0;
};

BlowupColumns blowup_columns(Index n, const std::function<double(Index)>& t_of, std::uint64_t seed) {
  std::vector<int> signs;
  for (Index k = 0; k < n; ++k) {
    signs.push_back(1);
    signs.push_back(-1);
  }
  const KreinSpace space = KreinSpace::diagonal(signs);
  std::vector<ProjectionOp> es;
  CMatrix vs = CMatrix::Zero(2 * n, n);
  CVector f = CVector::Zero(2 * n);
  for (Index k = 1; k <= n; ++k) {
    const double t = t_of(k);
    CMatrix v = CMatrix::Zero(2 * n, 1);
    v(2 * (k - 1), 0) = std::cosh(t);
    v(2 * (k - 1) + 1, 0) = std::sinh(t);
    vs.col(k - 1) = v.col(0);
    es.push_back(selfadjoint_projection(Subspace::span_of(space, v)));
    f(2 * (k - 1)) = 1.0 / static_cast<double>(k);
  }
  SubsetNormOptions opts;
  opts.seed = seed;
  const RegularFamilyReport report = analyze_regular_family(space, es, opts);
  BlowupColumns out;
  out.c = report.c.value;
  out.exact = report.c.exact;
  out.span_margin = report.span_margin;
  out.c1 = report.c1;
  out.c2 = report.c2;
  out.flags_agree = report.flags_agree;
  out.flags_true = report.flags.c1 && report.flags.c2 && report.flags.c3 && report.flags.c5;
  for (const ProjectionOp& e : es) out.energy += e.apply(f).squaredNorm();
  out.qpr_margin = check_qpr_criterion(Subspace::span_of(space, vs)).sum_with_companion_margin;
  return out;
}

MetricRow run_blowup(Index n, const Scenario& s) {
  MetricRow row;
  row.size = n;
  const BlowupColumns grow = blowup_columns(n, [](Index k) { return std::log(static_cast<double>(k)); }, s.seed);
  const BlowupColumns flat = blowup_columns(n, [](Index) { return 1.0; }, s.seed);
  const double nn = static_cast<double>(n);
  row.set("C_log", grow.c);
  row.set("C_log_closed_form", std::cosh(2.0 * std::log(nn)));
  row.set("span_margin_log", grow.span_margin);
  row.set("frame_c1_log", grow.c1);
  row.set("frame_c2_log", grow.c2);
  row.set("energy_log", grow.energy);
  row.set("qpr_margin_log", grow.qpr_margin);
  row.set("flags_agree_log", grow.flags_agree ? 1.0 : 0.0);
  row.set("C_const", flat.c);
  row.set("span_margin_const", flat.span_margin);
  row.set("frame_c1_const", flat.c1);
  row.set("frame_c2_const", flat.c2);
  row.set("energy_const", flat.energy);
  row.set("qpr_margin_const", flat.qpr_margin);
  row.set("flags_true_const", flat.flags_true ? 1.0 : 0.0);
  row.set("C_exact", grow.exact && flat.exact ? 1.0 : 0.0);
  return row;
}

// ------------------------------------------------ identical_range_closure

MetricRow run_identical_range(Index n, const Scenario&) {
  MetricRow row;
  row.size = n;
  Eigen::VectorXd x(n);
  for (Index k = 1; k <= n; ++k) x(k - 1) = 1.0 / static_cast<double>(k);
  const double xn = x.norm();
  // tails(j) = ||x - (first j coordinates of x)||
  Eigen::VectorXd tails(n + 1);
  tails(n) = 0.0;
  for (Index j = n; j-- > 0;) tails(j) = std::sqrt(tails(j + 1) * tails(j + 1) + x(j) * x(j));
  Eigen::VectorXd prev = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd partial = Eigen::VectorXd::Zero(n);
  double sum_y = 0.0;
  double max_preimage = 0.0;
  double worst_prefix_ratio = 0.0;
  Index steps = 0;
  Index cut = 0;
  for (int m = 1; cut < n; ++m) {
    const double target = xn * std::ldexp(1.0, -m);
    while (cut < n && tails(cut) > target) ++cut;
    Eigen::VectorXd xm = Eigen::VectorXd::Zero(n);
    xm.head(cut) = x.head(cut);
    const Eigen::VectorXd y = xm - prev;
    sum_y += y.norm();
    Eigen::VectorXd pre(n);
    for (Index k = 0; k < n; ++k) pre(k) = y(k) * static_cast<double>(k + 1);  // A^{-1} y
    max_preimage = std::max(max_preimage, pre.norm());
    partial += y;
    worst_prefix_ratio = std::max(worst_prefix_ratio, (x - partial).norm() / target);
    prev = xm;
    ++steps;
  }
  row.set("sum_y_over_x", sum_y / xn);
  row.set("steps", static_cast<double>(steps));
  row.set("worst_prefix_ratio", worst_prefix_ratio);
  row.set("final_error", (x - partial).norm());
  row.set("max_preimage_norm", max_preimage);
  return row;
}

// ----------------------------------------------------- qpr_sum_nonunique

struct QprColumns {
  double range_margin = 0.0;
  Index m_dim = 0;
  bool sampled = false;
  double neutrality = 0.0;
  double c = 0.0;
  CMatrix m_basis;
};

QprColumns qpr_columns(const KreinSpace& space, const std::vector<ProjectionOp>& es,
                       const std::vector<CMatrix>& ts, std::uint64_t seed) {
  QprFamilyOptions opts;
  opts.seed = seed;
  opts.subsets.seed = seed;
  const QprFamilySum sum = sum_qpr_family(space, es, ts, opts);
  QprColumns out;
  CMatrix gram = CMatrix::Zero(space.dim(), space.dim());
  for (const CMatrix& t : ts) gram += t * t.adjoint();
  const RVector sigma = singular_values(gram);
  const Index r = numerical_rank(sigma, space.tolerance().threshold(gram.rows(), gram.cols(), sigma(0)));
  out.range_margin = std::sqrt(sigma(r - 1));
  out.m_dim = sum.m_basis.cols();
  out.sampled = sum.sampled_containment && sum.sampled_reconstruction && sum.adjoint_check.holds &&
                sum.n_meets_p_trivially;
  out.neutrality = sum.neutrality_residual;
  out.c = sum.c;
  out.m_basis = sum.m_basis;
  return out;
}

MetricRow run_qpr_nonunique(Index p, const Scenario& s) {
  MetricRow row;
  row.size = p;
  const Index n = 2 * p + 2;
  std::vector<int> signs;
  for (Index i = 0; i < p; ++i) signs.push_back(1);
  for (Index i = 0; i < p; ++i) signs.push_back(-1);
  signs.push_back(1);
  signs.push_back(-1);
  const KreinSpace space = KreinSpace::diagonal(signs);
  CMatrix u = CMatrix::Zero(n, p);
  const double r2 = 1.0 / std::sqrt(2.0);
  for (Index i = 0; i < p; ++i) {
    u(i, i) = r2;
    u(p + i, i) = r2;
  }
  RVector weights(p);
  for (Index i = 0; i < p; ++i) weights(i) = 1.0 / static_cast<double>(i + 1);
  const CMatrix d_n = u * weights.cast<Complex>().asDiagonal() * u.adjoint();
  const CMatrix pi_n = u * u.adjoint();
  std::vector<ProjectionOp> es;
  for (Index c = 2 * p; c < n; ++c) {
    CMatrix e = CMatrix::Zero(n, 1);
    e(c, 0) = 1.0;
    es.push_back(selfadjoint_projection(Subspace::span_of(space, e)));
  }
  constexpr int kMembers = 4;
  std::vector<CMatrix> ts_a;
  std::vector<CMatrix> ts_b;
  for (int k = 1; k <= kMembers; ++k) {
    ts_a.push_back(std::ldexp(1.0, -k) * d_n);
    ts_b.push_back(std::ldexp(1.0, -k) * pi_n);
  }
  const QprColumns a = qpr_columns(space, es, ts_a, s.seed);
  const QprColumns b = qpr_columns(space, es, ts_b, s.seed);
  row.set("range_margin_operator", a.range_margin);
  row.set("range_margin_closed", b.range_margin);
  row.set("m_dim_operator", static_cast<double>(a.m_dim));
  row.set("m_dim_closed", static_cast<double>(b.m_dim));
  row.set("expected_dim", static_cast<double>(p + 2));
  row.set("C_operator", a.c);
  row.set("C_closed", b.c);
  row.set("sampled_ok", a.sampled && b.sampled ? 1.0 : 0.0);
  row.set("neutrality_residual", std::max(a.neutrality, b.neutrality));
  row.set("m_gap", a.m_dim == b.m_dim ? containment_gap(a.m_basis, b.m_basis) : 1.0);
  return row;
}

// ------------------------------------------------------------ all_ones_row

MetricRow run_all_ones(Index n, const Scenario& s) {
  MetricRow row;
  row.size = n;
  const KreinSpace line = KreinSpace::euclidean(1);
  const std::vector<CMatrix> ts(static_cast<std::size_t>(n), CMatrix::Ones(1, 1));
  BoundedRowOptions opts;
  opts.subsets.seed = s.seed;
  const BoundedRowResult res = row_operator_bounded(line, ts, opts);
  const std::vector<CVector> xs(static_cast<std::size_t>(n), CVector::Constant(1, 1.0 / static_cast<double>(n)));
  double xnorm2 = 0.0;
  for (const CVector& v : xs) xnorm2 += v.squaredNorm();
  const RowOp::Applied image = res.op.apply(xs);
  row.set("x_norm", std::sqrt(xnorm2));
  row.set("x_norm_closed_form", 1.0 / std::sqrt(static_cast<double>(n)));
  row.set("image", std::abs(image.value(0)));
  row.set("C", res.c.value);
  row.set("C_exact", res.c.exact ? 1.0 : 0.0);
  row.set("adjoint_bound_holds", res.adjoint_check.holds ? 1.0 : 0.0);
  return row;
}

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries = {
      {{"toeplitz", "tridiagonal Toeplitz T_n = tridiag(1, 2, 1): spectrum, conditioning, range probe",
        "smallest eigenvalue tends to zero; range of the limit operator is not closed", "n = matrix dimension"},
       1, [](Index n) { return n; }, run_toeplitz},
      {{"zero_angle", "two neutral subspaces N, N' inside a neutral H0 with principal angle 1/n",
        "sum of two neutral subspaces with zero angle between them", "n = number of coordinate pairs; ambient 4n"},
       1, [](Index n) { return 4 * n; }, run_zero_angle},
      {{"unbounded_functional", "functional phi_n with ||phi_n|| = n and phi_n(x) = 1",
        "kernel of an unbounded functional is dense yet every finite kernel is regular", "n = ambient dimension"},
       3, [](Index n) { return n; }, run_unbounded_functional},
      {{"blowup_family", "selfadjoint projections onto span{(cosh t_k, sinh t_k)}, t_k = log k vs t_k = 1",
        "bounded subset sums iff regular span; graph subspace that is positive but not uniformly so",
        "n = number of 2x2 blocks; ambient 2n"},
       1, [](Index n) { return 2 * n; }, run_blowup},
      {{"identical_range_closure", "A = diag(1/k); y_m = x_m - x_(m-1) with ||x - x_m|| <= ||x|| / 2^m",
        "vectors in the closure of an operator range are sums of range vectors with sum ||y_m|| <= 3||x||",
        "n = ambient dimension"},
       1, [](Index n) { return n; }, run_identical_range},
      {{"qpr_sum_nonunique", "family with one identical neutral range, summed via a non-closed and a closed row",
        "orthogonal sums of neutral operator ranges are not unique", "p = neutral dimension; ambient 2p + 2"},
       1, [](Index n) { return 2 * n + 2; }, run_qpr_nonunique},
      {{"all_ones_row", "row operator x -> sum x_k on C^n with x_n = (1/n, ..., 1/n)",
        "all-ones row: ||x_n|| -> 0 while T x_n = 1, subset bound C = n", "n = number of members"},
       1, [](Index n) { return n; }, run_all_ones},
  };
  return entries;
}

const Entry& lookup(const std::string& name) {
  for (const Entry& e : registry()) {
    if (e.info.name == name) return e;
  }
  throw KreinError(ErrorKind::kUnknownScenario, "scenario registered", "unknown scenario '" + name + "'");
}

// ---------------------------------------------------------------- verdicts

class Judge {
 public:
  explicit Judge(const std::vector<MetricRow>& rows) : rows_(rows) {}

  void each(const std::string& label, const std::function<bool(const MetricRow&)>& ok) {
    for (const MetricRow& r : rows_) {
      if (!ok(r)) {
        failed_.push_back(label + " at size " + std::to_string(r.size));
        return;
      }
    }
  }
  void strictly(const std::string& metric, bool increasing) {
    for (std::size_t i = 1; i < rows_.size(); ++i) {
      const double a = rows_[i - 1].get(metric);
      const double b = rows_[i].get(metric);
      if (increasing ? !(b > a) : !(b < a)) {
        failed_.push_back(metric + (increasing ? " not strictly increasing" : " not strictly decreasing"));
        return;
      }
    }
  }
  void ratio_at_least(const std::string& metric, double factor, bool growth) {
    if (rows_.size() < 2) return;
    const double first = rows_.front().get(metric);
    const double last = rows_.back().get(metric);
    const bool ok = growth ? last > factor * first : first >= factor * last;
    if (!ok) failed_.push_back(metric + " does not change by the required factor");
  }
  void constant(const std::string& metric, double rel_tol) {
    if (rows_.empty()) return;
    const double first = rows_.front().get(metric);
    each(metric + " constant", [&](const MetricRow& r) {
      return std::abs(r.get(metric) - first) <= rel_tol * std::max(1.0, std::abs(first));
    });
  }
  VerdictResult result() const {
    return {failed_.empty() ? Verdict::kConfirmed : Verdict::kInconclusive, failed_};
  }

 private:
  const std::vector<MetricRow>& rows_;
  std::vector<std::string> failed_;
};

}  // namespace

double MetricRow::get(const std::string& name) const {
  for (const auto& [k, v] : values) {
    if (k == name) return v;
  }
  throw KreinError(ErrorKind::kInvalidArgument, "metric exists", "unknown metric '" + name + "'");
}

bool MetricRow::has(const std::string& name) const {
  return std::any_of(values.begin(), values.end(), [&](const auto& kv) { return kv.first == name; });
}

std::string_view verdict_name(Verdict v) {
  return v == Verdict::kConfirmed ? "confirmed" : "inconclusive";
}

std::vector<ScenarioInfo> list_scenarios() {
  std::vector<ScenarioInfo> out;
  for (const Entry& e : registry()) out.push_back(e.info);
  return out;
}

const std::vector<Index>& default_sizes() {
  static const std::vector<Index> sizes = {8, 16, 32, 64, 128, 256};
  return sizes;
}

Index ambient_dimension(const std::string& name, Index size) {
  return lookup(name).ambient(size);
}

MetricSeries run_scenario(const Scenario& s) {
  const Entry& entry = lookup(s.name);
  const std::vector<Index>& sizes = s.sizes.empty() ? default_sizes() : s.sizes;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] < entry.min_size) {
      throw KreinError(ErrorKind::kInvalidArgument, "size >= " + std::to_string(entry.min_size),
                       "ladder size too small for " + s.name);
    }
    if (i > 0 && sizes[i] <= sizes[i - 1]) {
      throw KreinError(ErrorKind::kInvalidArgument, "sizes strictly increasing", "ladder sizes must increase");
    }
    if (sizes[i] > kAmbientCap || entry.ambient(sizes[i]) > kAmbientCap) {
      throw KreinError(ErrorKind::kSizeCapExceeded, "ambient dimension <= 4096",
                       "ladder size " + std::to_string(sizes[i]) + " exceeds the cap");
    }
  }
  MetricSeries out;
  out.scenario = s.name;
  out.seed = s.seed;
  for (Index n : sizes) out.rows.push_back(entry.run(n, s));
  VerdictResult v = judge(s.name, out.rows);
  out.verdict = v.verdict;
  out.failed_checks = std::move(v.failed_checks);
  return out;
}

VerdictResult judge(const std::string& name, const std::vector<MetricRow>& rows) {
  lookup(name);
  Judge j(rows);
  if (name == "toeplitz") {
    j.each("eigenvalues match closed form", [](const MetricRow& r) { return r.get("eig_max_error") <= 1e-10; });
    j.strictly("min_eig", false);
    j.strictly("condition", true);
    j.strictly("preimage_norm", true);
  } else if (name == "zero_angle") {
    j.each("angle matches closed form", [](const MetricRow& r) { return r.get("angle_error") <= 1e-10; });
    j.each("sum neutral", [](const MetricRow& r) { return r.get("sum_neutral") == 1.0; });
    j.strictly("min_angle", false);
    j.strictly("sum_margin", false);
  } else if (name == "unbounded_functional") {
    j.each("phi(x) = 1", [](const MetricRow& r) { return std::abs(r.get("phi_x") - 1.0) <= 1e-12; });
    j.each("distance = 1/n", [](const MetricRow& r) {
      return std::abs(r.get("dist_to_kernel") - r.get("dist_closed_form")) <= 1e-12;
    });
    j.each("kernel regular", [](const MetricRow& r) { return r.get("kernel_regular") == 1.0; });
    j.strictly("dist_to_kernel", false);
  } else if (name == "blowup_family") {
    j.each("flags agree", [](const MetricRow& r) { return r.get("flags_agree_log") == 1.0; });
    j.each("flags true for constant t", [](const MetricRow& r) { return r.get("flags_true_const") == 1.0; });
    j.strictly("C_log", true);
    j.strictly("span_margin_log", false);
    j.ratio_at_least("C_log", 10.0, true);
    j.ratio_at_least("span_margin_log", 10.0, false);
    j.constant("C_const", 1e-9);
    j.constant("span_margin_const", 1e-9);
  } else if (name == "identical_range_closure") {
    j.each("sum ||y_m|| <= 3 ||x||", [](const MetricRow& r) { return r.get("sum_y_over_x") <= 3.0; });
    j.each("prefix error <= ||x|| / 2^m", [](const MetricRow& r) { return r.get("worst_prefix_ratio") <= 1.0; });
    j.each("prefix sums reach x", [](const MetricRow& r) { return r.get("final_error") <= 1e-12; });
  } else if (name == "qpr_sum_nonunique") {
    j.each("both sums have the expected dimension", [](const MetricRow& r) {
      return r.get("m_dim_operator") == r.get("expected_dim") && r.get("m_dim_closed") == r.get("expected_dim");
    });
    j.each("sampled containment and reconstruction", [](const MetricRow& r) { return r.get("sampled_ok") == 1.0; });
    j.each("neutral part neutral", [](const MetricRow& r) { return r.get("neutrality_residual") <= 1e-9; });
    j.strictly("range_margin_operator", false);
    j.constant("range_margin_closed", 1e-9);
  } else if (name == "all_ones_row") {
    j.each("T x_n = 1", [](const MetricRow& r) { return std::abs(r.get("image") - 1.0) <= 1e-12; });
    j.each("C = n", [](const MetricRow& r) {
      return std::abs(r.get("C") - static_cast<double>(r.size)) <= 1e-9 * static_cast<double>(r.size);
    });
    j.each("adjoint bound", [](const MetricRow& r) { return r.get("adjoint_bound_holds") == 1.0; });
    j.strictly("x_norm", false);
  }
  return j.result();
}

}  // namespace kreinlab
