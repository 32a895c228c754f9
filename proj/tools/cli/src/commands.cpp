#include "kreinlab_cli/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>

#include <CLI11.hpp>

#include "kreinlab/errors.hpp"
#include "kreinlab/families.hpp"
#include "kreinlab/harness.hpp"
#include "kreinlab/verify.hpp"
#include "kreinlab_cli/matrix_io.hpp"
#include "kreinlab_cli/report.hpp"

namespace kreinlab::cli {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

struct GlobalOptions {
  std::optional<double> tol;
  std::string output;
  bool strict_basis = false;
};

struct ClassifyArgs {
  std::string space;
  std::string subspace;
};

struct ProjectArgs {
  std::string space;
  std::string subspace;
  std::string mode = "selfadjoint";
  std::string kernel;
};

struct FamilyArgs {
  std::string space;
  std::string dir;
  std::string kind = "regular";
  std::size_t budget = 15;
  std::size_t samples = 2000;
  std::uint64_t seed = 0;
  bool scale_ts = false;
};

struct ScenarioArgs {
  std::string name;
  std::vector<Index> sizes;
  std::string format = "json";
  std::uint64_t seed = 0;
  std::vector<std::string> params;
};

struct VerifyArgs {
  std::string suite = "all";
  std::uint64_t seed = 0;
  std::optional<std::size_t> trials;
  bool timing = false;
};

ToleranceSetting resolve_tolerance(const GlobalOptions& g, const Environment& env) {
  ToleranceSetting out;
  if (env.tol && !env.tol->empty()) {
    double v = 0.0;
    const std::string& s = *env.tol;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !(v > 0.0) || !std::isfinite(v)) {
      throw KreinError(ErrorKind::kInvalidArgument, "KREINLAB_TOL positive number", "cannot parse KREINLAB_TOL='" + s + "'");
    }
    out.policy.relative_eps = v;
    out.source = "env";
  }
  if (g.tol) {
    out.policy.relative_eps = *g.tol;
    out.source = "flag";
  }
  return out;
}

KreinSpace load_space(const std::string& path, const TolerancePolicy& tol, InputsDigest& digest) {
  digest.add("space", read_file(path));
  return KreinSpace(read_matrix_file(path), tol);
}

Subspace load_subspace(const KreinSpace& space, const std::string& path, bool strict, InputsDigest& digest,
                       const char* label = "subspace") {
  digest.add(label, read_file(path));
  CMatrix b = read_matrix_file(path);
  if (b.rows() != space.dim()) {
    throw KreinError(ErrorKind::kDimensionMismatch, "subspace rows = dim H",
                     "basis has " + std::to_string(b.rows()) + " rows, space has dimension " +
                         std::to_string(space.dim()));
  }
  return strict ? Subspace::from_orthonormal(space, std::move(b)) : Subspace::span_of(space, b);
}

ojson classification_json(const Classification& c) {
  ojson out;
  out["kind"] = subspace_kind_name(c.kind);
  out["regular"] = c.regular;
  out["regularity_margin"] = c.regularity_margin;
  out["isotropic_dim"] = c.isotropic_dim;
  out["positive_dim"] = c.positive_dim;
  out["negative_dim"] = c.negative_dim;
  out["threshold"] = c.threshold;
  out["borderline"] = c.borderline;
  return out;
}

Report cmd_classify(const ClassifyArgs& a, const GlobalOptions& g, const ToleranceSetting& tol) {
  InputsDigest digest;
  digest.add("command", "classify");
  digest.add("strict_basis", g.strict_basis ? "1" : "0");
  const KreinSpace space = load_space(a.space, tol.policy, digest);
  const Subspace s = load_subspace(space, a.subspace, g.strict_basis, digest);
  const Classification c = classify(s);
  const QprDecomposition d = decompose_qpr(s);
  const CompanionSumCheck q = check_qpr_criterion(s);

  Report r;
  r.command = "classify";
  r.inputs_digest = digest.hex();
  r.tolerance = tol;
  r.results["ambient_dim"] = space.dim();
  r.results["dim"] = s.dim();
  r.results["classification"] = classification_json(c);
  ojson dec;
  dec["regular_part"] = matrix_to_json(d.regular_part.basis());
  dec["isotropic_part"] = matrix_to_json(d.isotropic_part.basis());
  dec["regular_margin"] = d.regular_margin;
  dec["adapted_symmetry"] = matrix_to_json(d.adapted_j);
  r.results["decomposition"] = std::move(dec);
  r.results["companion_sum"] = {{"margin", q.sum_with_companion_margin}, {"dim", q.sum_dim}};
  r.flags["regular"] = c.regular;
  r.flags["borderline"] = c.borderline;
  r.flags["qpr"] = q.is_qpr;
  return r;
}

Report cmd_project(const ProjectArgs& a, const GlobalOptions& g, const ToleranceSetting& tol) {
  InputsDigest digest;
  digest.add("command", "project");
  digest.add("mode", a.mode);
  digest.add("strict_basis", g.strict_basis ? "1" : "0");
  const KreinSpace space = load_space(a.space, tol.policy, digest);
  const Subspace s = load_subspace(space, a.subspace, g.strict_basis, digest);
  std::optional<ProjectionOp> p;
  if (a.mode == "selfadjoint") {
    p = selfadjoint_projection(s);
  } else if (a.mode == "normal") {
    p = normal_projection(s);
  } else {
    if (a.kernel.empty()) {
      throw KreinError(ErrorKind::kInvalidArgument, "--kernel given with --mode oblique", "oblique mode needs --kernel");
    }
    p = oblique_projection(s, load_subspace(space, a.kernel, g.strict_basis, digest, "kernel"));
  }

  Report r;
  r.command = "project";
  r.inputs_digest = digest.hex();
  r.tolerance = tol;
  r.results["mode"] = a.mode;
  r.results["matrix"] = matrix_to_json(p->matrix());
  r.results["rank"] = p->rank();
  r.results["norm"] = p->norm();
  r.results["idempotency_residual"] = p->idempotency_residual();
  r.results["selfadjoint_residual"] = p->selfadjoint_residual();
  r.results["normal_residual"] = p->normal_residual();
  r.results["range"] = matrix_to_json(p->range().basis());
  r.results["kernel"] = matrix_to_json(p->kernel().basis());
  r.flags["j_selfadjoint"] = p->flags().j_selfadjoint;
  r.flags["normal"] = p->flags().normal;
  return r;
}

struct FamilyFiles {
  std::vector<fs::path> e;
  std::vector<fs::path> t;
};

FamilyFiles list_family(const std::string& dir, bool split) {
  if (!fs::is_directory(dir)) throw ParseError("family directory exists", "not a directory: " + dir);
  std::vector<fs::path> files;
  for (const fs::directory_entry& entry : fs::directory_iterator(dir)) {
    const std::string ext = entry.path().extension().string();
    if (entry.is_regular_file() && (ext == ".json" || ext == ".csv")) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  FamilyFiles out;
  for (const fs::path& f : files) {
    const char lead = f.filename().string().front();
    if (!split || lead == 'E' || lead == 'e') {
      out.e.push_back(f);
    } else if (lead == 'T' || lead == 't') {
      out.t.push_back(f);
    } else {
      throw ParseError("qpr member files named E* or T*", "cannot place " + f.filename().string());
    }
  }
  if (out.e.empty() && out.t.empty()) throw ParseError("at least one member file", "no .json or .csv files in " + dir);
  return out;
}

std::vector<CMatrix> load_members(const std::vector<fs::path>& files, const KreinSpace& space, InputsDigest& digest,
                                  const char* label) {
  std::vector<CMatrix> out;
  for (const fs::path& f : files) {
    digest.add(label, f.filename().string());
    digest.add("bytes", read_file(f));
    CMatrix m = read_matrix_file(f);
    if (m.rows() != space.dim() || m.cols() != space.dim()) {
      throw KreinError(ErrorKind::kDimensionMismatch, "members are dim H x dim H",
                       f.filename().string() + " does not act on the space");
    }
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<ProjectionOp> as_projections(const KreinSpace& space, const std::vector<CMatrix>& ms) {
  std::vector<ProjectionOp> out;
  for (const CMatrix& m : ms) out.push_back(ProjectionOp::from_matrix(space, m));
  return out;
}

ojson subset_json(const SubsetNormBound& c) {
  return {{"value", c.value}, {"exact", c.exact}, {"subsets_evaluated", c.subsets_evaluated}};
}

void regular_json(const RegularFamilyReport& rep, ojson& results, ojson& flags) {
  results["c"] = subset_json(rep.c);
  results["c1"] = rep.c1;
  results["c2"] = rep.c2;
  results["span_regular"] = rep.span_regular;
  results["span_margin"] = rep.span_margin;
  results["span_dim"] = rep.span_dim;
  results["independence_margin"] = rep.independence_margin;
  results["p_sum"] = rep.p_sum ? matrix_to_json(rep.p_sum->matrix()) : ojson(nullptr);
  flags["c1"] = rep.flags.c1;
  flags["c2"] = rep.flags.c2;
  flags["c3"] = rep.flags.c3;
  flags["c5"] = rep.flags.c5;
  flags["flags_agree"] = rep.flags_agree;
}

Report cmd_family(const FamilyArgs& a, const ToleranceSetting& tol) {
  InputsDigest digest;
  digest.add("command", "family");
  digest.add("kind", a.kind);
  digest.add("budget", std::to_string(a.budget));
  digest.add("samples", std::to_string(a.samples));
  digest.add("seed", std::to_string(a.seed));
  digest.add("scale_ts", a.scale_ts ? "1" : "0");
  const KreinSpace space = load_space(a.space, tol.policy, digest);
  const FamilyFiles files = list_family(a.dir, a.kind == "qpr");
  const SubsetNormOptions subsets{a.budget, a.samples, a.seed};

  Report r;
  r.command = "family";
  r.tolerance = tol;
  r.seed = a.seed;
  r.results["kind"] = a.kind;
  if (a.kind == "regular") {
    const std::vector<ProjectionOp> es = as_projections(space, load_members(files.e, space, digest, "member"));
    r.results["members"] = es.size();
    regular_json(analyze_regular_family(space, es, subsets), r.results, r.flags);
  } else if (a.kind == "normal") {
    const std::vector<ProjectionOp> qs = as_projections(space, load_members(files.e, space, digest, "member"));
    const NormalFamilySum sum = sum_normal_family(space, qs);
    r.results["members"] = qs.size();
    r.results["q"] = matrix_to_json(sum.q.matrix());
    r.results["rank"] = sum.q.rank();
    r.results["norm"] = sum.q.norm();
    r.results["kadjoint_discrepancy"] = sum.kadjoint_discrepancy;
    r.flags["normal"] = sum.q.flags().normal;
    r.flags["partial_sums_normal"] = sum.partial_sums_normal;
    r.flags["range_identity"] = sum.range_identity;
    r.flags["kernel_identity"] = sum.kernel_identity;
    r.flags["ranges_independent"] = sum.ranges_independent;
  } else {
    const std::vector<ProjectionOp> es = as_projections(space, load_members(files.e, space, digest, "e"));
    const std::vector<CMatrix> ts = load_members(files.t, space, digest, "t");
    QprFamilyOptions opts;
    opts.subsets = subsets;
    opts.scale_ts = a.scale_ts;
    opts.seed = a.seed;
    const QprFamilySum sum = sum_qpr_family(space, es, ts, opts);
    r.results["e_members"] = es.size();
    r.results["t_members"] = ts.size();
    ojson regular;
    ojson regular_flags;
    regular_json(sum.regular, regular, regular_flags);
    r.results["regular"] = std::move(regular);
    r.results["c"] = sum.c;
    r.results["c_exact"] = sum.c_exact;
    r.results["c_e"] = sum.c_e;
    r.results["c_t"] = sum.c_t;
    r.results["adjoint_check"] = {{"trials", sum.adjoint_check.trials},
                                  {"max_ratio", sum.adjoint_check.max_ratio},
                                  {"bound", sum.adjoint_check.bound},
                                  {"holds", sum.adjoint_check.holds}};
    r.results["neutrality_residual"] = sum.neutrality_residual;
    r.results["orthogonality_residual"] = sum.orthogonality_residual;
    r.results["n_dim"] = sum.n_basis.cols();
    r.results["m_dim"] = sum.m_basis.cols();
    r.results["n_basis"] = matrix_to_json(sum.n_basis);
    r.results["m_basis"] = matrix_to_json(sum.m_basis);
    r.results["draws"] = sum.draws;
    r.flags["regular_flags_agree"] = sum.regular.flags_agree;
    r.flags["adjoint_bound_holds"] = sum.adjoint_check.holds;
    r.flags["n_meets_p_trivially"] = sum.n_meets_p_trivially;
    r.flags["sampled_containment"] = sum.sampled_containment;
    r.flags["sampled_reconstruction"] = sum.sampled_reconstruction;
  }
  r.inputs_digest = digest.hex();
  return r;
}

std::map<std::string, double> parse_params(const std::vector<std::string>& raw) {
  std::map<std::string, double> out;
  for (const std::string& p : raw) {
    const std::size_t eq = p.find('=');
    double v = 0.0;
    if (eq == std::string::npos || eq == 0) {
      throw KreinError(ErrorKind::kInvalidArgument, "--param key=value", "malformed parameter '" + p + "'");
    }
    const char* first = p.data() + eq + 1;
    const char* last = p.data() + p.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last) {
      throw KreinError(ErrorKind::kInvalidArgument, "--param key=value", "malformed parameter '" + p + "'");
    }
    out[p.substr(0, eq)] = v;
  }
  return out;
}

ojson series_json(const MetricSeries& s) {
  ojson out;
  out["scenario"] = s.scenario;
  out["verdict"] = verdict_name(s.verdict);
  out["failed_checks"] = s.failed_checks;
  ojson rows = ojson::array();
  for (const MetricRow& row : s.rows) {
    ojson jr;
    jr["size"] = row.size;
    ojson metrics = ojson::object();
    for (const auto& [name, v] : row.values) metrics[name] = std::isfinite(v) ? ojson(v) : ojson(format_double(v));
    jr["metrics"] = std::move(metrics);
    ojson arrays = ojson::object();
    for (const auto& [name, v] : row.arrays) arrays[name] = v;
    jr["arrays"] = std::move(arrays);
    rows.push_back(std::move(jr));
  }
  out["rows"] = std::move(rows);
  return out;
}

std::string series_csv(const MetricSeries& s) {
  std::vector<std::string> columns;
  for (const MetricRow& row : s.rows) {
    for (const auto& kv : row.values) {
      if (std::find(columns.begin(), columns.end(), kv.first) == columns.end()) columns.push_back(kv.first);
    }
  }
  std::string out = "size";
  for (const std::string& c : columns) out += "," + c;
  out += '\n';
  for (const MetricRow& row : s.rows) {
    out += std::to_string(row.size);
    for (const std::string& c : columns) {
      out += ',';
      if (row.has(c)) out += format_double(row.get(c));
    }
    out += '\n';
  }
  return out;
}

Report cmd_scenario(const ScenarioArgs& a, const ToleranceSetting& tol, std::string& csv) {
  Scenario s;
  s.name = a.name;
  s.sizes = a.sizes;
  s.seed = a.seed;
  s.params = parse_params(a.params);
  InputsDigest digest;
  digest.add("command", "scenario");
  digest.add("name", a.name);
  for (Index n : a.sizes) digest.add("size", std::to_string(n));
  for (const auto& [k, v] : s.params) digest.add(k, format_double(v));
  digest.add("seed", std::to_string(a.seed));
  const MetricSeries series = run_scenario(s);
  if (a.format == "csv") csv = series_csv(series);

  Report r;
  r.command = "scenario";
  r.inputs_digest = digest.hex();
  r.tolerance = tol;
  r.seed = a.seed;
  r.results = series_json(series);
  r.flags["confirmed"] = series.verdict == Verdict::kConfirmed;
  return r;
}

Report cmd_verify(const VerifyArgs& a, const ToleranceSetting& tol) {
  VerifyOptions opts;
  opts.suite = a.suite;
  opts.seed = a.seed;
  opts.trials = a.trials;
  opts.tol = tol.policy;
  const VerifyReport rep = run_verify(opts);
  InputsDigest digest;
  digest.add("command", "verify");
  digest.add("suite", a.suite);
  digest.add("trials", a.trials ? std::to_string(*a.trials) : "default");
  digest.add("seed", std::to_string(a.seed));

  Report r;
  r.command = "verify";
  r.inputs_digest = digest.hex();
  r.tolerance = tol;
  r.seed = a.seed;
  r.results["suite"] = a.suite;
  ojson props = ojson::array();
  for (const PropertyResult& p : rep.properties) {
    ojson jp;
    jp["suite"] = p.suite;
    jp["name"] = p.name;
    jp["description"] = p.description;
    jp["trials"] = p.trials;
    jp["passed"] = p.passed;
    jp["failed"] = p.failed;
    jp["borderline"] = p.borderline;
    jp["borderline_failures"] = p.borderline_failures;
    jp["worst"] = p.worst;
    jp["first_failure"] = p.first_failure;
    if (a.timing) jp["seconds"] = p.seconds;
    props.push_back(std::move(jp));
  }
  r.results["properties"] = std::move(props);
  if (a.timing) r.results["seconds"] = rep.seconds;
  r.flags["all_passed"] = rep.all_passed();
  r.flags["borderline_total"] = rep.borderline_total();
  return r;
}

Report cmd_list() {
  Report r;
  r.command = "list";
  InputsDigest digest;
  digest.add("command", "list");
  r.inputs_digest = digest.hex();
  ojson scenarios = ojson::array();
  for (const ScenarioInfo& info : list_scenarios()) {
    scenarios.push_back({{"name", info.name},
                         {"description", info.description},
                         {"phenomenon", info.phenomenon},
                         {"size_meaning", info.size_meaning}});
  }
  r.results["scenarios"] = std::move(scenarios);
  r.results["default_sizes"] = default_sizes();
  ojson suites = ojson::object();
  for (const std::string& s : verify_suites()) {
    if (s != "all") suites[s] = property_names(s);
  }
  r.results["suites"] = std::move(suites);
  return r;
}

int exit_code_for(ErrorKind kind) {
  switch (error_category(kind)) {
    case ErrorCategory::kUsage: return kExitUsage;
    case ErrorCategory::kStructure: return kExitStructure;
    case ErrorCategory::kPrecondition: return kExitPrecondition;
  }
  return kExitPrecondition;
}

int emit_error(std::ostream& err, const std::string& command, std::string_view kind, std::string_view category,
               const std::string& violated, const std::string& message, int code) {
  ojson e;
  e["command"] = command.empty() ? ojson(nullptr) : ojson(command);
  e["version"] = tool_version();
  e["error"] = {{"kind", kind}, {"category", category}, {"violated", violated}, {"message", message}};
  e["exit_code"] = code;
  err << e.dump(2) << '\n';
  return code;
}

std::string_view category_name(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::kUsage: return "usage";
    case ErrorCategory::kStructure: return "structure";
    case ErrorCategory::kPrecondition: return "precondition";
  }
  return "precondition";
}

void write_output(const std::string& text, const GlobalOptions& g, std::ostream& out) {
  if (g.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(g.output, std::ios::binary);
  if (!f) throw ParseError("writable output path", "cannot write " + g.output);
  f << text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Environment& env) {
  CLI::App app{"Krein-space subspace and projection toolkit", "kreinlab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tool_version()));

  GlobalOptions g;
  double tol_value = 0.0;
  CLI::Option* tol_opt =
      app.add_option("--tol", tol_value, "relative rank tolerance (overrides KREINLAB_TOL)")->check(CLI::PositiveNumber);
  app.add_option("-o,--output", g.output, "write the report to this path instead of stdout");
  app.add_flag("--strict-basis", g.strict_basis, "require subspace files to hold orthonormal bases");

  ClassifyArgs ca;
  CLI::App* classify_cmd = app.add_subcommand("classify", "classify a subspace and split off its isotropic part");
  classify_cmd->fallthrough();
  classify_cmd->add_option("space", ca.space, "matrix file holding J")->required();
  classify_cmd->add_option("subspace", ca.subspace, "matrix file whose columns span S")->required();

  ProjectArgs pa;
  CLI::App* project_cmd = app.add_subcommand("project", "build a projection onto a subspace");
  project_cmd->fallthrough();
  project_cmd->add_option("space", pa.space, "matrix file holding J")->required();
  project_cmd->add_option("subspace", pa.subspace, "matrix file whose columns span the range")->required();
  project_cmd->add_option("--mode", pa.mode, "selfadjoint | normal | oblique")
      ->check(CLI::IsMember({"selfadjoint", "normal", "oblique"}));
  project_cmd->add_option("--kernel", pa.kernel, "matrix file spanning the kernel (oblique mode)");

  FamilyArgs fa;
  CLI::App* family_cmd = app.add_subcommand("family", "analyze a family of projections");
  family_cmd->fallthrough();
  family_cmd->add_option("space", fa.space, "matrix file holding J")->required();
  family_cmd->add_option("dir", fa.dir, "directory of member matrix files (E*/T* for qpr)")->required();
  family_cmd->add_option("--kind", fa.kind, "regular | normal | qpr")->check(CLI::IsMember({"regular", "normal", "qpr"}));
  family_cmd->add_option("--budget", fa.budget, "largest family enumerated exactly")->check(CLI::Range(1, 20));
  family_cmd->add_option("--samples", fa.samples, "random subsets beyond the exact budget");
  family_cmd->add_option("--seed", fa.seed, "seed for sampled subsets and vectors");
  family_cmd->add_flag("--scale-ts", fa.scale_ts, "rescale the T members to absolute norm sum 1");

  ScenarioArgs sa;
  CLI::App* scenario_cmd = app.add_subcommand("scenario", "run a truncation ladder");
  scenario_cmd->fallthrough();
  scenario_cmd->add_option("name", sa.name, "scenario name (see `kreinlab list`)")->required();
  scenario_cmd->add_option("--sizes", sa.sizes, "comma-separated ladder sizes")->delimiter(',');
  scenario_cmd->add_option("--out", sa.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  scenario_cmd->add_option("--seed", sa.seed, "scenario seed");
  scenario_cmd->add_option("--param", sa.params, "scenario parameter key=value");

  VerifyArgs va;
  std::size_t trials_value = 0;
  CLI::App* verify_cmd = app.add_subcommand("verify", "run the seeded property suites");
  verify_cmd->fallthrough();
  verify_cmd->add_option("--suite", va.suite, "all | lemmas | sums | scenarios")
      ->check(CLI::IsMember({"all", "lemmas", "sums", "scenarios"}));
  verify_cmd->add_option("--seed", va.seed, "base seed");
  CLI::Option* trials_opt = verify_cmd->add_option("--trials", trials_value, "trials per property");
  verify_cmd->add_flag("--timing", va.timing, "include wall-clock timings in the report");

  CLI::App* list_cmd = app.add_subcommand("list", "list scenarios and property suites");
  list_cmd->fallthrough();

  std::vector<const char*> argv{"kreinlab"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::string command;
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    return emit_error(err, "", "UsageError", "usage", "valid command line", e.what(), kExitUsage);
  }

  if (*tol_opt) g.tol = tol_value;
  if (*trials_opt) va.trials = trials_value;
  command = app.get_subcommands().front()->get_name();

  try {
    const ToleranceSetting tol = resolve_tolerance(g, env);
    std::string csv;
    Report report;
    if (command == "classify") {
      report = cmd_classify(ca, g, tol);
    } else if (command == "project") {
      report = cmd_project(pa, g, tol);
    } else if (command == "family") {
      report = cmd_family(fa, tol);
    } else if (command == "scenario") {
      report = cmd_scenario(sa, tol, csv);
    } else if (command == "verify") {
      report = cmd_verify(va, tol);
    } else {
      report = cmd_list();
    }
    write_output(csv.empty() ? report.to_json().dump(2) + "\n" : csv, g, out);
    if (command == "verify" && !report.flags["all_passed"].get<bool>()) return kExitVerifyFailed;
    return kExitOk;
  } catch (const ParseError& e) {
    return emit_error(err, command, "ParseError", "usage", e.violated(), e.what(), kExitUsage);
  } catch (const KreinError& e) {
    return emit_error(err, command, error_kind_name(e.kind()), category_name(error_category(e.kind())), e.violated(),
                      e.what(), exit_code_for(e.kind()));
  } catch (const fs::filesystem_error& e) {
    return emit_error(err, command, "ParseError", "usage", "readable input path", e.what(), kExitUsage);
  }
}

}  // namespace kreinlab::cli
