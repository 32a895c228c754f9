// Acceptance run: executes the full property suite once and prints one
// PASS/FAIL line per criterion. Exit status is nonzero if any line fails.
#include <cstdio>
#include <initializer_list>
#include <string>
#include <utility>

#include "kreinlab/verify.hpp"

namespace {

using kreinlab::PropertyResult;
using kreinlab::VerifyReport;

struct Need {
  const char* property;
  std::size_t min_trials;
};

// A property counts only with no failures at all, excused or not.
bool clean(const PropertyResult& p, std::size_t min_trials, std::string& why) {
  if (p.trials < min_trials) {
    why += p.name + " ran " + std::to_string(p.trials) + " < " + std::to_string(min_trials) + " trials; ";
    return false;
  }
  if (p.failed > 0 || p.borderline_failures > 0) {
    why += p.name + " failed " + std::to_string(p.failed + p.borderline_failures) + " (" + p.first_failure + "); ";
    return false;
  }
  return true;
}

bool report_line(int n, const VerifyReport& r, std::initializer_list<Need> needs, const std::string& extra_why,
                 bool extra_ok) {
  bool ok = extra_ok;
  std::string why = extra_why;
  std::string detail;
  for (const Need& need : needs) {
    const PropertyResult& p = r.find(need.property);
    ok = clean(p, need.min_trials, why) && ok;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s%s %zu/%zu worst=%.3g", detail.empty() ? "" : ", ", p.name.c_str(), p.passed,
                  p.trials, p.worst);
    detail += buf;
  }
  std::printf("criterion %d: %s  [%s]%s%s\n", n, ok ? "PASS" : "FAIL", detail.c_str(), why.empty() ? "" : "  ",
              why.c_str());
  return ok;
}

}  // namespace

int main() {
  kreinlab::VerifyOptions opts;
  opts.suite = "all";
  const VerifyReport r = kreinlab::run_verify(opts);

  bool all = true;

  const double c1_seconds =
      r.find("isotropic_part_matches_intersection").seconds + r.find("small_negative_index_decomposes").seconds;
  char c1_time[64];
  std::snprintf(c1_time, sizeof c1_time, "runtime %.1fs", c1_seconds);
  all &= report_line(1, r, {{"isotropic_part_matches_intersection", 1000}, {"small_negative_index_decomposes", 1000}},
                     std::string(c1_time) + (c1_seconds < 60.0 ? " < 60s" : " >= 60s"), c1_seconds < 60.0);
  all &= report_line(2, r, {{"regular_family_flags_agree", 500}}, "", true);
  all &= report_line(3, r, {{"adjoint_square_bound", 100}}, "", true);
  all &= report_line(4, r, {{"normal_family_sum", 100}}, "", true);
  all &= report_line(5, r, {{"net_limits", 100}}, "", true);
  all &= report_line(6, r, {{"toeplitz_spectrum", 1}}, "", true);
  all &= report_line(7, r, {{"zero_angle_sum", 1}, {"range_closure_bound", 1}}, "", true);

  char total[64];
  std::snprintf(total, sizeof total, "full suite %.1fs", r.seconds);
  const bool fast = r.seconds < 600.0;
  all &= report_line(8, r, {{"blowup_dichotomy", 1}}, std::string(total) + (fast ? " < 600s" : " >= 600s"),
                     fast && r.all_passed());
  std::printf("%s; all properties passed: %s\n", total, r.all_passed() ? "yes" : "no");
  return all ? 0 : 1;
}
