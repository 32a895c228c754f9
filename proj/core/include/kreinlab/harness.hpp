#pragma once

// Truncation ladders: each scenario builds a family of finite instances of
// growing size and records per-size metrics. A verdict is a pure function of
// the recorded rows.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "kreinlab/numeric.hpp"

namespace kreinlab {

struct Scenario {
  std::string name;
  std::map<std::string, double> params;
  std::vector<Index> sizes;  // empty: the default ladder
  std::uint64_t seed = 0;
};

struct MetricRow {
  Index size = 0;
  std::vector<std::pair<std::string, double>> values;
  std::vector<std::pair<std::string, std::vector<double>>> arrays;

  void set(const std::string& name, double v) { values.emplace_back(name, v); }
  /// Throws kInvalidArgument for an unknown metric.
  double get(const std::string& name) const;
  bool has(const std::string& name) const;
};

enum class Verdict { kConfirmed, kInconclusive };

std::string_view verdict_name(Verdict v);

struct MetricSeries {
  std::string scenario;
  std::vector<MetricRow> rows;
  Verdict verdict = Verdict::kInconclusive;
  std::vector<std::string> failed_checks;
  std::uint64_t seed = 0;
};

struct ScenarioInfo {
  std::string name;
  std::string description;
  std::string phenomenon;
  std::string size_meaning;
};

std::vector<ScenarioInfo> list_scenarios();

const std::vector<Index>& default_sizes();

/// Ambient dimension used for a given ladder size.
Index ambient_dimension(const std::string& name, Index size);

/// Throws kUnknownScenario, kSizeCapExceeded (ambient dimension above 4096),
/// kInvalidArgument for sizes that are not strictly increasing or too small.
MetricSeries run_scenario(const Scenario& s);

struct VerdictResult {
  Verdict verdict = Verdict::kInconclusive;
  std::vector<std::string> failed_checks;
};

/// Recomputes the verdict of a scenario from its rows alone.
VerdictResult judge(const std::string& name, const std::vector<MetricRow>& rows);

constexpr Index kAmbientCap = 4096;

}  // namespace kreinlab
