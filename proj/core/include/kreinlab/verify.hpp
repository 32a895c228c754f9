#pragma once

// Seeded property suites over every module. Each property runs a number of
// random trials; a trial that fails while its inputs sit within a factor 10
// of the rank threshold is counted as borderline rather than failed.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kreinlab/numeric.hpp"

namespace kreinlab {

struct VerifyOptions {
  std::string suite = "all";  // all | lemmas | sums | scenarios
  std::uint64_t seed = 0;
  /// Overrides every property's default trial count.
  std::optional<std::size_t> trials;
  TolerancePolicy tol;
};

struct PropertyResult {
  std::string suite;
  std::string name;
  std::string description;
  std::size_t trials = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t borderline = 0;           // trials whose inputs were borderline
  std::size_t borderline_failures = 0;  // failures excused as borderline
  double worst = 0.0;  // largest residual seen, property-specific
  std::string first_failure;
  double seconds = 0.0;

  bool ok() const { return failed == 0; }
};

struct VerifyReport {
  std::vector<PropertyResult> properties;
  double seconds = 0.0;

  bool all_passed() const;
  std::size_t borderline_total() const;
  /// Throws kInvalidArgument when no property has this name.
  const PropertyResult& find(const std::string& name) const;
};

std::vector<std::string> verify_suites();

/// Names of the properties in a suite ("all" for every suite).
std::vector<std::string> property_names(const std::string& suite);

/// Throws kInvalidArgument for an unknown suite or trials == 0.
VerifyReport run_verify(const VerifyOptions& opts);

/// Scenario properties are deterministic ladders and always run once.
/// Runs one property by name with the given options (suite is ignored).
PropertyResult run_property(const std::string& name, const VerifyOptions& opts);

}  // namespace kreinlab
