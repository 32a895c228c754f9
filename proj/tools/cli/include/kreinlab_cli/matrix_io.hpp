#pragma once

// Matrix files: JSON {"rows", "cols", "entries": [[re, im], ...]} in
// row-major order, or CSV with one row per line and "a+bj" tokens.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "kreinlab/numeric.hpp"

namespace kreinlab::cli {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string violated, const std::string& message)
      : std::runtime_error(message), violated_(std::move(violated)) {}
  const std::string& violated() const noexcept { return violated_; }

 private:
  std::string violated_;
};

CMatrix parse_matrix_json(std::string_view text);
CMatrix parse_matrix_csv(std::string_view text);

/// Parses one complex literal: "1.5", "-2j", "1e-3+2.5j".
Complex parse_complex(std::string_view token);

/// Dispatches on the extension (.json / .csv); other files are sniffed.
CMatrix read_matrix_file(const std::filesystem::path& path);

/// Whole file as bytes; throws ParseError when unreadable.
std::string read_file(const std::filesystem::path& path);

nlohmann::ordered_json matrix_to_json(const CMatrix& m);
std::string matrix_to_csv(const CMatrix& m);

/// Shortest round-trip decimal form, independent of the locale.
std::string format_double(double x);

}  // namespace kreinlab::cli
