#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "kreinlab/numeric.hpp"

namespace kreinlab::cli {

std::string_view tool_version();

/// Incremental SHA-256 over the command, its input files and parameters.
class InputsDigest {
 public:
  InputsDigest();
  ~InputsDigest();
  InputsDigest(const InputsDigest&) = delete;
  InputsDigest& operator=(const InputsDigest&) = delete;

  /// Each field is length-prefixed so adjacent fields cannot collide.
  void add(std::string_view label, std::string_view bytes);
  std::string hex();

 private:
  struct State;
  State* state_;
};

struct ToleranceSetting {
  TolerancePolicy policy;
  std::string source = "default";  // default | env | flag
};

struct Report {
  std::string command;
  std::string inputs_digest;
  ToleranceSetting tolerance;
  std::optional<std::uint64_t> seed;
  nlohmann::ordered_json results = nlohmann::ordered_json::object();
  nlohmann::ordered_json flags = nlohmann::ordered_json::object();

  nlohmann::ordered_json to_json() const;
};

}  // namespace kreinlab::cli
