#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kreinlab {

/// Failure categories raised by the library. The category decides the
/// process exit code used by the command-line front end.
enum class ErrorKind {
  kDimensionMismatch,
  kInvalidArgument,
  kNotHermitian,
  kInvalidSymmetry,
  kNotOrthonormal,
  kNotProjection,
  kEmptySubspace,
  kNotRegular,
  kNotComplementary,
  kNotSelfadjointFamily,
  kNotOrthogonalFamily,
  kIncompatibleNet,
  kUnboundedNet,
  kConditionViolated,
  kNotNormalInput,
  kNotNeutralRange,
  kSingularX,
  kEnvelopeMissing,
  kUnknownScenario,
  kSizeCapExceeded,
};

enum class ErrorCategory {
  kUsage,       // bad arguments or unknown names
  kStructure,   // malformed mathematical input (bad J, non-orthonormal basis)
  kPrecondition // a mathematical precondition of an operation failed
};

std::string_view error_kind_name(ErrorKind kind);
ErrorCategory error_category(ErrorKind kind);

/// Exception carrying a machine-readable name of the violated precondition.
class KreinError : public std::runtime_error {
 public:
  KreinError(ErrorKind kind, std::string violated, const std::string& message)
      : std::runtime_error(message), kind_(kind), violated_(std::move(violated)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& violated() const noexcept { return violated_; }

 private:
  ErrorKind kind_;
  std::string violated_;
};

}  // namespace kreinlab
