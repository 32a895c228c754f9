#include "kreinlab/errors.hpp"

namespace kreinlab {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDimensionMismatch: return "DimensionMismatch";
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
    case ErrorKind::kNotHermitian: return "NotHermitian";
    case ErrorKind::kInvalidSymmetry: return "InvalidSymmetry";
    case ErrorKind::kNotOrthonormal: return "NotOrthonormal";
    case ErrorKind::kNotProjection: return "NotProjection";
    case ErrorKind::kEmptySubspace: return "EmptySubspace";
    case ErrorKind::kNotRegular: return "NotRegular";
    case ErrorKind::kNotComplementary: return "NotComplementary";
    case ErrorKind::kNotSelfadjointFamily: return "NotSelfadjointFamily";
    case ErrorKind::kNotOrthogonalFamily: return "NotOrthogonalFamily";
    case ErrorKind::kIncompatibleNet: return "IncompatibleNet";
    case ErrorKind::kUnboundedNet: return "UnboundedNet";
    case ErrorKind::kConditionViolated: return "ConditionViolated";
    case ErrorKind::kNotNormalInput: return "NotNormalInput";
    case ErrorKind::kNotNeutralRange: return "NotNeutralRange";
    case ErrorKind::kSingularX: return "SingularX";
    case ErrorKind::kEnvelopeMissing: return "EnvelopeMissing";
    case ErrorKind::kUnknownScenario: return "UnknownScenario";
    case ErrorKind::kSizeCapExceeded: return "SizeCapExceeded";
  }
  return "Unknown";
}

ErrorCategory error_category(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument:
    case ErrorKind::kUnknownScenario:
    case ErrorKind::kSizeCapExceeded:
      return ErrorCategory::kUsage;
    case ErrorKind::kDimensionMismatch:
    case ErrorKind::kNotHermitian:
    case ErrorKind::kInvalidSymmetry:
    case ErrorKind::kNotOrthonormal:
    case ErrorKind::kNotProjection:
      return ErrorCategory::kStructure;
    default:
      return ErrorCategory::kPrecondition;
  }
}

}  // namespace kreinlab
