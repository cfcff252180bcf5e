#include "nodal/error.hpp"

namespace nodal {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kCorpusEmpty: return "CorpusEmpty";
    case ErrorCode::kDegenerateCorpus: return "DegenerateCorpus";
    case ErrorCode::kZeroInertia: return "ZeroInertia";
    case ErrorCode::kNumeric: return "Numeric";
    case ErrorCode::kConvergence: return "Convergence";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIo: return "Io";
    case ErrorCode::kUnknownVariant: return "UnknownVariant";
  }
  return "Unknown";
}

}  // namespace nodal
