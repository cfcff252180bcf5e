#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nodal {

enum class ErrorCode {
  kCorpusEmpty,       // no units survived splitting
  kDegenerateCorpus,  // fewer than two nonempty units
  kZeroInertia,       // table has no association structure
  kNumeric,           // non-finite input
  kConvergence,       // iterative solver hit its budget
  kOutOfRange,        // dimension / cluster count outside valid range
  kInvalidArgument,
  kIo,
  kUnknownVariant,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(int sweeps, double off_diagonal)
      : Error(ErrorCode::kConvergence,
              "SVD did not converge after " + std::to_string(sweeps) +
                  " sweeps (residual off-diagonal " +
                  std::to_string(off_diagonal) + ")"),
        sweeps_(sweeps),
        off_diagonal_(off_diagonal) {}

  int sweeps() const noexcept { return sweeps_; }
  double off_diagonal() const noexcept { return off_diagonal_; }

 private:
  int sweeps_;
  double off_diagonal_;
};

}  // namespace nodal
