#pragma once

#include <stdexcept>
#include <string>

namespace normlab {

// All engine failures are thrown; the CLI maps them to exit codes.
struct NormLabError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OrderCapExceeded : NormLabError {
  using NormLabError::NormLabError;
};
struct InvalidPermutation : NormLabError {
  using NormLabError::NormLabError;
};
struct NotASubgroup : NormLabError {
  using NormLabError::NormLabError;
};
struct NotNormal : NormLabError {
  using NormLabError::NormLabError;
};
struct InvalidAction : NormLabError {
  using NormLabError::NormLabError;
};
struct LatticeBudgetExceeded : NormLabError {
  using NormLabError::NormLabError;
};
struct UnsupportedClass : NormLabError {
  using NormLabError::NormLabError;
};
// Residual post-verification failed: the class is not intersection-closed on
// this instance, i.e. a declared formation flag is wrong.
struct FormationWitnessFailure : NormLabError {
  using NormLabError::NormLabError;
};
// Radical post-verification failed: the join of normal members left the class.
struct FittingWitnessFailure : NormLabError {
  using NormLabError::NormLabError;
};
struct HypercentreJoinFailure : NormLabError {
  using NormLabError::NormLabError;
};
struct InvalidFactor : NormLabError {
  using NormLabError::NormLabError;
};
struct NotPiSolvable : NormLabError {
  using NormLabError::NormLabError;
};
struct ParseError : NormLabError {
  int line = 0;
  int column = 0;
  ParseError(const std::string& msg, int line_ = 0, int column_ = 0)
      : NormLabError(msg), line(line_), column(column_) {}
};
struct ValidationError : NormLabError {
  using NormLabError::NormLabError;
};
struct CacheVersionMismatch : NormLabError {
  using NormLabError::NormLabError;
};
struct CorruptCache : NormLabError {
  using NormLabError::NormLabError;
};

}  // namespace normlab
