#pragma once

#include <stdexcept>
#include <string>

namespace fairlin {

// Error categories map onto CLI exit codes: usage errors are handled by the
// argument parser, DataError exits with 3, NumericError with 4.
enum class ErrorKind { Data, Numeric };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string code, const std::string& message)
      : std::runtime_error(message), kind_(kind), code_(std::move(code)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& code() const noexcept { return code_; }

 private:
  ErrorKind kind_;
  std::string code_;
};

struct DataError : Error {
  DataError(std::string code, const std::string& message)
      : Error(ErrorKind::Data, std::move(code), message) {}
};

struct NumericError : Error {
  NumericError(std::string code, const std::string& message)
      : Error(ErrorKind::Numeric, std::move(code), message) {}
};

// --- data errors -----------------------------------------------------------

struct NonFiniteInput : DataError {
  explicit NonFiniteInput(const std::string& what_field)
      : DataError("non_finite_input", "non-finite value in " + what_field) {}
};

struct GroupTooSmall : DataError {
  explicit GroupTooSmall(int group, long count)
      : DataError("group_too_small",
                  "group " + std::to_string(group) + " has only " +
                      std::to_string(count) + " samples (need >= 2)"),
        group(group) {}
  int group;
};

struct TooFewGroups : DataError {
  explicit TooFewGroups(long found)
      : DataError("too_few_groups", "need at least 2 distinct sensitive labels, found " +
                                        std::to_string(found)) {}
};

struct DimensionMismatch : DataError {
  explicit DimensionMismatch(const std::string& detail)
      : DataError("dimension_mismatch", detail) {}
};

struct LengthMismatch : DataError {
  explicit LengthMismatch(const std::string& detail)
      : DataError("length_mismatch", detail) {}
};

struct UnknownGroup : DataError {
  explicit UnknownGroup(int group, int group_count)
      : DataError("unknown_group", "group label " + std::to_string(group) +
                                       " outside 1.." + std::to_string(group_count)) {}
};

struct EmptyGroup : DataError {
  explicit EmptyGroup(int group)
      : DataError("empty_group", "group " + std::to_string(group) + " has no scores") {}
};

struct InvalidArgument : DataError {
  explicit InvalidArgument(const std::string& detail)
      : DataError("invalid_argument", detail) {}
};

struct SplitTooSmall : DataError {
  explicit SplitTooSmall(const std::string& detail)
      : DataError("split_too_small", detail) {}
};

struct MissingColumn : DataError {
  explicit MissingColumn(const std::string& column)
      : DataError("missing_column", "column '" + column + "' not found in header") {}
};

struct NonNumericCell : DataError {
  NonNumericCell(long row, const std::string& column, const std::string& cell)
      : DataError("non_numeric_cell", "row " + std::to_string(row) + ", column '" + column +
                                          "': cannot parse '" + cell + "' as a number"),
        row(row) {}
  long row;
};

// --- numeric errors ---------------------------------------------------------

struct SingularDesign : NumericError {
  explicit SingularDesign(const std::string& detail)
      : NumericError("singular_design", detail) {}
};

struct EpsilonOutOfRange : NumericError {
  explicit EpsilonOutOfRange(double value)
      : NumericError("epsilon_out_of_range",
                     "epsilon = " + std::to_string(value) + " outside [0, 1]") {}
};

struct DegenerateScore : NumericError {
  explicit DegenerateScore(int group)
      : NumericError("degenerate_score",
                     "group " + std::to_string(group) +
                         " has (near-)zero score standard deviation; standardization undefined"),
        group(group) {}
  int group;
};

struct NotSharedSlope : NumericError {
  NotSharedSlope() : NumericError("not_shared_slope", "model does not have a shared slope") {}
};

struct ZeroSlopeGroup : NumericError {
  explicit ZeroSlopeGroup(int group)
      : NumericError("zero_slope_group",
                     "group " + std::to_string(group) + " has a (near-)zero slope vector"),
        group(group) {}
  int group;
};

struct NegativeSigma : NumericError {
  explicit NegativeSigma(double value)
      : NumericError("negative_sigma",
                     "standard deviation must be >= 0, got " + std::to_string(value)) {}
};

struct ZeroVariance : NumericError {
  explicit ZeroVariance(const std::string& detail)
      : NumericError("zero_variance", detail) {}
};

struct ZeroOutcomeVariance : NumericError {
  explicit ZeroOutcomeVariance(int group)
      : NumericError("zero_outcome_variance",
                     "Var(Y | S=" + std::to_string(group) + ") is (near-)zero"),
        group(group) {}
  int group;
};

struct NonPSD : NumericError {
  explicit NonPSD(const std::string& detail) : NumericError("non_psd", detail) {}
};

}  // namespace fairlin
