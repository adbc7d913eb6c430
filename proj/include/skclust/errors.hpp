#pragma once

#include <Eigen/Core>
#include <stdexcept>
#include <string>
#include <utility>

namespace skclust {

enum class ErrorCategory {
  io,
  parse,
  empty_dataset,
  degenerate_data,
  dimension_mismatch,
  not_converged,
  invalid_config,
  invalid_input,
  length_mismatch,
  convergence_failure,
};

inline const char* to_string(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::io: return "IoError";
    case ErrorCategory::parse: return "ParseError";
    case ErrorCategory::empty_dataset: return "EmptyDataset";
    case ErrorCategory::degenerate_data: return "DegenerateData";
    case ErrorCategory::dimension_mismatch: return "DimensionMismatch";
    case ErrorCategory::not_converged: return "NotConverged";
    case ErrorCategory::invalid_config: return "InvalidConfig";
    case ErrorCategory::invalid_input: return "InvalidInput";
    case ErrorCategory::length_mismatch: return "LengthMismatch";
    case ErrorCategory::convergence_failure: return "ConvergenceFailure";
  }
  return "EngineError";
}

class EngineError : public std::runtime_error {
 public:
  EngineError(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}
  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

struct IoError : EngineError {
  explicit IoError(const std::string& w) : EngineError(ErrorCategory::io, w) {}
};
struct ParseError : EngineError {
  explicit ParseError(const std::string& w) : EngineError(ErrorCategory::parse, w) {}
};
struct EmptyDataset : EngineError {
  explicit EmptyDataset(const std::string& w) : EngineError(ErrorCategory::empty_dataset, w) {}
};
struct DegenerateData : EngineError {
  explicit DegenerateData(const std::string& w) : EngineError(ErrorCategory::degenerate_data, w) {}
};
struct DimensionMismatch : EngineError {
  explicit DimensionMismatch(const std::string& w)
      : EngineError(ErrorCategory::dimension_mismatch, w) {}
};
struct InvalidConfig : EngineError {
  explicit InvalidConfig(const std::string& w) : EngineError(ErrorCategory::invalid_config, w) {}
};
struct InvalidInput : EngineError {
  explicit InvalidInput(const std::string& w) : EngineError(ErrorCategory::invalid_input, w) {}
};
struct LengthMismatch : EngineError {
  explicit LengthMismatch(const std::string& w) : EngineError(ErrorCategory::length_mismatch, w) {}
};
struct ConvergenceFailure : EngineError {
  explicit ConvergenceFailure(const std::string& w)
      : EngineError(ErrorCategory::convergence_failure, w) {}
};

// Carries the best feasible iterate so callers can inspect how close the
// solver got before running out of iterations.
struct NotConverged : EngineError {
  NotConverged(const std::string& w, Eigen::VectorXd best, double residual, int column = -1)
      : EngineError(ErrorCategory::not_converged, w),
        best_iterate(std::move(best)),
        kkt_residual(residual),
        column(column) {}
  Eigen::VectorXd best_iterate;
  double kkt_residual;
  int column;
};

}  // namespace skclust
