#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pincherle {

// Numeric values are part of the C ABI (see pincherle.h); append only.
enum class ErrorCode : int {
  Ok = 0,
  Pole = 1,
  Domain = 2,
  DegenerateMatrix = 3,
  RootFinding = 4,
  Order = 5,
  Contour = 6,
  Convergence = 7,
  Quadrature = 8,
  HigherOrderPole = 9,
  NonConvergentSeries = 10,
  InvalidDenominator = 11,
  DivergentSeries = 12,
  Parameter = 13,
  RepeatedRoot = 14,
  Degree = 15,
  Divergence = 16,
  Internal = 99,
};

std::string_view error_code_name(ErrorCode code) noexcept;

// True for failures of a numerical process (as opposed to bad input).
bool is_numerical_failure(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string context = {})
      : std::runtime_error(message), code_(code), context_(std::move(context)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& context() const noexcept { return context_; }

 private:
  ErrorCode code_;
  std::string context_;
};

template <ErrorCode C>
class TypedError : public Error {
 public:
  explicit TypedError(const std::string& message, std::string context = {})
      : Error(C, message, std::move(context)) {}
};

using PoleError = TypedError<ErrorCode::Pole>;
using DomainError = TypedError<ErrorCode::Domain>;
using DegenerateMatrixError = TypedError<ErrorCode::DegenerateMatrix>;
using RootFindingError = TypedError<ErrorCode::RootFinding>;
using OrderError = TypedError<ErrorCode::Order>;
using ContourError = TypedError<ErrorCode::Contour>;
using ConvergenceError = TypedError<ErrorCode::Convergence>;
using QuadratureError = TypedError<ErrorCode::Quadrature>;
using HigherOrderPoleError = TypedError<ErrorCode::HigherOrderPole>;
using NonConvergentSeriesError = TypedError<ErrorCode::NonConvergentSeries>;
using InvalidDenominatorError = TypedError<ErrorCode::InvalidDenominator>;
using DivergentSeriesError = TypedError<ErrorCode::DivergentSeries>;
using ParameterError = TypedError<ErrorCode::Parameter>;
using RepeatedRootError = TypedError<ErrorCode::RepeatedRoot>;
using DegreeError = TypedError<ErrorCode::Degree>;
using DivergenceError = TypedError<ErrorCode::Divergence>;

}  // namespace pincherle
