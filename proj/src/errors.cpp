#include "pincherle/errors.hpp"

namespace pincherle {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Ok: return "Ok";
    case ErrorCode::Pole: return "PoleError";
    case ErrorCode::Domain: return "DomainError";
    case ErrorCode::DegenerateMatrix: return "DegenerateMatrixError";
    case ErrorCode::RootFinding: return "RootFindingError";
    case ErrorCode::Order: return "OrderError";
    case ErrorCode::Contour: return "ContourError";
    case ErrorCode::Convergence: return "ConvergenceError";
    case ErrorCode::Quadrature: return "QuadratureError";
    case ErrorCode::HigherOrderPole: return "HigherOrderPoleError";
    case ErrorCode::NonConvergentSeries: return "NonConvergentSeriesError";
    case ErrorCode::InvalidDenominator: return "InvalidDenominatorError";
    case ErrorCode::DivergentSeries: return "DivergentSeriesError";
    case ErrorCode::Parameter: return "ParameterError";
    case ErrorCode::RepeatedRoot: return "RepeatedRootError";
    case ErrorCode::Degree: return "DegreeError";
    case ErrorCode::Divergence: return "DivergenceError";
    case ErrorCode::Internal: return "InternalError";
  }
  return "UnknownError";
}

bool is_numerical_failure(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::RootFinding:
    case ErrorCode::Convergence:
    case ErrorCode::Quadrature:
    case ErrorCode::NonConvergentSeries:
    case ErrorCode::Internal:
      return true;
    default:
      return false;
  }
}

}  // namespace pincherle
