#include "qmetric/error.hpp"

#include <utility>

namespace qmetric {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::degenerate_space: return "DegenerateSpace";
    case ErrorKind::input_shape: return "InputShape";
    case ErrorKind::empty_set: return "EmptySet";
    case ErrorKind::config: return "Config";
    case ErrorKind::not_in_subalgebra: return "NotInSubalgebra";
    case ErrorKind::corollary_mode_violation: return "CorollaryModeViolation";
    case ErrorKind::action_not_isometric: return "ActionNotIsometric";
    case ErrorKind::not_self_adjoint: return "NotSelfAdjoint";
    case ErrorKind::invalid_metric: return "InvalidMetric";
    case ErrorKind::invalid_measure: return "InvalidMeasure";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message, std::string field)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message),
      kind_(kind),
      field_(std::move(field)) {}

}  // namespace qmetric
