#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qmetric {

enum class ErrorKind {
  degenerate_space,
  input_shape,
  empty_set,
  config,
  not_in_subalgebra,
  corollary_mode_violation,
  action_not_isometric,
  not_self_adjoint,
  invalid_metric,
  invalid_measure,
};

std::string_view to_string(ErrorKind kind);

/// Every precondition failure in the library is reported through this type.
/// `field()` names the offending input when there is one (e.g. "beta").
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::string field = {});

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& field() const noexcept { return field_; }

 private:
  ErrorKind kind_;
  std::string field_;
};

}  // namespace qmetric
