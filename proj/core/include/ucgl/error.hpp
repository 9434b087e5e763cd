#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ucgl {

enum class ErrorKind {
  invalid_dimension,
  singular_input,
  pole_evaluation,
  precondition_violation,
  invalid_sector,
  search_failure,
  not_composable,
  not_regular,
  degenerate_sample,
  degenerate_tangent,
  degenerate_chart,
  degenerate_form,
  invalid_tangent_kind,
  projection_failure,
  invalid_point,
  usage_error,
};

std::string_view to_string(ErrorKind kind);

/// Exception carrying one of the library's error kinds.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ucgl
