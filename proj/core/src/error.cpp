#include "ucgl/error.hpp"

namespace ucgl {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_dimension: return "invalid-dimension";
    case ErrorKind::singular_input: return "singular-input";
    case ErrorKind::pole_evaluation: return "pole-evaluation";
    case ErrorKind::precondition_violation: return "precondition-violation";
    case ErrorKind::invalid_sector: return "invalid-sector";
    case ErrorKind::search_failure: return "search-failure";
    case ErrorKind::not_composable: return "not-composable";
    case ErrorKind::not_regular: return "not-regular";
    case ErrorKind::degenerate_sample: return "degenerate-sample";
    case ErrorKind::degenerate_tangent: return "degenerate-tangent";
    case ErrorKind::degenerate_chart: return "degenerate-chart";
    case ErrorKind::degenerate_form: return "degenerate-form";
    case ErrorKind::invalid_tangent_kind: return "invalid-tangent-kind";
    case ErrorKind::projection_failure: return "projection-failure";
    case ErrorKind::invalid_point: return "invalid-point";
    case ErrorKind::usage_error: return "usage-error";
  }
  return "unknown";
}

}  // namespace ucgl
