#pragma once

// JSON encodings shared by the tools: matrices as arrays of rows of
// [re, im] pairs, and sampled points of S^local.

#include <string>
#include <vector>

#include "ucgl/involutions.hpp"

namespace ucgl {

std::string matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const std::string& text);

struct SampledPoint {
  GroupoidPoint point;
  SlocalMembership flags;
};

/// Array of {"B", "A", "s", "flags"} objects.
std::string sampled_points_to_json(const std::vector<SampledPoint>& points);
std::vector<SampledPoint> sampled_points_from_json(const std::string& text);

}  // namespace ucgl
