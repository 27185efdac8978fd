#pragma once

#include <string>

#include "fraclap/field.hpp"

namespace fraclap {

/// Named fields with correct smoothness/decay metadata. Recognized names:
/// constant, affine, gaussian, bump(r), holder-cusp(alpha),
/// halfspace-indicator, getoor(s). Parenthesized parameters are optional
/// (bump -> bump(1), holder-cusp -> 0.5, getoor -> 0.5). Throws
/// UnknownPreset otherwise.
ScalarField preset_field(const std::string& name, int dim = 2);

/// amplitude * exp(-pi |x-center|^2 / width^2): the workhorse smooth test
/// field, with analytic derivatives and a sup envelope.
ScalarField gaussian_bump(const Point& center, double width, double amplitude);

} // namespace fraclap
