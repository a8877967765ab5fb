#pragma once

#include <numbers>
#include <string>

#include "it2fuzzy/fuzzy_core.hpp"
#include "it2fuzzy/it2_decomposed.hpp"

namespace it2fuzzy::pendulum {

inline constexpr double kInputBound = std::numbers::pi / 4.0;
inline constexpr double kForceBound = 60.0;
inline constexpr double kBlurDelta = std::numbers::pi / 16.0;

/// N = triangle(lo, lo, 0), Z = triangle(lo, 0, hi), P = triangle(0, hi, hi).
LinguisticVariable three_term_partition(std::string name, Universe u);

LinguisticVariable error_variable();
LinguisticVariable error_rate_variable();

/// Interior triangles peaking at -F/2, 0 and F/2 over [-F, F].
LinguisticVariable force_variable();

/// Rows: error N/Z/P. Columns: error rate N/Z/P.
///
///          N  Z  P
///     N    P  P  Z
///     Z    P  Z  N
///     P    Z  N  N
RuleBase rulebase();

T1System t1_controller(std::size_t grid_size = kDefaultGridSize);

/// Both inputs blurred by `delta`; the force terms stay type-1.
DecomposedSystem it2_controller(double delta = kBlurDelta, std::size_t grid_size = kDefaultGridSize);

}  // namespace it2fuzzy::pendulum
