#include "it2fuzzy/pendulum_controllers.hpp"

#include <array>
#include <vector>

namespace it2fuzzy::pendulum {

LinguisticVariable three_term_partition(std::string name, Universe u) {
    return LinguisticVariable(std::move(name), u,
                              {{"N", make_triangle(u.lo, u.lo, 0.0)},
                               {"Z", make_triangle(u.lo, 0.0, u.hi)},
                               {"P", make_triangle(0.0, u.hi, u.hi)}});
}

LinguisticVariable error_variable() { return three_term_partition("error", {-kInputBound, kInputBound}); }

LinguisticVariable error_rate_variable() {
    return three_term_partition("error_rate", {-kInputBound, kInputBound});
}

LinguisticVariable force_variable() {
    constexpr double f = kForceBound;
    return LinguisticVariable("force", {-f, f},
                              {{"N", make_triangle(-f, -0.5 * f, 0.0)},
                               {"Z", make_triangle(-0.5 * f, 0.0, 0.5 * f)},
                               {"P", make_triangle(0.0, 0.5 * f, f)}});
}

RuleBase rulebase() {
    static constexpr std::array<const char*, 3> labels{"N", "Z", "P"};
    static constexpr std::array<std::array<const char*, 3>, 3> table{{
        {"P", "P", "Z"},
        {"P", "Z", "N"},
        {"Z", "N", "N"},
    }};
    std::vector<Rule> rules;
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            rules.push_back({{labels[i], labels[j]}, table[i][j]});
        }
    }
    return RuleBase(std::move(rules));
}

T1System t1_controller(std::size_t grid_size) {
    return T1System({error_variable(), error_rate_variable()}, force_variable(), rulebase(), grid_size);
}

DecomposedSystem it2_controller(double delta, std::size_t grid_size) {
    const std::array<IT2Variable, 2> inputs{blur_variable(error_variable(), delta),
                                            blur_variable(error_rate_variable(), delta)};
    return decompose(inputs, force_variable(), rulebase(), grid_size);
}

}  // namespace it2fuzzy::pendulum
