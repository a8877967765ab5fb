#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "it2fuzzy/fuzzy_core.hpp"
#include "it2fuzzy/it2_decomposed.hpp"

namespace it2fuzzy::verification {

/// Random FOU-ordered aggregate pair on a random universe: the upper set is a
/// max of 1-4 clipped triangles, the lower set the pointwise min of the upper
/// set and 0-3 other clipped triangles (so it is sometimes all-zero).
PathOutputs random_fou_pair(std::mt19937_64& rng, std::size_t grid_size);

struct SuiteResult {
    std::string name;
    std::size_t cases = 0;
    std::size_t failures = 0;
    double worst = 0.0;      // largest observed error, in the suite's units
    double tolerance = 0.0;

    bool passed() const { return failures == 0; }
};

struct VerifyOptions {
    std::size_t cases = 1000;
    std::uint64_t seed = 1;
    std::optional<double> tolerance;  // replaces every suite's tolerance
};

/// |combine_centroid - brute-force FOU centroid| / span over random pairs.
SuiteResult combiner_oracle(const VerifyOptions& opt);
/// |it2_output(delta = 0) - t1_output| over random saturated inputs.
SuiteResult zero_blur_collapse(const VerifyOptions& opt);
/// Lower aggregate above upper anywhere on a 101 x 101 input grid.
SuiteResult fou_ordering(const VerifyOptions& opt);
/// |combine_centroid - KM midpoint| / span at 50 points of the noise-free
/// IT2 closed-loop trajectory.
SuiteResult km_proximity(const VerifyOptions& opt);
/// Centroids of 50 random embedded sets per pair must lie in the KM interval.
SuiteResult km_containment(const VerifyOptions& opt);
/// |f(-e, -e_dot) + f(e, e_dot)| for both pendulum controllers.
SuiteResult antisymmetry(const VerifyOptions& opt);

std::vector<SuiteResult> run_all(const VerifyOptions& opt);

}  // namespace it2fuzzy::verification
