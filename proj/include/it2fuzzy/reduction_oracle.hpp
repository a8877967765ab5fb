#pragma once

#include <cstddef>
#include <optional>

#include "it2fuzzy/fuzzy_core.hpp"

// Reference computations used by tests, `it2sim verify` and `it2sim bench`.
// Nothing on the controller path depends on this header.

namespace it2fuzzy::oracle {

/// Planar centroid of the region between `lower` and `upper`, by midpoint
/// summation over `resolution` strips with both aggregates linearly
/// interpolated between grid nodes. Falls back to the upper centroid when the
/// region has no area but the upper set does. nullopt when the upper set has
/// no area either.
std::optional<double> fou_centroid_bruteforce(const SampledMF& upper, const SampledMF& lower,
                                              std::size_t resolution = 10000);

struct CentroidInterval {
    double c_l = 0.0;
    double c_r = 0.0;
    int iterations_left = 0;
    int iterations_right = 0;

    int iterations() const { return iterations_left + iterations_right; }
    double midpoint() const { return 0.5 * (c_l + c_r); }
};

/// Karnik-Mendel centroid interval over the grid nodes, each node weighted by
/// its trapezoid quadrature weight. Starts from the
/// mean-membership centroid; a switch point that lands exactly on a node
/// assigns that node to the left segment.
std::optional<CentroidInterval> km_centroid(const SampledMF& upper, const SampledMF& lower);

std::optional<double> km_defuzz(const SampledMF& upper, const SampledMF& lower);

}  // namespace it2fuzzy::oracle
