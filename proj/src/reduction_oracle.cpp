#include "it2fuzzy/reduction_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace it2fuzzy::oracle {

namespace {

void require_same_grid(const SampledMF& upper, const SampledMF& lower) {
    if (!(upper.universe == lower.universe) || upper.grid_size() != lower.grid_size()) {
        throw std::invalid_argument("upper and lower aggregates must share universe and grid");
    }
}

double interpolate(const SampledMF& s, double x) {
    const double h = s.step();
    const double pos = (x - s.universe.lo) / h;
    const auto n = s.grid_size();
    auto i = static_cast<std::size_t>(std::clamp(std::floor(pos), 0.0, static_cast<double>(n - 2)));
    const double t = pos - static_cast<double>(i);
    return s.mu[i] + t * (s.mu[i + 1] - s.mu[i]);
}

// Trapezoid quadrature weight of node i, so a zero-width FOU reproduces the
// type-1 centroid exactly.
double node_weight(std::size_t i, std::size_t n) { return (i == 0 || i + 1 == n) ? 0.5 : 1.0; }

// Largest k with x_k <= c.
std::size_t switch_index(const SampledMF& s, double c) {
    const std::size_t n = s.grid_size();
    double pos = std::floor((c - s.universe.lo) / s.step());
    auto k = static_cast<std::size_t>(std::clamp(pos, 0.0, static_cast<double>(n - 1)));
    while (k + 1 < n && s.x(k + 1) <= c) {
        ++k;
    }
    while (k > 0 && s.x(k) > c) {
        --k;
    }
    return k;
}

// One KM endpoint. For the left endpoint nodes up to the switch take the
// upper grade and the rest the lower grade; the right endpoint is mirrored.
double km_endpoint(const SampledMF& upper, const SampledMF& lower, double start, bool left, int& iterations) {
    const std::size_t n = upper.grid_size();
    double c = start;
    std::size_t k = switch_index(upper, c);
    iterations = 0;
    // The switch index moves monotonically, so n + 1 passes always suffice.
    for (std::size_t guard = 0; guard <= n + 1; ++guard) {
        ++iterations;
        double num = 0.0;
        double den = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const bool before = i <= k;
            const double w = node_weight(i, n) * ((before == left) ? upper.mu[i] : lower.mu[i]);
            num += upper.x(i) * w;
            den += w;
        }
        if (!(den > 0.0)) {
            return c;
        }
        const double next = num / den;
        const std::size_t next_k = switch_index(upper, next);
        c = next;
        if (next_k == k) {
            return c;
        }
        k = next_k;
    }
    return c;
}

}  // namespace

std::optional<double> fou_centroid_bruteforce(const SampledMF& upper, const SampledMF& lower,
                                              std::size_t resolution) {
    require_same_grid(upper, lower);
    if (resolution < 100) {
        throw std::invalid_argument("resolution must be >= 100");
    }
    const double lo = upper.universe.lo;
    const double dx = upper.universe.span() / static_cast<double>(resolution);
    double fou_moment = 0.0;
    double fou_area = 0.0;
    double upper_moment = 0.0;
    double upper_area = 0.0;
    for (std::size_t m = 0; m < resolution; ++m) {
        const double x = lo + (static_cast<double>(m) + 0.5) * dx;
        const double u = interpolate(upper, x);
        const double gap = u - interpolate(lower, x);
        fou_moment += x * gap;
        fou_area += gap;
        upper_moment += x * u;
        upper_area += u;
    }
    if (fou_area * dx < 1e-12 * upper.universe.span()) {
        if (upper_area > 0.0) {
            return upper_moment / upper_area;
        }
        return std::nullopt;
    }
    return fou_moment / fou_area;
}

std::optional<CentroidInterval> km_centroid(const SampledMF& upper, const SampledMF& lower) {
    require_same_grid(upper, lower);
    double num = 0.0;
    double den = 0.0;
    double upper_sum = 0.0;
    for (std::size_t i = 0; i < upper.grid_size(); ++i) {
        const double w = node_weight(i, upper.grid_size()) * 0.5 * (upper.mu[i] + lower.mu[i]);
        num += upper.x(i) * w;
        den += w;
        upper_sum += upper.mu[i];
    }
    if (!(upper_sum > 0.0)) {
        return std::nullopt;
    }
    const double start = num / den;
    CentroidInterval out;
    out.c_l = km_endpoint(upper, lower, start, true, out.iterations_left);
    out.c_r = km_endpoint(upper, lower, start, false, out.iterations_right);
    return out;
}

std::optional<double> km_defuzz(const SampledMF& upper, const SampledMF& lower) {
    const auto interval = km_centroid(upper, lower);
    if (!interval) {
        return std::nullopt;
    }
    return interval->midpoint();
}

}  // namespace it2fuzzy::oracle
