#include "it2fuzzy/membership.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace it2fuzzy {

PiecewiseLinearMF::PiecewiseLinearMF(std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.size() < 2) {
        throw std::invalid_argument("membership function needs at least 2 vertices");
    }
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        const auto& v = vertices_[i];
        if (!std::isfinite(v.x) || !std::isfinite(v.mu)) {
            throw std::invalid_argument("membership function vertex is not finite");
        }
        if (v.mu < 0.0 || v.mu > 1.0) {
            throw std::invalid_argument("membership grade outside [0, 1] at vertex " + std::to_string(i));
        }
        if (i > 0 && !(v.x > vertices_[i - 1].x)) {
            throw std::invalid_argument("vertex x must be strictly increasing (vertex " + std::to_string(i) + ")");
        }
    }
}

PiecewiseLinearMF PiecewiseLinearMF::zero(const Universe& u) {
    return PiecewiseLinearMF({{u.lo, 0.0}, {u.hi, 0.0}});
}

bool PiecewiseLinearMF::is_zero() const {
    return std::all_of(vertices_.begin(), vertices_.end(), [](const Vertex& v) { return v.mu == 0.0; });
}

double PiecewiseLinearMF::operator()(double x) const {
    if (x < vertices_.front().x || x > vertices_.back().x) {
        return 0.0;
    }
    // First vertex with v.x > x; x lies in [prev.x, it->x).
    auto it = std::upper_bound(vertices_.begin(), vertices_.end(), x,
                               [](double value, const Vertex& v) { return value < v.x; });
    if (it == vertices_.end()) {
        return vertices_.back().mu;
    }
    const Vertex& right = *it;
    const Vertex& left = *(it - 1);
    if (x == left.x) {
        return left.mu;
    }
    const double t = (x - left.x) / (right.x - left.x);
    return left.mu + t * (right.mu - left.mu);
}

PiecewiseLinearMF make_triangle(double a, double b, double c) {
    if (a > b || b > c) {
        throw std::invalid_argument("triangle requires a <= b <= c");
    }
    if (a == c) {
        throw std::invalid_argument("triangle has zero width");
    }
    if (a == b) {
        return PiecewiseLinearMF({{a, 1.0}, {c, 0.0}});
    }
    if (b == c) {
        return PiecewiseLinearMF({{a, 0.0}, {c, 1.0}});
    }
    return PiecewiseLinearMF({{a, 0.0}, {b, 1.0}, {c, 0.0}});
}

double mf_eval(const PiecewiseLinearMF& mf, double x) { return mf(x); }

}  // namespace it2fuzzy
