#pragma once

#include <span>
#include <vector>

namespace it2fuzzy {

/// Closed real interval [lo, hi] a variable lives on.
struct Universe {
    double lo = 0.0;
    double hi = 1.0;

    double span() const { return hi - lo; }
    double midpoint() const { return 0.5 * (lo + hi); }
    bool contains(double x) const { return x >= lo && x <= hi; }

    friend bool operator==(const Universe&, const Universe&) = default;
};

struct Vertex {
    double x = 0.0;
    double mu = 0.0;

    friend bool operator==(const Vertex&, const Vertex&) = default;
};

/// Type-1 membership function given as an ordered vertex list.
///
/// Between vertices the grade is linearly interpolated. Strictly outside
/// [front().x, back().x] the grade is 0; exactly at an end vertex it is that
/// vertex's mu, so a shoulder pinned to a universe edge reads 1 there.
class PiecewiseLinearMF {
public:
    /// Throws std::invalid_argument unless there are >= 2 vertices, x is
    /// strictly increasing and every mu is in [0, 1].
    explicit PiecewiseLinearMF(std::vector<Vertex> vertices);

    /// Two-vertex all-zero function spanning [lo, hi].
    static PiecewiseLinearMF zero(const Universe& u);

    std::span<const Vertex> vertices() const { return vertices_; }
    double support_lo() const { return vertices_.front().x; }
    double support_hi() const { return vertices_.back().x; }
    bool is_zero() const;

    double operator()(double x) const;

    friend bool operator==(const PiecewiseLinearMF&, const PiecewiseLinearMF&) = default;

private:
    std::vector<Vertex> vertices_;
};

/// Triangle with feet a, c and apex b. a == b yields a left shoulder
/// (1 at a, falling to 0 at c); b == c yields a right shoulder.
PiecewiseLinearMF make_triangle(double a, double b, double c);

double mf_eval(const PiecewiseLinearMF& mf, double x);

}  // namespace it2fuzzy
