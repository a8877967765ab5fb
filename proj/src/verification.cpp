#include "it2fuzzy/verification.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <memory>

#include "it2fuzzy/pendulum.hpp"
#include "it2fuzzy/pendulum_controllers.hpp"
#include "it2fuzzy/reduction_oracle.hpp"

namespace it2fuzzy::verification {

namespace {

std::vector<double> clipped_triangles(std::mt19937_64& rng, const Universe& u, std::size_t grid, int count,
                                      double min_height) {
    std::uniform_real_distribution<double> pos(u.lo, u.hi);
    std::uniform_real_distribution<double> height(min_height, 1.0);
    std::vector<double> mu(grid, 0.0);
    const double h = u.span() / static_cast<double>(grid - 1);
    for (int k = 0; k < count; ++k) {
        std::array<double, 3> p{pos(rng), pos(rng), pos(rng)};
        std::sort(p.begin(), p.end());
        if (p[2] - p[0] < 0.05 * u.span()) {
            p[0] = std::max(u.lo, p[1] - 0.05 * u.span());
            p[2] = std::min(u.hi, p[1] + 0.05 * u.span());
        }
        const auto tri = make_triangle(p[0], p[1], p[2]);
        const double clip = height(rng);
        for (std::size_t i = 0; i < grid; ++i) {
            mu[i] = std::max(mu[i], std::min(clip, tri(u.lo + static_cast<double>(i) * h)));
        }
    }
    return mu;
}

SuiteResult finish(SuiteResult r, const VerifyOptions& opt, double default_tol) {
    r.tolerance = opt.tolerance.value_or(default_tol);
    return r;
}

void record(SuiteResult& r, double err) {
    ++r.cases;
    r.worst = std::max(r.worst, err);
    if (!(err <= r.tolerance)) {
        ++r.failures;
    }
}

}  // namespace

PathOutputs random_fou_pair(std::mt19937_64& rng, std::size_t grid_size) {
    std::uniform_real_distribution<double> lo_dist(-10.0, 0.0);
    std::uniform_real_distribution<double> span_dist(1.0, 20.0);
    std::uniform_int_distribution<int> n_upper(1, 4);
    std::uniform_int_distribution<int> n_lower(0, 3);
    const double lo = lo_dist(rng);
    const Universe u{lo, lo + span_dist(rng)};

    SampledMF upper{u, clipped_triangles(rng, u, grid_size, n_upper(rng), 0.1)};
    SampledMF lower{u, clipped_triangles(rng, u, grid_size, n_lower(rng), 0.0)};
    for (std::size_t i = 0; i < grid_size; ++i) {
        lower.mu[i] = std::min(lower.mu[i], upper.mu[i]);
    }
    return {std::move(upper), std::move(lower)};
}

SuiteResult combiner_oracle(const VerifyOptions& opt) {
    auto r = finish({"combiner_vs_bruteforce"}, opt, 1e-4);
    std::mt19937_64 rng(opt.seed);
    for (std::size_t c = 0; c < opt.cases; ++c) {
        const auto pair = random_fou_pair(rng, kDefaultGridSize);
        const auto combined = combine_centroid(pair.upper, pair.lower);
        const auto brute = oracle::fou_centroid_bruteforce(pair.upper, pair.lower, 10000);
        if (!combined || !brute) {
            record(r, std::numeric_limits<double>::infinity());
            continue;
        }
        record(r, std::abs(combined->y - *brute) / pair.upper.universe.span());
    }
    return r;
}

SuiteResult zero_blur_collapse(const VerifyOptions& opt) {
    auto r = finish({"zero_blur_collapse"}, opt, 1e-9);
    const auto t1 = pendulum::t1_controller();
    const auto it2 = pendulum::it2_controller(0.0);
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> in(-pendulum::kInputBound, pendulum::kInputBound);
    for (std::size_t c = 0; c < opt.cases; ++c) {
        const std::array<double, 2> x{in(rng), in(rng)};
        const auto a = it2_output(it2, x);
        const auto b = t1_output(t1, x);
        record(r, (a && b) ? std::abs(*a - *b) : std::numeric_limits<double>::infinity());
    }
    return r;
}

SuiteResult fou_ordering(const VerifyOptions& opt) {
    auto r = finish({"fou_ordering"}, opt, 0.0);
    const auto it2 = pendulum::it2_controller();
    constexpr int n = 101;
    const double b = pendulum::kInputBound;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const std::array<double, 2> x{-b + 2.0 * b * i / (n - 1), -b + 2.0 * b * j / (n - 1)};
            const auto upper = infer(it2.upper_path(), x);
            const auto lower = infer(it2.lower_path(), x);
            double excess = 0.0;
            for (std::size_t k = 0; k < upper.mu.size(); ++k) {
                excess = std::max(excess, lower.mu[k] - upper.mu[k]);
            }
            record(r, excess);
        }
    }
    return r;
}

SuiteResult km_proximity(const VerifyOptions& opt) {
    auto r = finish({"km_proximity"}, opt, 0.1);
    const auto it2 = std::make_shared<const FuzzyController>(pendulum::it2_controller());
    SimConfig cfg;
    cfg.controller = it2;
    const auto trace = run_closed_loop(cfg);
    const auto system = pendulum::it2_controller();
    const double span = system.upper_path().output().universe().span();
    constexpr std::size_t samples = 50;
    for (std::size_t s = 0; s < samples; ++s) {
        const auto& row = trace.rows[s * (trace.rows.size() - 1) / (samples - 1)];
        const auto in = controller_input({row.y, row.y_dot, row.f_bar}, 0.0, cfg.saturation);
        const std::array<double, 2> x{in.e, in.e_dot};
        const auto paths = evaluate_paths(system, x);
        const auto y = combine_centroid(paths.upper, paths.lower);
        const auto km = oracle::km_defuzz(paths.upper, paths.lower);
        record(r, (y && km) ? std::abs(y->y - *km) / span : std::numeric_limits<double>::infinity());
    }
    return r;
}

SuiteResult km_containment(const VerifyOptions& opt) {
    auto r = finish({"km_containment"}, opt, 1e-9);
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::size_t pairs = std::max<std::size_t>(1, opt.cases / 10);
    for (std::size_t c = 0; c < pairs; ++c) {
        const auto pair = random_fou_pair(rng, 201);
        const auto km = oracle::km_centroid(pair.upper, pair.lower);
        if (!km) {
            record(r, std::numeric_limits<double>::infinity());
            continue;
        }
        const std::size_t n = pair.upper.grid_size();
        for (int e = 0; e < 50; ++e) {
            double num = 0.0;
            double den = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
                const double mu = pair.lower.mu[i] + unit(rng) * (pair.upper.mu[i] - pair.lower.mu[i]);
                num += w * pair.upper.x(i) * mu;
                den += w * mu;
            }
            if (!(den > 0.0)) {
                continue;
            }
            const double c_embedded = num / den;
            const double outside = std::max({0.0, km->c_l - c_embedded, c_embedded - km->c_r});
            record(r, outside / pair.upper.universe.span());
        }
    }
    return r;
}

SuiteResult antisymmetry(const VerifyOptions& opt) {
    auto r = finish({"antisymmetry"}, opt, 1e-6);
    const auto t1 = pendulum::t1_controller();
    const auto it2 = pendulum::it2_controller();
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> in(-pendulum::kInputBound, pendulum::kInputBound);
    for (std::size_t c = 0; c < opt.cases; ++c) {
        const std::array<double, 2> x{in(rng), in(rng)};
        const std::array<double, 2> neg{-x[0], -x[1]};
        const auto a = t1_output(t1, x);
        const auto b = t1_output(t1, neg);
        const auto p = it2_output(it2, x);
        const auto q = it2_output(it2, neg);
        const double inf = std::numeric_limits<double>::infinity();
        record(r, (a && b) ? std::abs(*a + *b) : inf);
        record(r, (p && q) ? std::abs(*p + *q) : inf);
    }
    return r;
}

std::vector<SuiteResult> run_all(const VerifyOptions& opt) {
    return {combiner_oracle(opt),   zero_blur_collapse(opt), fou_ordering(opt),
            km_proximity(opt), km_containment(opt),     antisymmetry(opt)};
}

}  // namespace it2fuzzy::verification
