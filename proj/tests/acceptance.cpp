// Acceptance gate: one PASS/FAIL line per criterion, exit 0 iff all pass.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <memory>
#include <numbers>
#include <random>
#include <string>
#include <unistd.h>
#include <vector>

#include "cli_support.hpp"
#include "it2fuzzy/pendulum.hpp"
#include "it2fuzzy/pendulum_controllers.hpp"
#include "it2fuzzy/reduction_oracle.hpp"
#include "it2fuzzy/verification.hpp"
#include "oracles.hpp"

using namespace it2fuzzy;
namespace fs = std::filesystem;

namespace {

// Tolerances and budgets.
constexpr double kCollapseTol = 1e-9;
constexpr double kCollapseBudget = 5.0;
constexpr double kCombinerTol = 1e-4;  // fraction of the output span
constexpr double kCombinerBudget = 10.0;
constexpr std::size_t kCombinerCases = 200;
constexpr double kBand = 0.005;
constexpr double kRunBudget = 5.0;
constexpr double kNoiseSigma = 0.01;
constexpr int kNoiseSeeds = 10;
constexpr double kKmTol = 0.1;  // fraction of the output span
constexpr double kDynamicsTol = 1e-12;
constexpr double kRk4Tol = 1e-6;
constexpr double kAntisymTol = 1e-6;
constexpr double kNegationTol = 1e-9;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass;
    std::string detail;
};

std::shared_ptr<const FuzzyController> t1_ctrl() {
    static const auto c = std::make_shared<const FuzzyController>(pendulum::t1_controller());
    return c;
}

std::shared_ptr<const FuzzyController> it2_ctrl() {
    static const auto c = std::make_shared<const FuzzyController>(pendulum::it2_controller());
    return c;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

Outcome zero_blur_collapse() {
    const auto t0 = Clock::now();
    const auto it2 = pendulum::it2_controller(0.0);
    const auto t1 = pendulum::t1_controller();
    std::mt19937_64 rng(1001);
    std::uniform_real_distribution<double> u(-pendulum::kInputBound, pendulum::kInputBound);
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const std::array<double, 2> x{u(rng), u(rng)};
        const auto a = it2_output(it2, x);
        const auto b = t1_output(t1, x);
        worst = std::max(worst, (a && b) ? std::abs(*a - *b) : INFINITY);
    }
    const double s = seconds_since(t0);
    return {worst <= kCollapseTol && s < kCollapseBudget, "max diff " + fmt(worst) + " over 1000 inputs, " + fmt(s) + " s"};
}

Outcome combiner_vs_bruteforce() {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(2002);
    double worst = 0.0;
    double worst_exact = 0.0;
    for (std::size_t k = 0; k < kCombinerCases; ++k) {
        const auto p = verification::random_fou_pair(rng, kDefaultGridSize);
        const double span = p.upper.universe.span();
        const auto y = combine_centroid(p.upper, p.lower);
        const auto brute = oracle::fou_centroid_bruteforce(p.upper, p.lower, 10000);
        if (!y || !brute) {
            return {false, "undefined output on case " + std::to_string(k)};
        }
        worst = std::max(worst, std::abs(y->y - *brute) / span);
        // Second, analytic reference where the band has area.
        double band = 0.0;
        for (std::size_t i = 0; i < p.upper.grid_size(); ++i) band += p.upper.mu[i] - p.lower.mu[i];
        if (band * p.upper.step() > 1e-9) {
            const double exact =
                oracle_ref::exact_band_centroid(p.upper.mu, p.lower.mu, p.upper.universe.lo, p.upper.universe.hi);
            worst_exact = std::max(worst_exact, std::abs(y->y - exact) / span);
        }
    }
    const double s = seconds_since(t0);
    return {worst <= kCombinerTol && worst_exact <= kCombinerTol && s < kCombinerBudget,
            std::to_string(kCombinerCases) + " pairs, max |y - brute|/span " + fmt(worst) + ", vs exact " +
                fmt(worst_exact) + ", " + fmt(s) + " s"};
}

Outcome fou_ordering() {
    const auto d = pendulum::it2_controller();
    const double b = pendulum::kInputBound;
    std::size_t violations = 0;
    for (int i = 0; i < 101; ++i) {
        for (int j = 0; j < 101; ++j) {
            const std::array<double, 2> x{-b + 2 * b * i / 100.0, -b + 2 * b * j / 100.0};
            const auto up = infer(d.upper_path(), x);
            const auto lo = infer(d.lower_path(), x);
            for (std::size_t k = 0; k < up.grid_size(); ++k) {
                if (lo.mu[k] > up.mu[k]) ++violations;
            }
        }
    }
    return {violations == 0, std::to_string(violations) + " violations on 101x101 inputs"};
}

struct RunSummary {
    Metrics m;
    double seconds;
    Trace trace;
};

RunSummary timed_run(const std::shared_ptr<const FuzzyController>& c, double sigma = 0.0, std::uint64_t seed = 1) {
    SimConfig cfg;
    cfg.controller = c;
    cfg.noise_sigma = sigma;
    cfg.rng_seed = seed;
    const auto t0 = Clock::now();
    auto tr = run_closed_loop(cfg);
    const double s = seconds_since(t0);
    return {compute_metrics(tr, kBand), s, std::move(tr)};
}

Outcome stabilisation(const RunSummary& t1, const RunSummary& it2) {
    auto ok = [](const RunSummary& r) {
        return !r.trace.aborted && r.m.settled() && *r.m.settling_time < 5.0 && r.seconds < kRunBudget;
    };
    auto desc = [](const char* n, const RunSummary& r) {
        return std::string(n) + " settles at " + (r.m.settled() ? fmt(*r.m.settling_time) + " s" : "never") + " (" +
               fmt(r.seconds) + " s wall)";
    };
    return {ok(t1) && ok(it2), desc("T1", t1) + ", " + desc("IT2", it2)};
}

Outcome it2_faster(const RunSummary& t1, const RunSummary& it2) {
    if (!t1.m.settled() || !it2.m.settled()) {
        return {false, "a controller did not settle"};
    }
    return {*it2.m.settling_time <= *t1.m.settling_time,
            "IT2 " + fmt(*it2.m.settling_time) + " s <= T1 " + fmt(*t1.m.settling_time) + " s"};
}

Outcome noise_robustness() {
    double t1 = 0.0;
    double it2 = 0.0;
    for (int s = 1; s <= kNoiseSeeds; ++s) {
        t1 += timed_run(t1_ctrl(), kNoiseSigma, static_cast<std::uint64_t>(s)).m.post_settle_rms;
        it2 += timed_run(it2_ctrl(), kNoiseSigma, static_cast<std::uint64_t>(s)).m.post_settle_rms;
    }
    t1 /= kNoiseSeeds;
    it2 /= kNoiseSeeds;
    return {it2 <= t1, "mean post-settle RMS IT2 " + fmt(it2) + " <= T1 " + fmt(t1) + " over 10 seeds"};
}

Outcome km_proximity(const RunSummary& it2) {
    const auto d = pendulum::it2_controller();
    const double span = d.upper_path().output().universe().span();
    const auto& rows = it2.trace.rows;
    double worst = 0.0;
    for (std::size_t s = 0; s < 50; ++s) {
        const auto& r = rows[s * (rows.size() - 1) / 49];
        const auto in = controller_input({r.y, r.y_dot, r.f_bar}, 0.0, pendulum::kInputBound);
        const std::array<double, 2> x{in.e, in.e_dot};
        const auto p = evaluate_paths(d, x);
        const auto y = combine_centroid(p.upper, p.lower);
        const auto km = oracle::km_defuzz(p.upper, p.lower);
        worst = std::max(worst, (y && km) ? std::abs(y->y - *km) / span : INFINITY);
    }
    return {worst <= kKmTol, "max |y - KM|/span " + fmt(worst) + " over 50 trajectory points"};
}

Outcome dynamics_correctness() {
    const PlantParams p{};
    double worst = 0.0;
    auto d = dynamics({0, 0, 0}, 0, p);
    worst = std::max({worst, std::abs(d.dy), std::abs(d.dy_dot), std::abs(d.df_bar)});
    d = dynamics({0, 0, 1.5}, 0, p);
    worst = std::max({worst, std::abs(d.dy_dot + 2.0), std::abs(d.df_bar + 150.0),
                      std::abs(d.dy_dot - oracle_ref::angular_acceleration(0, 0, 1.5, 9.8))});
    d = dynamics({std::numbers::pi / 2, 0, 0}, 0, p);
    worst = std::max(worst, std::abs(d.dy_dot - 1.5 * 9.8));

    const double f = 1.0;  // unit step
    double rk_worst = 0.0;
    PendulumState s;
    for (int k = 1; k <= 500; ++k) {
        s.y = 0;
        s.y_dot = 0;
        s = rk4_step(s, f, 1e-3, p);
        rk_worst = std::max(rk_worst, std::abs(s.f_bar - f * (1 - std::exp(-100.0 * k * 1e-3))));
    }
    return {worst <= kDynamicsTol && rk_worst <= kRk4Tol,
            "max substitution error " + fmt(worst) + ", RK4 actuator error " + fmt(rk_worst)};
}

Outcome symmetry() {
    const auto t1 = pendulum::t1_controller();
    const auto it2 = pendulum::it2_controller();
    std::mt19937_64 rng(9009);
    std::uniform_real_distribution<double> u(-pendulum::kInputBound, pendulum::kInputBound);
    double worst = 0.0;
    for (int k = 0; k < 500; ++k) {
        const std::array<double, 2> a{u(rng), u(rng)};
        const std::array<double, 2> b{-a[0], -a[1]};
        worst = std::max(worst, std::abs(*t1_output(t1, a) + *t1_output(t1, b)));
        worst = std::max(worst, std::abs(*it2_output(it2, a) + *it2_output(it2, b)));
    }
    double traj = 0.0;
    for (const auto& c : {t1_ctrl(), it2_ctrl()}) {
        SimConfig pos;
        pos.controller = c;
        SimConfig neg = pos;
        neg.theta0 = -pos.theta0;
        neg.theta_dot0 = -pos.theta_dot0;
        const auto tp = run_closed_loop(pos);
        const auto tn = run_closed_loop(neg);
        for (std::size_t k = 0; k < tp.rows.size(); ++k) {
            traj = std::max(traj, std::abs(tp.rows[k].y + tn.rows[k].y));
        }
    }
    return {worst <= kAntisymTol && traj <= kNegationTol,
            "max |f(x)+f(-x)| " + fmt(worst) + " over 500 points, trajectory negation " + fmt(traj)};
}

Outcome determinism() {
    const fs::path dir = fs::temp_directory_path() / ("it2fuzzy_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const std::string cfg = "\"" + (fs::path(IT2FUZZY_SOURCE_DIR) / "configs/pendulum_it2.json").string() + "\"";
    const std::string base = "simulate --config " + cfg + " --controller it2 --noise-sigma 0.01 --seed 7 --out ";
    const int a = cli_support::run_it2sim(base + "\"" + (dir / "a.csv").string() + "\"", dir / "log");
    const int b = cli_support::run_it2sim(base + "\"" + (dir / "b.csv").string() + "\"", dir / "log");
    const bool same = a == 0 && b == 0 && cli_support::slurp(dir / "a.csv") == cli_support::slurp(dir / "b.csv");
    const int verify = cli_support::run_it2sim("verify", dir / "log");
    fs::remove_all(dir);
    return {same && verify == 0, std::string("simulate twice ") + (same ? "byte-identical" : "DIFFERENT") +
                                     ", verify exit code " + std::to_string(verify)};
}

}  // namespace

int main() {
    const auto t1 = timed_run(t1_ctrl());
    const auto it2 = timed_run(it2_ctrl());

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"zero-blur collapse", zero_blur_collapse},
        {"geometric centroid vs brute force", combiner_vs_bruteforce},
        {"FOU ordering", fou_ordering},
        {"stabilisation", [&] { return stabilisation(t1, it2); }},
        {"IT2 settles no later than T1", [&] { return it2_faster(t1, it2); }},
        {"noise robustness", noise_robustness},
        {"KM proximity", [&] { return km_proximity(it2); }},
        {"dynamics correctness", dynamics_correctness},
        {"symmetry", symmetry},
        {"determinism", determinism},
    };

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o{false, ""};
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("[%s] AC%zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    o.detail.c_str());
        failed += o.pass ? 0 : 1;
    }
    std::printf("%zu/%zu acceptance criteria passed\n", criteria.size() - static_cast<std::size_t>(failed),
                criteria.size());
    return failed == 0 ? 0 : 1;
}
