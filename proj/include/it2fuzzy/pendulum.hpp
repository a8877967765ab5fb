#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "it2fuzzy/fuzzy_core.hpp"
#include "it2fuzzy/it2_decomposed.hpp"

namespace it2fuzzy {

struct PendulumState {
    double y = 0.0;       // angle from upright, rad
    double y_dot = 0.0;   // rad/s
    double f_bar = 0.0;   // actuator-filtered force, N
};

struct PlantParams {
    double g = 9.8;

    friend bool operator==(const PlantParams&, const PlantParams&) = default;
};

struct StateDerivative {
    double dy = 0.0;
    double dy_dot = 0.0;
    double df_bar = 0.0;
};

/// Angle dynamics of the cart-pole with a first-order actuator:
///
///     y'' = [g sin y + cos y (-f_bar - 0.25 y'^2 sin y) / 1.5] / (2/3 - cos^2(y) / 6)
///     f_bar' = -100 f_bar + 100 f
///
/// Throws std::domain_error on non-finite state or force.
StateDerivative dynamics(const PendulumState& s, double f, const PlantParams& p);

/// Classical RK4 with `f` held over the step.
PendulumState rk4_step(const PendulumState& s, double f, double dt, const PlantParams& p);

struct ControllerInput {
    double e = 0.0;
    double e_dot = 0.0;
};

/// Unity feedback to r = 0: e = clamp(-y + noise), e_dot = clamp(-y_dot),
/// both saturated to [-sat, sat].
ControllerInput controller_input(const PendulumState& s, double noise, double sat);

/// Seeded zero-mean Gaussian stream. sigma == 0 returns 0 without drawing.
class GaussianNoise {
public:
    explicit GaussianNoise(std::uint64_t seed) : engine_(seed) {}
    double operator()(double sigma);

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

/// A fuzzy controller mapping (e, e_dot) to force.
class FuzzyController {
public:
    explicit FuzzyController(T1System sys) : impl_(std::move(sys)) {}
    explicit FuzzyController(DecomposedSystem sys) : impl_(std::move(sys)) {}

    bool is_it2() const { return std::holds_alternative<DecomposedSystem>(impl_); }
    std::string kind() const { return is_it2() ? "it2" : "t1"; }

    /// nullopt when no rule fires (undefined output).
    std::optional<double> output(double e, double e_dot) const;

private:
    std::variant<T1System, DecomposedSystem> impl_;
};

struct SimConfig {
    double dt = 1e-3;
    double duration = 5.0;
    double theta0 = 0.1;
    double theta_dot0 = 0.0;
    double noise_sigma = 0.0;
    std::uint64_t rng_seed = 1;
    double saturation = 0.78539816339744830962;  // pi/4
    PlantParams plant;
    std::shared_ptr<const FuzzyController> controller;

    /// Throws std::invalid_argument naming the bad field.
    void validate() const;
    std::size_t steps() const;
};

struct TraceRow {
    double t = 0.0;
    double y = 0.0;
    double y_dot = 0.0;
    double f_bar = 0.0;
    double e_measured = 0.0;
    double f_command = 0.0;

    friend bool operator==(const TraceRow&, const TraceRow&) = default;
};

struct Trace {
    double dt = 0.0;
    std::vector<TraceRow> rows;
    std::size_t undefined_outputs = 0;
    bool aborted = false;
    std::string diagnostic;
};

/// Row k holds t = k*dt, the state at that time, the measured error and the
/// force commanded for the following step. A non-finite state stops the run
/// with `aborted` set and the rows recorded so far.
Trace run_closed_loop(const SimConfig& cfg);

struct Metrics {
    std::optional<double> settling_time;  // empty: did not settle
    double overshoot = 0.0;
    double ise = 0.0;
    double post_settle_rms = 0.0;

    bool settled() const { return settling_time.has_value(); }
};

/// Throws std::invalid_argument on an empty trace.
Metrics compute_metrics(const Trace& tr, double band);

/// Header `t,y,y_dot,f_bar,e_measured,f_command`; values in shortest
/// round-trip decimal.
void write_trace_csv(std::ostream& os, const Trace& tr);
std::vector<TraceRow> read_trace_csv(std::istream& is);

/// Shortest decimal that parses back to exactly `v`.
std::string format_double(double v);

}  // namespace it2fuzzy
