#include "it2fuzzy/pendulum.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace it2fuzzy {

StateDerivative dynamics(const PendulumState& s, double f, const PlantParams& p) {
    if (!std::isfinite(s.y) || !std::isfinite(s.y_dot) || !std::isfinite(s.f_bar) || !std::isfinite(f)) {
        throw std::domain_error("non-finite pendulum state or force");
    }
    const double sin_y = std::sin(s.y);
    const double cos_y = std::cos(s.y);
    const double num = p.g * sin_y + cos_y * ((-s.f_bar - 0.25 * s.y_dot * s.y_dot * sin_y) / 1.5);
    const double den = 2.0 / 3.0 - (1.0 / 6.0) * cos_y * cos_y;
    return {s.y_dot, num / den, -100.0 * s.f_bar + 100.0 * f};
}

PendulumState rk4_step(const PendulumState& s, double f, double dt, const PlantParams& p) {
    auto advance = [&](const StateDerivative& d, double h) {
        return PendulumState{s.y + h * d.dy, s.y_dot + h * d.dy_dot, s.f_bar + h * d.df_bar};
    };
    const StateDerivative k1 = dynamics(s, f, p);
    const StateDerivative k2 = dynamics(advance(k1, 0.5 * dt), f, p);
    const StateDerivative k3 = dynamics(advance(k2, 0.5 * dt), f, p);
    const StateDerivative k4 = dynamics(advance(k3, dt), f, p);
    const double w = dt / 6.0;
    PendulumState next{
        s.y + w * (k1.dy + 2.0 * k2.dy + 2.0 * k3.dy + k4.dy),
        s.y_dot + w * (k1.dy_dot + 2.0 * k2.dy_dot + 2.0 * k3.dy_dot + k4.dy_dot),
        s.f_bar + w * (k1.df_bar + 2.0 * k2.df_bar + 2.0 * k3.df_bar + k4.df_bar),
    };
    if (!std::isfinite(next.y) || !std::isfinite(next.y_dot) || !std::isfinite(next.f_bar)) {
        throw std::domain_error("RK4 step produced a non-finite state");
    }
    return next;
}

ControllerInput controller_input(const PendulumState& s, double noise, double sat) {
    return {std::clamp(-s.y + noise, -sat, sat), std::clamp(-s.y_dot, -sat, sat)};
}

double GaussianNoise::operator()(double sigma) {
    if (sigma == 0.0) {
        return 0.0;
    }
    return sigma * normal_(engine_);
}

std::optional<double> FuzzyController::output(double e, double e_dot) const {
    const std::array<double, 2> in{e, e_dot};
    if (const auto* t1 = std::get_if<T1System>(&impl_)) {
        return t1_output(*t1, in);
    }
    return it2_output(std::get<DecomposedSystem>(impl_), in);
}

void SimConfig::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw std::invalid_argument("dt must be > 0");
    }
    if (!(duration >= dt) || !std::isfinite(duration)) {
        throw std::invalid_argument("duration must be >= dt");
    }
    if (!(noise_sigma >= 0.0)) {
        throw std::invalid_argument("noise_sigma must be >= 0");
    }
    if (!(saturation > 0.0)) {
        throw std::invalid_argument("saturation must be > 0");
    }
    if (!(plant.g > 0.0)) {
        throw std::invalid_argument("g must be > 0");
    }
    if (!std::isfinite(theta0) || !std::isfinite(theta_dot0)) {
        throw std::invalid_argument("initial state must be finite");
    }
    if (!controller) {
        throw std::invalid_argument("no controller configured");
    }
}

std::size_t SimConfig::steps() const { return static_cast<std::size_t>(std::llround(duration / dt)); }

Trace run_closed_loop(const SimConfig& cfg) {
    cfg.validate();
    Trace tr;
    tr.dt = cfg.dt;
    const std::size_t steps = cfg.steps();
    tr.rows.reserve(steps + 1);

    GaussianNoise noise(cfg.rng_seed);
    PendulumState s{cfg.theta0, cfg.theta_dot0, 0.0};
    for (std::size_t k = 0; k <= steps; ++k) {
        const double t = static_cast<double>(k) * cfg.dt;
        const ControllerInput in = controller_input(s, noise(cfg.noise_sigma), cfg.saturation);
        double f = 0.0;
        if (auto out = cfg.controller->output(in.e, in.e_dot)) {
            f = *out;
        } else {
            ++tr.undefined_outputs;
        }
        tr.rows.push_back({t, s.y, s.y_dot, s.f_bar, in.e, f});
        if (k == steps) {
            break;
        }
        try {
            s = rk4_step(s, f, cfg.dt, cfg.plant);
        } catch (const std::domain_error& err) {
            tr.aborted = true;
            std::ostringstream msg;
            msg << "aborted at t=" << t << ": " << err.what();
            tr.diagnostic = msg.str();
            break;
        }
    }
    return tr;
}

Metrics compute_metrics(const Trace& tr, double band) {
    if (tr.rows.empty()) {
        throw std::invalid_argument("cannot compute metrics of an empty trace");
    }
    const auto& rows = tr.rows;
    const std::size_t n = rows.size();
    Metrics m;

    std::optional<std::size_t> last_outside;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(std::abs(rows[i].y) < band)) {
            last_outside = i;
        }
    }
    if (!last_outside) {
        m.settling_time = rows.front().t;
    } else if (*last_outside + 1 < n && !tr.aborted) {
        m.settling_time = rows[*last_outside + 1].t;
    }

    const double theta0 = rows.front().y;
    const double sign0 = theta0 > 0.0 ? 1.0 : (theta0 < 0.0 ? -1.0 : 0.0);
    bool crossed = false;
    for (const auto& row : rows) {
        if (!crossed && sign0 * row.y <= 0.0) {
            crossed = true;
        }
        if (crossed) {
            m.overshoot = std::max(m.overshoot, -sign0 * row.y);
        }
    }

    for (const auto& row : rows) {
        m.ise += row.y * row.y * tr.dt;
    }

    const std::size_t tail = std::max<std::size_t>(1, n / 4);
    double sq = 0.0;
    for (std::size_t i = n - tail; i < n; ++i) {
        sq += rows[i].y * rows[i].y;
    }
    m.post_settle_rms = std::sqrt(sq / static_cast<double>(tail));
    return m;
}

std::string format_double(double v) {
    std::array<char, 32> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

void write_trace_csv(std::ostream& os, const Trace& tr) {
    os << "t,y,y_dot,f_bar,e_measured,f_command\n";
    for (const auto& r : tr.rows) {
        os << format_double(r.t) << ',' << format_double(r.y) << ',' << format_double(r.y_dot) << ','
           << format_double(r.f_bar) << ',' << format_double(r.e_measured) << ',' << format_double(r.f_command)
           << '\n';
    }
}

std::vector<TraceRow> read_trace_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != "t,y,y_dot,f_bar,e_measured,f_command") {
        throw std::runtime_error("trace CSV: missing or unexpected header");
    }
    std::vector<TraceRow> rows;
    while (std::getline(is, line)) {
        if (line.empty()) {
            continue;
        }
        std::array<double, 6> vals{};
        const char* p = line.data();
        const char* end = line.data() + line.size();
        for (std::size_t k = 0; k < vals.size(); ++k) {
            auto res = std::from_chars(p, end, vals[k]);
            if (res.ec != std::errc{}) {
                throw std::runtime_error("trace CSV: bad number in row " + std::to_string(rows.size() + 1));
            }
            p = res.ptr;
            if (k + 1 < vals.size()) {
                if (p == end || *p != ',') {
                    throw std::runtime_error("trace CSV: expected 6 columns in row " + std::to_string(rows.size() + 1));
                }
                ++p;
            }
        }
        rows.push_back({vals[0], vals[1], vals[2], vals[3], vals[4], vals[5]});
    }
    return rows;
}

}  // namespace it2fuzzy
