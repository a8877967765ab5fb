// it2sim: run pendulum simulations, T1-vs-IT2 comparisons, oracle checks and
// the defuzzification benchmark.
//
// Exit codes: 0 success, 1 verification/comparison failure, 2 usage or
// config error.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "it2fuzzy/config.hpp"
#include "it2fuzzy/experiment.hpp"
#include "it2fuzzy/pendulum.hpp"
#include "it2fuzzy/pendulum_controllers.hpp"
#include "it2fuzzy/reduction_oracle.hpp"
#include "it2fuzzy/verification.hpp"

namespace fs = std::filesystem;
using namespace it2fuzzy;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

fs::path default_out_dir() {
    if (const char* env = std::getenv("IT2SIM_OUT_DIR"); env && *env) {
        return env;
    }
    return "it2sim_out";
}

struct SimulateArgs {
    std::string config;
    std::string controller;
    std::string out;
    std::optional<double> noise_sigma;
    std::optional<std::uint64_t> seed;
    std::optional<double> dt;
    std::optional<double> duration;
    std::optional<double> theta0;
};

int cmd_simulate(const SimulateArgs& a) {
    auto spec = config::load(a.config);
    auto& s = spec.simulation;
    if (a.noise_sigma) {
        if (*a.noise_sigma < 0.0) {
            throw config::ConfigError("--noise-sigma", "must be >= 0");
        }
        s.noise_sigma = *a.noise_sigma;
    }
    if (a.seed) s.seed = *a.seed;
    if (a.dt) s.dt = *a.dt;
    if (a.duration) s.duration = *a.duration;
    if (a.theta0) s.theta0 = *a.theta0;
    if (!(s.dt > 0.0) || !(s.duration >= s.dt)) {
        throw config::ConfigError("--dt/--duration", "need dt > 0 and duration >= dt");
    }

    std::shared_ptr<const FuzzyController> controller;
    if (a.controller == "t1") {
        controller = std::make_shared<const FuzzyController>(config::build_t1(spec));
    } else {
        controller = std::make_shared<const FuzzyController>(config::build_it2(spec));
    }
    const auto trace = run_closed_loop(config::sim_config(spec, controller));

    std::ofstream out(a.out, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot write '" << a.out << "'\n";
        return kUsage;
    }
    write_trace_csv(out, trace);

    const auto m = compute_metrics(trace, s.band);
    std::cout << "controller=" << a.controller << " settled=" << (m.settled() ? 1 : 0)
              << " settling_time=" << (m.settling_time ? format_double(*m.settling_time) : "none")
              << " overshoot=" << format_double(m.overshoot) << " ise=" << format_double(m.ise)
              << " post_settle_rms=" << format_double(m.post_settle_rms)
              << " undefined_outputs=" << trace.undefined_outputs << " rows=" << trace.rows.size() << "\n";
    if (trace.undefined_outputs > 0) {
        std::cerr << "warning: controller output undefined at " << trace.undefined_outputs
                  << " steps (force 0 applied)\n";
    }
    if (trace.aborted) {
        std::cerr << "error: " << trace.diagnostic << "\n";
        return kFailed;
    }
    return kOk;
}

struct CompareArgs {
    std::string spec;
    std::string out;
    bool plot = false;
    bool traces = false;
};

int cmd_compare(const CompareArgs& a) {
    const auto spec = experiment::load_experiment(a.spec);
    const fs::path dir = !a.out.empty() ? fs::path(a.out) : spec.output_dir.value_or(default_out_dir());
    fs::create_directories(dir);

    const auto report = experiment::run_comparison(spec);
    auto write = [&](const fs::path& name, auto&& fn) {
        std::ofstream os(dir / name, std::ios::binary);
        fn(os);
    };
    write("runs.csv", [&](std::ostream& os) { experiment::write_runs_csv(os, report); });
    write("summary.csv", [&](std::ostream& os) { experiment::write_summary_csv(os, report); });
    write("deltas.csv", [&](std::ostream& os) { experiment::write_deltas_csv(os, report); });
    write("report.txt", [&](std::ostream& os) { experiment::write_text_report(os, report); });

    if (a.plot || a.traces) {
        fs::create_directories(dir / "traces");
        std::vector<std::pair<std::string, std::string>> plotted;
        for (const auto& run : report.runs) {
            const std::string file = "traces/" + run.variant + "_seed" + std::to_string(run.seed) + ".csv";
            write(file, [&](std::ostream& os) { write_trace_csv(os, run.trace); });
            if (run.seed == spec.seeds.front()) {
                plotted.emplace_back(run.variant, file);
            }
        }
        if (a.plot) {
            // Paths in the script are relative to the output directory.
            write("plot.gp", [&](std::ostream& os) {
                experiment::write_gnuplot(os, spec.scenario + " (seed " + std::to_string(spec.seeds.front()) + ")",
                                          plotted);
            });
        }
    }

    experiment::write_text_report(std::cout, report);
    std::cout << "wrote " << dir.string() << "\n";
    return report.passed() ? kOk : kFailed;
}

int cmd_verify(const verification::VerifyOptions& opt) {
    const auto results = verification::run_all(opt);
    bool ok = true;
    for (const auto& r : results) {
        std::cout << (r.passed() ? "[PASS] " : "[FAIL] ") << r.name << ": " << (r.cases - r.failures) << "/"
                  << r.cases << " passed, worst " << r.worst << " (tolerance " << r.tolerance << ")\n";
        ok = ok && r.passed();
    }
    std::cout << (ok ? "all suites passed" : "verification FAILED") << "\n";
    return ok ? kOk : kFailed;
}

struct BenchArgs {
    std::size_t cases = 100;
    std::vector<std::size_t> grid_sizes{101, 1001};
    std::uint64_t seed = 1;
    std::string out = "bench.csv";
};

int cmd_bench(const BenchArgs& a) {
    using clock = std::chrono::steady_clock;
    std::ofstream os(a.out, std::ios::binary);
    if (!os) {
        std::cerr << "error: cannot write '" << a.out << "'\n";
        return kUsage;
    }
    os << "method,grid_size,case_id,y,iterations,nanoseconds\n";
    for (auto grid : a.grid_sizes) {
        if (grid < 2) {
            std::cerr << "error: --grid-sizes entries must be >= 2\n";
            return kUsage;
        }
        const auto system = pendulum::it2_controller(pendulum::kBlurDelta, grid);
        std::mt19937_64 rng(a.seed);
        std::uniform_real_distribution<double> in(-pendulum::kInputBound, pendulum::kInputBound);
        std::vector<long long> t_combine;
        std::vector<long long> t_km;
        for (std::size_t c = 0; c < a.cases; ++c) {
            const std::array<double, 2> x{in(rng), in(rng)};
            const auto paths = evaluate_paths(system, x);

            const auto t0 = clock::now();
            const auto combined = combine_centroid(paths.upper, paths.lower);
            const auto t1 = clock::now();
            const auto km = oracle::km_centroid(paths.upper, paths.lower);
            const auto t2 = clock::now();

            const auto ns_combine = std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count();
            const auto ns_km = std::chrono::duration_cast<std::chrono::nanoseconds>(t2 - t1).count();
            t_combine.push_back(ns_combine);
            t_km.push_back(ns_km);
            os << "combine_centroid," << grid << ',' << c << ',' << (combined ? format_double(combined->y) : "")
               << ",n/a," << ns_combine << '\n';
            os << "km_defuzz," << grid << ',' << c << ',' << (km ? format_double(km->midpoint()) : "") << ','
               << (km ? km->iterations() : 0) << ',' << ns_km << '\n';
        }
        auto median = [](std::vector<long long> v) {
            std::sort(v.begin(), v.end());
            return v.empty() ? 0LL : v[v.size() / 2];
        };
        std::cout << "grid " << grid << ": median combine_centroid " << median(t_combine)
                  << " ns, median km_defuzz " << median(t_km) << " ns\n";
    }
    std::cout << "wrote " << a.out << "\n";
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Decomposed interval type-2 fuzzy control of an inverted pendulum"};
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "Run one closed-loop simulation and write its trace CSV");
    simulate->add_option("--config", sim.config, "System/simulation config (JSON)")->required();
    simulate->add_option("--controller", sim.controller, "t1 or it2")
        ->required()
        ->check(CLI::IsMember({"t1", "it2"}));
    simulate->add_option("--out", sim.out, "Trace CSV path")->required();
    simulate->add_option("--noise-sigma", sim.noise_sigma, "Std of Gaussian noise on the error input (rad)");
    simulate->add_option("--seed", sim.seed, "Noise RNG seed");
    simulate->add_option("--dt", sim.dt, "Integration and control step (s)");
    simulate->add_option("--duration", sim.duration, "Simulated time (s)");
    simulate->add_option("--theta0", sim.theta0, "Initial angle (rad)");

    CompareArgs cmp;
    auto* compare = app.add_subcommand("compare", "Run an experiment spec and write a comparison report");
    compare->add_option("--spec", cmp.spec, "Experiment spec (JSON)")->required();
    compare->add_option("--out", cmp.out, "Output directory (overrides the spec and IT2SIM_OUT_DIR)");
    compare->add_flag("--plot", cmp.plot, "Also write traces and a gnuplot script overlaying y(t)");
    compare->add_flag("--traces", cmp.traces, "Write every run's trace CSV");

    verification::VerifyOptions vopt;
    auto* verify = app.add_subcommand("verify", "Run the oracle and invariant suites");
    verify->add_option("--cases", vopt.cases, "Random cases per suite")->check(CLI::PositiveNumber);
    verify->add_option("--seed", vopt.seed, "RNG seed");
    verify->add_option("--tolerance", vopt.tolerance, "Override every suite's tolerance");

    BenchArgs bench;
    auto* bench_cmd = app.add_subcommand("bench", "Time closed-form combine vs Karnik-Mendel on identical aggregates");
    bench_cmd->add_option("--cases", bench.cases, "Aggregates per grid size")->check(CLI::PositiveNumber);
    bench_cmd->add_option("--grid-sizes", bench.grid_sizes, "Comma-separated output grid sizes")->delimiter(',');
    bench_cmd->add_option("--seed", bench.seed, "RNG seed");
    bench_cmd->add_option("--out", bench.out, "Benchmark CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*simulate) return cmd_simulate(sim);
        if (*compare) return cmd_compare(cmp);
        if (*verify) return cmd_verify(vopt);
        if (*bench_cmd) return cmd_bench(bench);
    } catch (const config::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailed;
    }
    return kUsage;
}
