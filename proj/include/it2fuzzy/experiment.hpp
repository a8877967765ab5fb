#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "it2fuzzy/config.hpp"
#include "it2fuzzy/pendulum.hpp"

namespace it2fuzzy::experiment {

struct Variant {
    std::string name;
    std::string controller;  // "t1" or "it2"
};

/// Ordering claim: `statistic` of `metric` for `variant` must be <= the same
/// statistic for `reference`. A run that never settles counts as +inf
/// settling time.
struct Claim {
    std::string metric;  // settling_time | overshoot | ise | post_settle_rms
    std::string variant;
    std::string reference;
};

// Experiment file (JSON):
//
//   {
//     "scenario": "noisy",
//     "config": "../configs/pendulum_it2.json",   relative to this file
//     "overrides": { <any "simulation" key> },
//     "variants": [ {"name": "T1", "controller": "t1"}, ... ],
//     "repetitions": 10,
//     "seeds": [1, 2, ...],                       optional; default 1..N
//     "band": 0.005,                              optional
//     "output_dir": "out/noisy",                  optional
//     "claims": [ {"metric": "post_settle_rms", "variant": "IT2",
//                  "reference": "T1"} ]           optional
//   }
struct ExperimentSpec {
    std::string scenario;
    config::SystemSpec system;
    std::vector<Variant> variants;
    std::vector<std::uint64_t> seeds;
    double band = 0.005;
    std::optional<std::filesystem::path> output_dir;
    std::vector<Claim> claims;
};

/// Throws config::ConfigError naming the offending key.
ExperimentSpec load_experiment(const std::filesystem::path& path);

struct RunResult {
    std::string variant;
    std::uint64_t seed = 0;
    Metrics metrics;
    std::size_t undefined_outputs = 0;
    bool aborted = false;
    std::string diagnostic;
    Trace trace;
};

struct Summary {
    double mean = 0.0;
    double stddev = 0.0;
    std::size_t count = 0;  // runs contributing (settled runs for settling_time)
};

struct ClaimResult {
    Claim claim;
    double variant_value = 0.0;
    double reference_value = 0.0;
    bool passed = false;
};

struct ComparisonReport {
    std::string scenario;
    std::vector<std::string> variants;                                   // spec order
    std::vector<RunResult> runs;                                         // sorted by variant, seed
    std::map<std::string, std::map<std::string, Summary>> summaries;     // variant -> metric
    std::vector<ClaimResult> claims;
    std::vector<std::string> failed_variants;

    bool passed() const;
};

inline const std::vector<std::string>& metric_names() {
    static const std::vector<std::string> names{"settling_time", "overshoot", "ise", "post_settle_rms"};
    return names;
}

/// Runs every variant x seed; runs execute in parallel and the report is
/// identical to a sequential evaluation.
ComparisonReport run_comparison(const ExperimentSpec& spec);

/// Mean of `metric` used when checking claims (+inf if any run is unsettled
/// and metric is settling_time).
double claim_statistic(const ComparisonReport& report, const std::string& variant, const std::string& metric);

void write_runs_csv(std::ostream& os, const ComparisonReport& r);
void write_summary_csv(std::ostream& os, const ComparisonReport& r);
void write_deltas_csv(std::ostream& os, const ComparisonReport& r);
void write_text_report(std::ostream& os, const ComparisonReport& r);

/// Gnuplot script overlaying y(t) for the given trace files.
void write_gnuplot(std::ostream& os, const std::string& title,
                   const std::vector<std::pair<std::string, std::string>>& label_and_file);

}  // namespace it2fuzzy::experiment
