#include "it2fuzzy/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace it2fuzzy::experiment {

using config::ConfigError;
using nlohmann::json;

namespace {

double number(const json& j, const std::string& key) {
    if (!j.is_number()) {
        throw ConfigError(key, "expected a number");
    }
    return j.get<double>();
}

std::string text(const json& j, const std::string& key) {
    if (!j.is_string() || j.get<std::string>().empty()) {
        throw ConfigError(key, "expected a non-empty string");
    }
    return j.get<std::string>();
}

void apply_overrides(const json& j, config::SimSettings& s) {
    if (!j.is_object()) {
        throw ConfigError("overrides", "expected an object");
    }
    for (const auto& item : j.items()) {
        const std::string key = "overrides." + item.key();
        const auto& v = item.value();
        if (item.key() == "dt") {
            s.dt = number(v, key);
        } else if (item.key() == "duration") {
            s.duration = number(v, key);
        } else if (item.key() == "theta0") {
            s.theta0 = number(v, key);
        } else if (item.key() == "theta_dot0") {
            s.theta_dot0 = number(v, key);
        } else if (item.key() == "noise_sigma") {
            s.noise_sigma = number(v, key);
            if (!(s.noise_sigma >= 0.0)) {
                throw ConfigError(key, "must be >= 0");
            }
        } else if (item.key() == "saturation") {
            s.saturation = number(v, key);
        } else if (item.key() == "band") {
            s.band = number(v, key);
        } else if (item.key() == "seed") {
            if (!v.is_number_unsigned()) {
                throw ConfigError(key, "expected a non-negative integer");
            }
            s.seed = v.get<std::uint64_t>();
        } else {
            throw ConfigError(key, "unknown key");
        }
    }
}

double metric_value(const Metrics& m, const std::string& metric) {
    if (metric == "settling_time") {
        return m.settling_time.value_or(std::numeric_limits<double>::infinity());
    }
    if (metric == "overshoot") {
        return m.overshoot;
    }
    if (metric == "ise") {
        return m.ise;
    }
    return m.post_settle_rms;
}

std::string csv_value(double v) {
    return std::isfinite(v) ? format_double(v) : std::string("");
}

}  // namespace

ExperimentSpec load_experiment(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("<file>", "cannot open '" + path.string() + "'");
    }
    json root;
    try {
        root = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("<document>", e.what());
    }
    if (!root.is_object()) {
        throw ConfigError("<document>", "expected a JSON object");
    }
    for (const auto& item : root.items()) {
        static const std::set<std::string> allowed{"scenario", "config",     "overrides", "variants", "repetitions",
                                                   "seeds",    "band",       "output_dir", "claims"};
        if (!allowed.count(item.key())) {
            throw ConfigError(item.key(), "unknown key");
        }
    }

    ExperimentSpec spec;
    spec.scenario = root.contains("scenario") ? text(root["scenario"], "scenario") : path.stem().string();
    if (!root.contains("config")) {
        throw ConfigError("config", "missing required key");
    }
    const auto config_path = path.parent_path() / text(root["config"], "config");
    try {
        spec.system = config::load(config_path);
    } catch (const ConfigError& e) {
        throw ConfigError("config", "in '" + config_path.string() + "': " + e.what());
    }
    if (root.contains("overrides")) {
        apply_overrides(root["overrides"], spec.system.simulation);
    }
    spec.band = spec.system.simulation.band;
    if (root.contains("band")) {
        spec.band = number(root["band"], "band");
    }
    if (!(spec.band > 0.0)) {
        throw ConfigError("band", "must be > 0");
    }

    if (!root.contains("variants") || !root["variants"].is_array() || root["variants"].empty()) {
        throw ConfigError("variants", "expected a non-empty array");
    }
    std::set<std::string> names;
    for (std::size_t i = 0; i < root["variants"].size(); ++i) {
        const auto& v = root["variants"][i];
        const std::string key = "variants[" + std::to_string(i) + "]";
        if (!v.is_object() || !v.contains("name") || !v.contains("controller")) {
            throw ConfigError(key, "expected {\"name\", \"controller\"}");
        }
        Variant variant{text(v["name"], key + ".name"), text(v["controller"], key + ".controller")};
        if (variant.controller != "t1" && variant.controller != "it2") {
            throw ConfigError(key + ".controller", "must be 't1' or 'it2'");
        }
        if (!names.insert(variant.name).second) {
            throw ConfigError(key + ".name", "duplicate variant name");
        }
        spec.variants.push_back(std::move(variant));
    }

    if (root.contains("seeds")) {
        const auto& seeds = root["seeds"];
        if (!seeds.is_array() || seeds.empty()) {
            throw ConfigError("seeds", "expected a non-empty array");
        }
        for (std::size_t i = 0; i < seeds.size(); ++i) {
            if (!seeds[i].is_number_unsigned()) {
                throw ConfigError("seeds[" + std::to_string(i) + "]", "expected a non-negative integer");
            }
            spec.seeds.push_back(seeds[i].get<std::uint64_t>());
        }
        if (root.contains("repetitions") && root["repetitions"] != seeds.size()) {
            throw ConfigError("repetitions", "does not match the number of seeds");
        }
    } else {
        std::size_t reps = 1;
        if (root.contains("repetitions")) {
            if (!root["repetitions"].is_number_unsigned() || root["repetitions"].get<std::size_t>() == 0) {
                throw ConfigError("repetitions", "expected a positive integer");
            }
            reps = root["repetitions"].get<std::size_t>();
        }
        for (std::size_t i = 0; i < reps; ++i) {
            spec.seeds.push_back(spec.system.simulation.seed + i);
        }
    }
    if (std::set<std::uint64_t>(spec.seeds.begin(), spec.seeds.end()).size() != spec.seeds.size()) {
        throw ConfigError("seeds", "seeds must be distinct");
    }

    if (root.contains("output_dir")) {
        spec.output_dir = path.parent_path() / text(root["output_dir"], "output_dir");
    }
    if (root.contains("claims")) {
        const auto& claims = root["claims"];
        if (!claims.is_array()) {
            throw ConfigError("claims", "expected an array");
        }
        for (std::size_t i = 0; i < claims.size(); ++i) {
            const std::string key = "claims[" + std::to_string(i) + "]";
            const auto& c = claims[i];
            if (!c.is_object() || !c.contains("metric") || !c.contains("variant") || !c.contains("reference")) {
                throw ConfigError(key, "expected {\"metric\", \"variant\", \"reference\"}");
            }
            Claim claim{text(c["metric"], key + ".metric"), text(c["variant"], key + ".variant"),
                        text(c["reference"], key + ".reference")};
            const auto& metrics = metric_names();
            if (std::find(metrics.begin(), metrics.end(), claim.metric) == metrics.end()) {
                throw ConfigError(key + ".metric", "unknown metric '" + claim.metric + "'");
            }
            if (!names.count(claim.variant)) {
                throw ConfigError(key + ".variant", "unknown variant '" + claim.variant + "'");
            }
            if (!names.count(claim.reference)) {
                throw ConfigError(key + ".reference", "unknown variant '" + claim.reference + "'");
            }
            spec.claims.push_back(std::move(claim));
        }
    }
    return spec;
}

bool ComparisonReport::passed() const {
    return failed_variants.empty() &&
           std::all_of(claims.begin(), claims.end(), [](const ClaimResult& c) { return c.passed; });
}

ComparisonReport run_comparison(const ExperimentSpec& spec) {
    std::map<std::string, std::shared_ptr<const FuzzyController>> controllers;
    for (const auto& v : spec.variants) {
        if (v.controller == "t1") {
            controllers[v.name] = std::make_shared<const FuzzyController>(config::build_t1(spec.system));
        } else {
            controllers[v.name] = std::make_shared<const FuzzyController>(config::build_it2(spec.system));
        }
    }

    std::vector<std::future<RunResult>> jobs;
    for (const auto& v : spec.variants) {
        for (auto seed : spec.seeds) {
            auto cfg = config::sim_config(spec.system, controllers.at(v.name));
            cfg.rng_seed = seed;
            jobs.push_back(std::async(std::launch::async, [cfg, name = v.name, seed, band = spec.band] {
                RunResult r;
                r.variant = name;
                r.seed = seed;
                r.trace = run_closed_loop(cfg);
                r.metrics = compute_metrics(r.trace, band);
                r.undefined_outputs = r.trace.undefined_outputs;
                r.aborted = r.trace.aborted;
                r.diagnostic = r.trace.diagnostic;
                return r;
            }));
        }
    }

    ComparisonReport report;
    report.scenario = spec.scenario;
    for (const auto& v : spec.variants) {
        report.variants.push_back(v.name);
    }
    for (auto& job : jobs) {
        report.runs.push_back(job.get());
    }
    std::sort(report.runs.begin(), report.runs.end(), [](const RunResult& a, const RunResult& b) {
        return std::tie(a.variant, a.seed) < std::tie(b.variant, b.seed);
    });

    for (const auto& name : report.variants) {
        bool failed = false;
        for (const auto& metric : metric_names()) {
            std::vector<double> values;
            for (const auto& run : report.runs) {
                if (run.variant != name) {
                    continue;
                }
                failed = failed || run.aborted;
                const double v = metric_value(run.metrics, metric);
                if (std::isfinite(v)) {
                    values.push_back(v);
                }
            }
            Summary s;
            s.count = values.size();
            if (!values.empty()) {
                double sum = 0.0;
                for (double v : values) {
                    sum += v;
                }
                s.mean = sum / static_cast<double>(values.size());
                double sq = 0.0;
                for (double v : values) {
                    sq += (v - s.mean) * (v - s.mean);
                }
                s.stddev = values.size() > 1 ? std::sqrt(sq / static_cast<double>(values.size() - 1)) : 0.0;
            }
            report.summaries[name][metric] = s;
        }
        if (failed) {
            report.failed_variants.push_back(name);
        }
    }

    for (const auto& claim : spec.claims) {
        ClaimResult cr{claim, claim_statistic(report, claim.variant, claim.metric),
                       claim_statistic(report, claim.reference, claim.metric), false};
        cr.passed = cr.variant_value <= cr.reference_value && std::isfinite(cr.variant_value);
        report.claims.push_back(cr);
    }
    return report;
}

double claim_statistic(const ComparisonReport& report, const std::string& variant, const std::string& metric) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& run : report.runs) {
        if (run.variant == variant) {
            sum += metric_value(run.metrics, metric);
            ++n;
        }
    }
    return n == 0 ? std::numeric_limits<double>::quiet_NaN() : sum / static_cast<double>(n);
}

void write_runs_csv(std::ostream& os, const ComparisonReport& r) {
    os << "variant,seed,settled,settling_time,overshoot,ise,post_settle_rms,undefined_outputs,aborted\n";
    for (const auto& run : r.runs) {
        const auto& m = run.metrics;
        os << run.variant << ',' << run.seed << ',' << (m.settled() ? 1 : 0) << ','
           << (m.settling_time ? format_double(*m.settling_time) : "") << ',' << format_double(m.overshoot) << ','
           << format_double(m.ise) << ',' << format_double(m.post_settle_rms) << ',' << run.undefined_outputs << ','
           << (run.aborted ? 1 : 0) << '\n';
    }
}

void write_summary_csv(std::ostream& os, const ComparisonReport& r) {
    os << "variant,metric,mean,std,count\n";
    for (const auto& name : r.variants) {
        for (const auto& metric : metric_names()) {
            const auto& s = r.summaries.at(name).at(metric);
            os << name << ',' << metric << ',' << csv_value(s.mean) << ',' << csv_value(s.stddev) << ',' << s.count
               << '\n';
        }
    }
}

void write_deltas_csv(std::ostream& os, const ComparisonReport& r) {
    os << "variant,reference,metric,delta\n";
    for (std::size_t i = 0; i < r.variants.size(); ++i) {
        for (std::size_t j = 0; j < r.variants.size(); ++j) {
            if (i == j) {
                continue;
            }
            for (const auto& metric : metric_names()) {
                const double d = claim_statistic(r, r.variants[i], metric) - claim_statistic(r, r.variants[j], metric);
                os << r.variants[i] << ',' << r.variants[j] << ',' << metric << ',' << csv_value(d) << '\n';
            }
        }
    }
}

void write_text_report(std::ostream& os, const ComparisonReport& r) {
    os << "scenario: " << r.scenario << "\n\n";
    for (const auto& name : r.variants) {
        std::size_t runs = 0;
        std::size_t unsettled = 0;
        for (const auto& run : r.runs) {
            if (run.variant == name) {
                ++runs;
                unsettled += run.metrics.settled() ? 0 : 1;
            }
        }
        os << name << " (" << runs << " runs, " << unsettled << " unsettled)\n";
        for (const auto& metric : metric_names()) {
            const auto& s = r.summaries.at(name).at(metric);
            os << "  " << metric << ": mean " << s.mean << "  std " << s.stddev << "\n";
        }
    }
    if (r.variants.size() > 1) {
        os << "\ndeltas (variant - reference, means):\n";
        std::ostringstream d;
        write_deltas_csv(d, r);
        std::istringstream lines(d.str());
        std::string line;
        std::getline(lines, line);
        while (std::getline(lines, line)) {
            os << "  " << line << "\n";
        }
    }
    if (!r.claims.empty()) {
        os << "\nclaims:\n";
        for (const auto& c : r.claims) {
            os << "  [" << (c.passed ? "PASS" : "FAIL") << "] mean " << c.claim.metric << ": " << c.claim.variant
               << " " << c.variant_value << " <= " << c.claim.reference << " " << c.reference_value << "\n";
        }
    }
    for (const auto& name : r.failed_variants) {
        os << "\nvariant " << name << " FAILED (a run aborted)\n";
    }
    os << "\nresult: " << (r.passed() ? "PASS" : "FAIL") << "\n";
}

void write_gnuplot(std::ostream& os, const std::string& title,
                   const std::vector<std::pair<std::string, std::string>>& label_and_file) {
    os << "set datafile separator ','\n"
       << "set key autotitle columnhead\n"
       << "set title '" << title << "'\n"
       << "set xlabel 't (s)'\n"
       << "set ylabel 'y (rad)'\n"
       << "set grid\n"
       << "plot ";
    for (std::size_t i = 0; i < label_and_file.size(); ++i) {
        os << (i ? ", \\\n     " : "") << "'" << label_and_file[i].second << "' using 1:2 with lines title '"
           << label_and_file[i].first << "'";
    }
    os << "\npause mouse close\n";
}

}  // namespace it2fuzzy::experiment
