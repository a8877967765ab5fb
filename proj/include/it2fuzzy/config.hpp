#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "it2fuzzy/fuzzy_core.hpp"
#include "it2fuzzy/it2_decomposed.hpp"
#include "it2fuzzy/pendulum.hpp"

// JSON system/simulation config. Schema (all numbers are JSON numbers):
//
//   {
//     "grid_size": 1001,
//     "inputs": [ <variable>, ... ],
//     "output": <variable>,
//     "rules": { "table": [["P","P","Z"], ...] }          two inputs only:
//                                                         row = input 0 term,
//                                                         column = input 1 term
//            | { "list": [ {"if": ["N","Z"], "then": "P"}, ... ] },
//     "plant": { "g": 9.8 },
//     "simulation": { "dt", "duration", "theta0", "theta_dot0",
//                     "noise_sigma", "seed", "saturation", "band" }
//   }
//
//   <variable> = { "name": "error", "universe": [lo, hi], "terms": [<term>, ...] }
//   <term>     = { "label": "N", "vertices": [[x, mu], ...] }             type-1
//              | { "label": "N", "base": [[x, mu], ...], "delta": d }    blurred
//              | { "label": "N", "lower": [[x, mu], ...], "upper": [...] }
//
// Only "inputs", "output" and "rules" are required. Unknown keys are errors.

namespace it2fuzzy::config {

/// Raised for any schema or semantic problem; key() is the JSON path of the
/// offending entry, e.g. "inputs[0].terms[2].vertices".
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& message)
        : std::runtime_error(key + ": " + message), key_(std::move(key)) {}
    const std::string& key() const { return key_; }

private:
    std::string key_;
};

struct TermSpec {
    enum class Form { Vertices, Blur, Interval };

    std::string label;
    Form form = Form::Vertices;
    std::vector<Vertex> vertices;  // Vertices: the MF; Blur: the base MF
    double delta = 0.0;            // Blur only
    std::vector<Vertex> lower;     // Interval only
    std::vector<Vertex> upper;     // Interval only

    friend bool operator==(const TermSpec&, const TermSpec&) = default;
};

struct VariableSpec {
    std::string name;
    Universe universe;
    std::vector<TermSpec> terms;

    friend bool operator==(const VariableSpec&, const VariableSpec&) = default;
};

struct SimSettings {
    double dt = 1e-3;
    double duration = 5.0;
    double theta0 = 0.1;
    double theta_dot0 = 0.0;
    double noise_sigma = 0.0;
    std::uint64_t seed = 1;
    double saturation = 0.78539816339744830962;
    double band = 0.005;

    friend bool operator==(const SimSettings&, const SimSettings&) = default;
};

struct SystemSpec {
    std::size_t grid_size = kDefaultGridSize;
    std::vector<VariableSpec> inputs;
    VariableSpec output;
    std::vector<Rule> rules;
    bool rules_as_table = false;
    PlantParams plant;
    SimSettings simulation;

    friend bool operator==(const SystemSpec&, const SystemSpec&) = default;
};

SystemSpec parse(const std::string& text);
SystemSpec load(const std::filesystem::path& path);

/// Canonical JSON text; parse(dump(s)) == s and doubles round-trip exactly.
std::string dump(const SystemSpec& spec);

/// Type-1 view of a variable: vertex terms as-is, blurred terms by their base.
/// Throws ConfigError for interval terms, which have no type-1 view.
LinguisticVariable t1_variable(const VariableSpec& var, const std::string& key);
IT2Variable it2_variable(const VariableSpec& var, const std::string& key);

T1System build_t1(const SystemSpec& spec);
DecomposedSystem build_it2(const SystemSpec& spec);

/// Simulation settings with the given controller attached.
SimConfig sim_config(const SystemSpec& spec, std::shared_ptr<const FuzzyController> controller);

}  // namespace it2fuzzy::config
