#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "it2fuzzy/membership.hpp"

namespace it2fuzzy {

inline constexpr std::size_t kDefaultGridSize = 1001;

struct Term {
    std::string label;
    PiecewiseLinearMF mf;

    friend bool operator==(const Term&, const Term&) = default;
};

class LinguisticVariable {
public:
    /// Throws std::invalid_argument on lo >= hi, duplicate labels or a term
    /// whose vertices leave the universe.
    LinguisticVariable(std::string name, Universe universe, std::vector<Term> terms);

    const std::string& name() const { return name_; }
    const Universe& universe() const { return universe_; }
    std::span<const Term> terms() const { return terms_; }

    /// Index of `label`, or nullopt.
    std::optional<std::size_t> find(const std::string& label) const;

    friend bool operator==(const LinguisticVariable&, const LinguisticVariable&) = default;

private:
    std::string name_;
    Universe universe_;
    std::vector<Term> terms_;
};

struct Rule {
    std::vector<std::string> antecedent;  // one label per input variable
    std::string consequent;

    friend bool operator==(const Rule&, const Rule&) = default;
};

class RuleBase {
public:
    RuleBase() = default;
    /// Throws std::invalid_argument on duplicate antecedent tuples.
    explicit RuleBase(std::vector<Rule> rules);

    std::span<const Rule> rules() const { return rules_; }
    std::size_t size() const { return rules_.size(); }

    friend bool operator==(const RuleBase&, const RuleBase&) = default;

private:
    std::vector<Rule> rules_;
};

/// Membership function sampled on a uniform grid over its universe.
struct SampledMF {
    Universe universe;
    std::vector<double> mu;

    std::size_t grid_size() const { return mu.size(); }
    double step() const { return universe.span() / static_cast<double>(mu.size() - 1); }
    double x(std::size_t i) const { return universe.lo + static_cast<double>(i) * step(); }

    static SampledMF sample(const PiecewiseLinearMF& mf, const Universe& u, std::size_t grid_size);

    friend bool operator==(const SampledMF&, const SampledMF&) = default;
};

struct RuleStrength {
    std::size_t rule_index = 0;
    double strength = 0.0;
};

/// Mamdani system: min AND, min implication, max aggregation.
class T1System {
public:
    /// Validates rule arity and resolves every label; throws
    /// std::invalid_argument naming the first offending rule.
    T1System(std::vector<LinguisticVariable> inputs, LinguisticVariable output, RuleBase rulebase,
             std::size_t grid_size = kDefaultGridSize);

    std::span<const LinguisticVariable> inputs() const { return inputs_; }
    const LinguisticVariable& output() const { return output_; }
    const RuleBase& rulebase() const { return rulebase_; }
    std::size_t grid_size() const { return grid_size_; }

    /// Term indices for rule r: antecedent (one per input) and consequent.
    std::span<const std::size_t> antecedent_terms(std::size_t r) const { return antecedent_idx_[r]; }
    std::size_t consequent_term(std::size_t r) const { return consequent_idx_[r]; }

    /// Output term t sampled on the output grid.
    std::span<const double> consequent_samples(std::size_t t) const { return consequent_samples_[t]; }

private:
    std::vector<LinguisticVariable> inputs_;
    LinguisticVariable output_;
    RuleBase rulebase_;
    std::size_t grid_size_;

    std::vector<std::vector<std::size_t>> antecedent_idx_;
    std::vector<std::size_t> consequent_idx_;
    std::vector<std::vector<double>> consequent_samples_;
};

std::map<std::string, double> fuzzify(const LinguisticVariable& var, double x);

/// Degrees for every term of `var`, in term order.
std::vector<double> term_degrees(const LinguisticVariable& var, double x);

/// Throws std::invalid_argument on arity mismatch.
std::vector<RuleStrength> fire_strengths(const T1System& sys, std::span<const double> inputs);

/// Clip each consequent at its rule strength and take the pointwise max.
/// `strengths` is indexed by rule.
SampledMF aggregate(const T1System& sys, std::span<const double> strengths);

SampledMF infer(const T1System& sys, std::span<const double> inputs);

struct Centroid {
    double x = 0.0;
    double area = 0.0;
};

/// Trapezoidal centroid and area. nullopt signals an undefined centroid
/// (zero area).
std::optional<Centroid> centroid(const SampledMF& s);

/// infer + centroid; nullopt when no rule fires.
std::optional<double> t1_output(const T1System& sys, std::span<const double> inputs);

}  // namespace it2fuzzy
