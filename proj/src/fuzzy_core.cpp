#include "it2fuzzy/fuzzy_core.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace it2fuzzy {

LinguisticVariable::LinguisticVariable(std::string name, Universe universe, std::vector<Term> terms)
    : name_(std::move(name)), universe_(universe), terms_(std::move(terms)) {
    if (!(universe_.lo < universe_.hi)) {
        throw std::invalid_argument("variable '" + name_ + "': universe requires lo < hi");
    }
    std::set<std::string> seen;
    for (const auto& term : terms_) {
        if (!seen.insert(term.label).second) {
            throw std::invalid_argument("variable '" + name_ + "': duplicate term label '" + term.label + "'");
        }
        if (term.mf.support_lo() < universe_.lo || term.mf.support_hi() > universe_.hi) {
            throw std::invalid_argument("variable '" + name_ + "': term '" + term.label +
                                        "' has vertices outside the universe");
        }
    }
}

std::optional<std::size_t> LinguisticVariable::find(const std::string& label) const {
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (terms_[i].label == label) {
            return i;
        }
    }
    return std::nullopt;
}

RuleBase::RuleBase(std::vector<Rule> rules) : rules_(std::move(rules)) {
    std::set<std::vector<std::string>> seen;
    for (const auto& rule : rules_) {
        if (!seen.insert(rule.antecedent).second) {
            std::string key;
            for (const auto& label : rule.antecedent) {
                key += (key.empty() ? "" : ",") + label;
            }
            throw std::invalid_argument("duplicate rule antecedent (" + key + ")");
        }
    }
}

SampledMF SampledMF::sample(const PiecewiseLinearMF& mf, const Universe& u, std::size_t grid_size) {
    if (grid_size < 2) {
        throw std::invalid_argument("grid_size must be >= 2");
    }
    SampledMF s{u, std::vector<double>(grid_size)};
    for (std::size_t i = 0; i < grid_size; ++i) {
        s.mu[i] = mf(s.x(i));
    }
    return s;
}

T1System::T1System(std::vector<LinguisticVariable> inputs, LinguisticVariable output, RuleBase rulebase,
                   std::size_t grid_size)
    : inputs_(std::move(inputs)), output_(std::move(output)), rulebase_(std::move(rulebase)), grid_size_(grid_size) {
    if (grid_size_ < 2) {
        throw std::invalid_argument("grid_size must be >= 2");
    }
    if (inputs_.empty()) {
        throw std::invalid_argument("system needs at least one input variable");
    }
    const auto rules = rulebase_.rules();
    for (std::size_t r = 0; r < rules.size(); ++r) {
        const Rule& rule = rules[r];
        if (rule.antecedent.size() != inputs_.size()) {
            throw std::invalid_argument("rule " + std::to_string(r) + ": antecedent arity " +
                                        std::to_string(rule.antecedent.size()) + " != " +
                                        std::to_string(inputs_.size()) + " inputs");
        }
        std::vector<std::size_t> idx;
        idx.reserve(inputs_.size());
        for (std::size_t k = 0; k < inputs_.size(); ++k) {
            auto t = inputs_[k].find(rule.antecedent[k]);
            if (!t) {
                throw std::invalid_argument("rule " + std::to_string(r) + ": unknown label '" + rule.antecedent[k] +
                                            "' for input '" + inputs_[k].name() + "'");
            }
            idx.push_back(*t);
        }
        auto c = output_.find(rule.consequent);
        if (!c) {
            throw std::invalid_argument("rule " + std::to_string(r) + ": unknown consequent label '" +
                                        rule.consequent + "' for output '" + output_.name() + "'");
        }
        antecedent_idx_.push_back(std::move(idx));
        consequent_idx_.push_back(*c);
    }
    for (const auto& term : output_.terms()) {
        consequent_samples_.push_back(SampledMF::sample(term.mf, output_.universe(), grid_size_).mu);
    }
}

std::vector<double> term_degrees(const LinguisticVariable& var, double x) {
    std::vector<double> out;
    out.reserve(var.terms().size());
    for (const auto& term : var.terms()) {
        out.push_back(term.mf(x));
    }
    return out;
}

std::map<std::string, double> fuzzify(const LinguisticVariable& var, double x) {
    std::map<std::string, double> out;
    for (const auto& term : var.terms()) {
        out[term.label] = term.mf(x);
    }
    return out;
}

namespace {

std::vector<double> strengths_by_rule(const T1System& sys, std::span<const double> inputs) {
    if (inputs.size() != sys.inputs().size()) {
        throw std::invalid_argument("expected " + std::to_string(sys.inputs().size()) + " inputs, got " +
                                    std::to_string(inputs.size()));
    }
    std::vector<std::vector<double>> degrees;
    degrees.reserve(inputs.size());
    for (std::size_t k = 0; k < inputs.size(); ++k) {
        degrees.push_back(term_degrees(sys.inputs()[k], inputs[k]));
    }
    std::vector<double> strengths(sys.rulebase().size());
    for (std::size_t r = 0; r < strengths.size(); ++r) {
        const auto terms = sys.antecedent_terms(r);
        double s = 1.0;
        for (std::size_t k = 0; k < terms.size(); ++k) {
            s = std::min(s, degrees[k][terms[k]]);
        }
        strengths[r] = s;
    }
    return strengths;
}

}  // namespace

std::vector<RuleStrength> fire_strengths(const T1System& sys, std::span<const double> inputs) {
    const auto strengths = strengths_by_rule(sys, inputs);
    std::vector<RuleStrength> out;
    out.reserve(strengths.size());
    for (std::size_t r = 0; r < strengths.size(); ++r) {
        out.push_back({r, strengths[r]});
    }
    return out;
}

SampledMF aggregate(const T1System& sys, std::span<const double> strengths) {
    if (strengths.size() != sys.rulebase().size()) {
        throw std::invalid_argument("expected one strength per rule");
    }
    SampledMF out{sys.output().universe(), std::vector<double>(sys.grid_size(), 0.0)};
    for (std::size_t r = 0; r < strengths.size(); ++r) {
        const double s = strengths[r];
        if (s <= 0.0) {
            continue;
        }
        const auto samples = sys.consequent_samples(sys.consequent_term(r));
        for (std::size_t i = 0; i < out.mu.size(); ++i) {
            out.mu[i] = std::max(out.mu[i], std::min(s, samples[i]));
        }
    }
    return out;
}

SampledMF infer(const T1System& sys, std::span<const double> inputs) {
    return aggregate(sys, strengths_by_rule(sys, inputs));
}

std::optional<Centroid> centroid(const SampledMF& s) {
    const std::size_t n = s.grid_size();
    if (n < 2) {
        return std::nullopt;
    }
    const double h = s.step();
    double area = 0.0;
    double moment = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
        area += w * s.mu[i];
        moment += w * s.x(i) * s.mu[i];
    }
    if (!(area > 0.0)) {
        return std::nullopt;
    }
    return Centroid{moment / area, area * h};
}

std::optional<double> t1_output(const T1System& sys, std::span<const double> inputs) {
    auto c = centroid(infer(sys, inputs));
    if (!c) {
        return std::nullopt;
    }
    return c->x;
}

}  // namespace it2fuzzy
