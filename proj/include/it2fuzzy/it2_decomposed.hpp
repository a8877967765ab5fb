#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "it2fuzzy/fuzzy_core.hpp"
#include "it2fuzzy/membership.hpp"

namespace it2fuzzy {

/// Interval type-2 set: the footprint of uncertainty between `lower` and
/// `upper`.
class IT2Set {
public:
    /// Throws std::invalid_argument if lower exceeds upper anywhere (checked
    /// on a 1001-point sweep of the joint support plus every vertex).
    IT2Set(std::string label, PiecewiseLinearMF lower, PiecewiseLinearMF upper);

    /// Degenerate set with lower == upper.
    static IT2Set from_t1(const Term& term);

    const std::string& label() const { return label_; }
    const PiecewiseLinearMF& lower() const { return lower_; }
    const PiecewiseLinearMF& upper() const { return upper_; }
    bool is_t1() const { return lower_ == upper_; }

    friend bool operator==(const IT2Set&, const IT2Set&) = default;

private:
    std::string label_;
    PiecewiseLinearMF lower_;
    PiecewiseLinearMF upper_;
};

class IT2Variable {
public:
    IT2Variable(std::string name, Universe universe, std::vector<IT2Set> terms);

    const std::string& name() const { return name_; }
    const Universe& universe() const { return universe_; }
    std::span<const IT2Set> terms() const { return terms_; }

    LinguisticVariable lower_variable() const;
    LinguisticVariable upper_variable() const;

    friend bool operator==(const IT2Variable&, const IT2Variable&) = default;

private:
    std::string name_;
    Universe universe_;
    std::vector<IT2Set> terms_;
};

/// An interval type-2 system split into two type-1 Mamdani systems sharing
/// one rule base: one fuzzifies with every upper MF, the other with every
/// lower MF.
class DecomposedSystem {
public:
    /// Throws std::invalid_argument unless both paths share rules, grid,
    /// output universe and term labels, and every lower-path term lies under
    /// its upper-path counterpart.
    DecomposedSystem(T1System upper_path, T1System lower_path);

    const T1System& upper_path() const { return upper_; }
    const T1System& lower_path() const { return lower_; }

private:
    T1System upper_;
    T1System lower_;
};

struct PathOutputs {
    SampledMF upper;
    SampledMF lower;
};

/// Geometric FOU centroid, with A_U and A_L the areas under the upper and
/// lower aggregates:
///
///     y = (c_U * A_U - c_L * A_L) / (A_U - A_L)
///
/// The lower area enters with negative sign. c_lower is empty when A_L == 0.
struct CombinerResult {
    double c_upper = 0.0;
    std::optional<double> c_lower;
    double a_upper = 0.0;
    double a_lower = 0.0;
    double y = 0.0;
};

/// Widen (upper) and narrow (lower) every term's support by `delta` on each
/// side, apex fixed. Shoulders move only their interior foot. Upper MFs that
/// would leave the universe are truncated at its edge; a lower MF whose
/// support collapses becomes all-zero. Terms must be triangles or shoulders.
IT2Variable blur_variable(const LinguisticVariable& var, double delta);

/// Single-term form of blur_variable.
IT2Set blur_term(const Term& term, const Universe& u, double delta);

DecomposedSystem decompose(std::span<const IT2Variable> inputs, const LinguisticVariable& output,
                           const RuleBase& rb, std::size_t grid_size = kDefaultGridSize);

/// IT2 consequents: the upper path uses upper output MFs, the lower path the
/// lower ones.
DecomposedSystem decompose(std::span<const IT2Variable> inputs, const IT2Variable& output, const RuleBase& rb,
                           std::size_t grid_size = kDefaultGridSize);

/// Runs both inference paths. Throws std::logic_error if the lower aggregate
/// ever exceeds the upper one.
PathOutputs evaluate_paths(const DecomposedSystem& d, std::span<const double> inputs);

/// nullopt when A_U == 0. When A_U - A_L < 1e-12 * span the sets are treated
/// as identical and y = c_U.
std::optional<CombinerResult> combine_centroid(const SampledMF& upper, const SampledMF& lower);

std::optional<double> it2_output(const DecomposedSystem& d, std::span<const double> inputs);

}  // namespace it2fuzzy
