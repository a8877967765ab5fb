#include "it2fuzzy/it2_decomposed.hpp"

#include <algorithm>
#include <stdexcept>

namespace it2fuzzy {

namespace {

constexpr std::size_t kOrderingSweep = 1001;
constexpr double kOrderingSlack = 1e-12;

bool lower_under_upper(const PiecewiseLinearMF& lower, const PiecewiseLinearMF& upper) {
    const double lo = std::min(lower.support_lo(), upper.support_lo());
    const double hi = std::max(lower.support_hi(), upper.support_hi());
    auto ok = [&](double x) { return lower(x) <= upper(x) + kOrderingSlack; };
    for (std::size_t i = 0; i < kOrderingSweep; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(kOrderingSweep - 1);
        if (!ok(x)) {
            return false;
        }
    }
    for (const auto& v : lower.vertices()) {
        if (!ok(v.x)) {
            return false;
        }
    }
    for (const auto& v : upper.vertices()) {
        if (!ok(v.x)) {
            return false;
        }
    }
    return true;
}

// Restrict a piecewise-linear shape to [lo, hi], inserting edge vertices
// where the shape crosses the universe boundary.
PiecewiseLinearMF truncate_to(const std::vector<Vertex>& shape, const Universe& u) {
    const PiecewiseLinearMF full(shape);
    std::vector<Vertex> out;
    if (full.support_lo() < u.lo) {
        out.push_back({u.lo, full(u.lo)});
    }
    for (const auto& v : shape) {
        if (v.x >= u.lo && v.x <= u.hi) {
            out.push_back(v);
        }
    }
    if (full.support_hi() > u.hi) {
        out.push_back({u.hi, full(u.hi)});
    }
    return PiecewiseLinearMF(std::move(out));
}

LinguisticVariable side(const IT2Variable& var, bool upper) {
    std::vector<Term> terms;
    for (const auto& t : var.terms()) {
        terms.push_back({t.label(), upper ? t.upper() : t.lower()});
    }
    return LinguisticVariable(var.name(), var.universe(), std::move(terms));
}

void check_ordering(const SampledMF& upper, const SampledMF& lower) {
    for (std::size_t i = 0; i < upper.mu.size(); ++i) {
        if (lower.mu[i] > upper.mu[i]) {
            throw std::logic_error("lower aggregate exceeds upper aggregate at grid index " + std::to_string(i));
        }
    }
}

}  // namespace

IT2Set::IT2Set(std::string label, PiecewiseLinearMF lower, PiecewiseLinearMF upper)
    : label_(std::move(label)), lower_(std::move(lower)), upper_(std::move(upper)) {
    if (!lower_under_upper(lower_, upper_)) {
        throw std::invalid_argument("IT2 set '" + label_ + "': lower MF exceeds upper MF");
    }
}

IT2Set IT2Set::from_t1(const Term& term) { return IT2Set(term.label, term.mf, term.mf); }

IT2Variable::IT2Variable(std::string name, Universe universe, std::vector<IT2Set> terms)
    : name_(std::move(name)), universe_(universe), terms_(std::move(terms)) {
    // Constructing both sides runs the LinguisticVariable checks.
    (void)lower_variable();
    (void)upper_variable();
}

LinguisticVariable IT2Variable::lower_variable() const { return side(*this, false); }
LinguisticVariable IT2Variable::upper_variable() const { return side(*this, true); }

DecomposedSystem::DecomposedSystem(T1System upper_path, T1System lower_path)
    : upper_(std::move(upper_path)), lower_(std::move(lower_path)) {
    if (!(upper_.rulebase() == lower_.rulebase())) {
        throw std::invalid_argument("decomposed paths must share one rule base");
    }
    if (upper_.grid_size() != lower_.grid_size()) {
        throw std::invalid_argument("decomposed paths must share one grid size");
    }
    if (!(upper_.output().universe() == lower_.output().universe())) {
        throw std::invalid_argument("decomposed paths must share one output universe");
    }
    if (upper_.inputs().size() != lower_.inputs().size()) {
        throw std::invalid_argument("decomposed paths must have the same inputs");
    }
    auto check_pair = [](const LinguisticVariable& up, const LinguisticVariable& low) {
        if (up.terms().size() != low.terms().size() || !(up.universe() == low.universe())) {
            throw std::invalid_argument("variable '" + up.name() + "' differs between paths");
        }
        for (std::size_t t = 0; t < up.terms().size(); ++t) {
            const auto& ut = up.terms()[t];
            const auto& lt = low.terms()[t];
            if (ut.label != lt.label) {
                throw std::invalid_argument("variable '" + up.name() + "': term labels differ between paths");
            }
            if (!lower_under_upper(lt.mf, ut.mf)) {
                throw std::invalid_argument("variable '" + up.name() + "': lower term '" + lt.label +
                                            "' exceeds its upper term");
            }
        }
    };
    for (std::size_t k = 0; k < upper_.inputs().size(); ++k) {
        check_pair(upper_.inputs()[k], lower_.inputs()[k]);
    }
    check_pair(upper_.output(), lower_.output());
}

IT2Set blur_term(const Term& term, const Universe& u, double delta) {
    if (!(delta >= 0.0)) {
        throw std::invalid_argument("blur delta must be >= 0");
    }
    const auto v = term.mf.vertices();
    const bool triangle = v.size() == 3 && v[0].mu == 0.0 && v[1].mu == 1.0 && v[2].mu == 0.0;
    const bool left_shoulder = v.size() == 2 && v[0].mu == 1.0 && v[1].mu == 0.0;
    const bool right_shoulder = v.size() == 2 && v[0].mu == 0.0 && v[1].mu == 1.0;

    if (triangle) {
        const double a = v[0].x, b = v[1].x, c = v[2].x;
        auto upper = truncate_to({{a - delta, 0.0}, {b, 1.0}, {c + delta, 0.0}}, u);
        // Narrowing past the apex on either side leaves no triangle.
        auto lower = (a + delta < b && c - delta > b)
                         ? PiecewiseLinearMF({{a + delta, 0.0}, {b, 1.0}, {c - delta, 0.0}})
                         : PiecewiseLinearMF::zero(u);
        return IT2Set(term.label, std::move(lower), std::move(upper));
    }
    if (left_shoulder) {
        const double a = v[0].x, c = v[1].x;
        auto upper = truncate_to({{a, 1.0}, {c + delta, 0.0}}, u);
        auto lower = c - delta > a ? PiecewiseLinearMF({{a, 1.0}, {c - delta, 0.0}}) : PiecewiseLinearMF::zero(u);
        return IT2Set(term.label, std::move(lower), std::move(upper));
    }
    if (right_shoulder) {
        const double a = v[0].x, c = v[1].x;
        auto upper = truncate_to({{a - delta, 0.0}, {c, 1.0}}, u);
        auto lower = a + delta < c ? PiecewiseLinearMF({{a + delta, 0.0}, {c, 1.0}}) : PiecewiseLinearMF::zero(u);
        return IT2Set(term.label, std::move(lower), std::move(upper));
    }
    throw std::invalid_argument("term '" + term.label + "' is not a triangle or shoulder; cannot blur");
}

IT2Variable blur_variable(const LinguisticVariable& var, double delta) {
    if (!(delta >= 0.0)) {
        throw std::invalid_argument("blur delta must be >= 0");
    }
    std::vector<IT2Set> terms;
    for (const auto& term : var.terms()) {
        terms.push_back(blur_term(term, var.universe(), delta));
    }
    return IT2Variable(var.name(), var.universe(), std::move(terms));
}

DecomposedSystem decompose(std::span<const IT2Variable> inputs, const LinguisticVariable& output,
                           const RuleBase& rb, std::size_t grid_size) {
    std::vector<IT2Set> out_terms;
    for (const auto& term : output.terms()) {
        out_terms.push_back(IT2Set::from_t1(term));
    }
    return decompose(inputs, IT2Variable(output.name(), output.universe(), std::move(out_terms)), rb, grid_size);
}

DecomposedSystem decompose(std::span<const IT2Variable> inputs, const IT2Variable& output, const RuleBase& rb,
                           std::size_t grid_size) {
    std::vector<LinguisticVariable> upper_inputs;
    std::vector<LinguisticVariable> lower_inputs;
    for (const auto& var : inputs) {
        upper_inputs.push_back(var.upper_variable());
        lower_inputs.push_back(var.lower_variable());
    }
    T1System upper(std::move(upper_inputs), output.upper_variable(), rb, grid_size);
    T1System lower(std::move(lower_inputs), output.lower_variable(), rb, grid_size);
    return DecomposedSystem(std::move(upper), std::move(lower));
}

PathOutputs evaluate_paths(const DecomposedSystem& d, std::span<const double> inputs) {
    PathOutputs out{infer(d.upper_path(), inputs), infer(d.lower_path(), inputs)};
    check_ordering(out.upper, out.lower);
    return out;
}

std::optional<CombinerResult> combine_centroid(const SampledMF& upper, const SampledMF& lower) {
    if (!(upper.universe == lower.universe) || upper.grid_size() != lower.grid_size()) {
        throw std::invalid_argument("upper and lower aggregates must share universe and grid");
    }
    const auto cu = centroid(upper);
    if (!cu) {
        return std::nullopt;
    }
    const auto cl = centroid(lower);

    CombinerResult r;
    r.c_upper = cu->x;
    r.a_upper = cu->area;
    if (cl) {
        r.c_lower = cl->x;
        r.a_lower = cl->area;
    }
    const double denom = r.a_upper - r.a_lower;
    if (!cl) {
        r.y = r.c_upper;
    } else if (denom < 1e-12 * upper.universe.span()) {
        r.y = r.c_upper;
    } else {
        r.y = (r.c_upper * r.a_upper - *r.c_lower * r.a_lower) / denom;
    }
    return r;
}

std::optional<double> it2_output(const DecomposedSystem& d, std::span<const double> inputs) {
    const auto paths = evaluate_paths(d, inputs);
    const auto r = combine_centroid(paths.upper, paths.lower);
    if (!r) {
        return std::nullopt;
    }
    return r->y;
}

}  // namespace it2fuzzy
