#include "it2fuzzy/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace it2fuzzy::config {

using nlohmann::json;

namespace {

std::string at(const std::string& key, const std::string& child) { return key.empty() ? child : key + "." + child; }
std::string at(const std::string& key, std::size_t i) { return key + "[" + std::to_string(i) + "]"; }

void reject_unknown(const json& obj, const std::string& key, std::initializer_list<const char*> allowed) {
    for (const auto& item : obj.items()) {
        bool ok = false;
        for (const char* a : allowed) {
            ok = ok || item.key() == a;
        }
        if (!ok) {
            throw ConfigError(at(key, item.key()), "unknown key");
        }
    }
}

const json& require(const json& obj, const char* name, const std::string& key) {
    auto it = obj.find(name);
    if (it == obj.end()) {
        throw ConfigError(at(key, name), "missing required key");
    }
    return *it;
}

double number(const json& j, const std::string& key) {
    if (!j.is_number()) {
        throw ConfigError(key, "expected a number");
    }
    return j.get<double>();
}

std::string label(const json& j, const std::string& key) {
    if (!j.is_string() || j.get<std::string>().empty()) {
        throw ConfigError(key, "expected a non-empty label string");
    }
    return j.get<std::string>();
}

std::vector<Vertex> vertices(const json& j, const std::string& key) {
    if (!j.is_array()) {
        throw ConfigError(key, "expected an array of [x, mu] pairs");
    }
    std::vector<Vertex> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const auto& p = j[i];
        if (!p.is_array() || p.size() != 2) {
            throw ConfigError(at(key, i), "expected [x, mu]");
        }
        out.push_back({number(p[0], at(at(key, i), 0)), number(p[1], at(at(key, i), 1))});
    }
    try {
        (void)PiecewiseLinearMF(out);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(key, e.what());
    }
    return out;
}

TermSpec parse_term(const json& j, const std::string& key) {
    if (!j.is_object()) {
        throw ConfigError(key, "expected an object");
    }
    reject_unknown(j, key, {"label", "vertices", "base", "delta", "lower", "upper"});
    TermSpec t;
    t.label = label(require(j, "label", key), at(key, "label"));
    const bool has_vertices = j.contains("vertices");
    const bool has_base = j.contains("base") || j.contains("delta");
    const bool has_interval = j.contains("lower") || j.contains("upper");
    if (has_vertices + has_base + has_interval != 1) {
        throw ConfigError(key, "term needs exactly one of 'vertices', 'base'+'delta' or 'lower'+'upper'");
    }
    if (has_vertices) {
        t.form = TermSpec::Form::Vertices;
        t.vertices = vertices(j["vertices"], at(key, "vertices"));
    } else if (has_base) {
        t.form = TermSpec::Form::Blur;
        t.vertices = vertices(require(j, "base", key), at(key, "base"));
        t.delta = number(require(j, "delta", key), at(key, "delta"));
        if (!(t.delta >= 0.0)) {
            throw ConfigError(at(key, "delta"), "must be >= 0");
        }
    } else {
        t.form = TermSpec::Form::Interval;
        t.lower = vertices(require(j, "lower", key), at(key, "lower"));
        t.upper = vertices(require(j, "upper", key), at(key, "upper"));
    }
    return t;
}

VariableSpec parse_variable(const json& j, const std::string& key) {
    if (!j.is_object()) {
        throw ConfigError(key, "expected an object");
    }
    reject_unknown(j, key, {"name", "universe", "terms"});
    VariableSpec v;
    v.name = label(require(j, "name", key), at(key, "name"));
    const auto& u = require(j, "universe", key);
    if (!u.is_array() || u.size() != 2) {
        throw ConfigError(at(key, "universe"), "expected [lo, hi]");
    }
    v.universe = {number(u[0], at(at(key, "universe"), 0)), number(u[1], at(at(key, "universe"), 1))};
    if (!(v.universe.lo < v.universe.hi)) {
        throw ConfigError(at(key, "universe"), "requires lo < hi");
    }
    const auto& terms = require(j, "terms", key);
    if (!terms.is_array() || terms.empty()) {
        throw ConfigError(at(key, "terms"), "expected a non-empty array");
    }
    std::set<std::string> seen;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        auto t = parse_term(terms[i], at(at(key, "terms"), i));
        if (!seen.insert(t.label).second) {
            throw ConfigError(at(at(at(key, "terms"), i), "label"), "duplicate label '" + t.label + "'");
        }
        v.terms.push_back(std::move(t));
    }
    return v;
}

std::vector<std::string> term_labels(const VariableSpec& v) {
    std::vector<std::string> out;
    for (const auto& t : v.terms) {
        out.push_back(t.label);
    }
    return out;
}

std::vector<Rule> parse_rules(const json& j, const SystemSpec& spec, bool& as_table) {
    const std::string key = "rules";
    if (!j.is_object()) {
        throw ConfigError(key, "expected an object");
    }
    reject_unknown(j, key, {"table", "list"});
    if (j.contains("table") == j.contains("list")) {
        throw ConfigError(key, "needs exactly one of 'table' or 'list'");
    }
    std::vector<Rule> rules;
    if (j.contains("table")) {
        as_table = true;
        const std::string tkey = "rules.table";
        if (spec.inputs.size() != 2) {
            throw ConfigError(tkey, "a rule table needs exactly 2 inputs");
        }
        const auto rows = term_labels(spec.inputs[0]);
        const auto cols = term_labels(spec.inputs[1]);
        const auto& table = j["table"];
        if (!table.is_array() || table.size() != rows.size()) {
            throw ConfigError(tkey, "expected " + std::to_string(rows.size()) + " rows (one per '" +
                                        spec.inputs[0].name + "' term)");
        }
        for (std::size_t r = 0; r < rows.size(); ++r) {
            const auto& row = table[r];
            if (!row.is_array() || row.size() != cols.size()) {
                throw ConfigError(at(tkey, r), "expected " + std::to_string(cols.size()) + " entries (one per '" +
                                                   spec.inputs[1].name + "' term)");
            }
            for (std::size_t c = 0; c < cols.size(); ++c) {
                rules.push_back({{rows[r], cols[c]}, label(row[c], at(at(tkey, r), c))});
            }
        }
    } else {
        as_table = false;
        const std::string lkey = "rules.list";
        const auto& list = j["list"];
        if (!list.is_array()) {
            throw ConfigError(lkey, "expected an array");
        }
        for (std::size_t i = 0; i < list.size(); ++i) {
            const auto& item = list[i];
            const std::string ikey = at(lkey, i);
            if (!item.is_object()) {
                throw ConfigError(ikey, "expected an object");
            }
            reject_unknown(item, ikey, {"if", "then"});
            const auto& ante = require(item, "if", ikey);
            if (!ante.is_array()) {
                throw ConfigError(at(ikey, "if"), "expected an array of labels");
            }
            Rule rule;
            for (std::size_t k = 0; k < ante.size(); ++k) {
                rule.antecedent.push_back(label(ante[k], at(at(ikey, "if"), k)));
            }
            rule.consequent = label(require(item, "then", ikey), at(ikey, "then"));
            rules.push_back(std::move(rule));
        }
    }
    return rules;
}

void check_rules(const SystemSpec& spec) {
    std::set<std::vector<std::string>> seen;
    const std::string base = spec.rules_as_table ? "rules.table" : "rules.list";
    for (std::size_t i = 0; i < spec.rules.size(); ++i) {
        const Rule& rule = spec.rules[i];
        const std::string key = at(base, i);
        if (rule.antecedent.size() != spec.inputs.size()) {
            throw ConfigError(at(key, "if"), "expected " + std::to_string(spec.inputs.size()) + " labels");
        }
        for (std::size_t k = 0; k < rule.antecedent.size(); ++k) {
            const auto labels = term_labels(spec.inputs[k]);
            if (std::find(labels.begin(), labels.end(), rule.antecedent[k]) == labels.end()) {
                throw ConfigError(at(at(key, "if"), k), "unknown label '" + rule.antecedent[k] + "' for input '" +
                                                             spec.inputs[k].name + "'");
            }
        }
        const auto out_labels = term_labels(spec.output);
        if (std::find(out_labels.begin(), out_labels.end(), rule.consequent) == out_labels.end()) {
            throw ConfigError(at(key, "then"), "unknown output label '" + rule.consequent + "'");
        }
        if (!seen.insert(rule.antecedent).second) {
            throw ConfigError(key, "duplicate antecedent");
        }
    }
}

SimSettings parse_simulation(const json& j) {
    const std::string key = "simulation";
    if (!j.is_object()) {
        throw ConfigError(key, "expected an object");
    }
    reject_unknown(j, key,
                   {"dt", "duration", "theta0", "theta_dot0", "noise_sigma", "seed", "saturation", "band"});
    SimSettings s;
    auto opt = [&](const char* name, double& field) {
        if (j.contains(name)) {
            field = number(j[name], at(key, name));
        }
    };
    opt("dt", s.dt);
    opt("duration", s.duration);
    opt("theta0", s.theta0);
    opt("theta_dot0", s.theta_dot0);
    opt("noise_sigma", s.noise_sigma);
    opt("saturation", s.saturation);
    opt("band", s.band);
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) {
            throw ConfigError(at(key, "seed"), "expected a non-negative integer");
        }
        s.seed = j["seed"].get<std::uint64_t>();
    }
    if (!(s.dt > 0.0)) {
        throw ConfigError(at(key, "dt"), "must be > 0");
    }
    if (!(s.duration >= s.dt)) {
        throw ConfigError(at(key, "duration"), "must be >= dt");
    }
    if (!(s.noise_sigma >= 0.0)) {
        throw ConfigError(at(key, "noise_sigma"), "must be >= 0");
    }
    if (!(s.saturation > 0.0)) {
        throw ConfigError(at(key, "saturation"), "must be > 0");
    }
    if (!(s.band > 0.0)) {
        throw ConfigError(at(key, "band"), "must be > 0");
    }
    return s;
}

json dump_vertices(const std::vector<Vertex>& vs) {
    json arr = json::array();
    for (const auto& v : vs) {
        arr.push_back(json::array({v.x, v.mu}));
    }
    return arr;
}

json dump_variable(const VariableSpec& v) {
    json terms = json::array();
    for (const auto& t : v.terms) {
        json jt;
        jt["label"] = t.label;
        switch (t.form) {
            case TermSpec::Form::Vertices:
                jt["vertices"] = dump_vertices(t.vertices);
                break;
            case TermSpec::Form::Blur:
                jt["base"] = dump_vertices(t.vertices);
                jt["delta"] = t.delta;
                break;
            case TermSpec::Form::Interval:
                jt["lower"] = dump_vertices(t.lower);
                jt["upper"] = dump_vertices(t.upper);
                break;
        }
        terms.push_back(std::move(jt));
    }
    return json{{"name", v.name}, {"universe", json::array({v.universe.lo, v.universe.hi})}, {"terms", terms}};
}

template <typename F>
auto wrap(const std::string& key, F&& f) {
    try {
        return f();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ConfigError(key, e.what());
    }
}

}  // namespace

SystemSpec parse(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("<document>", e.what());
    }
    if (!root.is_object()) {
        throw ConfigError("<document>", "expected a JSON object");
    }
    reject_unknown(root, "", {"grid_size", "inputs", "output", "rules", "plant", "simulation"});

    SystemSpec spec;
    if (root.contains("grid_size")) {
        if (!root["grid_size"].is_number_unsigned() || root["grid_size"].get<std::size_t>() < 2) {
            throw ConfigError("grid_size", "expected an integer >= 2");
        }
        spec.grid_size = root["grid_size"].get<std::size_t>();
    }
    const auto& inputs = require(root, "inputs", "");
    if (!inputs.is_array() || inputs.empty()) {
        throw ConfigError("inputs", "expected a non-empty array");
    }
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        spec.inputs.push_back(parse_variable(inputs[i], at("inputs", i)));
    }
    spec.output = parse_variable(require(root, "output", ""), "output");
    spec.rules = parse_rules(require(root, "rules", ""), spec, spec.rules_as_table);
    check_rules(spec);
    if (root.contains("plant")) {
        const auto& p = root["plant"];
        if (!p.is_object()) {
            throw ConfigError("plant", "expected an object");
        }
        reject_unknown(p, "plant", {"g"});
        if (p.contains("g")) {
            spec.plant.g = number(p["g"], "plant.g");
            if (!(spec.plant.g > 0.0)) {
                throw ConfigError("plant.g", "must be > 0");
            }
        }
    }
    if (root.contains("simulation")) {
        spec.simulation = parse_simulation(root["simulation"]);
    }
    // Build both views once so semantic errors (vertices outside the
    // universe, FOU ordering) surface at load time.
    for (std::size_t i = 0; i < spec.inputs.size(); ++i) {
        (void)it2_variable(spec.inputs[i], at("inputs", i));
    }
    (void)it2_variable(spec.output, "output");
    return spec;
}

SystemSpec load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("<file>", "cannot open '" + path.string() + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

std::string dump(const SystemSpec& spec) {
    json root;
    root["grid_size"] = spec.grid_size;
    json inputs = json::array();
    for (const auto& v : spec.inputs) {
        inputs.push_back(dump_variable(v));
    }
    root["inputs"] = inputs;
    root["output"] = dump_variable(spec.output);
    if (spec.rules_as_table) {
        const std::size_t cols = spec.inputs.at(1).terms.size();
        json table = json::array();
        for (std::size_t i = 0; i < spec.rules.size(); ++i) {
            if (i % cols == 0) {
                table.push_back(json::array());
            }
            table.back().push_back(spec.rules[i].consequent);
        }
        root["rules"] = {{"table", table}};
    } else {
        json list = json::array();
        for (const auto& r : spec.rules) {
            list.push_back({{"if", r.antecedent}, {"then", r.consequent}});
        }
        root["rules"] = {{"list", list}};
    }
    root["plant"] = {{"g", spec.plant.g}};
    const auto& s = spec.simulation;
    root["simulation"] = {{"dt", s.dt},
                          {"duration", s.duration},
                          {"theta0", s.theta0},
                          {"theta_dot0", s.theta_dot0},
                          {"noise_sigma", s.noise_sigma},
                          {"seed", s.seed},
                          {"saturation", s.saturation},
                          {"band", s.band}};
    return root.dump(2) + "\n";
}

LinguisticVariable t1_variable(const VariableSpec& var, const std::string& key) {
    std::vector<Term> terms;
    for (std::size_t i = 0; i < var.terms.size(); ++i) {
        const auto& t = var.terms[i];
        if (t.form == TermSpec::Form::Interval) {
            throw ConfigError(at(at(key, "terms"), i),
                              "interval term has no type-1 view; use 'vertices' or 'base'+'delta'");
        }
        terms.push_back({t.label, wrap(at(at(key, "terms"), i), [&] { return PiecewiseLinearMF(t.vertices); })});
    }
    return wrap(key, [&] { return LinguisticVariable(var.name, var.universe, std::move(terms)); });
}

IT2Variable it2_variable(const VariableSpec& var, const std::string& key) {
    std::vector<IT2Set> terms;
    for (std::size_t i = 0; i < var.terms.size(); ++i) {
        const auto& t = var.terms[i];
        const std::string tkey = at(at(key, "terms"), i);
        terms.push_back(wrap(tkey, [&] {
            switch (t.form) {
                case TermSpec::Form::Vertices:
                    return IT2Set::from_t1({t.label, PiecewiseLinearMF(t.vertices)});
                case TermSpec::Form::Blur:
                    return blur_term({t.label, PiecewiseLinearMF(t.vertices)}, var.universe, t.delta);
                case TermSpec::Form::Interval:
                    break;
            }
            return IT2Set(t.label, PiecewiseLinearMF(t.lower), PiecewiseLinearMF(t.upper));
        }));
    }
    return wrap(key, [&] { return IT2Variable(var.name, var.universe, std::move(terms)); });
}

T1System build_t1(const SystemSpec& spec) {
    std::vector<LinguisticVariable> inputs;
    for (std::size_t i = 0; i < spec.inputs.size(); ++i) {
        inputs.push_back(t1_variable(spec.inputs[i], at("inputs", i)));
    }
    auto output = t1_variable(spec.output, "output");
    return wrap("rules", [&] {
        return T1System(std::move(inputs), std::move(output), RuleBase(spec.rules), spec.grid_size);
    });
}

DecomposedSystem build_it2(const SystemSpec& spec) {
    std::vector<IT2Variable> inputs;
    for (std::size_t i = 0; i < spec.inputs.size(); ++i) {
        inputs.push_back(it2_variable(spec.inputs[i], at("inputs", i)));
    }
    const auto output = it2_variable(spec.output, "output");
    return wrap("rules", [&] { return decompose(inputs, output, RuleBase(spec.rules), spec.grid_size); });
}

SimConfig sim_config(const SystemSpec& spec, std::shared_ptr<const FuzzyController> controller) {
    SimConfig cfg;
    const auto& s = spec.simulation;
    cfg.dt = s.dt;
    cfg.duration = s.duration;
    cfg.theta0 = s.theta0;
    cfg.theta_dot0 = s.theta_dot0;
    cfg.noise_sigma = s.noise_sigma;
    cfg.rng_seed = s.seed;
    cfg.saturation = s.saturation;
    cfg.plant = spec.plant;
    cfg.controller = std::move(controller);
    return cfg;
}

}  // namespace it2fuzzy::config
