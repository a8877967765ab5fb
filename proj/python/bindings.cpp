#include <pybind11/pybind11.h>
#include <pybind11/operators.h>
#include <pybind11/stl.h>

#include <sstream>

#include "it2fuzzy/config.hpp"
#include "it2fuzzy/fuzzy_core.hpp"
#include "it2fuzzy/it2_decomposed.hpp"
#include "it2fuzzy/pendulum.hpp"
#include "it2fuzzy/pendulum_controllers.hpp"
#include "it2fuzzy/reduction_oracle.hpp"

namespace py = pybind11;
using namespace it2fuzzy;

namespace {

template <typename T>
std::vector<T> to_vector(std::span<const T> s) {
    return {s.begin(), s.end()};
}

}  // namespace

PYBIND11_MODULE(it2fuzzy, m) {
    m.doc() = "Decomposed interval type-2 fuzzy systems and inverted-pendulum simulation";

    py::register_exception<config::ConfigError>(m, "ConfigError", PyExc_ValueError);

    py::class_<Universe>(m, "Universe")
        .def(py::init<double, double>(), py::arg("lo"), py::arg("hi"))
        .def_readwrite("lo", &Universe::lo)
        .def_readwrite("hi", &Universe::hi)
        .def("span", &Universe::span)
        .def("__repr__", [](const Universe& u) {
            std::ostringstream os;
            os << "Universe(" << u.lo << ", " << u.hi << ")";
            return os.str();
        });

    py::class_<PiecewiseLinearMF>(m, "PiecewiseLinearMF")
        .def(py::init([](const std::vector<std::pair<double, double>>& pts) {
                 std::vector<Vertex> v;
                 for (auto [x, mu] : pts) {
                     v.push_back({x, mu});
                 }
                 return PiecewiseLinearMF(std::move(v));
             }),
             py::arg("vertices"))
        .def_property_readonly("vertices",
                               [](const PiecewiseLinearMF& mf) {
                                   std::vector<std::pair<double, double>> out;
                                   for (const auto& v : mf.vertices()) {
                                       out.emplace_back(v.x, v.mu);
                                   }
                                   return out;
                               })
        .def("__call__", &PiecewiseLinearMF::operator())
        .def(py::self == py::self);

    m.def("make_triangle", &make_triangle, py::arg("a"), py::arg("b"), py::arg("c"));
    m.def("mf_eval", &mf_eval, py::arg("mf"), py::arg("x"));

    py::class_<LinguisticVariable>(m, "LinguisticVariable")
        .def(py::init([](std::string name, Universe u, const std::vector<std::pair<std::string, PiecewiseLinearMF>>& terms) {
                 std::vector<Term> t;
                 for (const auto& [label, mf] : terms) {
                     t.push_back({label, mf});
                 }
                 return LinguisticVariable(std::move(name), u, std::move(t));
             }),
             py::arg("name"), py::arg("universe"), py::arg("terms"))
        .def_property_readonly("name", &LinguisticVariable::name)
        .def_property_readonly("universe", &LinguisticVariable::universe)
        .def_property_readonly("terms", [](const LinguisticVariable& v) {
            std::vector<std::pair<std::string, PiecewiseLinearMF>> out;
            for (const auto& t : v.terms()) {
                out.emplace_back(t.label, t.mf);
            }
            return out;
        });

    m.def("fuzzify", &fuzzify, py::arg("var"), py::arg("x"));

    py::class_<Rule>(m, "Rule")
        .def(py::init<std::vector<std::string>, std::string>(), py::arg("antecedent"), py::arg("consequent"))
        .def_readonly("antecedent", &Rule::antecedent)
        .def_readonly("consequent", &Rule::consequent);

    py::class_<RuleBase>(m, "RuleBase")
        .def(py::init<std::vector<Rule>>(), py::arg("rules"))
        .def("__len__", &RuleBase::size)
        .def_property_readonly("rules", [](const RuleBase& rb) { return to_vector(rb.rules()); });

    py::class_<SampledMF>(m, "SampledMF")
        .def(py::init<Universe, std::vector<double>>(), py::arg("universe"), py::arg("mu"))
        .def_readonly("universe", &SampledMF::universe)
        .def_readonly("mu", &SampledMF::mu)
        .def("x", &SampledMF::x)
        .def_static("sample", &SampledMF::sample, py::arg("mf"), py::arg("universe"), py::arg("grid_size"));

    py::class_<T1System>(m, "T1System")
        .def(py::init<std::vector<LinguisticVariable>, LinguisticVariable, RuleBase, std::size_t>(),
             py::arg("inputs"), py::arg("output"), py::arg("rulebase"), py::arg("grid_size") = kDefaultGridSize)
        .def_property_readonly("grid_size", &T1System::grid_size)
        .def_property_readonly("output", &T1System::output);

    py::class_<Centroid>(m, "Centroid").def_readonly("x", &Centroid::x).def_readonly("area", &Centroid::area);

    m.def("fire_strengths",
          [](const T1System& sys, const std::vector<double>& in) {
              std::vector<std::pair<std::size_t, double>> out;
              for (const auto& s : fire_strengths(sys, in)) {
                  out.emplace_back(s.rule_index, s.strength);
              }
              return out;
          },
          py::arg("sys"), py::arg("inputs"));
    m.def("infer", [](const T1System& sys, const std::vector<double>& in) { return infer(sys, in); },
          py::arg("sys"), py::arg("inputs"));
    m.def("centroid", &centroid, py::arg("s"));
    m.def("t1_output", [](const T1System& sys, const std::vector<double>& in) { return t1_output(sys, in); },
          py::arg("sys"), py::arg("inputs"));

    py::class_<IT2Set>(m, "IT2Set")
        .def(py::init<std::string, PiecewiseLinearMF, PiecewiseLinearMF>(), py::arg("label"), py::arg("lower"),
             py::arg("upper"))
        .def_property_readonly("label", &IT2Set::label)
        .def_property_readonly("lower", &IT2Set::lower)
        .def_property_readonly("upper", &IT2Set::upper);

    py::class_<IT2Variable>(m, "IT2Variable")
        .def(py::init<std::string, Universe, std::vector<IT2Set>>(), py::arg("name"), py::arg("universe"),
             py::arg("terms"))
        .def_property_readonly("name", &IT2Variable::name)
        .def_property_readonly("terms", [](const IT2Variable& v) { return to_vector(v.terms()); })
        .def("lower_variable", &IT2Variable::lower_variable)
        .def("upper_variable", &IT2Variable::upper_variable);

    py::class_<DecomposedSystem>(m, "DecomposedSystem")
        .def_property_readonly("upper_path", &DecomposedSystem::upper_path)
        .def_property_readonly("lower_path", &DecomposedSystem::lower_path);

    py::class_<CombinerResult>(m, "CombinerResult")
        .def_readonly("c_upper", &CombinerResult::c_upper)
        .def_readonly("c_lower", &CombinerResult::c_lower)
        .def_readonly("a_upper", &CombinerResult::a_upper)
        .def_readonly("a_lower", &CombinerResult::a_lower)
        .def_readonly("y", &CombinerResult::y);

    m.def("blur_variable", &blur_variable, py::arg("var"), py::arg("delta"));
    m.def("decompose",
          [](const std::vector<IT2Variable>& inputs, const LinguisticVariable& output, const RuleBase& rb,
             std::size_t grid) { return decompose(inputs, output, rb, grid); },
          py::arg("inputs"), py::arg("output"), py::arg("rulebase"), py::arg("grid_size") = kDefaultGridSize);
    m.def("evaluate_paths",
          [](const DecomposedSystem& d, const std::vector<double>& in) {
              auto p = evaluate_paths(d, in);
              return std::make_pair(std::move(p.upper), std::move(p.lower));
          },
          py::arg("system"), py::arg("inputs"));
    m.def("combine_centroid", &combine_centroid, py::arg("upper"), py::arg("lower"));
    m.def("it2_output", [](const DecomposedSystem& d, const std::vector<double>& in) { return it2_output(d, in); },
          py::arg("system"), py::arg("inputs"));

    py::class_<oracle::CentroidInterval>(m, "CentroidInterval")
        .def_readonly("c_l", &oracle::CentroidInterval::c_l)
        .def_readonly("c_r", &oracle::CentroidInterval::c_r)
        .def_property_readonly("iterations", &oracle::CentroidInterval::iterations);
    m.def("fou_centroid_bruteforce", &oracle::fou_centroid_bruteforce, py::arg("upper"), py::arg("lower"),
          py::arg("resolution") = 10000);
    m.def("km_centroid", &oracle::km_centroid, py::arg("upper"), py::arg("lower"));
    m.def("km_defuzz", &oracle::km_defuzz, py::arg("upper"), py::arg("lower"));

    auto pend = m.def_submodule("pendulum", "Reference inverted-pendulum controllers and plant");
    pend.attr("INPUT_BOUND") = pendulum::kInputBound;
    pend.attr("FORCE_BOUND") = pendulum::kForceBound;
    pend.attr("BLUR_DELTA") = pendulum::kBlurDelta;
    pend.def("t1_controller", &pendulum::t1_controller, py::arg("grid_size") = kDefaultGridSize);
    pend.def("it2_controller", &pendulum::it2_controller, py::arg("delta") = pendulum::kBlurDelta,
             py::arg("grid_size") = kDefaultGridSize);
    pend.def("rulebase", &pendulum::rulebase);

    py::class_<PendulumState>(m, "PendulumState")
        .def(py::init<double, double, double>(), py::arg("y") = 0.0, py::arg("y_dot") = 0.0, py::arg("f_bar") = 0.0)
        .def_readwrite("y", &PendulumState::y)
        .def_readwrite("y_dot", &PendulumState::y_dot)
        .def_readwrite("f_bar", &PendulumState::f_bar);
    py::class_<PlantParams>(m, "PlantParams")
        .def(py::init<double>(), py::arg("g") = 9.8)
        .def_readwrite("g", &PlantParams::g);

    m.def("dynamics",
          [](const PendulumState& s, double f, const PlantParams& p) {
              auto d = dynamics(s, f, p);
              return py::make_tuple(d.dy, d.dy_dot, d.df_bar);
          },
          py::arg("state"), py::arg("f"), py::arg("plant") = PlantParams{});
    m.def("rk4_step", &rk4_step, py::arg("state"), py::arg("f"), py::arg("dt"), py::arg("plant") = PlantParams{});

    py::class_<Metrics>(m, "Metrics")
        .def_readonly("settling_time", &Metrics::settling_time)
        .def_readonly("overshoot", &Metrics::overshoot)
        .def_readonly("ise", &Metrics::ise)
        .def_readonly("post_settle_rms", &Metrics::post_settle_rms);

    // Closed-loop run returning the trace as columns plus metrics.
    m.def(
        "simulate",
        [](const std::string& controller, double theta0, double theta_dot0, double noise_sigma, std::uint64_t seed,
           double dt, double duration, double band) {
            SimConfig cfg;
            if (controller == "t1") {
                cfg.controller = std::make_shared<const FuzzyController>(pendulum::t1_controller());
            } else if (controller == "it2") {
                cfg.controller = std::make_shared<const FuzzyController>(pendulum::it2_controller());
            } else {
                throw std::invalid_argument("controller must be 't1' or 'it2'");
            }
            cfg.theta0 = theta0;
            cfg.theta_dot0 = theta_dot0;
            cfg.noise_sigma = noise_sigma;
            cfg.rng_seed = seed;
            cfg.dt = dt;
            cfg.duration = duration;
            Trace tr;
            {
                py::gil_scoped_release release;
                tr = run_closed_loop(cfg);
            }
            py::dict cols;
            std::vector<double> t, y, y_dot, f_bar, e, f;
            for (const auto& r : tr.rows) {
                t.push_back(r.t);
                y.push_back(r.y);
                y_dot.push_back(r.y_dot);
                f_bar.push_back(r.f_bar);
                e.push_back(r.e_measured);
                f.push_back(r.f_command);
            }
            cols["t"] = t;
            cols["y"] = y;
            cols["y_dot"] = y_dot;
            cols["f_bar"] = f_bar;
            cols["e_measured"] = e;
            cols["f_command"] = f;
            return py::make_tuple(cols, compute_metrics(tr, band));
        },
        py::arg("controller"), py::arg("theta0") = 0.1, py::arg("theta_dot0") = 0.0, py::arg("noise_sigma") = 0.0,
        py::arg("seed") = 1, py::arg("dt") = 1e-3, py::arg("duration") = 5.0, py::arg("band") = 0.005);

    m.def("load_config_text",
          [](const std::string& text) { return config::dump(config::parse(text)); },
          py::arg("text"), "Parse a JSON config and return its canonical serialization");
}
