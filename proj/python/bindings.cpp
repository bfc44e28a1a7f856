#include "hetdss/bound.hpp"
#include "hetdss/cost.hpp"
#include "hetdss/flowgraph.hpp"
#include "hetdss/optimizer.hpp"
#include "hetdss/specfile.hpp"

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

namespace py = pybind11;
using namespace pybind11::literals;

// Rational <-> fractions.Fraction. Loading also accepts int, float (exact
// binary value) and "p/q" strings.
namespace pybind11::detail {
template <>
struct type_caster<hetdss::Rational> {
  PYBIND11_TYPE_CASTER(hetdss::Rational, const_name("fractions.Fraction"));

  bool load(handle src, bool) {
    if (!src) return false;
    try {
      if (py::isinstance<py::str>(src)) {
        value = hetdss::parse_rational(src.cast<std::string>());
        return true;
      }
      py::object fraction = py::module_::import("fractions").attr("Fraction");
      if (!py::isinstance<py::int_>(src) && !py::isinstance(src, fraction) && !py::isinstance<py::float_>(src)) {
        return false;
      }
      py::object f = fraction(src);
      const std::string num = py::str(f.attr("numerator"));
      const std::string den = py::str(f.attr("denominator"));
      value = hetdss::Rational(boost::multiprecision::mpz_int(num), boost::multiprecision::mpz_int(den));
      return true;
    } catch (const std::exception&) {
      return false;
    }
  }

  static handle cast(const hetdss::Rational& src, return_value_policy, handle) {
    py::object fraction = py::module_::import("fractions").attr("Fraction");
    py::object num = py::int_(py::str(boost::multiprecision::numerator(src).str()));
    py::object den = py::int_(py::str(boost::multiprecision::denominator(src).str()));
    return fraction(num, den).release();
  }
};
}  // namespace pybind11::detail

namespace {

hetdss::RepairScenario make_scenario(std::size_t set, std::vector<std::size_t> sequence,
                                     std::vector<std::size_t> choices) {
  return hetdss::RepairScenario{hetdss::NodeSequence{set, std::move(sequence)}, std::move(choices)};
}

}  // namespace

PYBIND11_MODULE(_hetdss, m) {
  m.doc() = "Heterogeneous distributed storage: costs, min-cut bound and storage/repair tradeoff";

  py::register_exception<hetdss::SpecError>(m, "SpecError", PyExc_ValueError);
  py::register_exception<hetdss::InvalidSpec>(m, "InvalidSpec", PyExc_ValueError);
  py::register_exception<hetdss::EnumerationLimitExceeded>(m, "EnumerationLimitExceeded", PyExc_RuntimeError);

  py::class_<hetdss::DssSpec>(m, "DssSpec")
      .def(py::init<>())
      .def_readwrite("node_count", &hetdss::DssSpec::node_count)
      .def_readwrite("file_size", &hetdss::DssSpec::file_size)
      .def_readwrite("storage_cost", &hetdss::DssSpec::storage_cost)
      .def_readwrite("download_cost", &hetdss::DssSpec::download_cost)
      .def_readwrite("reconstruction_sets", &hetdss::DssSpec::reconstruction_sets)
      .def_readwrite("surviving_sets", &hetdss::DssSpec::surviving_sets)
      .def(py::self == py::self)
      .def("__repr__", [](const hetdss::DssSpec& s) {
        return "<DssSpec n=" + std::to_string(s.node_count) + " B=" + hetdss::to_string(s.file_size) + ">";
      });

  py::class_<hetdss::Assignment>(m, "Assignment")
      .def(py::init<>())
      .def(py::init([](std::vector<hetdss::Rational> alpha, std::vector<hetdss::Rational> beta) {
             return hetdss::Assignment{std::move(alpha), std::move(beta)};
           }),
           "alpha"_a, "beta"_a)
      .def_readwrite("alpha", &hetdss::Assignment::alpha)
      .def_readwrite("beta", &hetdss::Assignment::beta)
      .def_static("zero", &hetdss::Assignment::zero, "spec"_a)
      .def(py::self == py::self);

  m.def("beta_slots", [](const hetdss::DssSpec& spec) {
    std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> out;
    for (const auto& s : hetdss::BetaLayout(spec).slots()) out.emplace_back(s.node, s.set, s.helper);
    return out;
  }, "spec"_a, "(node, set, helper) of every download amount, in assignment order");

  m.def("validate", [](const hetdss::DssSpec& spec) {
    const auto report = hetdss::validate(spec);
    return py::dict("ok"_a = report.ok(), "errors"_a = report.errors(), "warnings"_a = report.warnings(),
                    "normalized"_a = report.normalized);
  }, "spec"_a);

  m.def("parse_spec", [](const std::string& text) {
    auto doc = hetdss::parse_spec(text);
    return py::make_tuple(doc.spec, doc.assignment, doc.warnings);
  }, "text"_a, "Returns (spec, assignment or None, warnings)");
  m.def("load_spec", [](const std::filesystem::path& path) {
    auto doc = hetdss::load_spec(path);
    return py::make_tuple(doc.spec, doc.assignment, doc.warnings);
  }, "path"_a, "Returns (spec, assignment or None, warnings)");
  m.def("serialize_spec", [](const hetdss::DssSpec& spec, const std::optional<hetdss::Assignment>& a) {
    return hetdss::serialize_spec(spec, a ? &*a : nullptr);
  }, "spec"_a, "assignment"_a = py::none());

  m.def("paper_fixture", [] {
    auto f = hetdss::paper_fixture();
    return py::make_tuple(f.spec, f.assignment);
  });

  m.def("storage_cost", &hetdss::storage_cost, "spec"_a, "alpha"_a);
  m.def("node_repair_cost", &hetdss::node_repair_cost, "spec"_a, "beta"_a, "node"_a);
  m.def("repair_cost", &hetdss::system_repair_cost, "spec"_a, "beta"_a);

  m.def("q_bound", [](const hetdss::DssSpec& spec, const hetdss::Assignment& a, std::uint64_t max_scenarios) {
    const auto r = hetdss::q_bound(spec, a, {max_scenarios});
    return py::dict("q"_a = r.q, "per_set"_a = r.per_set, "reconstruction_set"_a = r.argmin.sequence.set_index,
                    "sequence"_a = r.argmin.sequence.nodes, "choices"_a = r.argmin.choices);
  }, "spec"_a, "assignment"_a, "max_scenarios"_a = hetdss::kDefaultMaxScenarios);
  m.def("q_bound_exchanged", [](const hetdss::DssSpec& spec, const hetdss::Assignment& a, std::uint64_t limit) {
    return hetdss::q_bound_exchanged(spec, a, {limit});
  }, "spec"_a, "assignment"_a, "max_scenarios"_a = hetdss::kDefaultMaxScenarios);
  m.def("scenario_term", [](const hetdss::DssSpec& spec, const hetdss::Assignment& a, std::size_t set,
                            std::vector<std::size_t> sequence, std::vector<std::size_t> choices) {
    return hetdss::scenario_term(spec, a, make_scenario(set, std::move(sequence), std::move(choices)));
  }, "spec"_a, "assignment"_a, "reconstruction_set"_a, "sequence"_a, "choices"_a);
  m.def("homogeneous_term", &hetdss::homogeneous_term, "alpha"_a, "beta"_a, "k"_a, "d"_a);

  m.def("max_flow", [](const hetdss::DssSpec& spec, const hetdss::Assignment& a, std::size_t set,
                       std::vector<std::size_t> sequence, std::vector<std::size_t> choices,
                       bool bounded_initial_storage) {
    const auto graph = hetdss::build_flow_graph(spec, a, make_scenario(set, std::move(sequence), std::move(choices)),
                                                {bounded_initial_storage});
    return hetdss::max_flow(graph);
  }, "spec"_a, "assignment"_a, "reconstruction_set"_a, "sequence"_a, "choices"_a,
        "bounded_initial_storage"_a = true);
  m.def("flow_graph_dot", [](const hetdss::DssSpec& spec, const hetdss::Assignment& a, std::size_t set,
                             std::vector<std::size_t> sequence, std::vector<std::size_t> choices) {
    return hetdss::to_dot(
        hetdss::build_flow_graph(spec, a, make_scenario(set, std::move(sequence), std::move(choices))));
  }, "spec"_a, "assignment"_a, "reconstruction_set"_a, "sequence"_a, "choices"_a);

  m.def("log_grid", &hetdss::log_grid, "lo"_a, "hi"_a, "count"_a);

  py::class_<hetdss::ParetoPoint>(m, "ParetoPoint")
      .def_readonly("lambda_", &hetdss::ParetoPoint::lambda)
      .def_readonly("storage_cost", &hetdss::ParetoPoint::storage_cost)
      .def_readonly("repair_cost", &hetdss::ParetoPoint::repair_cost)
      .def_readonly("q", &hetdss::ParetoPoint::q)
      .def_readonly("objective", &hetdss::ParetoPoint::objective)
      .def_readonly("assignment", &hetdss::ParetoPoint::assignment)
      .def("__repr__", [](const hetdss::ParetoPoint& p) {
        return "<ParetoPoint lambda=" + std::to_string(p.lambda) + " C_s=" + hetdss::to_string(p.storage_cost) +
               " C_r=" + hetdss::to_string(p.repair_cost) + ">";
      });

  m.def("sweep", [](const hetdss::DssSpec& spec, const std::string& mode, std::size_t k, std::size_t d,
                    std::optional<std::vector<double>> weights, bool floating, std::uint64_t max_scenarios) {
    hetdss::ProblemConfig config;
    config.mode = hetdss::parse_mode(mode);
    config.k = k;
    config.d = d;
    if (weights) config.weights = *weights;
    if (floating) config.solver.arithmetic = hetdss::lp::Arithmetic::floating;
    config.limits.max_scenarios = max_scenarios;
    const auto result = hetdss::sweep(spec, config);
    py::list out;
    for (const auto& o : result.outcomes) {
      out.append(py::dict("lambda_"_a = o.lambda, "status"_a = hetdss::lp::to_string(o.status),
                          "point"_a = o.point, "message"_a = o.message));
    }
    return out;
  }, "spec"_a, "mode"_a = "general", "k"_a = 0, "d"_a = 0, "weights"_a = py::none(), "floating"_a = false,
        "max_scenarios"_a = hetdss::kDefaultMaxScenarios,
        "One weighted-sum LP per lambda; returns a dict per lambda with status and point");
  m.def("pareto_filter", &hetdss::pareto_filter, "points"_a);
}
