#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <functional>

#include "wallcross/coeff.hpp"
#include "wallcross/commands.hpp"
#include "wallcross/config.hpp"
#include "wallcross/errors.hpp"
#include "wallcross/selftest.hpp"
#include "wallcross/stability.hpp"

namespace py = pybind11;
using namespace wallcross;

namespace {

// Python side uses fractions.Fraction; ints and "p/q" strings are accepted too.
Rational to_rational(const py::handle& x) {
  try {
    return parse_rational(std::string(py::str(x)));
  } catch (const std::invalid_argument&) {
    throw py::value_error("not a rational: " + std::string(py::repr(x)));
  }
}

py::object to_fraction(const Rational& x) {
  return py::module_::import("fractions").attr("Fraction")(to_string(x));
}

StabilityParam param(const py::handle& k) { return StabilityParam(to_rational(k)); }

py::object to_python(const Json& doc) {
  return py::module_::import("json").attr("loads")(doc.dump());
}

py::dict command_result(const CommandOutput& out) {
  py::dict d;
  d["ok"] = out.ok;
  d["doc"] = to_python(out.doc);
  d["header"] = out.header;
  d["rows"] = out.rows;
  d["log"] = out.log;
  return d;
}

}  // namespace

PYBIND11_MODULE(_wallcross, m) {
  m.doc() = "Exact wall-crossing coefficients, Hall-algebra checks and rationality tests";

  auto config_error = py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<InputError>(m, "InputError", PyExc_LookupError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ArithmeticError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  (void)config_error;

  py::class_<NumClass>(m, "NumClass")
      .def(py::init([](int r, Beta beta, std::int64_t n) {
             NumClass v{r, std::move(beta), n};
             require_valid(v);
             return v;
           }),
           py::arg("r"), py::arg("beta"), py::arg("n"))
      .def_readonly("r", &NumClass::r)
      .def_readonly("beta", &NumClass::beta)
      .def_readonly("n", &NumClass::n)
      .def("__add__", [](const NumClass& a, const NumClass& b) { return a + b; })
      .def("__eq__", [](const NumClass& a, const NumClass& b) { return a == b; })
      .def("__hash__", [](const NumClass& v) { return std::hash<std::string>{}(to_string(v)); })
      .def("__repr__", [](const NumClass& v) { return "NumClass" + to_string(v); });

  py::class_<ConeModel>(m, "ConeModel")
      .def(py::init([](Beta omega, Beta bound, std::map<Beta, std::int64_t> m_table,
                       std::map<Beta, std::int64_t> n_floor_table) {
             // Same defaults as the config loader: missing entries are 0.
             if (omega.size() == bound.size()) {
               for (const auto& b : classes_below(bound)) {
                 m_table.try_emplace(b, 0);
                 n_floor_table.try_emplace(b, 0);
               }
             }
             return ConeModel(std::move(omega), std::move(bound), std::move(m_table), std::move(n_floor_table));
           }),
           py::arg("omega"),
           py::arg("bound"), py::arg("m_table") = std::map<Beta, std::int64_t>{},
           py::arg("n_floor_table") = std::map<Beta, std::int64_t>{})
      .def_property_readonly("omega", &ConeModel::omega)
      .def_property_readonly("bound", &ConeModel::bound)
      .def("m", &ConeModel::m)
      .def("n_floor", &ConeModel::n_floor);

  m.def("deg", &deg, py::arg("beta"), py::arg("model"));
  m.def("euler_pairing", &euler_pairing);
  m.def("slope", [](const NumClass& v, const ConeModel& model) { return to_fraction(slope(v, model)); });
  m.def(
      "phase_key",
      [](const NumClass& v, const py::object& k, const ConeModel& model) {
        return to_fraction(phase_key(v, param(k), model));
      },
      py::arg("v"), py::arg("k"), py::arg("model"));
  m.def(
      "decompositions",
      [](const NumClass& v, const py::object& k, const ConeModel& model) { return decompositions(v, param(k), model); },
      py::arg("v"), py::arg("k"), py::arg("model"));
  m.def(
      "walls",
      [](const Beta& beta, const ConeModel& model, const py::object& lo, const py::object& hi) {
        const WallSet w = walls(beta, model);
        py::list out;
        for (const auto& k0 : w.walls_in(to_rational(lo), to_rational(hi))) out.append(to_fraction(k0));
        return out;
      },
      py::arg("beta"), py::arg("model"), py::arg("lo"), py::arg("hi"));
  m.def(
      "dominates_below",
      [](const NumClass& v, const py::object& k, const py::object& k_prime, const ConeModel& model) {
        return dominates_below(v, param(k), param(k_prime), model);
      },
      py::arg("v"), py::arg("k"), py::arg("k_prime"), py::arg("model"));
  m.def(
      "s_coeff",
      [](const std::vector<NumClass>& t, const py::object& k, const py::object& k_prime, const ConeModel& model) {
        return s_coeff(t, param(k), param(k_prime), model);
      },
      py::arg("classes"), py::arg("k"), py::arg("k_prime"), py::arg("model"));
  m.def(
      "u_coeff",
      [](const std::vector<NumClass>& t, const py::object& k, const py::object& k_prime, const ConeModel& model) {
        return to_fraction(u_coeff(t, param(k), param(k_prime), model));
      },
      py::arg("classes"), py::arg("k"), py::arg("k_prime"), py::arg("model"));

  m.def("command_names", &command_names);
  m.def(
      "run",
      [](const std::string& command, const std::optional<std::string>& config_json) {
        std::optional<RunConfig> cfg;
        if (config_json) cfg = parse_config(*config_json);
        CommandOutput out;
        {
          py::gil_scoped_release release;
          out = run_command(command, cfg ? &*cfg : nullptr);
        }
        return command_result(out);
      },
      py::arg("command"), py::arg("config_json") = py::none(),
      "Runs a batch command on a JSON config string; returns {ok, doc, header, rows, log}.");
  m.def(
      "render",
      [](const std::string& command, const std::string& config_json, const std::string& format) {
        const RunConfig cfg = parse_config(config_json);
        return render(run_command(command, &cfg), format);
      },
      py::arg("command"), py::arg("config_json"), py::arg("format") = "json");

  m.def("criterion", [](int id) {
    static const std::map<int, std::function<CriterionResult()>> table{
        {1, criterion_surjection_identity}, {2, criterion_coefficient_oracles}, {3, criterion_hall_round_trips},
        {4, criterion_tree_collapse},       {5, criterion_chamber_identification},
        {6, [] { return criterion_factorization(); }},
        {7, criterion_closed_forms},        {8, criterion_dominance}};
    const auto it = table.find(id);
    if (it == table.end()) throw py::value_error("criterion id must be 1..8");
    CriterionResult r;
    {
      py::gil_scoped_release release;
      r = it->second();
    }
    py::dict d;
    d["id"] = r.id;
    d["name"] = r.name;
    d["passed"] = r.passed;
    d["checks"] = r.checks;
    d["detail"] = r.detail;
    return d;
  });
}
