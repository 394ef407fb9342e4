#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "gkz/errors.hpp"
#include "gkz/ext_oracle.hpp"
#include "gkz/gamma_series.hpp"
#include "gkz/gevrey.hpp"
#include "gkz/problem.hpp"
#include "gkz/report.hpp"
#include "gkz/weyl.hpp"

namespace py = pybind11;
using namespace gkz;

namespace {

// Series and reports cross the boundary as JSON text; the Python package
// decodes them.
std::string series_json(const SparseSeries& f) { return to_json(f).dump(); }

std::vector<std::string> basis_json(const std::vector<SparseSeries>& basis) {
  std::vector<std::string> out;
  for (const auto& f : basis) out.push_back(series_json(f));
  return out;
}

Locus locus(const std::optional<std::string>& epsilon) {
  if (!epsilon) return std::nullopt;
  return BasePoint(parse_rational(*epsilon));
}

Sheaf sheaf_from(const std::string& name) {
  if (name == "O") return Sheaf::GevreyS;
  if (name == "Q") return Sheaf::QuotientS;
  throw Error(ErrorCode::InvalidArgument, "sheaf must be \"O\" or \"Q\", got " + name);
}

}  // namespace

PYBIND11_MODULE(_gkz, m) {
  m.doc() = "GKZ hypergeometric systems for A = (a b): series, Gevrey growth, Ext dimensions";

  static py::exception<Error> error(m, "GkzError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  m.def("command_names", &command_names);

  m.def(
      "run_command",
      [](const std::string& spec_text, const std::string& command, const std::string& format) {
        return emit_report(run_command(parse_problem(spec_text), command), parse_format(format));
      },
      py::arg("spec"), py::arg("command"), py::arg("format") = "json");

  m.def("normalize_spec", [](const std::string& text) { return render_problem(parse_problem(text)); });

  m.def(
      "axis_basis",
      [](std::int64_t a, std::int64_t b, const std::string& beta, std::int64_t M) {
        return basis_json(axis_basis(a, b, parse_rational(beta), M));
      },
      py::arg("a"), py::arg("b"), py::arg("beta"), py::arg("M"));

  m.def(
      "generic_basis",
      [](std::int64_t a, std::int64_t b, const std::string& beta, std::int64_t M) {
        return basis_json(generic_basis(a, b, parse_rational(beta), M));
      },
      py::arg("a"), py::arg("b"), py::arg("beta"), py::arg("M"));

  m.def(
      "annihilates",
      [](std::int64_t a, std::int64_t b, const std::string& beta, const std::string& series) {
        auto f = series_from_json(nlohmann::json::parse(series));
        auto [P, E] = hypergeometric_ops(a, b, parse_rational(beta));
        return py::make_tuple(apply(P, f).is_zero(), apply(E, f).is_zero());
      },
      py::arg("a"), py::arg("b"), py::arg("beta"), py::arg("series"));

  m.def(
      "gevrey_index",
      [](const std::string& series) {
        auto r = estimate_gevrey_index(series_from_json(nlohmann::json::parse(series)));
        py::dict d;
        d["estimated_index"] = r.estimated_index;
        d["fit_residual"] = r.fit_residual;
        d["coefficient_count"] = r.coefficient_count;
        d["s_theoretical"] = to_string(r.s_theoretical);
        d["classification"] = to_string(r.classification);
        return d;
      },
      py::arg("series"));

  m.def(
      "resonance_data",
      [](std::int64_t a, std::int64_t b, const std::string& beta) -> py::object {
        auto rd = resonance_data(a, b, parse_rational(beta));
        if (!rd) return py::none();
        py::dict d;
        d["q"] = rd->q;
        d["m0"] = rd->m0;
        d["mprime"] = rd->mprime;
        d["vtilde"] = py::make_tuple(to_string(rd->vtilde.e1), to_string(rd->vtilde.e2));
        return d;
      },
      py::arg("a"), py::arg("b"), py::arg("beta"));

  m.def(
      "monodromy_eigenvalues",
      [](std::int64_t a, std::int64_t b, const std::string& beta) {
        return monodromy_eigenvalues(a, b, parse_rational(beta)).eigenvalues;
      },
      py::arg("a"), py::arg("b"), py::arg("beta"));

  m.def(
      "ext_table",
      [](std::int64_t a, std::int64_t b, const std::string& beta, const std::optional<std::string>& epsilon,
         const std::string& s, const std::string& sheaf) {
        py::gil_scoped_release release;
        auto t = compare_oracle_vs_theory(a, b, parse_rational(beta), locus(epsilon),
                                          parse_gevrey_order(s), sheaf_from(sheaf));
        return to_json(t).dump();
      },
      py::arg("a"), py::arg("b"), py::arg("beta"), py::arg("epsilon"), py::arg("s"),
      py::arg("sheaf") = "O");
}
