#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "polycap/approx.hpp"
#include "polycap/bounds.hpp"
#include "polycap/capacity.hpp"
#include "polycap/cli.hpp"
#include "polycap/errors.hpp"
#include "polycap/exact_oracles.hpp"
#include "polycap/hyperbolicity.hpp"
#include "polycap/io.hpp"
#include "polycap/linalg.hpp"

namespace py = pybind11;
using namespace polycap;

namespace {

Rational rational_from_py(py::handle h) {
  if (py::isinstance<py::float_>(h)) return to_rational(h.cast<double>());
  return parse_rational(py::str(h).cast<std::string>());
}

py::object fraction(const Rational& r) {
  return py::module_::import("fractions").attr("Fraction")(to_string(r));
}

RationalMatrix rational_matrix_from_py(py::handle rows) {
  std::vector<std::vector<Rational>> entries;
  for (py::handle row : rows) {
    std::vector<Rational> r;
    for (py::handle v : row) r.push_back(rational_from_py(v));
    entries.push_back(std::move(r));
  }
  const std::size_t n = entries.size();
  RationalMatrix m(n, n ? entries[0].size() : 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (entries[i].size() != m.cols()) throw InputError("ragged matrix");
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = entries[i][j];
  }
  return m;
}

ScalarMode parse_mode(const std::string& mode) {
  if (mode == "exact") return ScalarMode::exact;
  if (mode == "float") return ScalarMode::floating;
  throw InputError("mode must be 'exact' or 'float'");
}

Ordering ordering_from_py(py::handle h) {
  if (py::isinstance<py::str>(h)) {
    const auto s = h.cast<std::string>();
    if (s == "as-given") return Ordering::as_given();
    if (s == "greedy") return Ordering::greedy();
    throw InputError("ordering must be 'as-given', 'greedy' or a permutation");
  }
  return Ordering::explicit_order(h.cast<std::vector<int>>());
}

CapacityOptions capacity_options(double tol, int max_iter) {
  CapacityOptions o;
  o.tol = tol;
  o.max_iter = max_iter;
  return o;
}

}  // namespace

PYBIND11_MODULE(_polycap, m) {
  m.doc() = "Capacity of homogeneous polynomials and mixed-derivative bounds";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);
  py::register_exception<CheckFailure>(m, "CheckFailure", PyExc_AssertionError);

  py::class_<PolynomialOracle>(m, "Polynomial")
      .def_static(
          "from_json",
          [](const std::string& text, const std::string& mode) {
            return std::make_unique<PolynomialOracle>(io::parse_polynomial(text, parse_mode(mode)));
          },
          py::arg("text"), py::arg("mode") = "exact")
      .def("to_json", [](const PolynomialOracle& p) { return io::to_json(p.polynomial()).dump(); })
      .def_property_readonly("n_vars", &PolynomialOracle::n_vars)
      .def_property_readonly("degree", &PolynomialOracle::degree)
      .def_property_readonly("call_count", &PolynomialOracle::call_count)
      .def("__call__",
           [](const PolynomialOracle& p, const std::vector<double>& x) {
             if (static_cast<int>(x.size()) != p.n_vars()) throw InputError("wrong number of coordinates");
             return p.evaluate(std::span<const double>(x));
           })
      .def("evaluate_exact",
           [](const PolynomialOracle& p, py::sequence x) {
             std::vector<Rational> v;
             for (py::handle h : x) v.push_back(rational_from_py(h));
             if (static_cast<int>(v.size()) != p.n_vars()) throw InputError("wrong number of coordinates");
             return fraction(p.evaluate(std::span<const Rational>(v)));
           })
      .def("mixed_partial", [](const PolynomialOracle& p) { return fraction(mixed_partial(p.polynomial())); },
           "Exact coefficient of x_1 ... x_n.");

  py::class_<CapacityResult>(m, "CapacityResult")
      .def_readonly("value", &CapacityResult::value)
      .def_readonly("minimizer", &CapacityResult::minimizer)
      .def_readonly("iterations", &CapacityResult::iterations)
      .def_readonly("gradient_norm", &CapacityResult::gradient_norm)
      .def_property_readonly("status", [](const CapacityResult& r) { return to_string(r.status); });

  m.def(
      "capacity",
      [](const PolynomialOracle& p, double tol, int max_iter) {
        return capacity_minimize(p, capacity_options(tol, max_iter));
      },
      py::arg("p"), py::arg("tol") = 1e-10, py::arg("max_iter") = 500);

  py::class_<ScalingResult>(m, "ScalingResult")
      .def_readonly("row_scalers", &ScalingResult::row_scalers)
      .def_readonly("col_scalers", &ScalingResult::col_scalers)
      .def_property_readonly("scaled_matrix",
                             [](const ScalingResult& r) { return linalg::to_eigen(r.scaled_matrix); })
      .def_readonly("capacity", &ScalingResult::capacity)
      .def_readonly("iterations", &ScalingResult::iterations)
      .def_readonly("max_deviation", &ScalingResult::max_deviation)
      .def_property_readonly("converged",
                             [](const ScalingResult& r) { return r.status == ScalingStatus::converged; });

  m.def(
      "sinkhorn",
      [](const Eigen::MatrixXd& a, double tol, int max_iter) {
        return sinkhorn_scale(linalg::from_eigen(a), tol, max_iter);
      },
      py::arg("a"), py::arg("tol") = 1e-10, py::arg("max_iter") = kSinkhornMaxIter);

  m.def(
      "permanent", [](const Eigen::MatrixXd& a) { return permanent_ryser(linalg::from_eigen(a)); }, py::arg("a"));
  m.def(
      "permanent_exact", [](py::object a) { return fraction(permanent_ryser(rational_matrix_from_py(a))); },
      py::arg("a"));
  m.def(
      "mixed_discriminant",
      [](const std::vector<Eigen::MatrixXd>& mats) {
        std::vector<RealMatrix> v;
        for (const auto& a : mats) v.push_back(linalg::from_eigen(a));
        return mixed_discriminant<double>(v);
      },
      py::arg("matrices"));
  m.def(
      "mixed_discriminant_exact",
      [](py::sequence mats) {
        std::vector<RationalMatrix> v;
        for (py::handle a : mats) v.push_back(rational_matrix_from_py(a));
        return fraction(mixed_discriminant<Rational>(v));
      },
      py::arg("matrices"));

  py::class_<BoundReport>(m, "BoundReport")
      .def_readonly("n", &BoundReport::n)
      .def_readonly("capacity", &BoundReport::capacity)
      .def_readonly("lower_bound_vdw", &BoundReport::lower_bound_vdw)
      .def_readonly("lower_bound_rank", &BoundReport::lower_bound_rank)
      .def_readonly("lower_bound_uniform_rank", &BoundReport::lower_bound_uniform_rank)
      .def_readonly("exact_value", &BoundReport::exact_value)
      .def_property_readonly("exact_value_rational",
                             [](const BoundReport& r) -> py::object {
                               if (!r.exact_value_rational) return py::none();
                               return fraction(*r.exact_value_rational);
                             })
      .def_readonly("ranks", &BoundReport::ranks)
      .def_readonly("g", &BoundReport::g)
      .def_readonly("ordering_used", &BoundReport::ordering_used)
      .def_readonly("ordering_kind", &BoundReport::ordering_kind)
      .def_readonly("provenance", &BoundReport::provenance)
      .def_property_readonly("vdw_equality", &BoundReport::vdw_equality)
      .def_property_readonly("rank_equality", &BoundReport::rank_equality);

  m.def(
      "bound_report",
      [](const PolynomialOracle& p, py::object ordering, double tol, int max_iter) {
        BoundOptions o;
        o.ordering = ordering_from_py(ordering);
        o.capacity = capacity_options(tol, max_iter);
        return bound_report(p.polynomial(), o);
      },
      py::arg("p"), py::arg("ordering") = "as-given", py::arg("tol") = 1e-10, py::arg("max_iter") = 500);

  m.def("vdw_factor", py::overload_cast<int>(&vdw_factor), py::arg("n"));
  m.def("rank_factor", py::overload_cast<int>(&rank_factor), py::arg("g"));
  m.def("approx_guarantee_factor", &approx_guarantee_factor, py::arg("m"));
  m.def(
      "schrijver_like_permanent_bound",
      [](const Eigen::MatrixXd& a, int k, bool rows) {
        return schrijver_like_permanent_bound(linalg::from_eigen(a), k, rows);
      },
      py::arg("a"), py::arg("k"), py::arg("rows") = false);

  py::class_<ApproxResult>(m, "ApproxResult")
      .def_readonly("estimate", &ApproxResult::estimate)
      .def_readonly("guarantee_factor", &ApproxResult::guarantee_factor)
      .def_readonly("oracle_calls", &ApproxResult::oracle_calls)
      .def_readonly("k", &ApproxResult::k_used)
      .def_readonly("capacity", &ApproxResult::capacity_result);

  m.def(
      "improved_estimate",
      [](const PolynomialOracle& p, int k, double tol, int max_iter) {
        return improved_estimate(p, k, capacity_options(tol, max_iter));
      },
      py::arg("p"), py::arg("k") = 0, py::arg("tol") = 1e-10, py::arg("max_iter") = 500,
      "Capacity of the k-th partial-derivative polynomial; estimate / exact lies in [1, guarantee_factor].");

  py::class_<DiagnosticReport>(m, "DiagnosticReport")
      .def_readonly("check", &DiagnosticReport::check)
      .def_readonly("passed", &DiagnosticReport::passed)
      .def_readonly("trials", &DiagnosticReport::trials)
      .def_readonly("worst_margin", &DiagnosticReport::worst_margin)
      .def_readonly("witness", &DiagnosticReport::witness);

  m.def(
      "real_rootedness_check",
      [](const PolynomialOracle& p, std::optional<std::vector<double>> direction, int trials, std::uint64_t seed) {
        return real_rootedness_check(p, direction.value_or(std::vector<double>(p.n_vars(), 1.0)), trials, seed);
      },
      py::arg("p"), py::arg("direction") = py::none(), py::arg("trials") = 20, py::arg("seed") = 0);
  m.def(
      "half_plane_sample_check",
      [](const PolynomialOracle& p, int samples, std::uint64_t seed) {
        return half_plane_sample_check(p, samples, seed);
      },
      py::arg("p"), py::arg("samples") = 2000, py::arg("seed") = 0);
  m.def(
      "root_profile",
      [](const PolynomialOracle& p, const std::vector<double>& point, const std::vector<double>& direction) {
        return root_profile(p, point, direction).roots;
      },
      py::arg("p"), py::arg("point"), py::arg("direction"));

  m.def(
      "cli_main",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "polycap");
        std::vector<const char*> argv;
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command-line front end; returns (exit_code, stdout, stderr).");
}
