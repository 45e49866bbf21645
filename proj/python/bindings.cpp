// Python extension: numpy in, numpy out. Grids are rebuilt from array shapes.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "fracdiff/errors.hpp"
#include "fracdiff/exponents.hpp"
#include "fracdiff/forward_solver.hpp"
#include "fracdiff/generators.hpp"
#include "fracdiff/harness.hpp"
#include "fracdiff/norms.hpp"
#include "fracdiff/special_functions.hpp"
#include "fracdiff/transposition.hpp"

namespace py = pybind11;
using namespace fracdiff;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

TimeSeries to_series(const Array& a, double T) {
  if (a.ndim() != 1 || a.size() < 2) throw DomainError("expected a 1-D array with at least two nodes");
  return TimeSeries(TimeGrid(T, static_cast<int>(a.size()) - 1), std::vector<double>(a.data(), a.data() + a.size()));
}

Array from_vector(const std::vector<double>& v) { return Array(static_cast<py::ssize_t>(v.size()), v.data()); }

SpaceTimeField to_field(const Array& a, double L, double T) {
  if (a.ndim() != 2 || a.shape(0) < 2 || a.shape(1) < 2) throw DomainError("expected a 2-D array of shape (M+1, N+1)");
  return SpaceTimeField(SpatialGrid(L, static_cast<int>(a.shape(0)) - 1), TimeGrid(T, static_cast<int>(a.shape(1)) - 1),
                        std::vector<double>(a.data(), a.data() + a.size()));
}

Array from_field(const SpaceTimeField& u) {
  Array out({u.sgrid.M + 1, u.tgrid.N + 1});
  std::copy(u.values.begin(), u.values.end(), out.mutable_data());
  return out;
}

BoundaryData to_boundary(const Array& left, const Array& right, double T) {
  return BoundaryData(to_series(left, T), to_series(right, T));
}

struct Problem {
  SpatialGrid sg;
  Coefficients coeffs;
  EigenBasis basis;

  Problem(int M, int K, const std::string& profile, double L)
      : sg(L, M), coeffs(Coefficients::from_profile(profile, sg)), basis(eigendecompose(assemble_operator(coeffs, sg), coeffs, K)) {}
};

py::dict eigenbasis(int M, int K, const std::string& profile, double L) {
  const Problem p(M, K, profile, L);
  Array phi({K, M + 1});
  Array flux({K, 2});
  for (int k = 0; k < K; ++k) {
    const auto i = static_cast<std::size_t>(k);
    std::copy(p.basis.phi[i].begin(), p.basis.phi[i].end(), phi.mutable_data(k, 0));
    *flux.mutable_data(k, 0) = p.basis.flux[i].first;
    *flux.mutable_data(k, 1) = p.basis.flux[i].second;
  }
  py::dict d;
  d["lambda"] = from_vector(p.basis.lambda);
  d["phi"] = phi;
  d["flux"] = flux;
  return d;
}

Array solve_transposition(const Array& left, const Array& right, double alpha, int M, int K, const std::string& profile,
                          double L, double T, const std::string& method, std::optional<int> P) {
  const Problem p(M, K, profile, L);
  const BoundaryData g = to_boundary(left, right, T);
  if (method == "closed-form") return from_field(weak_solution_closed_form(g, alpha, p.basis).u);
  if (method == "riesz") return from_field(weak_solution_riesz(g, alpha, p.basis, P.value_or(g.tgrid.N / 4)).u);
  if (method == "lifted") return from_field(solve_lifted(g, alpha, p.coeffs, p.basis).u);
  throw ConfigError("unknown method '" + method + "' (closed-form, riesz, lifted)");
}

Array solve_homogeneous(const Array& F, double alpha, int K, const std::string& profile, double L, double T,
                        const std::string& method) {
  const SpaceTimeField f = to_field(F, L, T);
  const Problem p(f.sgrid.M, K, profile, L);
  if (method == "spectral") return from_field(solve_homogeneous_spectral(f, alpha, p.basis).u);
  if (method == "l1") return from_field(solve_homogeneous_l1(f, alpha, p.coeffs));
  throw ConfigError("unknown method '" + method + "' (spectral, l1)");
}

py::dict run_experiment(const std::string& name, const std::optional<std::string>& config) {
  const ExperimentConfig cfg = config ? parse_config(*config) : default_config(name);
  cfg.validate();
  SweepReport rep;
  if (name == "sweep-regularity") rep = run_regularity_sweep(cfg);
  else if (name == "check-negative") rep = run_negative_data_check(cfg);
  else if (name == "check-maxreg") rep = run_maxreg_check(cfg);
  else if (name == "sharpness") rep = run_sharpness_probe(cfg);
  else if (name == "classical-limit") rep = run_classical_limit(cfg);
  else if (name == "verify-duality") rep = run_duality_check(cfg);
  else if (name == "verify-fracops") rep = verify_fracops(cfg);
  else throw ConfigError("unknown experiment '" + name + "'");
  py::dict d;
  d["passed"] = rep.passed();
  d["csv"] = report_csv(rep, false);
  d["json"] = report_json(rep);
  return d;
}

std::string exact_trace(std::int64_t num, std::int64_t den, const std::string& s) {
  return trace_exponents(Rational(num, den), parse_alpha_affine(s)).str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Time-fractional diffusion with boundary data of low regularity";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<NonConvergenceError>(m, "NonConvergenceError", base.ptr());
  py::register_exception<EllipticityError>(m, "EllipticityError", base.ptr());
  py::register_exception<CompatibilityError>(m, "CompatibilityError", base.ptr());
  py::register_exception<BasisSizeError>(m, "BasisSizeError", base.ptr());
  py::register_exception<GridMismatchError>(m, "GridMismatchError", base.ptr());
  py::register_exception<IllConditionedError>(m, "IllConditionedError", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());

  m.def("mittag_leffler", py::vectorize([](double alpha, double beta, double z) { return mittag_leffler({alpha, beta}, z); }),
        py::arg("alpha"), py::arg("beta"), py::arg("z"), "E_{alpha,beta}(z) for z <= 0, elementwise.");

  m.def("caputo_derivative", [](const Array& u, double T, double alpha) { return from_vector(caputo_derivative(to_series(u, T), alpha).values); },
        py::arg("values"), py::arg("T"), py::arg("alpha"));
  m.def("backward_integral", [](const Array& h, double T, double nu) { return from_vector(backward_integral(to_series(h, T), nu).values); },
        py::arg("values"), py::arg("T"), py::arg("nu"));
  m.def("backward_rl_derivative",
        [](const Array& h, double T, double alpha) { return from_vector(backward_rl_derivative(to_series(h, T), alpha).values); },
        py::arg("values"), py::arg("T"), py::arg("alpha"));

  m.def("eigenbasis", &eigenbasis, py::arg("M"), py::arg("K"), py::arg("profile") = "variable1", py::arg("L") = 1.0,
        "Lowest K eigenpairs: dict with lambda (K,), phi (K, M+1), flux (K, 2).");

  m.def(
      "boundary_data",
      [](const std::string& family, int N, std::uint64_t seed, double T) {
        const BoundaryData g = make_boundary_data(g_family_from_string(family), TimeGrid(T, N), seed);
        return py::make_tuple(from_vector(g.left.values), from_vector(g.right.values));
      },
      py::arg("family"), py::arg("N"), py::arg("seed") = 1, py::arg("T") = 1.0, "(left, right) node values.");

  m.def("solve_transposition", &solve_transposition, py::arg("left"), py::arg("right"), py::arg("alpha"), py::arg("M"),
        py::arg("K"), py::arg("profile") = "variable1", py::arg("L") = 1.0, py::arg("T") = 1.0,
        py::arg("method") = "closed-form", py::arg("P") = py::none(),
        "Weak solution for Dirichlet data (left, right); returns an (M+1, N+1) array.");
  m.def("solve_homogeneous", &solve_homogeneous, py::arg("F"), py::arg("alpha"), py::arg("K"),
        py::arg("profile") = "variable1", py::arg("L") = 1.0, py::arg("T") = 1.0, py::arg("method") = "spectral",
        "Zero boundary data, source F of shape (M+1, N+1).");

  m.def("l2_norm_Q", [](const Array& u, double L, double T) { return l2_norm_Q(to_field(u, L, T)); }, py::arg("u"),
        py::arg("L") = 1.0, py::arg("T") = 1.0);
  m.def("hrs_norm_Q", [](const Array& u, double r, double s, double L, double T) { return hrs_norm_Q(to_field(u, L, T), {r, s}); },
        py::arg("u"), py::arg("r"), py::arg("s"), py::arg("L") = 1.0, py::arg("T") = 1.0);
  m.def(
      "hrs_norm_Sigma",
      [](const Array& l, const Array& r, double s, double T) { return hrs_norm_Sigma(to_boundary(l, r, T), {0.0, s}); },
      py::arg("left"), py::arg("right"), py::arg("s"), py::arg("T") = 1.0);
  m.def(
      "negative_norm_Sigma",
      [](const Array& l, const Array& r, double rr, double s, double T) {
        return negative_norm_Sigma(to_boundary(l, r, T), {rr, s});
      },
      py::arg("left"), py::arg("right"), py::arg("r"), py::arg("s"), py::arg("T") = 1.0);

  m.def("run_experiment", &run_experiment, py::arg("name"), py::arg("config") = py::none(),
        "Runs a named experiment; config is key = value text. Returns passed, csv, json.");
  m.def("_trace_exponents", &exact_trace, py::arg("num"), py::arg("den"), py::arg("s"));
}
