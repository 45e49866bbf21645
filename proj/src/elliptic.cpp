#include "fracdiff/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "fracdiff/errors.hpp"

namespace fracdiff {

SpatialGrid::SpatialGrid(double length, int cells) : L(length), M(cells) {
  if (!(length > 0.0)) throw DomainError("SpatialGrid: length must be positive");
  if (cells < 2) throw DomainError("SpatialGrid: need at least two cells");
}

Coefficients Coefficients::sample(const SpatialGrid& grid, const std::function<double(double)>& a,
                                  const std::function<double(double)>& c, double mu) {
  Coefficients out;
  out.mu = mu;
  out.a.resize(static_cast<std::size_t>(grid.size()));
  out.c.resize(static_cast<std::size_t>(grid.size()));
  for (int j = 0; j <= grid.M; ++j) {
    out.a[static_cast<std::size_t>(j)] = a(grid.node(j));
    out.c[static_cast<std::size_t>(j)] = c(grid.node(j));
  }
  return out;
}

Coefficients Coefficients::constant(const SpatialGrid& grid) {
  return sample(grid, [](double) { return 1.0; }, [](double) { return 0.0; }, 1.0);
}

Coefficients Coefficients::variable1(const SpatialGrid& grid) {
  const double L = grid.L;
  return sample(grid, [L](double x) { return 1.0 + x / (2.0 * L); }, [](double) { return 0.5; }, 1.0);
}

Coefficients Coefficients::from_csv(const std::string& path, const SpatialGrid& grid) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open coefficient file '" + path + "'");
  std::vector<double> as, cs;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    double a = 0.0, c = 0.0;
    if (!(ls >> a >> c)) {
      if (as.empty() && lineno == 1) continue;  // header
      throw ConfigError("coefficient file '" + path + "': bad line " + std::to_string(lineno));
    }
    as.push_back(a);
    cs.push_back(c);
  }
  if (as.size() < 2) throw ConfigError("coefficient file '" + path + "' needs at least two rows");
  const int rows = static_cast<int>(as.size());
  auto interp = [&](const std::vector<double>& v, double x) {
    const double s = x / grid.L * (rows - 1);
    const int i = std::clamp(static_cast<int>(std::floor(s)), 0, rows - 2);
    const double w = s - i;
    return (1.0 - w) * v[static_cast<std::size_t>(i)] + w * v[static_cast<std::size_t>(i + 1)];
  };
  Coefficients out;
  out.a.resize(static_cast<std::size_t>(grid.size()));
  out.c.resize(static_cast<std::size_t>(grid.size()));
  for (int j = 0; j <= grid.M; ++j) {
    out.a[static_cast<std::size_t>(j)] = interp(as, grid.node(j));
    out.c[static_cast<std::size_t>(j)] = interp(cs, grid.node(j));
  }
  out.mu = *std::min_element(out.a.begin(), out.a.end());
  return out;
}

Coefficients Coefficients::from_profile(const std::string& profile, const SpatialGrid& grid) {
  if (profile == "constant") return constant(grid);
  if (profile == "variable1") return variable1(grid);
  return from_csv(profile, grid);
}

SymTridiagonal OperatorMatrices::operator_matrix() const {
  SymTridiagonal t = stiffness;
  for (double& v : t.diag) v /= mass;
  for (double& v : t.off) v /= mass;
  return t;
}

std::vector<double> OperatorMatrices::apply(std::span<const double> u) const {
  const int M = grid.M;
  if (static_cast<int>(u.size()) != M + 1) throw GridMismatchError("operator apply: wrong vector length");
  std::vector<double> out(static_cast<std::size_t>(M + 1), 0.0);
  const double h = grid.h();
  for (int j = 1; j < M; ++j) {
    const std::size_t k = static_cast<std::size_t>(j);
    const double left = a_half[k - 1] * (u[k] - u[k - 1]);
    const double right = a_half[k] * (u[k + 1] - u[k]);
    out[k] = (left - right) / (h * h) + c[k] * u[k];
  }
  return out;
}

OperatorMatrices assemble_operator(const Coefficients& coeffs, const SpatialGrid& grid) {
  const int M = grid.M;
  if (static_cast<int>(coeffs.a.size()) != M + 1 || static_cast<int>(coeffs.c.size()) != M + 1) {
    throw GridMismatchError("assemble_operator: coefficient samples do not match the grid");
  }
  if (!(coeffs.mu > 0.0)) throw EllipticityError("ellipticity floor mu must be positive");
  for (int j = 0; j <= M; ++j) {
    const double a = coeffs.a[static_cast<std::size_t>(j)];
    const double c = coeffs.c[static_cast<std::size_t>(j)];
    if (!(a >= coeffs.mu)) {
      std::ostringstream os;
      os << "ellipticity violated: a(" << grid.node(j) << ") = " << a << " < mu = " << coeffs.mu;
      throw EllipticityError(os.str());
    }
    if (!(c >= 0.0)) {
      std::ostringstream os;
      os << "reaction coefficient negative: c(" << grid.node(j) << ") = " << c;
      throw EllipticityError(os.str());
    }
  }
  const double h = grid.h();
  OperatorMatrices ops;
  ops.grid = grid;
  ops.mass = h;
  ops.c = coeffs.c;
  ops.a_half.resize(static_cast<std::size_t>(M));
  for (int j = 0; j < M; ++j) {
    ops.a_half[static_cast<std::size_t>(j)] =
        0.5 * (coeffs.a[static_cast<std::size_t>(j)] + coeffs.a[static_cast<std::size_t>(j + 1)]);
  }
  ops.stiffness.diag.resize(static_cast<std::size_t>(M - 1));
  ops.stiffness.off.resize(static_cast<std::size_t>(std::max(M - 2, 0)));
  for (int j = 1; j < M; ++j) {
    const std::size_t k = static_cast<std::size_t>(j);
    ops.stiffness.diag[k - 1] = (ops.a_half[k - 1] + ops.a_half[k]) / h + coeffs.c[k] * h;
    if (j < M - 1) ops.stiffness.off[k - 1] = -ops.a_half[k] / h;
  }
  return ops;
}

const char* to_string(FluxStencil s) { return s == FluxStencil::Green ? "green" : "onesided3"; }

FluxStencil flux_stencil_from_string(const std::string& s) {
  if (s == "green") return FluxStencil::Green;
  if (s == "onesided3") return FluxStencil::OneSided3;
  throw ConfigError("unknown flux stencil '" + s + "'");
}

std::pair<double, double> conormal_derivative(std::span<const double> u, const Coefficients& coeffs,
                                              const SpatialGrid& grid, FluxStencil stencil) {
  const int M = grid.M;
  if (M < 3) throw DomainError("conormal_derivative: grid too coarse (M < 3)");
  if (static_cast<int>(u.size()) != M + 1 || static_cast<int>(coeffs.a.size()) != M + 1) {
    throw GridMismatchError("conormal_derivative: vector length does not match the grid");
  }
  const double h = grid.h();
  const auto m = static_cast<std::size_t>(M);
  if (stencil == FluxStencil::Green) {
    const double a0 = 0.5 * (coeffs.a[0] + coeffs.a[1]);
    const double aL = 0.5 * (coeffs.a[m - 1] + coeffs.a[m]);
    return {-a0 * (u[1] - u[0]) / h, aL * (u[m] - u[m - 1]) / h};
  }
  const double d0 = (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * h);
  const double dL = (3.0 * u[m] - 4.0 * u[m - 1] + u[m - 2]) / (2.0 * h);
  return {-coeffs.a[0] * d0, coeffs.a[m] * dL};
}

double mass_inner(std::span<const double> u, std::span<const double> w, const SpatialGrid& grid) {
  const int M = grid.M;
  if (static_cast<int>(u.size()) != M + 1 || static_cast<int>(w.size()) != M + 1) {
    throw GridMismatchError("mass_inner: vector length does not match the grid");
  }
  double acc = 0.5 * (u[0] * w[0] + u[static_cast<std::size_t>(M)] * w[static_cast<std::size_t>(M)]);
  for (int j = 1; j < M; ++j) acc += u[static_cast<std::size_t>(j)] * w[static_cast<std::size_t>(j)];
  return acc * grid.h();
}

std::vector<double> EigenBasis::project(std::span<const double> u) const {
  std::vector<double> coef(static_cast<std::size_t>(K()));
  for (int k = 0; k < K(); ++k) coef[static_cast<std::size_t>(k)] = mass_inner(u, phi[static_cast<std::size_t>(k)], grid);
  return coef;
}

std::vector<double> EigenBasis::synthesize(std::span<const double> coef) const {
  std::vector<double> out(static_cast<std::size_t>(grid.size()), 0.0);
  for (int k = 0; k < K(); ++k) {
    const double c = coef[static_cast<std::size_t>(k)];
    const auto& p = phi[static_cast<std::size_t>(k)];
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += c * p[j];
  }
  return out;
}

namespace {

EigenBasis decompose(const OperatorMatrices& ops, const Coefficients& coeffs, int K, FluxStencil stencil) {
  const SpatialGrid& grid = ops.grid;
  const int M = grid.M;
  const SymTridiagonal A = ops.operator_matrix();
  const std::vector<double> all = tridiagonal_eigenvalues(A);
  const double inv_sqrt_h = 1.0 / std::sqrt(grid.h());

  EigenBasis basis;
  basis.grid = grid;
  basis.stencil = stencil;
  basis.lambda.assign(all.begin(), all.begin() + K);
  std::vector<std::vector<double>> interior;
  interior.reserve(static_cast<std::size_t>(K));
  for (int k = 0; k < K; ++k) {
    std::vector<double> v = tridiagonal_eigenvector(A, all[static_cast<std::size_t>(k)]);
    // Two passes of Gram-Schmidt keep the basis orthonormal when
    // neighbouring eigenvalues are close relative to the matrix norm.
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : interior) {
        double dot = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) dot += v[i] * q[i];
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= dot * q[i];
      }
      double norm = 0.0;
      for (double x : v) norm += x * x;
      norm = std::sqrt(norm);
      for (double& x : v) x /= norm;
    }
    if (v[0] < 0.0) {
      for (double& x : v) x = -x;
    }
    interior.push_back(v);
  }
  for (int k = 0; k < K; ++k) {
    std::vector<double> full(static_cast<std::size_t>(M + 1), 0.0);
    for (int j = 1; j < M; ++j) full[static_cast<std::size_t>(j)] = interior[static_cast<std::size_t>(k)][static_cast<std::size_t>(j - 1)] * inv_sqrt_h;
    basis.flux.push_back(conormal_derivative(full, coeffs, grid, stencil));
    basis.phi.push_back(std::move(full));
  }
  if (!(basis.lambda.front() > 0.0)) throw NonConvergenceError("eigendecompose: non-positive leading eigenvalue");
  return basis;
}

}  // namespace

EigenBasis eigendecompose(const OperatorMatrices& ops, const Coefficients& coeffs, int K, FluxStencil stencil) {
  const int M = ops.grid.M;
  if (K < 1 || 4 * K > M) {
    std::ostringstream os;
    os << "eigendecompose: K = " << K << " must satisfy 1 <= K <= M/4 = " << M / 4;
    throw BasisSizeError(os.str());
  }
  return decompose(ops, coeffs, K, stencil);
}

EigenBasis eigendecompose_full(const OperatorMatrices& ops, const Coefficients& coeffs, FluxStencil stencil) {
  return decompose(ops, coeffs, ops.grid.M - 1, stencil);
}

}  // namespace fracdiff
