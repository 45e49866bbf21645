#include "fracdiff/transposition.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "fracdiff/duhamel.hpp"
#include "fracdiff/errors.hpp"

namespace fracdiff {
namespace {

void require_sizes(const EigenBasis& basis, const TimeGrid& tgrid, int P) {
  if (P < 1 || 4 * P > tgrid.N) {
    std::ostringstream os;
    os << "time test basis size P = " << P << " must satisfy 1 <= P <= N/4 = " << tgrid.N / 4;
    throw BasisSizeError(os.str());
  }
  if (4 * basis.K() > basis.grid.M) {
    std::ostringstream os;
    os << "spatial basis size K = " << basis.K() << " exceeds M/4 = " << basis.grid.M / 4;
    throw BasisSizeError(os.str());
  }
}

}  // namespace

TimeSeries cosine_basis(const TimeGrid& grid, int m) {
  const double T = grid.T;
  if (m == 0) return TimeSeries(grid, std::vector<double>(static_cast<std::size_t>(grid.N + 1), 1.0 / std::sqrt(T)));
  const double c = std::sqrt(2.0 / T);
  TimeSeries s(grid);
  // Index form keeps the nodes exact: cos(m pi n / N).
  for (int n = 0; n <= grid.N; ++n) s[n] = c * std::cos(std::numbers::pi * m * n / grid.N);
  return s;
}

std::vector<TimeSeries> boundary_pairing(const BoundaryData& g, const EigenBasis& basis) {
  std::vector<TimeSeries> h;
  h.reserve(static_cast<std::size_t>(basis.K()));
  for (int k = 0; k < basis.K(); ++k) {
    const auto [f0, fL] = basis.flux[static_cast<std::size_t>(k)];
    TimeSeries s(g.tgrid);
    for (int n = 0; n <= g.tgrid.N; ++n) s[n] = g.left[n] * f0 + g.right[n] * fL;
    h.push_back(std::move(s));
  }
  return h;
}

SpectralSolution weak_solution_riesz(const BoundaryData& g, double alpha, const EigenBasis& basis, int P) {
  const TimeGrid& tg = g.tgrid;
  require_sizes(basis, tg, P);
  const std::vector<TimeSeries> h = boundary_pairing(g, basis);
  std::vector<TimeSeries> psi;
  for (int m = 0; m < P; ++m) psi.push_back(cosine_basis(tg, m));

  std::vector<TimeSeries> modes;
  modes.reserve(static_cast<std::size_t>(basis.K()));
  double total = 0.0;
  double last = 0.0;
  for (int k = 0; k < basis.K(); ++k) {
    const auto w = DuhamelWeights::get(alpha, basis.lambda[static_cast<std::size_t>(k)], tg);
    TimeSeries uk(tg);
    for (int m = 0; m < P; ++m) {
      // Dual response to phi_k psi_m is phi_k V(t); its flux pairs with g
      // through h_k.
      const double coef = -w->pair_backward(h[static_cast<std::size_t>(k)], psi[static_cast<std::size_t>(m)]);
      for (int n = 0; n <= tg.N; ++n) uk[n] += coef * psi[static_cast<std::size_t>(m)][n];
    }
    const double e = l2_inner(h[static_cast<std::size_t>(k)], h[static_cast<std::size_t>(k)]);
    total += e;
    last = e;
    modes.push_back(std::move(uk));
  }
  SpectralSolution out;
  out.truncation_ratio = total > 0.0 ? last / total : 0.0;
  out.truncated = out.truncation_ratio > 1e-6;
  out.u = synthesize_field(modes, basis);
  return out;
}

SpaceTimeField weak_solution_riesz_fields(const BoundaryData& g, double alpha, const EigenBasis& basis,
                                          const Coefficients& coeffs, int P) {
  const TimeGrid& tg = g.tgrid;
  require_sizes(basis, tg, P);
  SpaceTimeField u(basis.grid, tg);
  for (int k = 0; k < basis.K(); ++k) {
    const auto& phi = basis.phi[static_cast<std::size_t>(k)];
    // Layer term of the flux near t = T, from the flux of phi_k itself.
    const auto [f0, fL] = conormal_derivative(phi, coeffs, basis.grid, basis.stencil);
    TimeSeries hk(tg);
    for (int n = 0; n <= tg.N; ++n) hk[n] = g.left[n] * f0 + g.right[n] * fL;
    const double layer = DuhamelWeights::get(alpha, basis.lambda[static_cast<std::size_t>(k)], tg)->terminal_layer(hk);
    for (int m = 0; m < P; ++m) {
      const TimeSeries psi = cosine_basis(tg, m);
      SpaceTimeField src(basis.grid, tg);
      for (int j = 0; j <= basis.grid.M; ++j) {
        for (int n = 0; n <= tg.N; ++n) src.at(j, n) = phi[static_cast<std::size_t>(j)] * psi[n];
      }
      const SpectralSolution v = solve_dual(src, alpha, basis);
      const double coef = -(l2_inner_Sigma(g, dual_flux(v.u, coeffs, basis.stencil)) + psi[tg.N] * layer);
      for (int j = 0; j <= basis.grid.M; ++j) {
        for (int n = 0; n <= tg.N; ++n) u.at(j, n) += coef * phi[static_cast<std::size_t>(j)] * psi[n];
      }
    }
  }
  return u;
}

SpectralSolution weak_solution_closed_form(const BoundaryData& g, double alpha, const EigenBasis& basis) {
  std::vector<TimeSeries> h = boundary_pairing(g, basis);
  double total = 0.0;
  for (const auto& s : h) total += l2_inner(s, s);
  SpectralSolution out;
  out.truncation_ratio = total > 0.0 ? l2_inner(h.back(), h.back()) / total : 0.0;
  out.truncated = out.truncation_ratio > 1e-6;
  for (auto& s : h) {
    for (double& v : s.values) v = -v;
  }
  out.u = synthesize_field(duhamel_modes(h, alpha, basis), basis);
  return out;
}

SpaceTimeField heat_solution_exponential(const BoundaryData& g, const EigenBasis& basis) {
  const std::vector<TimeSeries> h = boundary_pairing(g, basis);
  const double dt = g.tgrid.dt();
  std::vector<TimeSeries> modes;
  modes.reserve(h.size());
  for (int k = 0; k < basis.K(); ++k) {
    const double lambda = basis.lambda[static_cast<std::size_t>(k)];
    const double x = lambda * dt;
    const double decay = std::exp(-x);
    // int_0^dt e^{-lambda (dt - s)} (s / dt) ds and its complement.
    const double w1 = (x - 1.0 + decay) / (lambda * x);
    const double w0 = -std::expm1(-x) / lambda - w1;
    const TimeSeries& hk = h[static_cast<std::size_t>(k)];
    TimeSeries u(g.tgrid);
    for (int n = 0; n < g.tgrid.N; ++n) u[n + 1] = decay * u[n] - (w0 * hk[n] + w1 * hk[n + 1]);
    modes.push_back(std::move(u));
  }
  return synthesize_field(modes, basis);
}

double duality_residual(const SpaceTimeField& u, const BoundaryData& g, const SpaceTimeField& f, double alpha,
                        const EigenBasis& basis, const Coefficients& coeffs) {
  if (!(u.sgrid == f.sgrid) || !(u.tgrid == f.tgrid) || !(g.tgrid == u.tgrid) || !(basis.grid == u.sgrid)) {
    throw GridMismatchError("duality_residual: inputs live on different grids");
  }
  const SpectralSolution v = solve_dual(f, alpha, basis);
  const BoundaryData flux = dual_flux(v.u, coeffs, basis.stencil);
  const double lhs = l2_inner_Q(u, f) + l2_inner_Sigma(g, flux);
  const double nf = l2_norm_Q(f);
  const double scale = l2_norm_Q(u) * nf + l2_norm_Sigma(g) * nf + 1e-300;
  return std::abs(lhs) / scale;
}

}  // namespace fracdiff
