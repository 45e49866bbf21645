#include "fracdiff/dual_solver.hpp"

#include <cmath>

#include "fracdiff/duhamel.hpp"
#include "fracdiff/errors.hpp"

namespace fracdiff {

std::vector<TimeSeries> dual_modes(const std::vector<TimeSeries>& f, double alpha, const EigenBasis& basis) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("solve_dual: alpha must lie in (0, 1]");
  std::vector<TimeSeries> out;
  out.reserve(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) {
    out.push_back(DuhamelWeights::get(alpha, basis.lambda[k], f[k].grid)->backward(f[k]));
  }
  return out;
}

SpectralSolution solve_dual(const SpaceTimeField& f, double alpha, const EigenBasis& basis) {
  const std::vector<TimeSeries> fk = project_field(f, basis);
  SpectralSolution out;
  const double total = l2_inner_Q(f, f);
  out.truncation_ratio = total > 0.0 ? l2_inner(fk.back(), fk.back()) / total : 0.0;
  out.truncated = out.truncation_ratio > 1e-6;
  out.u = synthesize_field(dual_modes(fk, alpha, basis), basis);
  return out;
}

SpectralSolution solve_dual_reflected(const SpaceTimeField& f, double alpha, const EigenBasis& basis) {
  std::vector<TimeSeries> fk = project_field(f, basis);
  SpectralSolution out;
  const double total = l2_inner_Q(f, f);
  out.truncation_ratio = total > 0.0 ? l2_inner(fk.back(), fk.back()) / total : 0.0;
  out.truncated = out.truncation_ratio > 1e-6;
  for (auto& s : fk) s = time_reverse(s);
  std::vector<TimeSeries> w = duhamel_modes(fk, alpha, basis);
  for (auto& s : w) s = time_reverse(s);
  out.u = synthesize_field(w, basis);
  return out;
}

BoundaryData dual_flux(const SpaceTimeField& v, const Coefficients& coeffs, FluxStencil stencil) {
  BoundaryData out(v.tgrid);
  for (int n = 0; n <= v.tgrid.N; ++n) {
    const auto [f0, fL] = conormal_derivative(v.slice(n), coeffs, v.sgrid, stencil);
    out.left[n] = f0;
    out.right[n] = fL;
  }
  return out;
}

double terminal_residual(const TimeSeries& v, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("terminal_residual: alpha must lie in (0, 1)");
  const int N = v.grid.N;
  const double at_T = std::abs(backward_integral(v, 1.0 - alpha)[N]);
  const double norm = l2_norm(v);
  return norm > 0.0 ? at_T / norm : at_T;
}

namespace {

template <class Pair>
double modal_pairing(const SpaceTimeField& F, const SpaceTimeField& f, double alpha, const EigenBasis& basis, Pair pair) {
  if (!(F.sgrid == f.sgrid) || !(F.tgrid == f.tgrid) || !(basis.grid == F.sgrid)) {
    throw GridMismatchError("pairing: inputs live on different grids");
  }
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("pairing: alpha must lie in (0, 1]");
  const std::vector<TimeSeries> Fk = project_field(F, basis);
  const std::vector<TimeSeries> fk = project_field(f, basis);
  double acc = 0.0;
  for (std::size_t k = 0; k < Fk.size(); ++k) {
    acc += pair(*DuhamelWeights::get(alpha, basis.lambda[k], F.tgrid), Fk[k], fk[k]);
  }
  return acc;
}

}  // namespace

double forward_pairing(const SpaceTimeField& F, const SpaceTimeField& f, double alpha, const EigenBasis& basis) {
  return modal_pairing(F, f, alpha, basis, [](const DuhamelWeights& w, const TimeSeries& a, const TimeSeries& b) {
    return w.pair_forward(a, b);
  });
}

double dual_pairing(const SpaceTimeField& F, const SpaceTimeField& f, double alpha, const EigenBasis& basis) {
  return modal_pairing(F, f, alpha, basis, [](const DuhamelWeights& w, const TimeSeries& a, const TimeSeries& b) {
    return w.pair_backward(a, b);
  });
}

}  // namespace fracdiff
