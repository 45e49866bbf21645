#include "fracdiff/forward_solver.hpp"

#include <cmath>
#include <sstream>

#include "fracdiff/duhamel.hpp"
#include "fracdiff/errors.hpp"
#include "fracdiff/special_functions.hpp"

namespace fracdiff {
namespace {

void require_alpha(double alpha, bool allow_one) {
  const bool ok = allow_one ? (alpha > 0.0 && alpha <= 1.0) : (alpha > 0.0 && alpha < 1.0);
  if (!ok) {
    std::ostringstream os;
    os << "order alpha = " << alpha << " outside " << (allow_one ? "(0, 1]" : "(0, 1)");
    throw DomainError(os.str());
  }
}

double series_energy(const TimeSeries& s) { return l2_inner(s, s); }

}  // namespace

std::vector<TimeSeries> duhamel_modes(const std::vector<TimeSeries>& F, double alpha, const EigenBasis& basis) {
  require_alpha(alpha, true);
  std::vector<TimeSeries> out;
  out.reserve(F.size());
  for (std::size_t k = 0; k < F.size(); ++k) {
    const auto w = DuhamelWeights::get(alpha, basis.lambda[k], F[k].grid);
    out.push_back(w->forward(F[k]));
  }
  return out;
}

SpectralSolution solve_homogeneous_spectral(const SpaceTimeField& F, double alpha, const EigenBasis& basis) {
  require_alpha(alpha, true);
  const std::vector<TimeSeries> Fk = project_field(F, basis);
  SpectralSolution out;
  const double total = l2_inner_Q(F, F);
  const double last = series_energy(Fk.back());
  out.truncation_ratio = total > 0.0 ? last / total : 0.0;
  out.truncated = out.truncation_ratio > 1e-6;
  out.u = synthesize_field(duhamel_modes(Fk, alpha, basis), basis);
  return out;
}

SpaceTimeField solve_homogeneous_l1(const SpaceTimeField& F, double alpha, const Coefficients& coeffs) {
  require_alpha(alpha, false);
  for (double v : F.values) {
    if (!std::isfinite(v)) throw NonConvergenceError("solve_homogeneous_l1: non-finite source");
  }
  const SpatialGrid& sg = F.sgrid;
  const TimeGrid& tg = F.tgrid;
  const int M = sg.M;
  const int N = tg.N;
  const SymTridiagonal A = assemble_operator(coeffs, sg).operator_matrix();
  const std::vector<double>& b = l1_weights(alpha, N);
  const double s = 1.0 / (gamma_fn(2.0 - alpha) * std::pow(tg.dt(), alpha));

  // Interior history, u[n][i] for interior node i + 1.
  std::vector<std::vector<double>> u(static_cast<std::size_t>(N + 1), std::vector<double>(static_cast<std::size_t>(M - 1), 0.0));
  std::vector<double> rhs(static_cast<std::size_t>(M - 1));
  for (int n = 1; n <= N; ++n) {
    for (int i = 0; i < M - 1; ++i) {
      const auto ii = static_cast<std::size_t>(i);
      double hist = 0.0;
      for (int j = 1; j < n; ++j) {
        hist += b[static_cast<std::size_t>(j)] *
                (u[static_cast<std::size_t>(n - j)][ii] - u[static_cast<std::size_t>(n - j - 1)][ii]);
      }
      rhs[ii] = F.at(i + 1, n) + s * b[0] * u[static_cast<std::size_t>(n - 1)][ii] - s * hist;
    }
    u[static_cast<std::size_t>(n)] = tridiagonal_solve(A, s * b[0], rhs);
  }
  SpaceTimeField out(sg, tg);
  for (int n = 0; n <= N; ++n) {
    for (int i = 0; i < M - 1; ++i) out.at(i + 1, n) = u[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)];
  }
  return out;
}

void require_compatible(const BoundaryData& g) {
  const double gl = g.left[0];
  const double gr = g.right[0];
  if (std::abs(gl) > 1e-12 || std::abs(gr) > 1e-12) {
    std::ostringstream os;
    os << "boundary data must vanish at t = 0 (g_left(0) = " << gl << ", g_right(0) = " << gr << ")";
    throw CompatibilityError(os.str());
  }
}

SpaceTimeField lift_boundary_data(const BoundaryData& g, const SpatialGrid& sgrid) {
  require_compatible(g);
  SpaceTimeField out(sgrid, g.tgrid);
  const int M = sgrid.M;
  for (int j = 0; j <= M; ++j) {
    const double r = static_cast<double>(j) / M;
    for (int n = 0; n <= g.tgrid.N; ++n) {
      // Exact endpoint values, so that the trace reproduces g bit for bit.
      double v;
      if (j == 0) {
        v = g.left[n];
      } else if (j == M) {
        v = g.right[n];
      } else {
        v = g.left[n] * (1.0 - r) + g.right[n] * r;
      }
      out.at(j, n) = v;
    }
  }
  return out;
}

SpaceTimeField lifted_source(const SpaceTimeField& lift, double alpha, const OperatorMatrices& ops) {
  const int M = lift.sgrid.M;
  const int N = lift.tgrid.N;
  SpaceTimeField F(lift.sgrid, lift.tgrid);
  for (int n = 0; n <= N; ++n) {
    const std::vector<double> Ag = ops.apply(lift.slice(n));
    for (int j = 1; j < M; ++j) F.at(j, n) = -Ag[static_cast<std::size_t>(j)];
  }
  if (alpha < 1.0) {
    for (int j = 1; j < M; ++j) {
      const TimeSeries d = caputo_derivative(lift.trace(j), alpha);
      for (int n = 0; n <= N; ++n) F.at(j, n) -= d[n];
    }
  } else {
    // First-order backward difference at alpha = 1.
    for (int j = 1; j < M; ++j) {
      for (int n = 1; n <= N; ++n) F.at(j, n) -= (lift.at(j, n) - lift.at(j, n - 1)) / lift.tgrid.dt();
    }
  }
  return F;
}

SpectralSolution solve_lifted(const BoundaryData& g, double alpha, const Coefficients& coeffs, const EigenBasis& basis) {
  require_alpha(alpha, true);
  const SpaceTimeField lift = lift_boundary_data(g, basis.grid);
  const OperatorMatrices ops = assemble_operator(coeffs, basis.grid);
  SpectralSolution sol = solve_homogeneous_spectral(lifted_source(lift, alpha, ops), alpha, basis);
  sol.u += lift;
  return sol;
}

double maxreg_surrogate(const SpaceTimeField& u, double alpha, const OperatorMatrices& ops) {
  const int M = u.sgrid.M;
  const int N = u.tgrid.N;
  SpaceTimeField Au(u.sgrid, u.tgrid);
  for (int n = 0; n <= N; ++n) {
    const std::vector<double> a = ops.apply(u.slice(n));
    for (int j = 0; j <= M; ++j) Au.at(j, n) = a[static_cast<std::size_t>(j)];
  }
  SpaceTimeField Du(u.sgrid, u.tgrid);
  for (int j = 0; j <= M; ++j) Du.set_trace(j, caputo_derivative(u.trace(j), alpha));
  return std::sqrt(l2_inner_Q(Au, Au) + l2_inner_Q(Du, Du));
}

}  // namespace fracdiff
