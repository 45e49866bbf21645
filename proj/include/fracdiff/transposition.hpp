#pragma once

// Weak solutions for L2 Dirichlet data defined by the transposition identity
//   (u, f)_{L2(Q)} + (g, d_nu v_f)_{L2(Sigma)} = 0  for every f,
// where v_f solves the dual problem.

#include "fracdiff/dual_solver.hpp"
#include "fracdiff/elliptic.hpp"
#include "fracdiff/fields.hpp"
#include "fracdiff/forward_solver.hpp"

namespace fracdiff {

/// Orthonormal cosine basis of L2(0, T): psi_0 = 1/sqrt(T),
/// psi_m = sqrt(2/T) cos(m pi t / T). Exactly orthonormal under the
/// trapezoid rule on the grid for m <= N.
TimeSeries cosine_basis(const TimeGrid& grid, int m);

/// Boundary pairing h_k(t) = g_left(t) flux_k(0) + g_right(t) flux_k(L).
std::vector<TimeSeries> boundary_pairing(const BoundaryData& g, const EigenBasis& basis);

/// Riesz construction: u = sum_{k < K, m < P} u_km phi_k psi_m with
/// u_km = -(g, d_nu v_km)_{L2(Sigma)} and v_km the dual solution for the
/// source phi_k psi_m. The pairing integrates the (T - t)^alpha layer of
/// the flux exactly (DuhamelWeights::pair_backward). Requires P <= N/4 and
/// K <= M/4.
SpectralSolution weak_solution_riesz(const BoundaryData& g, double alpha, const EigenBasis& basis, int P);

/// Same coefficients, computed by literally assembling each source
/// phi_k psi_m on the grid, solving the dual problem and taking the
/// conormal flux of the field, with the same layer term. Quadratic in the
/// grid size per coefficient; intended for cross-checks on small grids.
SpaceTimeField weak_solution_riesz_fields(const BoundaryData& g, double alpha, const EigenBasis& basis,
                                          const Coefficients& coeffs, int P);

/// Closed form u_k = -kappa_k * h_k by product integration.
/// truncation_ratio: energy share of the last mode of the boundary pairing.
SpectralSolution weak_solution_closed_form(const BoundaryData& g, double alpha, const EigenBasis& basis);

/// Heat equation (alpha = 1) with the same data: each mode solves
/// u_k' + lambda_k u_k = -h_k exactly for piecewise-linear h_k.
SpaceTimeField heat_solution_exponential(const BoundaryData& g, const EigenBasis& basis);

/// |(u, f)_Q + (g, d_nu v_f)_Sigma| / (|u| |f| + |g| |f| + 1e-300).
double duality_residual(const SpaceTimeField& u, const BoundaryData& g, const SpaceTimeField& f, double alpha,
                        const EigenBasis& basis, const Coefficients& coeffs);

}  // namespace fracdiff
