#pragma once

// Dual (adjoint) problem with the backward Riemann-Liouville derivative:
//   D_t^alpha v + A v = f,  v = 0 on the boundary,  I_{T-}^{1-alpha} v(T) = 0,
// solved through the time-reflected Duhamel formula.

#include "fracdiff/elliptic.hpp"
#include "fracdiff/fields.hpp"
#include "fracdiff/forward_solver.hpp"

namespace fracdiff {

/// Direct backward Duhamel sums.
SpectralSolution solve_dual(const SpaceTimeField& f, double alpha, const EigenBasis& basis);

/// time_reverse o forward solve o time_reverse. Agrees with solve_dual
/// exactly on the grid.
SpectralSolution solve_dual_reflected(const SpaceTimeField& f, double alpha, const EigenBasis& basis);

/// Mode-level backward Duhamel integrals.
std::vector<TimeSeries> dual_modes(const std::vector<TimeSeries>& f, double alpha, const EigenBasis& basis);

/// Conormal flux of each time slice of v.
BoundaryData dual_flux(const SpaceTimeField& v, const Coefficients& coeffs,
                       FluxStencil stencil = FluxStencil::Green);

/// |I_{T-}^{1-alpha} v (T)| / |v|_{L2(0,T)} with the product-integration
/// backward integral at the last node.
double terminal_residual(const TimeSeries& v, double alpha);

/// (u_F, f)_{L2(Q)} and (F, v_f)_{L2(Q)} on the retained modes, with the
/// endpoint layers of u_F at t = 0 and of v_f at t = T integrated exactly.
double forward_pairing(const SpaceTimeField& F, const SpaceTimeField& f, double alpha, const EigenBasis& basis);
double dual_pairing(const SpaceTimeField& F, const SpaceTimeField& f, double alpha, const EigenBasis& basis);

}  // namespace fracdiff
