#pragma once

// Homogeneous-boundary problem  d_t^alpha u + A u = F,  u = 0 on the
// boundary,  u(., 0) = 0, plus the lifting construction for smooth
// Dirichlet data.

#include "fracdiff/elliptic.hpp"
#include "fracdiff/fields.hpp"

namespace fracdiff {

/// Solution with a spectral truncation diagnostic: the share of the
/// source energy carried by the last retained mode.
struct SpectralSolution {
  SpaceTimeField u;
  double truncation_ratio = 0.0;
  bool truncated = false;  // truncation_ratio > 1e-6
};

/// Spectral Duhamel solve, alpha in (0, 1].
SpectralSolution solve_homogeneous_spectral(const SpaceTimeField& F, double alpha, const EigenBasis& basis);

/// Mode-level variant: Duhamel integral of each coefficient series.
std::vector<TimeSeries> duhamel_modes(const std::vector<TimeSeries>& F, double alpha, const EigenBasis& basis);

/// Implicit L1 time stepping with the finite difference operator,
/// alpha in (0, 1).
SpaceTimeField solve_homogeneous_l1(const SpaceTimeField& F, double alpha, const Coefficients& coeffs);

/// g~(x, t) = g_left(t) (1 - x/L) + g_right(t) x/L. Requires g(0) = 0.
SpaceTimeField lift_boundary_data(const BoundaryData& g, const SpatialGrid& sgrid);

/// Source of the lifted problem, -A_h g~ - d_t^alpha g~, with the L1 scheme
/// in time.
SpaceTimeField lifted_source(const SpaceTimeField& lift, double alpha, const OperatorMatrices& ops);

/// u = w + g~ with w the spectral solution for the lifted source.
SpectralSolution solve_lifted(const BoundaryData& g, double alpha, const Coefficients& coeffs,
                              const EigenBasis& basis);

/// Maximal-regularity surrogate (|A u|^2 + |d_t^alpha u|^2)^{1/2} in L2(Q),
/// with A_h and the L1 scheme.
double maxreg_surrogate(const SpaceTimeField& u, double alpha, const OperatorMatrices& ops);

/// Checks g(0) = 0 at both endpoints within 1e-12.
void require_compatible(const BoundaryData& g);

}  // namespace fracdiff
