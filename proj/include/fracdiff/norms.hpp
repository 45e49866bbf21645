#pragma once

// Fractional Sobolev norms of node data: Slobodeckij norms in time and
// space, mixed H^{r,s} norms on Q and Sigma, Hardy and distance weighted
// norms, spectral power norms and the dual norm on Sigma.
//
// Double integrals are evaluated on the piecewise-linear interpolant:
// coincident and touching cell pairs exactly, pairs up to sixteen cells apart
// by a tensor Gauss rule, and the rest by the corner trapezoid rule.

#include <span>
#include <vector>

#include "fracdiff/elliptic.hpp"
#include "fracdiff/exponents.hpp"
#include "fracdiff/fields.hpp"

namespace fracdiff {

/// (space order r, time order s), |r| <= 2 and |s| <= 1.
struct RegularityIndex {
  double r = 0.0;
  double s = 0.0;

  RegularityIndex() = default;
  RegularityIndex(double space, double time);
  /// Evaluates an exact index at a given alpha.
  static RegularityIndex at(const ExactIndex& idx, double alpha);
};

/// rho(x) = min(x, L - x) at the nodes.
struct WeightFunction {
  std::vector<double> rho;
  static WeightFunction distance(const SpatialGrid& grid);
};

/// A norm value together with a divergence flag for weighted integrals
/// whose discrete value is dominated by the cells next to the singularity.
struct FlaggedNorm {
  double value = 0.0;
  double weighted = 0.0;  // the weighted integral alone
  bool divergent = false;
};

struct SpectralNorm {
  double value = 0.0;
  double tail = 0.0;  // share of the L2 energy outside the basis
  bool truncated = false;
};

/// Gagliardo seminorm of the interpolant of v on a uniform grid,
/// s in (0, 1).
double slobodeckij_seminorm(std::span<const double> v, double spacing, double s);

double slobodeckij_time_norm(const TimeSeries& h, double s);
double slobodeckij_space_norm(std::span<const double> u, double r, const SpatialGrid& grid);

/// ||u||^2 = ||u||^2_{L2(Q)} + int_0^T |u(t)|^2_{H^r} dt + |u|^2_{H^s(0,T;L2)}.
/// The L2 part is counted once; r = 0 or s = 0 drops that seminorm.
/// Requires 0 <= r, s < 1.
double hrs_norm_Q(const SpaceTimeField& u, RegularityIndex idx);

/// Sum over both endpoints of the H^s(0,T) norms squared (the spatial
/// factor is Euclidean on the two endpoint values for every r).
/// Requires 0 <= s < 1.
double hrs_norm_Sigma(const BoundaryData& g, RegularityIndex idx);

/// (||h||^2_{H^s} + int_0^T |h|^2 t^{-2s} dt)^{1/2}. The weighted integral
/// uses the midpoint rule on the first cell and the trapezoid rule beyond.
/// Flagged divergent when the first cell carries more than ten times the
/// rest, or when h(0) != 0 and s >= 1/2.
FlaggedNorm hardy_weighted_time_norm(const TimeSeries& h, double s);

/// (||u||^2_{H^{1/2}} + int |u|^2 / rho dx)^{1/2}, midpoint rule on the two
/// boundary cells. Flagged divergent when those cells carry more than ten
/// times the rest or u does not vanish at the endpoints.
FlaggedNorm weighted_boundary_norm_H00(std::span<const double> u, const WeightFunction& w,
                                       const SpatialGrid& grid);

/// (sum_k lambda_k^{2 theta} c_k^2)^{1/2}, theta in [0, 1].
SpectralNorm spectral_power_norm(std::span<const double> u, const EigenBasis& basis, double theta);
/// Per slice, then L2 in time by the trapezoid rule.
SpectralNorm spectral_power_norm(const SpaceTimeField& u, const EigenBasis& basis, double theta);

/// Dual norm of H^{-s}(0,T) per endpoint with -1/2 < s <= 0 (r <= 0 is
/// ignored): ||g||^2 = sum (M g)^T S^{-1} (M g), M the trapezoid mass and S
/// the H^{-s} Gram matrix of the nodal hat functions. Throws
/// IllConditionedError when the condition bound of S exceeds 1e12.
double negative_norm_Sigma(const BoundaryData& g, RegularityIndex idx);

}  // namespace fracdiff
