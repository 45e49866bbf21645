#pragma once

// Sturm-Liouville operator A u = -(a u')' + c u on (0, L), Dirichlet
// conditions, its discrete eigenstructure and conormal fluxes.

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fracdiff/linalg.hpp"

namespace fracdiff {

/// Uniform nodes x_j = j h, h = L / M, j = 0..M.
struct SpatialGrid {
  double L = 1.0;
  int M = 1;

  SpatialGrid() = default;
  SpatialGrid(double length, int cells);

  double h() const { return L / M; }
  double node(int j) const { return j == M ? L : j * h(); }
  int size() const { return M + 1; }
  bool operator==(const SpatialGrid& other) const = default;
};

/// Node samples of a and c plus the ellipticity floor mu.
struct Coefficients {
  std::vector<double> a;
  std::vector<double> c;
  double mu = 1.0;

  static Coefficients sample(const SpatialGrid& grid, const std::function<double(double)>& a,
                             const std::function<double(double)>& c, double mu);
  /// a = 1, c = 0.
  static Coefficients constant(const SpatialGrid& grid);
  /// a = 1 + x / (2L), c = 1/2, mu = 1.
  static Coefficients variable1(const SpatialGrid& grid);
  /// Two-column CSV (a, c) on its own uniform grid over [0, L], linearly
  /// interpolated onto `grid`. An optional header line is skipped. mu is
  /// taken as the minimum of the interpolated a.
  static Coefficients from_csv(const std::string& path, const SpatialGrid& grid);
  /// Resolves "constant", "variable1" or a CSV path.
  static Coefficients from_profile(const std::string& profile, const SpatialGrid& grid);
};

/// Interior-node matrices of the lumped finite element discretization.
/// stiffness: (a_{j-1/2} + a_{j+1/2}) / h + c_j h on the diagonal,
/// -a_{j+1/2} / h off the diagonal. The lumped mass is h I.
struct OperatorMatrices {
  SpatialGrid grid;
  SymTridiagonal stiffness;
  double mass = 0.0;
  std::vector<double> a_half;  // a_{j+1/2}, j = 0..M-1
  std::vector<double> c;       // node samples of c

  /// Discrete operator A_h = mass^{-1} stiffness.
  SymTridiagonal operator_matrix() const;
  /// A_h applied to a full node vector; boundary entries of the result are 0.
  std::vector<double> apply(std::span<const double> u) const;
};

OperatorMatrices assemble_operator(const Coefficients& coeffs, const SpatialGrid& grid);

/// Boundary flux stencil.
///   Green: -a_{1/2}(u_1 - u_0)/h and a_{M-1/2}(u_M - u_{M-1})/h, the flux
///          that closes the discrete summation-by-parts identity.
///   OneSided3: a(x_b) times the second order one-sided difference.
enum class FluxStencil { Green, OneSided3 };

const char* to_string(FluxStencil s);
FluxStencil flux_stencil_from_string(const std::string& s);

/// Outward conormal derivative (a u' nu) at x = 0 and x = L.
std::pair<double, double> conormal_derivative(std::span<const double> u, const Coefficients& coeffs,
                                              const SpatialGrid& grid,
                                              FluxStencil stencil = FluxStencil::Green);

struct EigenBasis {
  SpatialGrid grid;
  FluxStencil stencil = FluxStencil::Green;
  std::vector<double> lambda;                       // ascending
  std::vector<std::vector<double>> phi;             // full node vectors, zero on the boundary
  std::vector<std::pair<double, double>> flux;      // (x = 0, x = L)

  int K() const { return static_cast<int>(lambda.size()); }
  /// Coefficients (u, phi_k) under the lumped mass inner product.
  std::vector<double> project(std::span<const double> u) const;
  /// sum_k coef_k phi_k as a full node vector.
  std::vector<double> synthesize(std::span<const double> coef) const;
};

/// First K eigenpairs, K <= M/4.
EigenBasis eigendecompose(const OperatorMatrices& ops, const Coefficients& coeffs, int K,
                          FluxStencil stencil = FluxStencil::Green);

/// Every interior eigenpair (K = M - 1). Only meant for residual checks on
/// coarse grids where the unresolved upper modes still matter.
EigenBasis eigendecompose_full(const OperatorMatrices& ops, const Coefficients& coeffs,
                               FluxStencil stencil = FluxStencil::Green);

/// Lumped mass inner product of two full node vectors.
double mass_inner(std::span<const double> u, std::span<const double> w, const SpatialGrid& grid);

}  // namespace fracdiff
