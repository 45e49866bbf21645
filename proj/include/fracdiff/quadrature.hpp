#pragma once

#include <functional>
#include <span>
#include <vector>

namespace fracdiff {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  bool converged = false;
};

/// Adaptive Gauss-Kronrod (7/15) on [a, b]. Subdivides the interval with
/// the largest error estimate until the total estimate falls below
/// max(abs_tol, rel_tol * |value|) or max_intervals is reached.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double rel_tol, double abs_tol, int max_intervals = 2000);

/// Same, over consecutive panels [breaks[i], breaks[i+1]] sharing one
/// global tolerance. Breakpoints must be non-decreasing.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    std::span<const double> breaks, double rel_tol,
                                    double abs_tol, int max_intervals = 4000);

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace fracdiff
