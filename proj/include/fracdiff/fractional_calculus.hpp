#pragma once

// Discrete fractional operators on uniform time grids.

#include <vector>

namespace fracdiff {

/// Uniform grid t_n = n T / N, n = 0..N, on [0, T].
struct TimeGrid {
  double T = 1.0;
  int N = 1;

  TimeGrid() = default;
  TimeGrid(double horizon, int steps);

  double dt() const { return T / N; }
  double node(int n) const { return n == N ? T : n * dt(); }
  int size() const { return N + 1; }
  bool operator==(const TimeGrid& other) const = default;
};

/// Node values of a scalar function of time.
struct TimeSeries {
  TimeGrid grid;
  std::vector<double> values;

  TimeSeries() = default;
  TimeSeries(TimeGrid g, std::vector<double> v);
  explicit TimeSeries(TimeGrid g);

  template <class F>
  static TimeSeries sample(TimeGrid g, F&& f) {
    TimeSeries s(g);
    for (int n = 0; n <= g.N; ++n) s.values[static_cast<std::size_t>(n)] = f(g.node(n));
    return s;
  }

  double operator[](int n) const { return values[static_cast<std::size_t>(n)]; }
  double& operator[](int n) { return values[static_cast<std::size_t>(n)]; }
};

/// L1 approximation of the Caputo derivative of order alpha in (0,1).
/// The value at t_0 is defined as 0.
TimeSeries caputo_derivative(const TimeSeries& u, double alpha);

/// Forward Riemann-Liouville integral of order nu > 0 from t = 0, by
/// product integration of the piecewise-linear interpolant.
TimeSeries forward_integral(const TimeSeries& h, double nu);

/// Forward Riemann-Liouville derivative d/dt I^{1-alpha}, with one-sided
/// second-order differences of the product-integrated integral. The value
/// at t_0 is extrapolated.
TimeSeries forward_rl_derivative(const TimeSeries& h, double alpha);

/// Backward integral (1/Gamma(nu)) int_t^T (tau - t)^{nu-1} h(tau) dtau.
TimeSeries backward_integral(const TimeSeries& h, double nu);

/// Backward Riemann-Liouville derivative
/// -(1/Gamma(1-alpha)) d/dt int_t^T (tau - t)^{-alpha} h(tau) dtau.
/// The value at t_N is extrapolated.
TimeSeries backward_rl_derivative(const TimeSeries& h, double alpha);

/// Reverses the node values: t -> T - t.
TimeSeries time_reverse(const TimeSeries& h);

/// Trapezoid inner product on the grid.
double l2_inner(const TimeSeries& a, const TimeSeries& b);
double l2_norm(const TimeSeries& a);

/// Trapezoid weights of a uniform grid.
std::vector<double> trapezoid_weights(const TimeGrid& grid);

/// L1 weights b_j = (j+1)^{1-alpha} - j^{1-alpha}, j = 0..N-1. Tables are
/// cached per (alpha, N) and shared read-only.
const std::vector<double>& l1_weights(double alpha, int N);

}  // namespace fracdiff
