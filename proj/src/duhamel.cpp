#include "fracdiff/duhamel.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "fracdiff/errors.hpp"
#include "fracdiff/special_functions.hpp"

namespace fracdiff {

// With z = -lambda sigma^alpha:
//   int_0^sigma kappa   = sigma^alpha E_{a,a+1}(z)                 = (1 - E_{a,1}(z)) / lambda
//   int_0^sigma s kappa = sigma^{a+1} (E_{a,a+1}(z) - E_{a,a+2}(z)) = sigma (E_{a,2}(z) - E_{a,1}(z)) / lambda
// The series forms are used for |z| <= 1, the others beyond, where they
// avoid multiplying a small E by a large power of sigma.
double DuhamelWeights::primitive0(double alpha, double lambda, double sigma) {
  if (sigma <= 0.0) return 0.0;
  const double sa = std::pow(sigma, alpha);
  const double z = -lambda * sa;
  if (z >= -1.0) return sa * mittag_leffler({alpha, alpha + 1.0}, z);
  return (1.0 - mittag_leffler({alpha, 1.0}, z)) / lambda;
}

double DuhamelWeights::primitive1(double alpha, double lambda, double sigma) {
  if (sigma <= 0.0) return 0.0;
  const double sa = std::pow(sigma, alpha);
  const double z = -lambda * sa;
  if (z >= -1.0) {
    return sa * sigma * (mittag_leffler({alpha, alpha + 1.0}, z) - mittag_leffler({alpha, alpha + 2.0}, z));
  }
  return sigma * (mittag_leffler({alpha, 2.0}, z) - mittag_leffler({alpha, 1.0}, z)) / lambda;
}

// Second primitives, same split:
//   int_0^sigma P0   = sigma^{a+1} E_{a,a+2}(z)                   = sigma (1 - E_{a,2}(z)) / lambda
//   int_0^sigma s P0 = sigma^{a+2} (E_{a,a+2}(z) - E_{a,a+3}(z)) = sigma^2 (1/2 - E_{a,2}(z) + E_{a,3}(z)) / lambda
double DuhamelWeights::second_primitive0(double alpha, double lambda, double sigma) {
  if (sigma <= 0.0) return 0.0;
  const double sa = std::pow(sigma, alpha);
  const double z = -lambda * sa;
  if (z >= -1.0) return sa * sigma * mittag_leffler({alpha, alpha + 2.0}, z);
  return sigma * (1.0 - mittag_leffler({alpha, 2.0}, z)) / lambda;
}

double DuhamelWeights::second_primitive1(double alpha, double lambda, double sigma) {
  if (sigma <= 0.0) return 0.0;
  const double sa = std::pow(sigma, alpha);
  const double z = -lambda * sa;
  if (z >= -1.0) {
    return sa * sigma * sigma * (mittag_leffler({alpha, alpha + 2.0}, z) - mittag_leffler({alpha, alpha + 3.0}, z));
  }
  return sigma * sigma * (0.5 - mittag_leffler({alpha, 2.0}, z) + mittag_leffler({alpha, 3.0}, z)) / lambda;
}

DuhamelWeights::DuhamelWeights(double alpha, double lambda, TimeGrid grid)
    : alpha_(alpha), lambda_(lambda), grid_(grid) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("Duhamel weights: alpha must lie in (0, 1]");
  if (!(lambda >= 0.0)) throw DomainError("Duhamel weights: lambda must be non-negative");
  const int N = grid.N;
  const double dt = grid.dt();
  std::vector<double> k0(static_cast<std::size_t>(N + 1)), k1(static_cast<std::size_t>(N + 1));
  for (int m = 0; m <= N; ++m) {
    k0[static_cast<std::size_t>(m)] = primitive0(alpha, lambda, m * dt);
    k1[static_cast<std::size_t>(m)] = primitive1(alpha, lambda, m * dt);
  }
  near_.resize(static_cast<std::size_t>(N));
  far_.resize(static_cast<std::size_t>(N));
  for (int m = 0; m < N; ++m) {
    const auto i = static_cast<std::size_t>(m);
    // On the cell sigma in [m dt, (m+1) dt], F(t_n - sigma) is linear and
    // equals F_{n-m} at the left end, F_{n-m-1} at the right end.
    const double i0 = k0[i + 1] - k0[i];
    const double i1 = (k1[i + 1] - k1[i] - m * dt * i0) / dt;
    near_[i] = i0 - i1;
    far_[i] = i1;
  }

  // Exact weights of int_0^T h(T - sigma) P0(sigma) d sigma for piecewise
  // linear h, minus the trapezoid weights of the same integral.
  layer_.assign(static_cast<std::size_t>(N + 1), 0.0);
  double q0_prev = 0.0;
  double q1_prev = 0.0;
  for (int m = 0; m < N; ++m) {
    const auto i = static_cast<std::size_t>(m);
    const double q0 = second_primitive0(alpha, lambda, (m + 1) * dt);
    const double q1 = second_primitive1(alpha, lambda, (m + 1) * dt);
    const double j0 = q0 - q0_prev;
    const double j1 = (q1 - q1_prev - m * dt * j0) / dt;
    layer_[i] += j0 - j1;
    layer_[i + 1] += j1;
    q0_prev = q0;
    q1_prev = q1;
  }
  for (int m = 0; m <= N; ++m) {
    const double w = (m == 0 || m == N) ? 0.5 * dt : dt;
    layer_[static_cast<std::size_t>(m)] -= w * k0[static_cast<std::size_t>(m)];
  }
}

std::shared_ptr<const DuhamelWeights> DuhamelWeights::get(double alpha, double lambda, TimeGrid grid) {
  static std::mutex mutex;
  static std::map<std::tuple<double, double, double, int>, std::shared_ptr<const DuhamelWeights>> cache;
  const auto key = std::make_tuple(alpha, lambda, grid.T, grid.N);
  {
    const std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto w = std::make_shared<const DuhamelWeights>(alpha, lambda, grid);
  const std::lock_guard<std::mutex> lock(mutex);
  return cache.emplace(key, std::move(w)).first->second;
}

TimeSeries DuhamelWeights::forward(const TimeSeries& F) const {
  if (!(F.grid == grid_)) throw GridMismatchError("Duhamel forward: grid mismatch");
  const int N = grid_.N;
  TimeSeries y(grid_);
  const double* f = F.values.data();
  for (int n = 1; n <= N; ++n) {
    double acc = 0.0;
    for (int m = 0; m < n; ++m) acc += near_[static_cast<std::size_t>(m)] * f[n - m] + far_[static_cast<std::size_t>(m)] * f[n - m - 1];
    y[n] = acc;
  }
  return y;
}

TimeSeries DuhamelWeights::backward(const TimeSeries& f) const {
  if (!(f.grid == grid_)) throw GridMismatchError("Duhamel backward: grid mismatch");
  const int N = grid_.N;
  TimeSeries y(grid_);
  const double* v = f.values.data();
  // Mirror image of forward(): the same products summed in the same order.
  for (int n = N - 1; n >= 0; --n) {
    double acc = 0.0;
    for (int m = 0; m < N - n; ++m) acc += near_[static_cast<std::size_t>(m)] * v[n + m] + far_[static_cast<std::size_t>(m)] * v[n + m + 1];
    y[n] = acc;
  }
  return y;
}

double DuhamelWeights::terminal_layer(const TimeSeries& h) const {
  if (!(h.grid == grid_)) throw GridMismatchError("Duhamel pairing: grid mismatch");
  const int N = grid_.N;
  double correction = 0.0;
  for (int m = 0; m <= N; ++m) correction += layer_[static_cast<std::size_t>(m)] * h[N - m];
  return correction;
}

double DuhamelWeights::pair_backward(const TimeSeries& h, const TimeSeries& f) const {
  if (!(f.grid == grid_)) throw GridMismatchError("Duhamel pairing: grid mismatch");
  return l2_inner(h, backward(f)) + f[f.grid.N] * terminal_layer(h);
}

double DuhamelWeights::pair_forward(const TimeSeries& F, const TimeSeries& h) const {
  if (!(h.grid == grid_) || !(F.grid == grid_)) throw GridMismatchError("Duhamel pairing: grid mismatch");
  const int N = grid_.N;
  double correction = 0.0;
  for (int m = 0; m <= N; ++m) correction += layer_[static_cast<std::size_t>(m)] * h[m];
  return l2_inner(forward(F), h) + F[0] * correction;
}

}  // namespace fracdiff
