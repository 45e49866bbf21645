#include "fracdiff/fractional_calculus.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <utility>

#include "fracdiff/errors.hpp"
#include "fracdiff/special_functions.hpp"

namespace fracdiff {
namespace {

void require_order(double alpha, const char* who) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    std::ostringstream os;
    os << who << ": order must lie in (0,1), got " << alpha;
    throw DomainError(os.str());
  }
}

void require_length(const TimeSeries& s, const char* who) {
  if (static_cast<int>(s.values.size()) != s.grid.N + 1) {
    throw GridMismatchError(std::string(who) + ": series length does not match its grid");
  }
}

}  // namespace

TimeGrid::TimeGrid(double horizon, int steps) : T(horizon), N(steps) {
  if (!(horizon > 0.0)) throw DomainError("TimeGrid: horizon must be positive");
  if (steps < 1) throw DomainError("TimeGrid: need at least one step");
}

TimeSeries::TimeSeries(TimeGrid g, std::vector<double> v) : grid(g), values(std::move(v)) {
  require_length(*this, "TimeSeries");
}

TimeSeries::TimeSeries(TimeGrid g) : grid(g), values(static_cast<std::size_t>(g.N + 1), 0.0) {}

const std::vector<double>& l1_weights(double alpha, int N) {
  static std::mutex mutex;
  static std::map<std::pair<double, int>, std::unique_ptr<const std::vector<double>>> cache;
  const std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{alpha, N}];
  if (!slot) {
    auto w = std::make_unique<std::vector<double>>(static_cast<std::size_t>(N));
    const double p = 1.0 - alpha;
    for (int j = 0; j < N; ++j) {
      (*w)[static_cast<std::size_t>(j)] = std::pow(j + 1.0, p) - std::pow(static_cast<double>(j), p);
    }
    slot = std::move(w);
  }
  return *slot;
}

TimeSeries caputo_derivative(const TimeSeries& u, double alpha) {
  require_order(alpha, "caputo_derivative");
  require_length(u, "caputo_derivative");
  const int N = u.grid.N;
  const std::vector<double>& b = l1_weights(alpha, N);
  const double scale = 1.0 / (gamma_fn(2.0 - alpha) * std::pow(u.grid.dt(), alpha));
  TimeSeries out(u.grid);
  for (int n = 1; n <= N; ++n) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j) acc += b[static_cast<std::size_t>(j)] * (u[n - j] - u[n - j - 1]);
    out[n] = scale * acc;
  }
  return out;
}

TimeSeries forward_integral(const TimeSeries& h, double nu) {
  if (!(nu > 0.0)) throw DomainError("fractional integral: order must be positive");
  require_length(h, "forward_integral");
  const int N = h.grid.N;
  std::vector<double> p(static_cast<std::size_t>(N + 2));
  for (int m = 0; m <= N + 1; ++m) p[static_cast<std::size_t>(m)] = std::pow(static_cast<double>(m), nu + 1.0);
  // c[m] weights node n - m for 1 <= m <= n - 1.
  std::vector<double> c(static_cast<std::size_t>(N + 1), 0.0);
  for (int m = 1; m <= N; ++m) {
    c[static_cast<std::size_t>(m)] = p[static_cast<std::size_t>(m + 1)] - 2.0 * p[static_cast<std::size_t>(m)] +
                                     p[static_cast<std::size_t>(m - 1)];
  }
  const double scale = std::pow(h.grid.dt(), nu) / gamma_fn(nu + 2.0);
  TimeSeries out(h.grid);
  for (int n = 1; n <= N; ++n) {
    const double first = p[static_cast<std::size_t>(n - 1)] - (n - 1.0 - nu) * std::pow(static_cast<double>(n), nu);
    double acc = first * h[0] + h[n];
    for (int j = 1; j < n; ++j) acc += c[static_cast<std::size_t>(n - j)] * h[j];
    out[n] = scale * acc;
  }
  return out;
}

TimeSeries forward_rl_derivative(const TimeSeries& h, double alpha) {
  require_order(alpha, "rl_derivative");
  const int N = h.grid.N;
  if (N < 3) throw DomainError("rl_derivative: need at least three steps");
  const TimeSeries J = forward_integral(h, 1.0 - alpha);
  const double inv2dt = 1.0 / (2.0 * h.grid.dt());
  TimeSeries out(h.grid);
  out[1] = (-3.0 * J[1] + 4.0 * J[2] - J[3]) * inv2dt;
  for (int n = 2; n <= N; ++n) out[n] = (3.0 * J[n] - 4.0 * J[n - 1] + J[n - 2]) * inv2dt;
  out[0] = 2.0 * out[1] - out[2];
  return out;
}

TimeSeries backward_integral(const TimeSeries& h, double nu) {
  return time_reverse(forward_integral(time_reverse(h), nu));
}

TimeSeries backward_rl_derivative(const TimeSeries& h, double alpha) {
  return time_reverse(forward_rl_derivative(time_reverse(h), alpha));
}

TimeSeries time_reverse(const TimeSeries& h) {
  TimeSeries out(h.grid);
  const int N = h.grid.N;
  for (int n = 0; n <= N; ++n) out[n] = h[N - n];
  return out;
}

std::vector<double> trapezoid_weights(const TimeGrid& grid) {
  std::vector<double> w(static_cast<std::size_t>(grid.N + 1), grid.dt());
  w.front() *= 0.5;
  w.back() *= 0.5;
  return w;
}

double l2_inner(const TimeSeries& a, const TimeSeries& b) {
  if (!(a.grid == b.grid)) throw GridMismatchError("l2_inner: different grids");
  const int N = a.grid.N;
  double acc = 0.5 * (a[0] * b[0] + a[N] * b[N]);
  for (int n = 1; n < N; ++n) acc += a[n] * b[n];
  return acc * a.grid.dt();
}

double l2_norm(const TimeSeries& a) { return std::sqrt(l2_inner(a, a)); }

}  // namespace fracdiff
