#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "fracdiff/errors.hpp"
#include "fracdiff/fractional_calculus.hpp"
#include "mpfr_oracle.hpp"

using namespace fracdiff;

namespace {

double max_rel_error(const TimeSeries& got, const TimeSeries& want, int from, int to) {
  double worst = 0.0;
  for (int n = from; n <= to; ++n) worst = std::max(worst, std::abs(got[n] - want[n]) / std::abs(want[n]));
  return worst;
}

}  // namespace

TEST_CASE("time reversal") {
  const TimeGrid g(1.0, 2);
  const TimeSeries h(g, {0.0, 1.0, 2.0});
  CHECK(time_reverse(h).values == std::vector<double>{2.0, 1.0, 0.0});
  const TimeSeries r = TimeSeries::sample(TimeGrid(2.0, 17), [](double t) { return std::sin(3 * t); });
  CHECK(time_reverse(time_reverse(r)).values == r.values);
  const TimeSeries c(g, {4.0, 4.0, 4.0});
  CHECK(time_reverse(c).values == c.values);
}

TEST_CASE("Caputo of a constant vanishes") {
  const TimeSeries c(TimeGrid(1.0, 64), std::vector<double>(65, 3.5));
  const TimeSeries d = caputo_derivative(c, 0.4);
  for (double v : d.values) CHECK(v == 0.0);
}

TEST_CASE("Caputo of t") {
  for (double a : {0.25, 0.5, 0.75}) {
    const TimeGrid g(1.0, 1024);
    const TimeSeries u = TimeSeries::sample(g, [](double t) { return t; });
    const TimeSeries want = TimeSeries::sample(g, [a](double t) { return std::pow(t, 1 - a) / oracle::gamma_mp(2 - a); });
    CHECK(max_rel_error(caputo_derivative(u, a), want, 103, 1024) < 1e-3);
  }
}

TEST_CASE("Caputo near alpha = 1 approaches the first derivative") {
  const TimeGrid g(1.0, 1000);
  const TimeSeries u = TimeSeries::sample(g, [](double t) { return std::sin(2 * t) + t * t; });
  const TimeSeries d = caputo_derivative(u, 0.999);
  double worst = 0.0;
  for (int n = 100; n < 1000; ++n) {
    const double fd = (u[n + 1] - u[n - 1]) / (2 * g.dt());
    worst = std::max(worst, std::abs(d[n] - fd) / std::abs(fd));
  }
  CHECK(worst < 1e-2);
}

TEST_CASE("L1 convergence order on t^2") {
  for (double a : {0.25, 0.5, 0.75}) {
    double prev = 0.0;
    for (int N : {64, 128, 256, 512}) {
      const TimeGrid g(1.0, N);
      const TimeSeries u = TimeSeries::sample(g, [](double t) { return t * t; });
      const TimeSeries d = caputo_derivative(u, a);
      double err = 0.0;
      for (int n = 1; n <= N; ++n) {
        err = std::max(err, std::abs(d[n] - 2 * std::pow(g.node(n), 2 - a) / oracle::gamma_mp(3 - a)));
      }
      if (prev > 0.0) {
        CAPTURE(a);
        CAPTURE(N);
        CHECK(prev / err >= std::pow(2.0, 2 - a - 0.2));
      }
      prev = err;
    }
  }
}

TEST_CASE("Caputo rejects orders outside (0,1)") {
  const TimeSeries u(TimeGrid(1.0, 8));
  CHECK_THROWS_AS(caputo_derivative(u, 0.0), DomainError);
  CHECK_THROWS_AS(caputo_derivative(u, 1.0), DomainError);
  CHECK_THROWS_AS(backward_rl_derivative(u, 1.2), DomainError);
  CHECK_THROWS_AS(backward_integral(u, 0.0), DomainError);
}

TEST_CASE("backward integral of order one is the plain integral") {
  const TimeGrid g(2.0, 40);
  const TimeSeries one(g, std::vector<double>(41, 1.0));
  const TimeSeries I = backward_integral(one, 1.0);
  for (int n = 0; n <= 40; ++n) CHECK(I[n] == doctest::Approx(2.0 - g.node(n)).epsilon(1e-13));
}

TEST_CASE("backward integral of a power of T - t") {
  const double T = 1.5;
  const TimeGrid g(T, 1024);
  for (double mu : {0.5, 1.0, 2.0}) {
    for (double nu : {0.3, 0.5, 0.8, 1.6}) {
      const TimeSeries h = TimeSeries::sample(g, [&](double t) { return std::pow(T - t, mu); });
      const TimeSeries I = backward_integral(h, nu);
      const double c = oracle::gamma_mp(mu + 1) / oracle::gamma_mp(mu + nu + 1);
      const TimeSeries want = TimeSeries::sample(g, [&](double t) { return c * std::pow(T - t, mu + nu); });
      CAPTURE(mu);
      CAPTURE(nu);
      CHECK(max_rel_error(I, want, 0, 921) < 1e-3);
    }
  }
}

TEST_CASE("semigroup of fractional integrals") {
  const TimeGrid g(1.0, 1024);
  const TimeSeries h = TimeSeries::sample(g, [](double t) { return std::cos(2 * t) + t; });
  for (double nu : {0.3, 0.5, 0.7}) {
    for (double mu : {0.3, 0.5, 0.7}) {
      const TimeSeries lhs = backward_integral(backward_integral(h, nu), mu);
      const TimeSeries rhs = backward_integral(h, nu + mu);
      TimeSeries diff(g);
      for (int n = 0; n <= g.N; ++n) diff[n] = lhs[n] - rhs[n];
      CHECK(l2_norm(diff) < 1e-4);
    }
  }
}

TEST_CASE("backward RL derivative of a constant") {
  const double T = 1.0;
  for (double a : {0.3, 0.5, 0.7}) {
    const TimeGrid g(T, 1024);
    const TimeSeries c(g, std::vector<double>(1025, 2.0));
    const TimeSeries D = backward_rl_derivative(c, a);
    const TimeSeries want = TimeSeries::sample(g, [&](double t) {
      return t < T ? 2.0 * std::pow(T - t, -a) / oracle::gamma_mp(1 - a) : 1.0;
    });
    CHECK(max_rel_error(D, want, 0, 921) < 1e-2);
  }
}

TEST_CASE("backward RL derivative of (T - t)^alpha is Gamma(alpha + 1)") {
  const double T = 1.0;
  for (double a : {0.3, 0.5, 0.7}) {
    const TimeGrid g(T, 1024);
    const TimeSeries h = TimeSeries::sample(g, [&](double t) { return std::pow(T - t, a); });
    const TimeSeries D = backward_rl_derivative(h, a);
    const double want = oracle::gamma_mp(a + 1);
    double worst = 0.0;
    for (int n = 0; n <= 921; ++n) worst = std::max(worst, std::abs(D[n] - want) / want);
    CAPTURE(a);
    CHECK(worst < 1e-2);
  }
}

TEST_CASE("backward RL derivative of zero") {
  const TimeSeries z(TimeGrid(1.0, 16));
  for (double v : backward_rl_derivative(z, 0.5).values) CHECK(v == 0.0);
}

TEST_CASE("Caputo and backward RL are discrete adjoints") {
  const double T = 1.0;
  const TimeGrid g(T, 1024);
  auto bump = [](double s) { return s <= 0.0 ? 0.0 : std::exp(-1.0 / s); };
  const TimeSeries h1 = TimeSeries::sample(g, [&](double t) { return bump(t - 0.1) * std::sin(3 * t); });
  const TimeSeries h2 = TimeSeries::sample(g, [&](double t) { return bump(0.9 - t) * (1 + t * t); });
  for (double a : {0.3, 0.5, 0.7}) {
    const double lhs = l2_inner(caputo_derivative(h1, a), h2);
    const double rhs = l2_inner(h1, backward_rl_derivative(h2, a));
    CHECK(std::abs(lhs - rhs) / std::abs(lhs) < 5e-2);
  }
}

TEST_CASE("weight cache is shared per key") {
  const auto& w1 = l1_weights(0.37, 100);
  const auto& w2 = l1_weights(0.37, 100);
  CHECK(&w1 == &w2);
  CHECK(w1[0] == 1.0);
}
