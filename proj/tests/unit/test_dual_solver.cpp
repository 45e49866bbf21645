#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fracdiff/dual_solver.hpp"
#include "fracdiff/duhamel.hpp"
#include "fracdiff/errors.hpp"
#include "fracdiff/generators.hpp"
#include "mpfr_oracle.hpp"

using namespace fracdiff;

namespace {

struct Setup {
  SpatialGrid sg;
  TimeGrid tg;
  Coefficients coeffs;
  OperatorMatrices ops;
  EigenBasis basis;

  Setup(int M, int N, int K, const std::string& profile = "variable1", double L = 1.0)
      : sg(L, M), tg(1.0, N), coeffs(Coefficients::from_profile(profile, sg)), ops(assemble_operator(coeffs, sg)),
        basis(eigendecompose(ops, coeffs, K)) {}
};

}  // namespace

TEST_CASE("zero source gives the zero dual solution and flux") {
  const Setup s(32, 32, 8);
  const SpaceTimeField f(s.sg, s.tg);
  const SpaceTimeField v = solve_dual(f, 0.5, s.basis).u;
  for (double x : v.values) CHECK(x == 0.0);
  const BoundaryData flux = dual_flux(v, s.coeffs);
  for (int n = 0; n <= s.tg.N; ++n) {
    CHECK(flux.left[n] == 0.0);
    CHECK(flux.right[n] == 0.0);
  }
}

TEST_CASE("first eigenfunction held constant in time, reflected") {
  const Setup s(128, 64, 32);
  const double lambda = s.basis.lambda[0];
  SpaceTimeField f(s.sg, s.tg);
  for (int j = 0; j <= s.sg.M; ++j) {
    for (int n = 0; n <= s.tg.N; ++n) f.at(j, n) = s.basis.phi[0][static_cast<std::size_t>(j)];
  }
  for (double alpha : {0.5, 0.8}) {
    CAPTURE(alpha);
    const std::vector<TimeSeries> modes = project_field(solve_dual(f, alpha, s.basis).u, s.basis);
    for (int n = 0; n <= s.tg.N; ++n) {
      const double r = s.tg.T - s.tg.node(n);
      double e = 1.0;
      if (n < s.tg.N) REQUIRE(oracle::ml_series_mp(alpha, 1.0, -lambda * std::pow(r, alpha), e));
      CHECK(modes[0][n] == doctest::Approx((1.0 - e) / lambda).epsilon(1e-10));
    }
  }
}

TEST_CASE("direct and reflected dual paths agree bit for bit") {
  const Setup s(64, 64, 16);
  for (double alpha : {0.25, 0.5, 0.9}) {
    const SpaceTimeField f = random_smooth_field(s.sg, s.tg, 8, false);
    const SpaceTimeField a = solve_dual(f, alpha, s.basis).u;
    const SpaceTimeField b = solve_dual_reflected(f, alpha, s.basis).u;
    REQUIRE(a.values.size() == b.values.size());
    bool same = true;
    for (std::size_t i = 0; i < a.values.size(); ++i) same = same && a.values[i] == b.values[i];
    CHECK(same);
  }
}

TEST_CASE("dual solution vanishes on the boundary") {
  const Setup s(64, 64, 16);
  const SpaceTimeField v = solve_dual(random_smooth_field(s.sg, s.tg, 2), 0.5, s.basis).u;
  for (int n = 0; n <= s.tg.N; ++n) {
    CHECK(v.at(0, n) == 0.0);
    CHECK(v.at(s.sg.M, n) == 0.0);
  }
}

TEST_CASE("terminal condition holds for every retained mode at N = 512") {
  const Setup s(128, 512, 32);
  for (double alpha : {0.3, 0.5, 0.7}) {
    CAPTURE(alpha);
    const std::vector<TimeSeries> fk = project_field(random_smooth_field(s.sg, s.tg, 4, false), s.basis);
    const std::vector<TimeSeries> vk = dual_modes(fk, alpha, s.basis);
    double worst = 0.0;
    for (const TimeSeries& v : vk) worst = std::max(worst, terminal_residual(v, alpha));
    CHECK(worst < 1e-3);
  }
}

TEST_CASE("I_{T-}^{1-alpha} of the dual mode follows its closed form up to t = T") {
  // For f = phi_1 constant in time, I_{T-}^{1-alpha} v_1 (t) = r E_{alpha,2}(-lambda r^alpha), r = T - t.
  // Compared on the nodes of the coarsest grid.
  for (double alpha : {0.5, 0.7}) {
    CAPTURE(alpha);
    std::vector<double> errs;
    for (int N : {128, 256, 512}) {
      const Setup s(128, N, 32);
      const double lambda = s.basis.lambda[0];
      const TimeSeries one = TimeSeries::sample(s.tg, [](double) { return 1.0; });
      const TimeSeries v = DuhamelWeights::get(alpha, lambda, s.tg)->backward(one);
      const TimeSeries I = backward_integral(v, 1.0 - alpha);
      CHECK(I[N] == 0.0);
      const int stride = N / 128;
      double worst = 0.0;
      for (int n = 0; n < N; n += stride) {
        const double r = s.tg.T - s.tg.node(n);
        double e = 0.0;
        REQUIRE(oracle::ml_series_mp(alpha, 2.0, -lambda * std::pow(r, alpha), e));
        worst = std::max(worst, std::abs(I[n] - r * e) / l2_norm(v));
      }
      errs.push_back(worst);
    }
    MESSAGE("alpha " << alpha << " max deviation " << errs[0] << " " << errs[1] << " " << errs[2]);
    CHECK(errs[2] < 1e-2);
    CHECK(errs[1] < errs[0]);
    CHECK(errs[2] < errs[1]);
  }
}

TEST_CASE("adjoint identity (u, f) = (F, v_f)") {
  const double alpha = 0.5;
  std::vector<double> plain;
  double worst = 0.0;
  for (int level : {64, 128, 256}) {
    const Setup s(level, level, level / 4);
    double worst_plain = 0.0;
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
      const SpaceTimeField F = random_smooth_field(s.sg, s.tg, seed, seed % 2 == 1);
      const SpaceTimeField f = random_smooth_field(s.sg, s.tg, 100 + seed, seed > 2);
      const double lhs = forward_pairing(F, f, alpha, s.basis);
      const double rhs = dual_pairing(F, f, alpha, s.basis);
      const double scale = std::max(std::abs(lhs), std::abs(rhs));
      if (level == 256) worst = std::max(worst, std::abs(lhs - rhs) / scale);
      const double u_f = l2_inner_Q(solve_homogeneous_spectral(F, alpha, s.basis).u, f);
      const double F_v = l2_inner_Q(F, solve_dual(f, alpha, s.basis).u);
      worst_plain = std::max(worst_plain, std::abs(u_f - F_v) / scale);
    }
    plain.push_back(worst_plain);
  }
  MESSAGE("layer-corrected worst relative error " << worst);
  MESSAGE("plain trapezoid " << plain[0] << " " << plain[1] << " " << plain[2]);
  CHECK(worst < 1e-3);
  CHECK(plain[1] < plain[0]);
  CHECK(plain[2] < plain[1]);
}

TEST_CASE("flux of the first Laplacian mode on (0, pi)") {
  const double pi = std::numbers::pi;
  const Setup s(512, 16, 8, "constant", pi);
  const TimeSeries psi = TimeSeries::sample(s.tg, [](double t) { return 1.0 + t * t; });
  SpaceTimeField v(s.sg, s.tg);
  for (int j = 0; j <= s.sg.M; ++j) {
    for (int n = 0; n <= s.tg.N; ++n) v.at(j, n) = s.basis.phi[0][static_cast<std::size_t>(j)] * psi[n];
  }
  const BoundaryData flux = dual_flux(v, s.coeffs);
  const double c = std::sqrt(2.0 / pi);
  for (int n = 0; n <= s.tg.N; ++n) {
    CHECK(flux.left[n] == doctest::Approx(-c * psi[n]).epsilon(1e-2));
    CHECK(flux.right[n] == doctest::Approx(-c * psi[n]).epsilon(1e-2));
  }
}

TEST_CASE("terminal residual needs a fractional order") {
  const TimeSeries v(TimeGrid(1.0, 8));
  CHECK_THROWS_AS(terminal_residual(v, 1.0), DomainError);
  CHECK(terminal_residual(v, 0.5) == 0.0);
}
