#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "fracdiff/dual_solver.hpp"
#include "fracdiff/errors.hpp"
#include "fracdiff/generators.hpp"
#include "fracdiff/norms.hpp"

using namespace fracdiff;

namespace {

const double pi = std::numbers::pi;

std::vector<double> sample_space(const SpatialGrid& g, double (*f)(double)) {
  std::vector<double> v(static_cast<std::size_t>(g.size()));
  for (int j = 0; j <= g.M; ++j) v[static_cast<std::size_t>(j)] = f(g.node(j));
  return v;
}

double phi1_pi(double x) { return std::sqrt(2.0 / pi) * std::sin(x); }

EigenBasis laplace_basis(double L, int M, int K) {
  const SpatialGrid sg(L, M);
  const Coefficients c = Coefficients::constant(sg);
  return eigendecompose(assemble_operator(c, sg), c, K);
}

double band(const std::vector<double>& v) {
  return *std::max_element(v.begin(), v.end()) / *std::min_element(v.begin(), v.end());
}

}  // namespace

TEST_CASE("constants have zero seminorm") {
  const TimeGrid tg(2.5, 64);
  const TimeSeries h = TimeSeries::sample(tg, [](double) { return 3.0; });
  for (double s : {0.1, 0.5, 0.9}) {
    CHECK(slobodeckij_seminorm(h.values, tg.dt(), s) == 0.0);
    CHECK(slobodeckij_time_norm(h, s) == doctest::Approx(3.0 * std::sqrt(2.5)).epsilon(1e-13));
  }
  const SpatialGrid sg(1.5, 64);
  const std::vector<double> u(65, -2.0);
  CHECK(slobodeckij_space_norm(u, 0.3, sg) == doctest::Approx(2.0 * std::sqrt(1.5)).epsilon(1e-13));
}

TEST_CASE("linear function at order one half has unit seminorm") {
  const TimeGrid tg(1.0, 256);
  const TimeSeries h = TimeSeries::sample(tg, [](double t) { return t; });
  CHECK(slobodeckij_seminorm(h.values, tg.dt(), 0.5) == doctest::Approx(1.0).epsilon(1e-12));
  // The L2 part carries the trapezoid error dt^2 / 6.
  CHECK(slobodeckij_time_norm(h, 0.5) == doctest::Approx(std::sqrt(1.0 / 3.0 + 1.0)).epsilon(1e-5));
  const SpatialGrid sg(1.0, 256);
  const std::vector<double> u = sample_space(sg, [](double x) { return x; });
  CHECK(slobodeckij_space_norm(u, 0.5, sg) == doctest::Approx(std::sqrt(1.0 / 3.0 + 1.0)).epsilon(1e-5));
}

TEST_CASE("seminorm of a linear function matches the closed form for every order") {
  // |t - tau|^{1-2s} over the unit square integrates to 2 / ((2 - 2s)(3 - 2s)).
  const TimeGrid tg(1.0, 512);
  const TimeSeries h = TimeSeries::sample(tg, [](double t) { return t; });
  for (double s : {0.1, 0.25, 0.4, 0.6, 0.75}) {
    CAPTURE(s);
    const double exact = 2.0 / ((2.0 - 2.0 * s) * (3.0 - 2.0 * s));
    const double got = slobodeckij_seminorm(h.values, tg.dt(), s);
    CHECK(got * got == doctest::Approx(exact).epsilon(1e-4));
  }
}

TEST_CASE("white noise norm grows under refinement while its L2 norm stays bounded") {
  for (double s : {0.1, 0.25, 0.5}) {
    CAPTURE(s);
    std::vector<double> norms, l2;
    for (int N : {64, 256}) {
      const TimeGrid tg(1.0, N);
      const TimeSeries h = make_boundary_data(GFamily::Noise, tg, 7).left;
      norms.push_back(slobodeckij_time_norm(h, s));
      l2.push_back(l2_norm(h));
    }
    CHECK(l2[1] / l2[0] < 1.5);
    CHECK(norms[1] > 1.2 * norms[0]);
  }
}

TEST_CASE("first sine on (0, pi) has a self-convergent space norm") {
  for (double r : {0.25, 0.5, 0.75}) {
    CAPTURE(r);
    const SpatialGrid coarse(pi, 512), fine(pi, 2048);
    const double a = slobodeckij_space_norm(sample_space(coarse, phi1_pi), r, coarse);
    const double b = slobodeckij_space_norm(sample_space(fine, phi1_pi), r, fine);
    CHECK(std::abs(a - b) / b < 1e-3);
  }
}

TEST_CASE("Slobodeckij norms change by less than 2% at N = 512") {
  for (double s : {0.125, 0.375, 0.5, 0.875}) {
    CAPTURE(s);
    auto f = [](double t) { return std::exp(-t) * std::cos(3.0 * t) + t * t; };
    const double a = slobodeckij_time_norm(TimeSeries::sample(TimeGrid(2.0, 256), f), s);
    const double b = slobodeckij_time_norm(TimeSeries::sample(TimeGrid(2.0, 512), f), s);
    CHECK(std::abs(a - b) / b < 0.02);
    const SpatialGrid s1(1.0, 256), s2(1.0, 512);
    auto g = [](double x) { return std::sin(5.0 * x) + x; };
    std::vector<double> u1, u2;
    for (int j = 0; j <= 256; ++j) u1.push_back(g(s1.node(j)));
    for (int j = 0; j <= 512; ++j) u2.push_back(g(s2.node(j)));
    const double c = slobodeckij_space_norm(u1, s, s1), d = slobodeckij_space_norm(u2, s, s2);
    CHECK(std::abs(c - d) / d < 0.02);
  }
}

TEST_CASE("order outside (0, 1) is rejected") {
  const TimeSeries h(TimeGrid(1.0, 8));
  CHECK_THROWS_AS(slobodeckij_time_norm(h, 0.0), DomainError);
  CHECK_THROWS_AS(slobodeckij_time_norm(h, 1.0), DomainError);
  CHECK_THROWS_AS(hardy_weighted_time_norm(h, 1.2), DomainError);
  CHECK_THROWS_AS(RegularityIndex(2.5, 0.0), DomainError);
  CHECK_THROWS_AS(RegularityIndex(0.0, -1.5), DomainError);
  const SpaceTimeField u(SpatialGrid(1.0, 8), TimeGrid(1.0, 8));
  CHECK_THROWS_AS(hrs_norm_Q(u, RegularityIndex(1.0, 0.0)), DomainError);
  CHECK_THROWS_AS(hrs_norm_Q(u, RegularityIndex(-0.5, 0.0)), DomainError);
}

TEST_CASE("mixed norm on Q: zero field and first eigenfunction") {
  const SpatialGrid sg(pi, 128);
  const TimeGrid tg(2.0, 64);
  CHECK(hrs_norm_Q(SpaceTimeField(sg, tg), RegularityIndex(0.5, 0.25)) == 0.0);
  const EigenBasis basis = laplace_basis(pi, 128, 8);
  SpaceTimeField u(sg, tg);
  for (int j = 0; j <= sg.M; ++j) {
    for (int n = 0; n <= tg.N; ++n) u.at(j, n) = basis.phi[0][static_cast<std::size_t>(j)];
  }
  CHECK(hrs_norm_Q(u, RegularityIndex(0.0, 0.0)) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  // Constant in time: the time seminorm vanishes.
  CHECK(hrs_norm_Q(u, RegularityIndex(0.0, 0.6)) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("mixed norm of a separated field") {
  const SpatialGrid sg(1.0, 96);
  const TimeGrid tg(1.5, 80);
  std::vector<double> X(static_cast<std::size_t>(sg.size()));
  for (int j = 0; j <= sg.M; ++j) X[static_cast<std::size_t>(j)] = std::sin(pi * sg.node(j)) + 0.3 * sg.node(j);
  const TimeSeries psi = TimeSeries::sample(tg, [](double t) { return 1.0 + t * t - std::sin(4.0 * t); });
  SpaceTimeField u(sg, tg);
  for (int j = 0; j <= sg.M; ++j) {
    for (int n = 0; n <= tg.N; ++n) u.at(j, n) = X[static_cast<std::size_t>(j)] * psi[n];
  }
  const double X2 = mass_inner(X, X, sg), psi2 = l2_inner(psi, psi);
  for (double r : {0.0, 0.3, 0.7}) {
    for (double s : {0.0, 0.2, 0.45, 0.8}) {
      CAPTURE(r);
      CAPTURE(s);
      const double xr = r > 0.0 ? std::pow(slobodeckij_seminorm(X, sg.h(), r), 2) : 0.0;
      const double ps = s > 0.0 ? std::pow(slobodeckij_seminorm(psi.values, tg.dt(), s), 2) : 0.0;
      const double expected = std::sqrt(psi2 * xr + X2 * ps + X2 * psi2);
      CHECK(hrs_norm_Q(u, RegularityIndex(r, s)) == doctest::Approx(expected).epsilon(1e-6));
    }
  }
}

TEST_CASE("mixed norm on Q is nondecreasing in each index on the unit square") {
  const SpaceTimeField u = random_smooth_field(SpatialGrid(1.0, 48), TimeGrid(1.0, 48), 5, false);
  const std::vector<double> grid{0.0, 0.1, 0.25, 0.4, 0.5, 0.6, 0.75, 0.9};
  for (std::size_t a = 0; a < grid.size(); ++a) {
    for (std::size_t b = 0; b < grid.size(); ++b) {
      const double v = hrs_norm_Q(u, RegularityIndex(grid[a], grid[b]));
      if (a + 1 < grid.size()) CHECK(hrs_norm_Q(u, RegularityIndex(grid[a + 1], grid[b])) >= v * (1.0 - 1e-10));
      if (b + 1 < grid.size()) CHECK(hrs_norm_Q(u, RegularityIndex(grid[a], grid[b + 1])) >= v * (1.0 - 1e-10));
    }
  }
}

TEST_CASE("mixed norm on Sigma") {
  const TimeGrid tg(3.0, 64);
  CHECK(hrs_norm_Sigma(BoundaryData(tg), RegularityIndex(0.5, 0.25)) == 0.0);
  BoundaryData g(tg);
  for (int n = 0; n <= tg.N; ++n) g.left[n] = 1.0;
  for (double s : {0.0, 0.25, 0.5, 0.75}) {
    CHECK(hrs_norm_Sigma(g, RegularityIndex(0.5, s)) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-13));
  }
  const BoundaryData noise = make_boundary_data(GFamily::Noise, tg, 11);
  CHECK(hrs_norm_Sigma(noise, RegularityIndex(0.0, 0.0)) == doctest::Approx(l2_norm_Sigma(noise)).epsilon(1e-14));
  CHECK_THROWS_AS(hrs_norm_Sigma(noise, RegularityIndex(0.0, -0.1)), DomainError);
}

TEST_CASE("Hardy weighted norm") {
  const TimeGrid tg(1.0, 512);
  const FlaggedNorm lin = hardy_weighted_time_norm(TimeSeries::sample(tg, [](double t) { return t; }), 0.25);
  CHECK(lin.weighted == doctest::Approx(0.4).epsilon(1e-3));
  CHECK_FALSE(lin.divergent);

  const TimeSeries one = TimeSeries::sample(tg, [](double) { return 1.0; });
  CHECK(hardy_weighted_time_norm(one, 0.75).divergent);
  CHECK_FALSE(hardy_weighted_time_norm(one, 0.25).divergent);

  for (double s : {0.25, 0.5, 0.75}) {
    CAPTURE(s);
    auto f = [](double t) { return std::sin(2.0 * t) + t * t; };
    const FlaggedNorm a = hardy_weighted_time_norm(TimeSeries::sample(TimeGrid(1.0, 256), f), s);
    const FlaggedNorm b = hardy_weighted_time_norm(TimeSeries::sample(TimeGrid(1.0, 512), f), s);
    CHECK_FALSE(b.divergent);
    CHECK(std::abs(a.value - b.value) / b.value < 0.01);
  }
}

TEST_CASE("distance weighted H00 norm") {
  const SpatialGrid sg(pi, 512);
  const WeightFunction w = WeightFunction::distance(sg);
  CHECK(w.rho.front() == 0.0);
  CHECK(w.rho.back() == 0.0);
  CHECK(w.rho[1] == doctest::Approx(sg.h()));

  const std::vector<double> phi = sample_space(sg, phi1_pi);
  const FlaggedNorm a = weighted_boundary_norm_H00(phi, w, sg);
  CHECK(std::isfinite(a.value));
  CHECK_FALSE(a.divergent);
  const SpatialGrid fine(pi, 2048);
  const FlaggedNorm b = weighted_boundary_norm_H00(sample_space(fine, phi1_pi), WeightFunction::distance(fine), fine);
  CHECK(std::abs(a.value - b.value) / b.value < 1e-2);

  const std::vector<double> one(static_cast<std::size_t>(sg.size()), 1.0);
  CHECK(weighted_boundary_norm_H00(one, w, sg).divergent);
  const std::vector<double> zero(static_cast<std::size_t>(sg.size()), 0.0);
  CHECK(weighted_boundary_norm_H00(zero, w, sg).value == 0.0);
}

TEST_CASE("spectral power norm") {
  const EigenBasis basis = laplace_basis(pi, 256, 64);
  const std::vector<double>& phi = basis.phi[0];
  CHECK(spectral_power_norm(phi, basis, 1.0).value == doctest::Approx(basis.lambda[0]).epsilon(1e-12));
  CHECK(spectral_power_norm(phi, basis, 0.25).value == doctest::Approx(std::pow(basis.lambda[0], 0.25)).epsilon(1e-12));
  CHECK(basis.lambda[0] == doctest::Approx(1.0).epsilon(1e-4));

  std::mt19937_64 rng(3);
  std::normal_distribution<double> nd;
  std::vector<double> coef(64, 0.0);
  for (int k = 0; k < 20; ++k) coef[static_cast<std::size_t>(k)] = nd(rng) / (k + 1);
  const std::vector<double> u = basis.synthesize(coef);
  const SpectralNorm s0 = spectral_power_norm(u, basis, 0.0);
  CHECK(s0.value == doctest::Approx(std::sqrt(mass_inner(u, u, basis.grid))).epsilon(1e-8));
  CHECK_FALSE(s0.truncated);

  const std::vector<double> one(257, 1.0);
  CHECK(spectral_power_norm(one, basis, 0.0).truncated);
  CHECK_THROWS_AS(spectral_power_norm(u, basis, 1.5), DomainError);
}

TEST_CASE("interpolation inequality at theta = 1/4") {
  const SpatialGrid sg(1.0, 64);
  const TimeGrid tg(1.0, 32);
  const Coefficients c = Coefficients::variable1(sg);
  const EigenBasis basis = eigendecompose(assemble_operator(c, sg), c, 16);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const SpaceTimeField u = random_smooth_field(sg, tg, seed, seed % 2 == 0);
    const double n0 = spectral_power_norm(u, basis, 0.0).value;
    const double n1 = spectral_power_norm(u, basis, 1.0).value;
    const double nq = spectral_power_norm(u, basis, 0.25).value;
    CHECK(nq <= std::pow(n0, 0.75) * std::pow(n1, 0.25) * (1.0 + 1e-10));
  }
}

TEST_CASE("spectral and distance weighted norms are equivalent on eigenfunction sums") {
  const SpatialGrid sg(1.0, 256);
  const EigenBasis basis = laplace_basis(1.0, 256, 64);
  const WeightFunction w = WeightFunction::distance(sg);
  std::mt19937_64 rng(17);
  std::normal_distribution<double> nd;
  std::vector<double> ratios;
  for (int i = 0; i < 20; ++i) {
    std::vector<double> coef(64, 0.0);
    for (int k = 0; k < 8; ++k) coef[static_cast<std::size_t>(k)] = nd(rng);
    const std::vector<double> u = basis.synthesize(coef);
    ratios.push_back(spectral_power_norm(u, basis, 0.25).value / weighted_boundary_norm_H00(u, w, sg).value);
  }
  MESSAGE("spectral / H00 band " << band(ratios));
  CHECK(band(ratios) < 10.0);
}

TEST_CASE("negative norm on Sigma") {
  const TimeGrid tg(1.0, 128);
  const BoundaryData noise = make_boundary_data(GFamily::Noise, tg, 3);
  CHECK(negative_norm_Sigma(noise, RegularityIndex(0.0, 0.0)) == doctest::Approx(l2_norm_Sigma(noise)).epsilon(1e-8));
  for (GFamily fam : {GFamily::Noise, GFamily::Step, GFamily::Smooth}) {
    for (double alpha : {0.3, 0.5, 0.9}) {
      const BoundaryData g = make_boundary_data(fam, tg, 5);
      CHECK(negative_norm_Sigma(g, RegularityIndex(-0.5, -alpha / 4.0)) <= l2_norm_Sigma(g) * (1.0 + 1e-12));
    }
  }
  std::vector<double> ratio;
  for (int N : {64, 256}) {
    const BoundaryData g = make_boundary_data(GFamily::Noise, TimeGrid(1.0, N), 9);
    ratio.push_back(negative_norm_Sigma(g, RegularityIndex(-0.5, -0.125)) / l2_norm_Sigma(g));
  }
  MESSAGE("white noise dual / L2 ratio " << ratio[0] << " -> " << ratio[1]);
  CHECK(ratio[1] < ratio[0]);
  CHECK_THROWS_AS(negative_norm_Sigma(noise, RegularityIndex(0.0, -0.6)), DomainError);
  CHECK_THROWS_AS(negative_norm_Sigma(noise, RegularityIndex(0.5, -0.1)), DomainError);
}

TEST_CASE("trace exponents") {
  const AlphaAffine a = AlphaAffine::alpha();
  CHECK(trace_exponents(2, a) == ExactIndex{Rational(1, 2), Rational(1, 4) * a});
  CHECK(trace_exponents(2, AlphaAffine()) == ExactIndex{Rational(1, 2), AlphaAffine()});
  CHECK(trace_exponents(3, AlphaAffine(1)) == ExactIndex{Rational(3, 2), Rational(1, 2)});
  CHECK_THROWS_AS(trace_exponents(Rational(3, 2), a), DomainError);
  CHECK_THROWS_AS(trace_exponents(1, a), DomainError);
  CHECK(trace_exponents(2, a).str() == "(1/2, 1/4*alpha)");
}

TEST_CASE("interpolation indices") {
  const AlphaAffine a = AlphaAffine::alpha();
  const ExactIndex dual{Rational(-1, 2), Rational(-1, 4) * a};
  const ExactIndex smooth{Rational(3, 2), Rational(3, 4) * a};
  CHECK(interpolation_index(Rational(1, 4), dual, smooth) == ExactIndex{});
  const ExactIndex l2{};
  const ExactIndex top{AlphaAffine(2), a};
  CHECK(interpolation_index(Rational(1, 4), l2, top) == ExactIndex{Rational(1, 2), Rational(1, 4) * a});
  CHECK(interpolation_index(0, dual, smooth) == dual);
  CHECK(interpolation_index(1, dual, smooth) == smooth);
  CHECK_THROWS_AS(interpolation_index(Rational(5, 4), dual, smooth), DomainError);
  const RegularityIndex num = RegularityIndex::at(interpolation_index(Rational(1, 4), l2, top), 0.6);
  CHECK(num.r == doctest::Approx(0.5));
  CHECK(num.s == doctest::Approx(0.15));
}

TEST_CASE("exponent parsing") {
  CHECK(parse_alpha_affine("-1/2") == AlphaAffine(Rational(-1, 2)));
  CHECK(parse_alpha_affine("3/4*alpha") == AlphaAffine(0, Rational(3, 4)));
  CHECK(parse_alpha_affine("1/2 - 1/4 alpha") == AlphaAffine(Rational(1, 2), Rational(-1, 4)));
  CHECK(parse_alpha_affine("alpha") == AlphaAffine::alpha());
  CHECK_THROWS_AS(parse_alpha_affine("x/2"), ConfigError);
  CHECK_THROWS_AS(parse_alpha_affine(""), ConfigError);
}

TEST_CASE("dual flux obeys a uniform trace bound") {
  const double alpha = 0.5;
  const SpatialGrid sg(1.0, 128);
  const TimeGrid tg(1.0, 128);
  const Coefficients c = Coefficients::variable1(sg);
  const EigenBasis basis = eigendecompose(assemble_operator(c, sg), c, 32);
  std::vector<double> ratio;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const SpaceTimeField f = random_smooth_field(sg, tg, seed, seed % 2 == 0);
    const BoundaryData flux = dual_flux(solve_dual(f, alpha, basis).u, c);
    ratio.push_back(hrs_norm_Sigma(flux, RegularityIndex(0.5, alpha / 4.0)) / l2_norm_Q(f));
  }
  std::vector<double> sorted = ratio;
  std::sort(sorted.begin(), sorted.end());
  const double median = 0.5 * (sorted[9] + sorted[10]);
  MESSAGE("trace ratio max/median " << sorted.back() / median);
  CHECK(sorted.back() / median < 5.0);
}
