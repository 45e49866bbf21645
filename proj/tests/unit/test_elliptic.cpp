#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "fracdiff/elliptic.hpp"
#include "fracdiff/errors.hpp"

using namespace fracdiff;

namespace {

constexpr double kPi = std::numbers::pi;

EigenBasis laplacian_basis(int M, int K, double L = kPi) {
  const SpatialGrid grid(L, M);
  const Coefficients c = Coefficients::constant(grid);
  return eigendecompose(assemble_operator(c, grid), c, K);
}

}  // namespace

TEST_CASE("constant coefficients give the second difference matrix") {
  const SpatialGrid grid(1.0, 4);
  const OperatorMatrices ops = assemble_operator(Coefficients::constant(grid), grid);
  const SymTridiagonal A = ops.operator_matrix();
  REQUIRE(A.size() == 3);
  for (double d : A.diag) CHECK(d == doctest::Approx(2.0 * 16.0));
  for (double o : A.off) CHECK(o == doctest::Approx(-16.0));
}

TEST_CASE("reaction shifts and diffusion scales the spectrum") {
  const SpatialGrid grid(1.0, 64);
  const Coefficients base = Coefficients::constant(grid);
  Coefficients shifted = base;
  for (double& c : shifted.c) c = 2.5;
  Coefficients scaled = base;
  for (double& a : scaled.a) a = 4.0;
  const auto l0 = tridiagonal_eigenvalues(assemble_operator(base, grid).operator_matrix());
  const auto l1 = tridiagonal_eigenvalues(assemble_operator(shifted, grid).operator_matrix());
  const auto l2 = tridiagonal_eigenvalues(assemble_operator(scaled, grid).operator_matrix());
  for (std::size_t k = 0; k < l0.size(); ++k) {
    CHECK(l1[k] - l0[k] == doctest::Approx(2.5).epsilon(1e-9));
    CHECK(l2[k] / l0[k] == doctest::Approx(4.0).epsilon(1e-12));
  }
}

TEST_CASE("QL eigenvalues of the second difference matrix are exact") {
  const int M = 200;
  const SpatialGrid grid(1.0, M);
  const auto lam = tridiagonal_eigenvalues(assemble_operator(Coefficients::constant(grid), grid).operator_matrix());
  const double h = grid.h();
  for (int k = 1; k < M; ++k) {
    const double want = 4.0 / (h * h) * std::pow(std::sin(k * kPi * h / 2.0), 2);
    CHECK(lam[static_cast<std::size_t>(k - 1)] == doctest::Approx(want).epsilon(1e-11));
  }
}

TEST_CASE("matrices are symmetric and the stiffness is positive definite") {
  const SpatialGrid grid(2.0, 32);
  const Coefficients c = Coefficients::variable1(grid);
  const OperatorMatrices ops = assemble_operator(c, grid);
  std::vector<double> u(33, 0.0), w(33, 0.0);
  for (int j = 1; j < 32; ++j) {
    u[static_cast<std::size_t>(j)] = std::sin(0.3 * j) + 0.1 * j;
    w[static_cast<std::size_t>(j)] = std::cos(1.7 * j);
  }
  const auto Au = ops.apply(u);
  const auto Aw = ops.apply(w);
  CHECK(mass_inner(Au, w, grid) == doctest::Approx(mass_inner(u, Aw, grid)).epsilon(1e-13));
  CHECK(mass_inner(Au, u, grid) > 0.0);
}

TEST_CASE("Dirichlet Laplacian eigenpairs on (0, pi)") {
  const EigenBasis b = laplacian_basis(512, 10);
  const double s = std::sqrt(2.0 / kPi);
  for (int k = 1; k <= 10; ++k) {
    const auto i = static_cast<std::size_t>(k - 1);
    CHECK(std::abs(b.lambda[i] - k * k) / (k * k) < 1e-3);
    double err = 0.0;
    for (int j = 0; j <= 512; ++j) err = std::max(err, std::abs(b.phi[i][static_cast<std::size_t>(j)] - s * std::sin(k * b.grid.node(j))));
    CHECK(err < 1e-3);
    CHECK(std::abs(b.flux[i].first + s * k) / (s * k) < 1e-2);
    CHECK(std::abs(b.flux[i].second - s * k * std::pow(-1.0, k)) / (s * k) < 1e-2);
  }
}

TEST_CASE("both flux stencils are accurate on low eigenfunctions") {
  const SpatialGrid grid(kPi, 512);
  const Coefficients c = Coefficients::constant(grid);
  const OperatorMatrices ops = assemble_operator(c, grid);
  const EigenBasis g = eigendecompose(ops, c, 10, FluxStencil::Green);
  const EigenBasis o = eigendecompose(ops, c, 10, FluxStencil::OneSided3);
  const double s = std::sqrt(2.0 / kPi);
  for (int k = 1; k <= 10; ++k) {
    const auto i = static_cast<std::size_t>(k - 1);
    CHECK(std::abs(g.flux[i].first + s * k) / (s * k) < 1e-3);
    CHECK(std::abs(o.flux[i].first + s * k) / (s * k) < 1e-2);
  }
}

TEST_CASE("Green flux closes the discrete Green identity") {
  // sum_j h (A u)_j w_j - sum_j h u_j (A w)_j equals the boundary pairing
  // with the discrete flux whenever u vanishes on the boundary.
  const SpatialGrid grid(1.3, 40);
  const Coefficients c = Coefficients::variable1(grid);
  const OperatorMatrices ops = assemble_operator(c, grid);
  const EigenBasis b = eigendecompose(ops, c, 10);
  for (int k = 0; k < 10; ++k) {
    const auto& phi = b.phi[static_cast<std::size_t>(k)];
    std::vector<double> w(41);
    for (int j = 0; j <= 40; ++j) w[static_cast<std::size_t>(j)] = 1.0 + 0.5 * grid.node(j);
    std::vector<double> w0 = w;
    w0.front() = w0.back() = 0.0;
    // (A phi, w) over interior nodes equals (phi, A w) plus boundary terms.
    const auto Aphi = ops.apply(phi);
    const auto Aw = ops.apply(w);
    double lhs = 0.0, rhs = 0.0;
    for (int j = 1; j < 40; ++j) {
      lhs += grid.h() * Aphi[static_cast<std::size_t>(j)] * w[static_cast<std::size_t>(j)];
      rhs += grid.h() * phi[static_cast<std::size_t>(j)] * Aw[static_cast<std::size_t>(j)];
    }
    const auto [f0, fL] = b.flux[static_cast<std::size_t>(k)];
    CHECK(lhs - rhs == doctest::Approx(-(f0 * w.front() + fL * w.back())).epsilon(1e-10));
  }
}

TEST_CASE("basis is mass orthonormal and sign normalized") {
  for (int M : {64, 256, 1024}) {
    const SpatialGrid grid(1.0, M);
    const Coefficients c = Coefficients::variable1(grid);
    const EigenBasis b = eigendecompose(assemble_operator(c, grid), c, M / 4);
    double worst = 0.0;
    for (int i = 0; i < b.K(); ++i) {
      CHECK(b.phi[static_cast<std::size_t>(i)][1] > 0.0);
      for (int j = 0; j <= i; ++j) {
        const double g = mass_inner(b.phi[static_cast<std::size_t>(i)], b.phi[static_cast<std::size_t>(j)], grid);
        worst = std::max(worst, std::abs(g - (i == j ? 1.0 : 0.0)));
      }
    }
    CAPTURE(M);
    CHECK(worst < 1e-10);
    for (int k = 1; k < b.K(); ++k) CHECK(b.lambda[static_cast<std::size_t>(k)] > b.lambda[static_cast<std::size_t>(k - 1)]);
  }
}

TEST_CASE("full basis is orthonormal too") {
  const SpatialGrid grid(1.0, 128);
  const Coefficients c = Coefficients::variable1(grid);
  const EigenBasis b = eigendecompose_full(assemble_operator(c, grid), c);
  REQUIRE(b.K() == 127);
  double worst = 0.0;
  for (int i = 0; i < b.K(); ++i) {
    for (int j = 0; j <= i; ++j) {
      const double g = mass_inner(b.phi[static_cast<std::size_t>(i)], b.phi[static_cast<std::size_t>(j)], grid);
      worst = std::max(worst, std::abs(g - (i == j ? 1.0 : 0.0)));
    }
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("eigenvalue convergence order") {
  double prev = 0.0;
  for (int M : {32, 64, 128, 256}) {
    const EigenBasis b = laplacian_basis(M, 4);
    const double err = std::abs(b.lambda[3] - 16.0);
    if (prev > 0.0) CHECK(std::log2(prev / err) >= 1.8);
    prev = err;
  }
}

TEST_CASE("Rayleigh lower bound on the first eigenvalue") {
  const SpatialGrid grid(2.0, 64);
  for (const Coefficients& c : {Coefficients::constant(grid), Coefficients::variable1(grid)}) {
    const EigenBasis b = eigendecompose(assemble_operator(c, grid), c, 1);
    CHECK(b.lambda[0] >= c.mu * std::pow(kPi / grid.L, 2) * (1 - 1e-3));
  }
}

TEST_CASE("conormal derivative of simple functions") {
  const SpatialGrid grid(kPi, 400);
  const Coefficients one = Coefficients::constant(grid);
  std::vector<double> s(401), cst(401, 2.0), lin(401);
  for (int j = 0; j <= 400; ++j) {
    s[static_cast<std::size_t>(j)] = std::sin(grid.node(j));
    lin[static_cast<std::size_t>(j)] = grid.node(j);
  }
  for (FluxStencil st : {FluxStencil::Green, FluxStencil::OneSided3}) {
    const auto [s0, sL] = conormal_derivative(s, one, grid, st);
    CHECK(s0 == doctest::Approx(-1.0).epsilon(1e-4));
    CHECK(sL == doctest::Approx(-1.0).epsilon(1e-4));
    const auto [c0, cL] = conormal_derivative(cst, one, grid, st);
    CHECK(c0 == 0.0);
    CHECK(cL == 0.0);
    Coefficients three = one;
    for (double& a : three.a) a = 3.0;
    const auto [l0, lL] = conormal_derivative(lin, three, grid, st);
    CHECK(l0 == doctest::Approx(-3.0).epsilon(1e-12));
    CHECK(lL == doctest::Approx(3.0).epsilon(1e-12));
  }
  const SpatialGrid coarse(1.0, 2);
  CHECK_THROWS_AS(conormal_derivative(std::vector<double>(3, 0.0), Coefficients::constant(coarse), coarse), DomainError);
}

TEST_CASE("eigenbasis flux equals conormal derivative of phi") {
  const SpatialGrid grid(1.0, 128);
  const Coefficients c = Coefficients::variable1(grid);
  for (FluxStencil st : {FluxStencil::Green, FluxStencil::OneSided3}) {
    const EigenBasis b = eigendecompose(assemble_operator(c, grid), c, 32, st);
    for (int k = 0; k < 32; ++k) {
      const auto f = conormal_derivative(b.phi[static_cast<std::size_t>(k)], c, grid, st);
      CHECK(f == b.flux[static_cast<std::size_t>(k)]);
    }
  }
}

TEST_CASE("errors") {
  const SpatialGrid grid(1.0, 16);
  Coefficients bad = Coefficients::constant(grid);
  bad.a[5] = 0.5;
  CHECK_THROWS_AS(assemble_operator(bad, grid), EllipticityError);
  Coefficients neg = Coefficients::constant(grid);
  neg.c[3] = -1.0;
  CHECK_THROWS_AS(assemble_operator(neg, grid), EllipticityError);
  const Coefficients ok = Coefficients::constant(grid);
  CHECK_THROWS_AS(eigendecompose(assemble_operator(ok, grid), ok, 5), BasisSizeError);
  CHECK_THROWS_AS(Coefficients::from_profile("/nonexistent/file.csv", grid), ConfigError);
}
