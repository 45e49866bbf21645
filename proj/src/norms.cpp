#include "fracdiff/norms.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "fracdiff/errors.hpp"
#include "fracdiff/linalg.hpp"
#include "fracdiff/quadrature.hpp"

namespace fracdiff {

RegularityIndex::RegularityIndex(double space, double time) : r(space), s(time) {
  if (!std::isfinite(r) || !std::isfinite(s) || std::abs(r) > 2.0 || std::abs(s) > 1.0) {
    throw DomainError("regularity index (" + std::to_string(r) + ", " + std::to_string(s) +
                      ") outside |r| <= 2, |s| <= 1");
  }
}

RegularityIndex RegularityIndex::at(const ExactIndex& idx, double alpha) {
  return RegularityIndex(idx.r.at(alpha), idx.s.at(alpha));
}

WeightFunction WeightFunction::distance(const SpatialGrid& grid) {
  WeightFunction w;
  w.rho.resize(static_cast<std::size_t>(grid.size()));
  for (int j = 0; j <= grid.M; ++j) {
    const double x = grid.node(j);
    w.rho[static_cast<std::size_t>(j)] = std::min(x, grid.L - x);
  }
  return w;
}

namespace {

constexpr int kNearGaps = 16;
constexpr int kGauss = 4;

// Weights of the quadratic form sum c (v_b - v_a)(v_d - v_c) that equals
// the discrete Gagliardo double integral on a uniform grid.
struct Kernel {
  double diag = 0.0;
  double adj_a = 0.0;
  double adj_b = 0.0;
  // near[g][p][q] for differences (i, j), (i, i+1), (j, j+1), j = i + g.
  std::array<std::array<std::array<double, 3>, 3>, kNearGaps + 1> near{};
  std::vector<double> far;  // by node offset

  Kernel(double s, double spacing, int cells) {
    const double scale = std::pow(spacing, 1.0 - 2.0 * s);
    diag = scale * 2.0 / ((2.0 - 2.0 * s) * (3.0 - 2.0 * s));

    // Touching cells: int int_{[0,1]^2} (d_I a + d_J b)^2 / (a + b)^{1+2s},
    // inner integral in closed form.
    auto I1 = [s](double a) { return (std::pow(a, -2.0 * s) - std::pow(1.0 + a, -2.0 * s)) / (2.0 * s); };
    auto I0 = [s](double a) {
      if (std::abs(1.0 - 2.0 * s) < 1e-8) return std::log1p(1.0 / a);
      return (std::pow(1.0 + a, 1.0 - 2.0 * s) - std::pow(a, 1.0 - 2.0 * s)) / (1.0 - 2.0 * s);
    };
    const double ca = integrate_adaptive([&](double a) { return a * a * I1(a); }, 0.0, 1.0, 1e-13, 0.0).value;
    const double cb = integrate_adaptive([&](double a) { return a * (I0(a) - a * I1(a)); }, 0.0, 1.0, 1e-13, 0.0).value;
    adj_a = 2.0 * scale * ca;
    adj_b = 2.0 * scale * cb;

    std::vector<double> x, w;
    gauss_legendre(kGauss, x, w);
    for (int g = 2; g <= kNearGaps; ++g) {
      auto& m = near[static_cast<std::size_t>(g)];
      for (int p = 0; p < kGauss; ++p) {
        for (int q = 0; q < kGauss; ++q) {
          const double xp = 0.5 * (x[static_cast<std::size_t>(p)] + 1.0);
          const double xq = 0.5 * (x[static_cast<std::size_t>(q)] + 1.0);
          const double wt = 0.25 * w[static_cast<std::size_t>(p)] * w[static_cast<std::size_t>(q)];
          const double k = 2.0 * scale * wt * std::pow(g + xq - xp, -1.0 - 2.0 * s);
          const std::array<double, 3> c{-1.0, xp, -xq};
          for (int a = 0; a < 3; ++a) {
            for (int b = 0; b < 3; ++b) m[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] += k * c[static_cast<std::size_t>(a)] * c[static_cast<std::size_t>(b)];
          }
        }
      }
    }
    // Corner trapezoid: 2 (both orders) * 1/4 * spacing^2 * |offset spacing|^{-1-2s}.
    far.assign(static_cast<std::size_t>(cells + 2), 0.0);
    for (int k = 1; k <= cells + 1; ++k) far[static_cast<std::size_t>(k)] = 0.5 * scale * std::pow(k, -1.0 - 2.0 * s);
  }
};

template <class Visitor>
void enumerate_form(int cells, const Kernel& k, Visitor& vis) {
  for (int i = 0; i < cells; ++i) vis(k.diag, i, i + 1, i, i + 1);
  for (int i = 0; i + 1 < cells; ++i) {
    vis(k.adj_a, i, i + 1, i, i + 1);
    vis(k.adj_a, i + 1, i + 2, i + 1, i + 2);
    vis(2.0 * k.adj_b, i, i + 1, i + 1, i + 2);
  }
  for (int g = 2; g <= kNearGaps; ++g) {
    const auto& m = k.near[static_cast<std::size_t>(g)];
    for (int i = 0; i + g < cells; ++i) {
      const int j = i + g;
      const std::array<std::array<int, 2>, 3> d{{{i, j}, {i, i + 1}, {j, j + 1}}};
      for (int p = 0; p < 3; ++p) {
        for (int q = 0; q < 3; ++q) {
          vis(m[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)], d[static_cast<std::size_t>(p)][0],
              d[static_cast<std::size_t>(p)][1], d[static_cast<std::size_t>(q)][0], d[static_cast<std::size_t>(q)][1]);
        }
      }
    }
  }
  for (int i = 0; i < cells; ++i) {
    for (int j = i + kNearGaps + 1; j < cells; ++j) {
      vis(k.far[static_cast<std::size_t>(j - i)], i, j, i, j);
      vis(k.far[static_cast<std::size_t>(j + 1 - i)], i, j + 1, i, j + 1);
      vis(k.far[static_cast<std::size_t>(j - i - 1)], i + 1, j, i + 1, j);
      vis(k.far[static_cast<std::size_t>(j - i)], i + 1, j + 1, i + 1, j + 1);
    }
  }
}

struct ScalarVisitor {
  const double* v;
  double acc = 0.0;
  void operator()(double c, int a, int b, int cc, int d) { acc += c * (v[b] - v[a]) * (v[d] - v[cc]); }
};

struct GramVisitor {
  const std::vector<double>& G;
  std::size_t n;
  double acc = 0.0;
  double at(int a, int b) const { return G[static_cast<std::size_t>(a) * n + static_cast<std::size_t>(b)]; }
  void operator()(double c, int a, int b, int cc, int d) { acc += c * (at(b, d) - at(b, cc) - at(a, d) + at(a, cc)); }
};

struct MatrixVisitor {
  DenseSpd& S;
  void add(int x, int y, double c) {
    S(x, y) += 0.5 * c;
    S(y, x) += 0.5 * c;
  }
  void operator()(double c, int a, int b, int cc, int d) {
    add(b, d, c);
    add(b, cc, -c);
    add(a, d, -c);
    add(a, cc, c);
  }
};

void require_open_unit(double s, const char* what) {
  if (!(s > 0.0 && s < 1.0)) throw DomainError(std::string(what) + ": order must lie in (0, 1)");
}

double seminorm_sq(std::span<const double> v, const Kernel& k) {
  ScalarVisitor vis{v.data()};
  enumerate_form(static_cast<int>(v.size()) - 1, k, vis);
  return std::max(vis.acc, 0.0);
}

double trapezoid_sq(std::span<const double> v, double spacing) {
  const std::size_t n = v.size();
  double acc = 0.5 * (v[0] * v[0] + v[n - 1] * v[n - 1]);
  for (std::size_t i = 1; i + 1 < n; ++i) acc += v[i] * v[i];
  return acc * spacing;
}

double time_norm_sq(const TimeSeries& h, double s) {
  double out = l2_inner(h, h);
  if (s > 0.0) out += seminorm_sq(h.values, Kernel(s, h.grid.dt(), h.grid.N));
  return out;
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

double slobodeckij_seminorm(std::span<const double> v, double spacing, double s) {
  require_open_unit(s, "slobodeckij_seminorm");
  if (v.size() < 2) throw DomainError("slobodeckij_seminorm: need at least two nodes");
  return std::sqrt(seminorm_sq(v, Kernel(s, spacing, static_cast<int>(v.size()) - 1)));
}

double slobodeckij_time_norm(const TimeSeries& h, double s) {
  require_open_unit(s, "slobodeckij_time_norm");
  return std::sqrt(time_norm_sq(h, s));
}

double slobodeckij_space_norm(std::span<const double> u, double r, const SpatialGrid& grid) {
  require_open_unit(r, "slobodeckij_space_norm");
  if (static_cast<int>(u.size()) != grid.size()) throw GridMismatchError("slobodeckij_space_norm: length mismatch");
  return std::sqrt(trapezoid_sq(u, grid.h()) + seminorm_sq(u, Kernel(r, grid.h(), grid.M)));
}

double hrs_norm_Q(const SpaceTimeField& u, RegularityIndex idx) {
  if (!(idx.r >= 0.0 && idx.r < 1.0 && idx.s >= 0.0 && idx.s < 1.0)) {
    throw DomainError("hrs_norm_Q: implemented for 0 <= r, s < 1");
  }
  const int M = u.sgrid.M, N = u.tgrid.N;
  double total = l2_inner_Q(u, u);
  if (idx.r > 0.0) {
    const Kernel k(idx.r, u.sgrid.h(), M);
    std::vector<double> per_slice(static_cast<std::size_t>(N + 1));
    for (int n = 0; n <= N; ++n) per_slice[static_cast<std::size_t>(n)] = seminorm_sq(u.slice(n), k);
    const std::vector<double> w = trapezoid_weights(u.tgrid);
    for (int n = 0; n <= N; ++n) total += w[static_cast<std::size_t>(n)] * per_slice[static_cast<std::size_t>(n)];
  }
  if (idx.s > 0.0) {
    // Gram matrix of the time slices under the spatial trapezoid rule.
    const std::size_t n1 = static_cast<std::size_t>(N + 1);
    std::vector<double> G(n1 * n1, 0.0);
    const double h = u.sgrid.h();
    for (int j = 0; j <= M; ++j) {
      const double wj = (j == 0 || j == M) ? 0.5 * h : h;
      const double* row = u.values.data() + static_cast<std::size_t>(j) * n1;
      for (std::size_t a = 0; a < n1; ++a) {
        const double ra = wj * row[a];
        if (ra == 0.0) continue;
        double* g = G.data() + a * n1;
        for (std::size_t b = a; b < n1; ++b) g[b] += ra * row[b];
      }
    }
    for (std::size_t a = 0; a < n1; ++a) {
      for (std::size_t b = 0; b < a; ++b) G[a * n1 + b] = G[b * n1 + a];
    }
    GramVisitor vis{G, n1};
    enumerate_form(N, Kernel(idx.s, u.tgrid.dt(), N), vis);
    total += std::max(vis.acc, 0.0);
  }
  return std::sqrt(total);
}

double hrs_norm_Sigma(const BoundaryData& g, RegularityIndex idx) {
  if (!(idx.s >= 0.0 && idx.s < 1.0)) {
    throw DomainError("hrs_norm_Sigma: time order must lie in [0, 1); use negative_norm_Sigma for dual orders");
  }
  return std::sqrt(time_norm_sq(g.left, idx.s) + time_norm_sq(g.right, idx.s));
}

FlaggedNorm hardy_weighted_time_norm(const TimeSeries& h, double s) {
  require_open_unit(s, "hardy_weighted_time_norm");
  const int N = h.grid.N;
  const double dt = h.grid.dt();
  const double mid = 0.5 * (h[0] + h[1]);
  const double first = dt * mid * mid * std::pow(0.5 * dt, -2.0 * s);
  double rest = 0.0;
  for (int n = 1; n <= N; ++n) {
    const double w = (n == 1 || n == N) ? 0.5 * dt : dt;
    rest += w * h[n] * h[n] * std::pow(h.grid.node(n), -2.0 * s);
  }
  if (N == 1) rest = 0.0;
  FlaggedNorm out;
  out.weighted = first + rest;
  out.value = std::sqrt(time_norm_sq(h, s) + out.weighted);
  const bool starts_nonzero = std::abs(h[0]) > 1e-12 * std::max(max_abs(h.values), 1e-300);
  out.divergent = first > 10.0 * rest || (s >= 0.5 && starts_nonzero);
  return out;
}

FlaggedNorm weighted_boundary_norm_H00(std::span<const double> u, const WeightFunction& w, const SpatialGrid& grid) {
  const int M = grid.M;
  if (static_cast<int>(u.size()) != M + 1 || static_cast<int>(w.rho.size()) != M + 1) {
    throw GridMismatchError("weighted_boundary_norm_H00: length mismatch");
  }
  FlaggedNorm out;
  if (max_abs(u) == 0.0) return out;
  const double h = grid.h();
  auto at = [&](int j) { return u[static_cast<std::size_t>(j)]; };
  auto rho = [&](int j) { return w.rho[static_cast<std::size_t>(j)]; };
  auto cell = [&](int j) {
    const double m = 0.5 * (at(j) + at(j + 1));
    return h * m * m / (0.5 * (rho(j) + rho(j + 1)));
  };
  const double boundary = cell(0) + cell(M - 1);
  double rest = 0.0;
  for (int j = 1; j <= M - 1; ++j) {
    const double wj = (j == 1 || j == M - 1) ? 0.5 * h : h;
    rest += wj * at(j) * at(j) / rho(j);
  }
  if (M <= 2) rest = 0.0;
  out.weighted = boundary + rest;
  out.value = std::sqrt(trapezoid_sq(u, h) + seminorm_sq(u, Kernel(0.5, h, M)) + out.weighted);
  const double tol = 1e-12 * max_abs(u);
  out.divergent = boundary > 10.0 * rest || std::abs(at(0)) > tol || std::abs(at(M)) > tol;
  return out;
}

namespace {

struct SpectralParts {
  double weighted = 0.0;
  double captured = 0.0;
  double total = 0.0;
};

SpectralParts spectral_parts(std::span<const double> u, const EigenBasis& basis, double theta) {
  if (static_cast<int>(u.size()) != basis.grid.size()) throw GridMismatchError("spectral_power_norm: length mismatch");
  SpectralParts p;
  const std::vector<double> c = basis.project(u);
  for (int k = 0; k < basis.K(); ++k) {
    const double ck = c[static_cast<std::size_t>(k)];
    p.captured += ck * ck;
    p.weighted += std::pow(basis.lambda[static_cast<std::size_t>(k)], 2.0 * theta) * ck * ck;
  }
  p.total = mass_inner(u, u, basis.grid);
  return p;
}

SpectralNorm finish(double weighted, double captured, double total) {
  SpectralNorm out;
  out.value = std::sqrt(weighted);
  out.tail = total > 0.0 ? std::max(0.0, total - captured) / total : 0.0;
  out.truncated = out.tail > 1e-6;
  return out;
}

void require_theta(double theta) {
  if (!(theta >= 0.0 && theta <= 1.0)) throw DomainError("spectral_power_norm: theta must lie in [0, 1]");
}

}  // namespace

SpectralNorm spectral_power_norm(std::span<const double> u, const EigenBasis& basis, double theta) {
  require_theta(theta);
  const SpectralParts p = spectral_parts(u, basis, theta);
  return finish(p.weighted, p.captured, p.total);
}

SpectralNorm spectral_power_norm(const SpaceTimeField& u, const EigenBasis& basis, double theta) {
  require_theta(theta);
  if (!(u.sgrid == basis.grid)) throw GridMismatchError("spectral_power_norm: field and basis grids differ");
  const std::vector<double> w = trapezoid_weights(u.tgrid);
  double weighted = 0.0, captured = 0.0, total = 0.0;
  for (int n = 0; n <= u.tgrid.N; ++n) {
    const SpectralParts p = spectral_parts(u.slice(n), basis, theta);
    const double wn = w[static_cast<std::size_t>(n)];
    weighted += wn * p.weighted;
    captured += wn * p.captured;
    total += wn * p.total;
  }
  return finish(weighted, captured, total);
}

double negative_norm_Sigma(const BoundaryData& g, RegularityIndex idx) {
  if (!(idx.r <= 0.0 && idx.s <= 0.0 && idx.s > -0.5)) {
    throw DomainError("negative_norm_Sigma: implemented for r <= 0 and -1/2 < s <= 0");
  }
  const TimeGrid& tg = g.left.grid;
  const int N = tg.N;
  const double dt = tg.dt();
  const std::vector<double> mass = trapezoid_weights(tg);
  DenseSpd S(N + 1);
  for (int n = 0; n <= N; ++n) S(n, n) = mass[static_cast<std::size_t>(n)];
  const double sigma = -idx.s;
  if (sigma > 0.0) {
    MatrixVisitor vis{S};
    enumerate_form(N, Kernel(sigma, dt, N), vis);
  }
  const double cond = S.condition_bound(0.5 * dt);
  if (cond > 1e12) throw IllConditionedError("negative_norm_Sigma: Gram matrix condition bound " + std::to_string(cond));
  double total = 0.0;
  for (const TimeSeries* side : {&g.left, &g.right}) {
    std::vector<double> Mg(static_cast<std::size_t>(N + 1));
    for (int n = 0; n <= N; ++n) Mg[static_cast<std::size_t>(n)] = mass[static_cast<std::size_t>(n)] * (*side)[n];
    const std::vector<double> y = S.solve(Mg);
    for (int n = 0; n <= N; ++n) total += Mg[static_cast<std::size_t>(n)] * y[static_cast<std::size_t>(n)];
  }
  return std::sqrt(std::max(total, 0.0));
}

}  // namespace fracdiff
