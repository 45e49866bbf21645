#include "fracdiff/generators.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "fracdiff/errors.hpp"

namespace fracdiff {

const char* to_string(GFamily f) {
  switch (f) {
    case GFamily::Noise: return "noise";
    case GFamily::Step: return "step";
    case GFamily::Smooth: return "smooth";
    case GFamily::Zero: return "zero";
  }
  return "?";
}

GFamily g_family_from_string(const std::string& s) {
  if (s == "noise") return GFamily::Noise;
  if (s == "step") return GFamily::Step;
  if (s == "smooth") return GFamily::Smooth;
  if (s == "zero") return GFamily::Zero;
  throw ConfigError("unknown g family '" + s + "' (expected noise, step, smooth or zero)");
}

BoundaryData make_boundary_data(GFamily family, const TimeGrid& grid, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  BoundaryData g(grid);
  const double T = grid.T;
  const int N = grid.N;
  for (TimeSeries* side : {&g.left, &g.right}) {
    TimeSeries& s = *side;
    switch (family) {
      case GFamily::Noise: {
        const double scale = 1.0 / std::sqrt(T);
        for (int n = 1; n <= N; ++n) s[n] = scale * normal(rng);
        break;
      }
      case GFamily::Step: {
        const double amp = normal(rng);
        for (int n = 0; n <= N; ++n) s[n] = (2 * n >= N) ? amp : 0.0;
        break;
      }
      case GFamily::Smooth: {
        double c[3];
        for (int i = 0; i < 3; ++i) c[i] = normal(rng) / (i + 1);
        for (int n = 0; n <= N; ++n) {
          const double t = grid.node(n);
          double v = 0.0;
          for (int i = 0; i < 3; ++i) v += c[i] * std::sin((i + 1) * std::numbers::pi * t / (2.0 * T));
          s[n] = v;
        }
        break;
      }
      case GFamily::Zero:
        break;
    }
  }
  return g;
}

SpaceTimeField random_smooth_field(const SpatialGrid& sgrid, const TimeGrid& tgrid, std::uint64_t seed,
                                   bool vanish_at_zero) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  double c[4][3];
  for (int j = 0; j < 4; ++j) {
    for (int q = 0; q < 3; ++q) c[j][q] = normal(rng) / (j + 1);
  }
  const double pi = std::numbers::pi;
  const double L = sgrid.L;
  const double T = tgrid.T;
  return SpaceTimeField::sample(sgrid, tgrid, [&](double x, double t) {
    double v = 0.0;
    for (int j = 0; j < 4; ++j) {
      const double sx = std::sin((j + 1) * pi * x / L);
      for (int q = 0; q < 3; ++q) {
        const double tau = vanish_at_zero ? std::sin((q + 1) * pi * t / (2.0 * T)) : std::cos(q * pi * t / T);
        v += c[j][q] * sx * tau;
      }
    }
    return v;
  });
}

}  // namespace fracdiff
