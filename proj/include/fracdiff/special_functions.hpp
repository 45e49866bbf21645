#pragma once

// Gamma and two-parameter Mittag-Leffler functions on the negative real axis.

namespace fracdiff {

/// Gamma function for x > 0 (Lanczos, g = 7, nine terms).
double gamma_fn(double x);

/// log Gamma(x) for x > 0.
double log_gamma(double x);

/// 1 / Gamma(x) for every real x; zero at the non-positive integers.
double rgamma(double x);

/// Parameters of E_{alpha,beta}. The solvers only use alpha in (0,1];
/// alpha in (1,2] is accepted on the power-series route.
struct MlParams {
  double alpha = 1.0;
  double beta = 1.0;
};

enum class MlRoute {
  Automatic,
  Series,      ///< power series, long double accumulation
  Asymptotic,  ///< -sum z^{-k} / Gamma(beta - alpha k)
  Integral,    ///< real-line integral plus contour arc (0 < alpha < 1)
  Exponential  ///< alpha = 1, integer beta: exp minus Taylor polynomial
};

struct MlEvaluation {
  double value = 0.0;
  MlRoute route = MlRoute::Automatic;
};

/// E_{alpha,beta}(z) for z <= 0. Throws DomainError on invalid parameters
/// and NonConvergenceError if no route reaches tolerance.
double mittag_leffler(MlParams p, double z);

/// Evaluation through a chosen route; Automatic picks the cheapest
/// route whose accuracy can be guaranteed at (p, z).
MlEvaluation mittag_leffler_eval(MlParams p, double z, MlRoute route = MlRoute::Automatic);

const char* to_string(MlRoute route);

}  // namespace fracdiff
