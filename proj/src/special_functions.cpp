#include "fracdiff/special_functions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include "fracdiff/errors.hpp"
#include "fracdiff/quadrature.hpp"

namespace fracdiff {
namespace {

constexpr double kPi = std::numbers::pi;

// Lanczos approximation, g = 7, n = 9 (Godfrey's coefficients).
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

// log Gamma(x + 1) for x >= -0.5 via the Lanczos sum.
double lanczos_log_gamma_shifted(double x) {
  double a = kLanczos[0];
  const double t = x + kLanczosG + 0.5;
  for (std::size_t i = 1; i < kLanczos.size(); ++i) a += kLanczos[i] / (x + static_cast<double>(i));
  return 0.5 * std::log(2.0 * kPi) + (x + 0.5) * std::log(t) - t + std::log(a);
}

double lanczos_gamma_shifted(double x) {
  double a = kLanczos[0];
  const double t = x + kLanczosG + 0.5;
  for (std::size_t i = 1; i < kLanczos.size(); ++i) a += kLanczos[i] / (x + static_cast<double>(i));
  // t^(x+0.5) split in two halves so that the power does not overflow
  // before being multiplied by exp(-t).
  const double half_power = std::pow(t, 0.5 * (x + 0.5));
  return std::sqrt(2.0 * kPi) * half_power * (half_power * std::exp(-t)) * a;
}

// sin(pi x) with exact zeros at the integers.
double sin_pi(double x) {
  const double r = x - 2.0 * std::round(0.5 * x);  // r in [-1, 1]
  if (r == 0.0 || std::abs(r) == 1.0) return 0.0;
  if (r > 0.5) return std::sin(kPi * (1.0 - r));
  if (r < -0.5) return std::sin(kPi * (-1.0 - r));
  return std::sin(kPi * r);
}

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

struct SeriesOutcome {
  double value;
  double relative_error;
};

// Power series with long double accumulation (Neumaier compensation).
SeriesOutcome ml_series(double alpha, double beta, double z) {
  if (z == 0.0) return {rgamma(beta), 0.0};
  const long double lz = std::log(static_cast<long double>(std::abs(z)));
  long double sum = 0.0L;
  long double comp = 0.0L;
  long double max_abs = 0.0L;
  long double prev_log = -std::numeric_limits<long double>::infinity();
  int small_run = 0;
  constexpr int kMaxTerms = 20000;
  for (int n = 0; n < kMaxTerms; ++n) {
    const long double arg = static_cast<long double>(alpha) * n + beta;
    const long double log_term = n * lz - std::lgamma(arg);
    long double term = std::exp(log_term);
    if (z < 0.0 && (n % 2 == 1)) term = -term;
    const long double t = sum + term;
    if (std::abs(sum) >= std::abs(term)) {
      comp += (sum - t) + term;
    } else {
      comp += (term - t) + sum;
    }
    sum = t;
    max_abs = std::max(max_abs, std::abs(term));
    const long double total = std::abs(sum + comp);
    const bool decreasing = log_term < prev_log;
    prev_log = log_term;
    if (decreasing && std::abs(term) <= 1e-21L * (total + 1e-300L)) {
      if (++small_run >= 2) {
        const long double value = sum + comp;
        const long double rel = max_abs * 64.0L * std::numeric_limits<long double>::epsilon() /
                                std::max(std::abs(value), static_cast<long double>(1e-300));
        return {static_cast<double>(value), static_cast<double>(rel)};
      }
    } else {
      small_run = 0;
    }
  }
  throw NonConvergenceError("mittag_leffler: power series did not converge");
}

// Algebraic expansion for large |z| on the negative axis; returns false if
// the terms stop decreasing before reaching double precision.
bool ml_asymptotic(double alpha, double beta, double z, double& out) {
  const double inv = 1.0 / z;
  double power = 1.0;
  double sum = 0.0;
  int small_run = 0;
  for (int k = 1; k <= 600; ++k) {
    power *= inv;
    const double term = -power * rgamma(beta - alpha * k);
    if (term == 0.0) continue;
    sum += term;
    if (!std::isfinite(sum) || std::abs(term) > 1e8 * std::max(std::abs(sum), 1e-300)) return false;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) {
      if (++small_run >= 2) {
        out = sum;
        return true;
      }
    } else {
      small_run = 0;
    }
  }
  return false;
}

// Real-line integral representation, valid for 0 < alpha < 1 and z < 0
// (|arg z| = pi > alpha pi). For beta >= 1 + alpha the path is kept a
// distance eps from the origin and closed by an arc of radius eps.
double ml_integral(double alpha, double beta, double z) {
  const double x = -z;
  const double sin_a = std::sin(kPi * alpha);
  const double cos_a = std::cos(kPi * alpha);
  const double s1 = std::sin(kPi * (1.0 - beta));
  const double s2 = std::sin(kPi * (1.0 - beta + alpha));
  const double power = (1.0 - beta) / alpha;
  const double inv_alpha = 1.0 / alpha;
  const double eps = (beta < 1.0 + alpha) ? 0.0 : std::min(1.0, 0.5 * x);

  auto kernel = [&](double chi) {
    if (chi <= 0.0) return 0.0;
    const double num = chi * s1 - z * s2;
    const double den = chi * chi - 2.0 * chi * z * cos_a + z * z;
    return std::pow(chi, power) * std::exp(-std::pow(chi, inv_alpha)) * num / (den * alpha * kPi);
  };
  const double chi_max = std::pow(50.0, alpha);
  std::vector<double> breaks = {eps, chi_max};
  auto add_break = [&](double b) {
    if (b > eps && b < chi_max) breaks.push_back(b);
  };
  add_break(1.0);
  if (cos_a < 0.0) {
    const double peak = -x * cos_a;
    const double width = x * sin_a;
    add_break(peak);
    add_break(peak - width);
    add_break(peak + width);
    add_break(peak - 10.0 * width);
    add_break(peak + 10.0 * width);
  }
  std::sort(breaks.begin(), breaks.end());
  const QuadratureResult line = integrate_adaptive(kernel, breaks, 1e-13, 1e-300);
  double value = line.value;
  bool ok = line.converged;

  if (eps > 0.0) {
    const double lead = std::pow(eps, 1.0 + power) / (2.0 * alpha * kPi);
    const double eps_root = std::pow(eps, inv_alpha);
    auto arc = [&](double phi) {
      const double omega = eps_root * std::sin(phi * inv_alpha) + phi * (1.0 + power);
      // Re[e^{i omega} / (eps e^{i phi} - z)]
      const double dr = eps * std::cos(phi) - z;
      const double di = eps * std::sin(phi);
      const double re = (std::cos(omega) * dr + std::sin(omega) * di) / (dr * dr + di * di);
      return lead * std::exp(eps_root * std::cos(phi * inv_alpha)) * re;
    };
    // The real part is even in phi.
    const QuadratureResult arc_part =
        integrate_adaptive(arc, 0.0, alpha * kPi, 1e-13, 1e-300);
    value += 2.0 * arc_part.value;
    ok = ok && arc_part.converged;
  }
  if (!ok) {
    // Accept if the combined error is still far below the solver tolerance.
    if (!(std::abs(line.error) <= 1e-11 * std::abs(value))) {
      throw NonConvergenceError("mittag_leffler: integral representation did not converge");
    }
  }
  return value;
}

double ml_exponential(double beta, double z) {
  // E_{1,m+1}(z) = (e^z - sum_{j<m} z^j / j!) / z^m
  const int m = static_cast<int>(beta) - 1;
  double poly = 0.0;
  double term = 1.0;
  for (int j = 0; j < m; ++j) {
    poly += term;
    term *= z / (j + 1);
  }
  return (std::exp(z) - poly) / std::pow(z, m);
}

void validate(MlParams p, double z) {
  if (!(p.alpha > 0.0 && p.alpha <= 2.0)) {
    std::ostringstream os;
    os << "mittag_leffler: alpha must lie in (0, 2], got " << p.alpha;
    throw DomainError(os.str());
  }
  if (!(p.beta > 0.0) || !std::isfinite(p.beta)) {
    throw DomainError("mittag_leffler: beta must be positive");
  }
  if (!(z <= 0.0)) throw DomainError("mittag_leffler: argument must satisfy z <= 0");
}

}  // namespace

double gamma_fn(double x) {
  if (!(x > 0.0)) {
    std::ostringstream os;
    os << "gamma_fn: argument must be positive, got " << x;
    throw DomainError(os.str());
  }
  if (x < 0.5) return lanczos_gamma_shifted(x) / x;
  if (x <= 21.0 && x == std::floor(x)) {
    double f = 1.0;  // exact factorial
    for (int k = 2; k < static_cast<int>(x); ++k) f *= k;
    return f;
  }
  if (x > 171.7) return std::numeric_limits<double>::infinity();
  return lanczos_gamma_shifted(x - 1.0);
}

double log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma: argument must be positive");
  if (x < 0.5) return lanczos_log_gamma_shifted(x) - std::log(x);
  return lanczos_log_gamma_shifted(x - 1.0);
}

double rgamma(double x) {
  if (is_nonpositive_integer(x)) return 0.0;
  if (x >= 0.5) {
    if (x > 171.0) return std::exp(-log_gamma(x));
    return 1.0 / gamma_fn(x);
  }
  // Reflection: 1/Gamma(x) = sin(pi x) Gamma(1 - x) / pi.
  const double one_minus = 1.0 - x;
  if (one_minus > 171.0) {
    const double s = sin_pi(x);
    const double mag = std::exp(log_gamma(one_minus) + std::log(std::abs(s)) - std::log(kPi));
    return s < 0.0 ? -mag : mag;
  }
  return sin_pi(x) * gamma_fn(one_minus) / kPi;
}

const char* to_string(MlRoute route) {
  switch (route) {
    case MlRoute::Automatic:
      return "automatic";
    case MlRoute::Series:
      return "series";
    case MlRoute::Asymptotic:
      return "asymptotic";
    case MlRoute::Integral:
      return "integral";
    case MlRoute::Exponential:
      return "exponential";
  }
  return "unknown";
}

MlEvaluation mittag_leffler_eval(MlParams p, double z, MlRoute route) {
  validate(p, z);
  const double alpha = p.alpha;
  const double beta = p.beta;
  if (z == 0.0) return {rgamma(beta), MlRoute::Series};

  switch (route) {
    case MlRoute::Series:
      return {ml_series(alpha, beta, z).value, MlRoute::Series};
    case MlRoute::Asymptotic: {
      double v = 0.0;
      if (!ml_asymptotic(alpha, beta, z, v)) {
        throw NonConvergenceError("mittag_leffler: asymptotic expansion does not converge here");
      }
      return {v, MlRoute::Asymptotic};
    }
    case MlRoute::Integral:
      if (!(alpha < 1.0)) throw DomainError("mittag_leffler: integral route needs alpha < 1");
      return {ml_integral(alpha, beta, z), MlRoute::Integral};
    case MlRoute::Exponential:
      if (alpha != 1.0 || beta != std::floor(beta)) {
        throw DomainError("mittag_leffler: exponential route needs alpha = 1 and integer beta");
      }
      return {ml_exponential(beta, z), MlRoute::Exponential};
    case MlRoute::Automatic:
      break;
  }

  const double x = -z;
  if (alpha > 1.0) {
    const SeriesOutcome s = ml_series(alpha, beta, z);
    // Absolute criterion: the series has genuine zeros for alpha > 1.
    if (s.relative_error * std::abs(s.value) > 1e-10) {
      throw NonConvergenceError("mittag_leffler: cancellation in the series for alpha > 1");
    }
    return {s.value, MlRoute::Series};
  }
  if (alpha == 1.0) {
    if (x <= 10.0) return {ml_series(alpha, beta, z).value, MlRoute::Series};
    if (beta == std::floor(beta)) return {ml_exponential(beta, z), MlRoute::Exponential};
    throw NonConvergenceError("mittag_leffler: alpha = 1 with non-integer beta needs |z| <= 10");
  }
  if (x <= 1.0 || std::pow(x, 1.0 / alpha) <= 8.0) {
    const SeriesOutcome s = ml_series(alpha, beta, z);
    if (s.relative_error <= 1e-13) return {s.value, MlRoute::Series};
  }
  double v = 0.0;
  if (ml_asymptotic(alpha, beta, z, v)) return {v, MlRoute::Asymptotic};
  return {ml_integral(alpha, beta, z), MlRoute::Integral};
}

double mittag_leffler(MlParams p, double z) { return mittag_leffler_eval(p, z).value; }

}  // namespace fracdiff
