#pragma once

// Exact arithmetic on regularity exponents that are affine in alpha:
// c0 + c1 * alpha with rational c0, c1.

#include <cstdint>
#include <ostream>
#include <string>

namespace fracdiff {

class Rational {
 public:
  Rational(std::int64_t num = 0, std::int64_t den = 1);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string str() const;

  friend Rational operator+(Rational a, Rational b);
  friend Rational operator-(Rational a, Rational b);
  friend Rational operator*(Rational a, Rational b);
  friend Rational operator/(Rational a, Rational b);
  friend Rational operator-(Rational a) { return Rational(-a.num_, a.den_); }
  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend bool operator<(Rational a, Rational b);
  friend bool operator<=(Rational a, Rational b) { return !(b < a); }

 private:
  std::int64_t num_;
  std::int64_t den_;
};

/// c0 + c1 * alpha.
struct AlphaAffine {
  Rational c0;
  Rational c1;

  AlphaAffine(Rational constant = 0, Rational alpha_coefficient = 0) : c0(constant), c1(alpha_coefficient) {}
  static AlphaAffine alpha() { return AlphaAffine(0, 1); }

  double at(double alpha) const { return c0.value() + c1.value() * alpha; }
  bool is_constant() const { return c1 == Rational(0); }
  std::string str() const;

  friend AlphaAffine operator+(const AlphaAffine& a, const AlphaAffine& b) { return {a.c0 + b.c0, a.c1 + b.c1}; }
  friend AlphaAffine operator-(const AlphaAffine& a, const AlphaAffine& b) { return {a.c0 - b.c0, a.c1 - b.c1}; }
  friend AlphaAffine operator*(Rational k, const AlphaAffine& a) { return {k * a.c0, k * a.c1}; }
  friend bool operator==(const AlphaAffine& a, const AlphaAffine& b) = default;
};

/// (space order, time order).
struct ExactIndex {
  AlphaAffine r;
  AlphaAffine s;
  friend bool operator==(const ExactIndex& a, const ExactIndex& b) = default;
  std::string str() const;
};

std::ostream& operator<<(std::ostream& os, const Rational& q);
std::ostream& operator<<(std::ostream& os, const AlphaAffine& a);
std::ostream& operator<<(std::ostream& os, const ExactIndex& i);

/// Trace exponents of H^{r,s}: mu = r - 3/2, nu = s (r - 3/2) / r (nu = 0
/// when s = 0). Requires r > 3/2.
ExactIndex trace_exponents(Rational r, AlphaAffine s);

/// Componentwise (1 - theta) idx0 + theta idx1, theta in [0, 1].
ExactIndex interpolation_index(Rational theta, const ExactIndex& idx0, const ExactIndex& idx1);

/// Parses "p", "p/q", "alpha", "p*alpha", "p/q*alpha", "a+b*alpha" forms,
/// e.g. "-1/2" or "3/4*alpha" or "1/2-1/4*alpha".
AlphaAffine parse_alpha_affine(const std::string& text);

}  // namespace fracdiff
