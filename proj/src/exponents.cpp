#include "fracdiff/exponents.hpp"

#include <cctype>
#include <numeric>
#include <sstream>

#include "fracdiff/errors.hpp"

namespace fracdiff {

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  num_ = g > 1 ? num / g : num;
  den_ = g > 1 ? den / g : den;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(Rational a, Rational b) { return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_); }
Rational operator-(Rational a, Rational b) { return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_); }
Rational operator*(Rational a, Rational b) { return Rational(a.num_ * b.num_, a.den_ * b.den_); }
Rational operator/(Rational a, Rational b) {
  if (b.num_ == 0) throw DomainError("rational division by zero");
  return Rational(a.num_ * b.den_, a.den_ * b.num_);
}
bool operator<(Rational a, Rational b) { return a.num_ * b.den_ < b.num_ * a.den_; }

std::string AlphaAffine::str() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::string ExactIndex::str() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

std::ostream& operator<<(std::ostream& os, const AlphaAffine& a) {
  const bool has0 = !(a.c0 == Rational(0));
  if (a.is_constant()) return os << a.c0;
  if (has0) os << a.c0 << (Rational(0) < a.c1 ? "+" : "-");
  else if (a.c1 < Rational(0)) os << "-";
  const Rational m = a.c1 < Rational(0) ? -a.c1 : a.c1;
  if (!(m == Rational(1))) os << m << "*";
  return os << "alpha";
}

std::ostream& operator<<(std::ostream& os, const ExactIndex& i) { return os << "(" << i.r << ", " << i.s << ")"; }

ExactIndex trace_exponents(Rational r, AlphaAffine s) {
  if (r <= Rational(3, 2)) throw DomainError("trace_exponents: r must exceed 3/2, got " + r.str());
  const Rational mu = r - Rational(3, 2);
  if (s == AlphaAffine()) return {AlphaAffine(mu), AlphaAffine()};
  return {AlphaAffine(mu), (mu / r) * s};
}

ExactIndex interpolation_index(Rational theta, const ExactIndex& idx0, const ExactIndex& idx1) {
  if (theta < Rational(0) || Rational(1) < theta) throw DomainError("interpolation_index: theta outside [0, 1]");
  const Rational w0 = Rational(1) - theta;
  return {w0 * idx0.r + theta * idx1.r, w0 * idx0.s + theta * idx1.s};
}

namespace {

Rational parse_rational(const std::string& t) {
  const auto slash = t.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      const long long n = std::stoll(t, &used);
      if (used != t.size()) throw std::invalid_argument(t);
      return Rational(n);
    }
    const std::string a = t.substr(0, slash), b = t.substr(slash + 1);
    const long long n = std::stoll(a, &used);
    if (used != a.size()) throw std::invalid_argument(t);
    const long long d = std::stoll(b, &used);
    if (used != b.size()) throw std::invalid_argument(t);
    return Rational(n, d);
  } catch (const std::logic_error&) {
    throw ConfigError("cannot parse rational '" + t + "'");
  }
}

}  // namespace

AlphaAffine parse_alpha_affine(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  if (s.empty()) throw ConfigError("empty exponent");
  AlphaAffine out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t next = pos + 1;
    while (next < s.size() && s[next] != '+' && s[next] != '-') ++next;
    std::string term = s.substr(pos, next - pos);
    Rational sign(1);
    if (term[0] == '+' || term[0] == '-') {
      if (term[0] == '-') sign = Rational(-1);
      term = term.substr(1);
    }
    if (term.empty()) throw ConfigError("cannot parse exponent '" + text + "'");
    const std::string tag = "alpha";
    if (term.size() >= tag.size() && term.compare(term.size() - tag.size(), tag.size(), tag) == 0) {
      std::string coef = term.substr(0, term.size() - tag.size());
      if (!coef.empty() && coef.back() == '*') coef.pop_back();
      out.c1 = out.c1 + sign * (coef.empty() ? Rational(1) : parse_rational(coef));
    } else {
      out.c0 = out.c0 + sign * parse_rational(term);
    }
    pos = next;
  }
  return out;
}

}  // namespace fracdiff
