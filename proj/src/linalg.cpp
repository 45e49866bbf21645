#include "fracdiff/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fracdiff/errors.hpp"

namespace fracdiff {

std::vector<double> SymTridiagonal::apply(std::span<const double> x) const {
  const int n = size();
  std::vector<double> y(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double v = diag[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
    if (i > 0) v += off[static_cast<std::size_t>(i - 1)] * x[static_cast<std::size_t>(i - 1)];
    if (i + 1 < n) v += off[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i + 1)];
    y[static_cast<std::size_t>(i)] = v;
  }
  return y;
}

std::vector<double> tridiagonal_eigenvalues(const SymTridiagonal& t) {
  const int n = t.size();
  std::vector<double> d = t.diag;
  std::vector<double> e(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i + 1 < n; ++i) e[static_cast<std::size_t>(i)] = t.off[static_cast<std::size_t>(i)];

  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m = l;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[static_cast<std::size_t>(m)]) + std::abs(d[static_cast<std::size_t>(m + 1)]);
        if (std::abs(e[static_cast<std::size_t>(m)]) <= std::numeric_limits<double>::epsilon() * dd) break;
      }
      if (m != l) {
        if (++iter > 60) throw NonConvergenceError("tridiagonal QL: too many iterations");
        double g = (d[static_cast<std::size_t>(l + 1)] - d[static_cast<std::size_t>(l)]) /
                   (2.0 * e[static_cast<std::size_t>(l)]);
        double r = std::hypot(g, 1.0);
        g = d[static_cast<std::size_t>(m)] - d[static_cast<std::size_t>(l)] +
            e[static_cast<std::size_t>(l)] / (g + std::copysign(r, g));
        double s = 1.0;
        double c = 1.0;
        double p = 0.0;
        int i = m - 1;
        for (; i >= l; --i) {
          double f = s * e[static_cast<std::size_t>(i)];
          const double b = c * e[static_cast<std::size_t>(i)];
          r = std::hypot(f, g);
          e[static_cast<std::size_t>(i + 1)] = r;
          if (r == 0.0) {
            d[static_cast<std::size_t>(i + 1)] -= p;
            e[static_cast<std::size_t>(m)] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[static_cast<std::size_t>(i + 1)] - p;
          r = (d[static_cast<std::size_t>(i)] - g) * s + 2.0 * c * b;
          p = s * r;
          d[static_cast<std::size_t>(i + 1)] = g + p;
          g = c * r - b;
        }
        if (r == 0.0 && i >= l) continue;
        d[static_cast<std::size_t>(l)] -= p;
        e[static_cast<std::size_t>(l)] = g;
        e[static_cast<std::size_t>(m)] = 0.0;
      }
    } while (m != l);
  }
  std::sort(d.begin(), d.end());
  return d;
}

std::vector<double> tridiagonal_solve(const SymTridiagonal& t, double shift, std::span<const double> rhs) {
  const int n = t.size();
  // Banded LU with partial pivoting: rows carry up to three nonzeros
  // (diagonal, first and second superdiagonal after pivoting).
  std::vector<double> a(static_cast<std::size_t>(n)), b(static_cast<std::size_t>(n)),
      c(static_cast<std::size_t>(n), 0.0), sub(static_cast<std::size_t>(n), 0.0);
  std::vector<double> x(rhs.begin(), rhs.end());
  for (int i = 0; i < n; ++i) {
    a[static_cast<std::size_t>(i)] = t.diag[static_cast<std::size_t>(i)] + shift;
    b[static_cast<std::size_t>(i)] = (i + 1 < n) ? t.off[static_cast<std::size_t>(i)] : 0.0;
    sub[static_cast<std::size_t>(i)] = (i > 0) ? t.off[static_cast<std::size_t>(i - 1)] : 0.0;
  }
  // Row i holds: a[i] at column i, b[i] at i+1, c[i] at i+2.
  const double tiny = std::numeric_limits<double>::min() * 1e10;
  for (int i = 0; i + 1 < n; ++i) {
    const std::size_t k = static_cast<std::size_t>(i);
    const double lower = sub[k + 1];  // entry (i+1, i)
    if (std::abs(lower) > std::abs(a[k])) {
      // Swap rows i and i+1.
      const double ra = lower, rb = a[k + 1], rc = b[k + 1];
      const double sa = a[k], sb = b[k], sc = c[k];
      a[k] = ra;
      b[k] = rb;
      c[k] = rc;
      const double factor = sa / ra;
      a[k + 1] = sb - factor * rb;
      b[k + 1] = sc - factor * rc;
      std::swap(x[k], x[k + 1]);
      x[k + 1] -= factor * x[k];
    } else {
      const double pivot = (a[k] == 0.0) ? tiny : a[k];
      a[k] = pivot;
      const double factor = lower / pivot;
      a[k + 1] -= factor * b[k];
      b[k + 1] -= factor * c[k];
      x[k + 1] -= factor * x[k];
    }
  }
  for (int i = n - 1; i >= 0; --i) {
    const std::size_t k = static_cast<std::size_t>(i);
    double v = x[k];
    if (i + 1 < n) v -= b[k] * x[k + 1];
    if (i + 2 < n) v -= c[k] * x[k + 2];
    const double pivot = (a[k] == 0.0) ? tiny : a[k];
    x[k] = v / pivot;
  }
  return x;
}

std::vector<double> tridiagonal_eigenvector(const SymTridiagonal& t, double lambda) {
  const int n = t.size();
  double scale = 0.0;
  for (double v : t.diag) scale = std::max(scale, std::abs(v));
  // Shift slightly off the eigenvalue so that the solve stays finite.
  const double shift = -(lambda + 1e-13 * std::max(scale, 1.0));
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = 1.0 + 0.1 * std::sin(1.0 + 7.3 * i);
  for (int iter = 0; iter < 3; ++iter) {
    v = tridiagonal_solve(t, shift, v);
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    if (!(norm > 0.0) || !std::isfinite(norm)) throw NonConvergenceError("inverse iteration failed");
    for (double& x : v) x /= norm;
  }
  return v;
}

double DenseSpd::condition_bound(double min_eigenvalue_lower_bound) const {
  double upper = 0.0;
  for (int i = 0; i < n_; ++i) {
    double row = 0.0;
    for (int j = 0; j < n_; ++j) row += std::abs((*this)(i, j));
    upper = std::max(upper, row);
  }
  return upper / min_eigenvalue_lower_bound;
}

std::vector<double> DenseSpd::solve(std::span<const double> b) const {
  const int n = n_;
  std::vector<double> l(a_);
  for (int j = 0; j < n; ++j) {
    double diag = l[static_cast<std::size_t>(j) * n + j];
    for (int k = 0; k < j; ++k) {
      const double v = l[static_cast<std::size_t>(j) * n + k];
      diag -= v * v;
    }
    if (!(diag > 0.0)) throw IllConditionedError("Cholesky: matrix is not positive definite");
    diag = std::sqrt(diag);
    l[static_cast<std::size_t>(j) * n + j] = diag;
    for (int i = j + 1; i < n; ++i) {
      double v = l[static_cast<std::size_t>(i) * n + j];
      const double* ri = &l[static_cast<std::size_t>(i) * n];
      const double* rj = &l[static_cast<std::size_t>(j) * n];
      for (int k = 0; k < j; ++k) v -= ri[k] * rj[k];
      l[static_cast<std::size_t>(i) * n + j] = v / diag;
    }
  }
  std::vector<double> x(b.begin(), b.end());
  for (int i = 0; i < n; ++i) {
    double v = x[static_cast<std::size_t>(i)];
    for (int k = 0; k < i; ++k) v -= l[static_cast<std::size_t>(i) * n + k] * x[static_cast<std::size_t>(k)];
    x[static_cast<std::size_t>(i)] = v / l[static_cast<std::size_t>(i) * n + i];
  }
  for (int i = n - 1; i >= 0; --i) {
    double v = x[static_cast<std::size_t>(i)];
    for (int k = i + 1; k < n; ++k) v -= l[static_cast<std::size_t>(k) * n + i] * x[static_cast<std::size_t>(k)];
    x[static_cast<std::size_t>(i)] = v / l[static_cast<std::size_t>(i) * n + i];
  }
  return x;
}

}  // namespace fracdiff
