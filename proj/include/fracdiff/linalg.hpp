#pragma once

// Small dense and tridiagonal kernels used across the library.

#include <span>
#include <vector>

namespace fracdiff {

/// Symmetric tridiagonal matrix: diag[0..n-1], off[0..n-2].
struct SymTridiagonal {
  std::vector<double> diag;
  std::vector<double> off;

  int size() const { return static_cast<int>(diag.size()); }
  /// y = T x
  std::vector<double> apply(std::span<const double> x) const;
};

/// All eigenvalues of a symmetric tridiagonal matrix, ascending, by the
/// implicit QL method with Wilkinson shifts.
std::vector<double> tridiagonal_eigenvalues(const SymTridiagonal& t);

/// Eigenvector for a (computed) eigenvalue by inverse iteration, unit
/// Euclidean norm.
std::vector<double> tridiagonal_eigenvector(const SymTridiagonal& t, double lambda);

/// Solves (T + shift I) x = rhs for a symmetric tridiagonal T, Gaussian
/// elimination with partial pivoting.
std::vector<double> tridiagonal_solve(const SymTridiagonal& t, double shift, std::span<const double> rhs);

/// Dense symmetric positive definite matrix, row-major.
class DenseSpd {
 public:
  explicit DenseSpd(int n) : n_(n), a_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0) {}

  int size() const { return n_; }
  double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j)]; }
  double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j)]; }

  /// Upper bound on the 2-norm condition number from Gershgorin discs and
  /// a supplied lower bound on the smallest eigenvalue.
  double condition_bound(double min_eigenvalue_lower_bound) const;

  /// Solves A x = b by Cholesky factorization; throws on a non-positive pivot.
  std::vector<double> solve(std::span<const double> b) const;

 private:
  int n_;
  std::vector<double> a_;
};

}  // namespace fracdiff
