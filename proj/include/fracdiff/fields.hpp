#pragma once

// Space-time node fields on Q = (0, L) x (0, T) and boundary data on the
// lateral boundary {0, L} x (0, T).

#include <span>
#include <vector>

#include "fracdiff/elliptic.hpp"
#include "fracdiff/fractional_calculus.hpp"

namespace fracdiff {

/// Values at (x_j, t_n), stored row-major in space: values[j * (N + 1) + n].
struct SpaceTimeField {
  SpatialGrid sgrid;
  TimeGrid tgrid;
  std::vector<double> values;

  SpaceTimeField() = default;
  SpaceTimeField(SpatialGrid s, TimeGrid t);
  SpaceTimeField(SpatialGrid s, TimeGrid t, std::vector<double> v);

  template <class F>
  static SpaceTimeField sample(SpatialGrid s, TimeGrid t, F&& f) {
    SpaceTimeField out(s, t);
    for (int j = 0; j <= s.M; ++j) {
      for (int n = 0; n <= t.N; ++n) out.at(j, n) = f(s.node(j), t.node(n));
    }
    return out;
  }

  double& at(int j, int n) { return values[index(j, n)]; }
  double at(int j, int n) const { return values[index(j, n)]; }

  /// Spatial profile at time node n.
  std::vector<double> slice(int n) const;
  void set_slice(int n, std::span<const double> u);
  /// Time trace at spatial node j.
  TimeSeries trace(int j) const;
  void set_trace(int j, const TimeSeries& s);

  SpaceTimeField& operator+=(const SpaceTimeField& other);
  SpaceTimeField& operator-=(const SpaceTimeField& other);
  SpaceTimeField& operator*=(double c);

 private:
  std::size_t index(int j, int n) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(tgrid.N + 1) + static_cast<std::size_t>(n);
  }
};

SpaceTimeField operator+(SpaceTimeField a, const SpaceTimeField& b);
SpaceTimeField operator-(SpaceTimeField a, const SpaceTimeField& b);
SpaceTimeField operator*(double c, SpaceTimeField a);

/// Dirichlet data: left is g at x = 0, right is g at x = L.
struct BoundaryData {
  TimeGrid tgrid;
  TimeSeries left;
  TimeSeries right;

  BoundaryData() = default;
  explicit BoundaryData(TimeGrid t);
  BoundaryData(TimeSeries l, TimeSeries r);
};

BoundaryData operator*(double c, BoundaryData g);

/// Trapezoid inner product and norm over Q.
double l2_inner_Q(const SpaceTimeField& a, const SpaceTimeField& b);
double l2_norm_Q(const SpaceTimeField& a);

/// L2(Sigma): sum over both endpoints of the time inner products.
double l2_inner_Sigma(const BoundaryData& a, const BoundaryData& b);
double l2_norm_Sigma(const BoundaryData& a);

/// Mode coefficients (u(., t_n), phi_k) as K time series.
std::vector<TimeSeries> project_field(const SpaceTimeField& u, const EigenBasis& basis);

/// sum_k modes[k](t) phi_k(x) on the basis grid.
SpaceTimeField synthesize_field(const std::vector<TimeSeries>& modes, const EigenBasis& basis);

}  // namespace fracdiff
