#pragma once

// Product-integration weights for the scalar fractional Duhamel integral
//   y(t) = int_0^t kappa(t - s) F(s) ds,  kappa(s) = s^{alpha-1} E_{alpha,alpha}(-lambda s^alpha),
// with F piecewise linear on a uniform grid and kappa integrated exactly
// against 1 and s on every cell.

#include <memory>
#include <vector>

#include "fracdiff/fractional_calculus.hpp"

namespace fracdiff {

class DuhamelWeights {
 public:
  /// alpha in (0, 1], lambda >= 0.
  DuhamelWeights(double alpha, double lambda, TimeGrid grid);

  /// Shared, immutable weights for (alpha, lambda, grid).
  static std::shared_ptr<const DuhamelWeights> get(double alpha, double lambda, TimeGrid grid);

  double alpha() const { return alpha_; }
  double lambda() const { return lambda_; }
  const TimeGrid& grid() const { return grid_; }

  /// Weight of F(t_{n-m}) and F(t_{n-m-1}) in y(t_n), m = 0..N-1.
  const std::vector<double>& near() const { return near_; }
  const std::vector<double>& far() const { return far_; }

  /// y_n = int_0^{t_n} kappa(t_n - s) F(s) ds.
  TimeSeries forward(const TimeSeries& F) const;
  /// y_n = int_{t_n}^T kappa(s - t_n) f(s) ds.
  TimeSeries backward(const TimeSeries& f) const;

  /// (h, backward(f)) in L2(0, T). Trapezoid rule, except that the layer
  /// f(T) int_0^{T-t} kappa near t = T is integrated exactly against the
  /// piecewise linear h; the plain trapezoid rule only converges at order
  /// 1 + alpha there.
  double pair_backward(const TimeSeries& h, const TimeSeries& f) const;
  /// The part of pair_backward added to the trapezoid rule, per unit f(T).
  double terminal_layer(const TimeSeries& h) const;
  /// (forward(F), h), with the layer F(0) int_0^t kappa near t = 0 treated
  /// the same way.
  double pair_forward(const TimeSeries& F, const TimeSeries& h) const;

  /// Primitive int_0^sigma kappa(s) ds.
  static double primitive0(double alpha, double lambda, double sigma);
  /// First moment int_0^sigma s kappa(s) ds.
  static double primitive1(double alpha, double lambda, double sigma);
  /// int_0^sigma primitive0 and int_0^sigma s primitive0(s) ds.
  static double second_primitive0(double alpha, double lambda, double sigma);
  static double second_primitive1(double alpha, double lambda, double sigma);

 private:
  double alpha_;
  double lambda_;
  TimeGrid grid_;
  std::vector<double> near_;
  std::vector<double> far_;
  std::vector<double> layer_;  // exact minus trapezoid weights, indexed by T - t
};

}  // namespace fracdiff
