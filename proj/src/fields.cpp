#include "fracdiff/fields.hpp"

#include <cmath>

#include "fracdiff/errors.hpp"

namespace fracdiff {

SpaceTimeField::SpaceTimeField(SpatialGrid s, TimeGrid t)
    : sgrid(s), tgrid(t), values(static_cast<std::size_t>(s.size()) * static_cast<std::size_t>(t.size()), 0.0) {}

SpaceTimeField::SpaceTimeField(SpatialGrid s, TimeGrid t, std::vector<double> v)
    : sgrid(s), tgrid(t), values(std::move(v)) {
  if (values.size() != static_cast<std::size_t>(s.size()) * static_cast<std::size_t>(t.size())) {
    throw GridMismatchError("SpaceTimeField: value count does not match the grids");
  }
}

std::vector<double> SpaceTimeField::slice(int n) const {
  std::vector<double> out(static_cast<std::size_t>(sgrid.M + 1));
  for (int j = 0; j <= sgrid.M; ++j) out[static_cast<std::size_t>(j)] = at(j, n);
  return out;
}

void SpaceTimeField::set_slice(int n, std::span<const double> u) {
  for (int j = 0; j <= sgrid.M; ++j) at(j, n) = u[static_cast<std::size_t>(j)];
}

TimeSeries SpaceTimeField::trace(int j) const {
  const auto first = values.begin() + static_cast<std::ptrdiff_t>(index(j, 0));
  return TimeSeries(tgrid, std::vector<double>(first, first + tgrid.N + 1));
}

void SpaceTimeField::set_trace(int j, const TimeSeries& s) {
  for (int n = 0; n <= tgrid.N; ++n) at(j, n) = s[n];
}

namespace {

void require_same(const SpaceTimeField& a, const SpaceTimeField& b, const char* who) {
  if (!(a.sgrid == b.sgrid) || !(a.tgrid == b.tgrid)) throw GridMismatchError(std::string(who) + ": fields live on different grids");
}

}  // namespace

SpaceTimeField& SpaceTimeField::operator+=(const SpaceTimeField& other) {
  require_same(*this, other, "field +");
  for (std::size_t i = 0; i < values.size(); ++i) values[i] += other.values[i];
  return *this;
}

SpaceTimeField& SpaceTimeField::operator-=(const SpaceTimeField& other) {
  require_same(*this, other, "field -");
  for (std::size_t i = 0; i < values.size(); ++i) values[i] -= other.values[i];
  return *this;
}

SpaceTimeField& SpaceTimeField::operator*=(double c) {
  for (double& v : values) v *= c;
  return *this;
}

SpaceTimeField operator+(SpaceTimeField a, const SpaceTimeField& b) { return a += b; }
SpaceTimeField operator-(SpaceTimeField a, const SpaceTimeField& b) { return a -= b; }
SpaceTimeField operator*(double c, SpaceTimeField a) { return a *= c; }

BoundaryData::BoundaryData(TimeGrid t) : tgrid(t), left(t), right(t) {}

BoundaryData::BoundaryData(TimeSeries l, TimeSeries r) : tgrid(l.grid), left(std::move(l)), right(std::move(r)) {
  if (!(left.grid == right.grid)) throw GridMismatchError("BoundaryData: endpoint series on different grids");
}

BoundaryData operator*(double c, BoundaryData g) {
  for (double& v : g.left.values) v *= c;
  for (double& v : g.right.values) v *= c;
  return g;
}

double l2_inner_Q(const SpaceTimeField& a, const SpaceTimeField& b) {
  require_same(a, b, "l2_inner_Q");
  const int M = a.sgrid.M;
  const int N = a.tgrid.N;
  const std::vector<double> wt = trapezoid_weights(a.tgrid);
  double acc = 0.0;
  for (int j = 0; j <= M; ++j) {
    const double wx = (j == 0 || j == M) ? 0.5 : 1.0;
    double row = 0.0;
    for (int n = 0; n <= N; ++n) row += wt[static_cast<std::size_t>(n)] * a.at(j, n) * b.at(j, n);
    acc += wx * row;
  }
  return acc * a.sgrid.h();
}

double l2_norm_Q(const SpaceTimeField& a) { return std::sqrt(l2_inner_Q(a, a)); }

double l2_inner_Sigma(const BoundaryData& a, const BoundaryData& b) {
  return l2_inner(a.left, b.left) + l2_inner(a.right, b.right);
}

double l2_norm_Sigma(const BoundaryData& a) { return std::sqrt(l2_inner_Sigma(a, a)); }

std::vector<TimeSeries> project_field(const SpaceTimeField& u, const EigenBasis& basis) {
  if (!(u.sgrid == basis.grid)) throw GridMismatchError("project_field: basis and field grids differ");
  const int K = basis.K();
  const int M = u.sgrid.M;
  const int N = u.tgrid.N;
  const double h = u.sgrid.h();
  std::vector<TimeSeries> modes(static_cast<std::size_t>(K), TimeSeries(u.tgrid));
  for (int k = 0; k < K; ++k) {
    const auto& phi = basis.phi[static_cast<std::size_t>(k)];
    auto& out = modes[static_cast<std::size_t>(k)];
    // phi vanishes on the boundary, so the mass inner product only needs
    // interior rows.
    for (int j = 1; j < M; ++j) {
      const double w = h * phi[static_cast<std::size_t>(j)];
      for (int n = 0; n <= N; ++n) out[n] += w * u.at(j, n);
    }
  }
  return modes;
}

SpaceTimeField synthesize_field(const std::vector<TimeSeries>& modes, const EigenBasis& basis) {
  if (modes.empty()) throw DomainError("synthesize_field: no modes");
  const TimeGrid tg = modes.front().grid;
  SpaceTimeField out(basis.grid, tg);
  const int M = basis.grid.M;
  for (std::size_t k = 0; k < modes.size(); ++k) {
    const auto& phi = basis.phi[k];
    for (int j = 1; j < M; ++j) {
      const double p = phi[static_cast<std::size_t>(j)];
      for (int n = 0; n <= tg.N; ++n) out.at(j, n) += p * modes[k][n];
    }
  }
  return out;
}

}  // namespace fracdiff
