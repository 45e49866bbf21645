#include "fracdiff/harness.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <tuple>

#include "fracdiff/errors.hpp"
#include "fracdiff/forward_solver.hpp"
#include "fracdiff/norms.hpp"
#include "fracdiff/special_functions.hpp"
#include "fracdiff/transposition.hpp"
#include "json.hpp"

namespace fracdiff {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
// Offset between the data seed and the seed of the paired test source.
constexpr std::uint64_t kSourceSeedOffset = 1000003;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw ConfigError("empty list entry in '" + v + "'");
    out.push_back(item);
  }
  if (out.empty()) throw ConfigError("empty list");
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::logic_error&) {
    throw ConfigError("key '" + key + "': cannot parse number '" + v + "'");
  }
}

long long to_integer(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const long long x = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::logic_error&) {
    throw ConfigError("key '" + key + "': cannot parse integer '" + v + "'");
  }
}

std::vector<int> to_int_list(const std::string& key, const std::string& v) {
  std::vector<int> out;
  for (const std::string& s : split_list(v)) {
    const long long x = to_integer(key, s);
    if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) {
      throw ConfigError("key '" + key + "': value out of range");
    }
    out.push_back(static_cast<int>(x));
  }
  return out;
}

std::string fmt(double x) {
  if (std::isnan(x)) return "NaN";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string fmt_exact(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

template <class T>
std::string join(const std::vector<T>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += ", ";
    if constexpr (std::is_floating_point_v<T>) {
      out += fmt_exact(v[i]);
    } else {
      out += std::to_string(v[i]);
    }
  }
  return out;
}

struct LevelSetup {
  LevelSizes sizes;
  SpatialGrid sg;
  TimeGrid tg;
  Coefficients coeffs;
  OperatorMatrices ops;
  EigenBasis basis;

  LevelSetup(const ExperimentConfig& cfg, std::size_t index)
      : sizes(level_sizes(cfg, index)),
        sg(cfg.L, sizes.M),
        tg(cfg.T, sizes.N),
        coeffs(Coefficients::from_profile(cfg.profile, sg)),
        ops(assemble_operator(coeffs, sg)),
        basis(eigendecompose(ops, coeffs, sizes.K)) {}

  SweepRow row(double alpha, std::uint64_t seed, const std::string& family) const {
    SweepRow r;
    r.alpha = alpha;
    r.level = sizes.level;
    r.M = sizes.M;
    r.N = sizes.N;
    r.K = sizes.K;
    r.P = sizes.P;
    r.seed = seed;
    r.family = family;
    return r;
  }
};

double safe_ratio(double num, double den) { return den > 0.0 ? num / den : kNaN; }

// Runs body(row) with timing; library errors are recorded in the row.
template <class Body>
void run_row(SweepRow& row, Body&& body) {
  const auto start = std::chrono::steady_clock::now();
  try {
    body(row);
    row.ratio = safe_ratio(row.u_norm, row.g_norm);
  } catch (const Error& e) {
    row.error = e.what();
    row.ratio = kNaN;
  }
  row.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::vector<double> finite(const std::vector<double>& v) {
  std::vector<double> out;
  for (double x : v) {
    if (std::isfinite(x)) out.push_back(x);
  }
  return out;
}

BandCheck make_check(std::string name, double alpha, double value, std::string relation, double threshold,
                     bool enforced = true) {
  BandCheck c;
  c.name = std::move(name);
  c.alpha = alpha;
  c.value = value;
  c.relation = std::move(relation);
  c.threshold = threshold;
  c.enforced = enforced;
  c.ok = !std::isnan(value) && (c.relation == "<" ? value < threshold : value >= threshold);
  return c;
}

// max / min of the finite ratios; NaN when there are none.
double max_over_min(const std::vector<double>& v) {
  const std::vector<double> f = finite(v);
  if (f.empty()) return kNaN;
  const auto [lo, hi] = std::minmax_element(f.begin(), f.end());
  return *lo > 0.0 ? *hi / *lo : kNaN;
}

double max_over_median(const std::vector<double>& v) {
  std::vector<double> f = finite(v);
  if (f.empty()) return kNaN;
  std::sort(f.begin(), f.end());
  const std::size_t n = f.size();
  const double median = n % 2 == 1 ? f[n / 2] : 0.5 * (f[n / 2 - 1] + f[n / 2]);
  return median > 0.0 ? f.back() / median : kNaN;
}

// Band of row ratios per alpha; informational when every ratio is undefined.
template <class Stat>
void add_ratio_band(SweepReport& rep, const std::string& name, double threshold, Stat stat) {
  for (double alpha : rep.config.alphas) {
    std::vector<double> v;
    for (const SweepRow& r : rep.rows) {
      if (r.alpha == alpha) v.push_back(r.ratio);
    }
    const double value = stat(v);
    rep.checks.push_back(make_check(name, alpha, value, "<", threshold, !std::isnan(value)));
  }
}

using RowBody = std::function<void(const LevelSetup&, double, std::uint64_t, SweepRow&)>;

void for_each_realization(const ExperimentConfig& cfg, SweepReport& rep, const std::string& family,
                          const RowBody& body) {
  for (std::size_t li = 0; li < cfg.levels.size(); ++li) {
    const LevelSetup setup(cfg, li);
    for (double alpha : cfg.alphas) {
      for (int i = 0; i < cfg.ensemble; ++i) {
        const std::uint64_t seed = realization_seed(cfg, i);
        SweepRow row = setup.row(alpha, seed, family);
        run_row(row, [&](SweepRow& r) { body(setup, alpha, seed, r); });
        rep.rows.push_back(std::move(row));
      }
    }
  }
}

SweepReport start_report(const std::string& name, const ExperimentConfig& cfg) {
  cfg.validate();
  SweepReport rep;
  rep.experiment = name;
  rep.config = cfg;
  std::sort(rep.config.alphas.begin(), rep.config.alphas.end());
  return rep;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (alphas.empty()) throw ConfigError("alpha: at least one value required");
  for (double a : alphas) {
    if (!(a > 0.0 && a < 1.0)) throw ConfigError("alpha must lie in (0, 1), got " + fmt(a));
  }
  if (!(T > 0.0) || !std::isfinite(T)) throw ConfigError("T must be positive");
  if (!(L > 0.0) || !std::isfinite(L)) throw ConfigError("L must be positive");
  if (levels.empty()) throw ConfigError("levels: at least one level required");
  for (const auto* list : {&m, &n, &k, &p}) {
    if (!list->empty() && list->size() != levels.size()) {
      throw ConfigError("m, n, k, p must be empty or have one entry per level");
    }
  }
  if (ensemble < 1) throw ConfigError("ensemble must be at least 1");
  if (profile.empty()) throw ConfigError("profile must not be empty");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (levels[i] < 4) throw ConfigError("levels must be at least 4");
    const LevelSizes s = level_sizes(*this, i);
    if (s.M < 4 || s.N < 4) throw ConfigError("M and N must be at least 4");
    if (s.K < 1 || s.K > s.M / 4) throw ConfigError("K must satisfy 1 <= K <= M/4 at level " + std::to_string(s.level));
    if (s.P < 1 || s.P > s.N / 4) throw ConfigError("P must satisfy 1 <= P <= N/4 at level " + std::to_string(s.level));
  }
}

LevelSizes level_sizes(const ExperimentConfig& cfg, std::size_t i) {
  LevelSizes s;
  s.level = cfg.levels.at(i);
  s.M = cfg.m.empty() ? s.level : cfg.m.at(i);
  s.N = cfg.n.empty() ? s.level : cfg.n.at(i);
  s.K = cfg.k.empty() ? std::min(s.M / 4, 128) : cfg.k.at(i);
  s.P = cfg.p.empty() ? s.N / 4 : cfg.p.at(i);
  return s;
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  std::map<std::string, int> seen;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (value.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty value for '" + key + "'");
    if (seen[key]++ > 0) throw ConfigError("duplicate key '" + key + "'");
    if (key == "alpha") {
      cfg.alphas.clear();
      for (const std::string& s : split_list(value)) cfg.alphas.push_back(to_double(key, s));
    } else if (key == "T") {
      cfg.T = to_double(key, value);
    } else if (key == "L") {
      cfg.L = to_double(key, value);
    } else if (key == "profile") {
      cfg.profile = value;
    } else if (key == "levels") {
      cfg.levels = to_int_list(key, value);
    } else if (key == "m") {
      cfg.m = to_int_list(key, value);
    } else if (key == "n") {
      cfg.n = to_int_list(key, value);
    } else if (key == "k") {
      cfg.k = to_int_list(key, value);
    } else if (key == "p") {
      cfg.p = to_int_list(key, value);
    } else if (key == "g_family") {
      cfg.g_family = g_family_from_string(value);
    } else if (key == "ensemble") {
      const long long e = to_integer(key, value);
      if (e < 1 || e > 1000000) throw ConfigError("ensemble out of range");
      cfg.ensemble = static_cast<int>(e);
    } else if (key == "seed") {
      const long long s = to_integer(key, value);
      if (s < 0) throw ConfigError("seed must be non-negative");
      cfg.seed = static_cast<std::uint64_t>(s);
    } else if (key == "out") {
      cfg.out = value;
    } else {
      throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const ExperimentConfig& cfg) {
  std::ostringstream os;
  os << "alpha = " << join(cfg.alphas) << "\n";
  os << "T = " << fmt_exact(cfg.T) << "\n";
  os << "L = " << fmt_exact(cfg.L) << "\n";
  os << "profile = " << cfg.profile << "\n";
  os << "levels = " << join(cfg.levels) << "\n";
  if (!cfg.m.empty()) os << "m = " << join(cfg.m) << "\n";
  if (!cfg.n.empty()) os << "n = " << join(cfg.n) << "\n";
  if (!cfg.k.empty()) os << "k = " << join(cfg.k) << "\n";
  if (!cfg.p.empty()) os << "p = " << join(cfg.p) << "\n";
  os << "g_family = " << to_string(cfg.g_family) << "\n";
  os << "ensemble = " << cfg.ensemble << "\n";
  os << "seed = " << cfg.seed << "\n";
  os << "out = " << cfg.out << "\n";
  return os.str();
}

bool SweepReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const BandCheck& c) { return c.ok || !c.enforced; });
}

void SweepReport::sort_rows() {
  std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    return std::tie(a.alpha, a.level, a.family, a.seed, a.K) < std::tie(b.alpha, b.level, b.family, b.seed, b.K);
  });
}

SweepReport run_regularity_sweep(const ExperimentConfig& cfg) {
  SweepReport rep = start_report("sweep-regularity", cfg);
  for_each_realization(rep.config, rep, to_string(cfg.g_family),
                       [&](const LevelSetup& s, double alpha, std::uint64_t seed, SweepRow& r) {
                         const BoundaryData g = make_boundary_data(cfg.g_family, s.tg, seed);
                         const SpaceTimeField u = weak_solution_closed_form(g, alpha, s.basis).u;
                         r.g_norm = l2_norm_Sigma(g);
                         r.u_norm = hrs_norm_Q(u, RegularityIndex(0.5, alpha / 4.0));
                         const SpaceTimeField f = random_smooth_field(s.sg, s.tg, seed + kSourceSeedOffset);
                         r.residual = duality_residual(u, g, f, alpha, s.basis, s.coeffs);
                         r.aux = kNaN;
                       });
  rep.sort_rows();
  add_ratio_band(rep, "H^{1/2,alpha/4}(Q) / L2(Sigma) max/min", 3.0, max_over_min);
  return rep;
}

SweepReport run_negative_data_check(const ExperimentConfig& cfg) {
  SweepReport rep = start_report("check-negative", cfg);
  for_each_realization(rep.config, rep, to_string(cfg.g_family),
                       [&](const LevelSetup& s, double alpha, std::uint64_t seed, SweepRow& r) {
                         const BoundaryData g = make_boundary_data(cfg.g_family, s.tg, seed);
                         const SpaceTimeField u = weak_solution_closed_form(g, alpha, s.basis).u;
                         r.g_norm = negative_norm_Sigma(g, RegularityIndex(-0.5, -alpha / 4.0));
                         r.u_norm = l2_norm_Q(u);
                         const SpaceTimeField f = random_smooth_field(s.sg, s.tg, seed + kSourceSeedOffset);
                         r.residual = duality_residual(u, g, f, alpha, s.basis, s.coeffs);
                         r.aux = l2_norm_Sigma(g);
                       });
  rep.sort_rows();
  add_ratio_band(rep, "L2(Q) / H^{-1/2,-alpha/4}(Sigma) max/min", 3.0, max_over_min);
  return rep;
}

SweepReport run_maxreg_check(const ExperimentConfig& cfg) {
  SweepReport rep = start_report("check-maxreg", cfg);
  for_each_realization(rep.config, rep, "smooth-source",
                       [&](const LevelSetup& s, double alpha, std::uint64_t seed, SweepRow& r) {
                         const SpaceTimeField F = random_smooth_field(s.sg, s.tg, seed);
                         const SpectralSolution sol = solve_homogeneous_spectral(F, alpha, s.basis);
                         r.g_norm = l2_norm_Q(F);
                         r.u_norm = maxreg_surrogate(sol.u, alpha, s.ops);
                         r.residual = sol.truncation_ratio;
                         r.aux = kNaN;
                       });
  rep.sort_rows();
  add_ratio_band(rep, "maximal regularity surrogate max/median", 5.0, max_over_median);
  return rep;
}

SweepReport run_sharpness_probe(const ExperimentConfig& cfg) {
  SweepReport rep = start_report("sharpness", cfg);
  const auto finest = static_cast<std::size_t>(
      std::max_element(cfg.levels.begin(), cfg.levels.end()) - cfg.levels.begin());
  const LevelSizes sizes = level_sizes(cfg, finest);
  const SpatialGrid sg(cfg.L, sizes.M);
  const TimeGrid tg(cfg.T, sizes.N);
  const Coefficients coeffs = Coefficients::from_profile(cfg.profile, sg);
  const OperatorMatrices ops = assemble_operator(coeffs, sg);
  std::vector<int> Ks;
  for (int K = 16; K <= std::min(128, sizes.M / 4); K *= 2) Ks.push_back(K);
  if (Ks.size() < 2) throw ConfigError("sharpness: the finest level must allow K = 32 (M >= 128)");
  std::vector<EigenBasis> bases;
  for (int K : Ks) bases.push_back(eigendecompose(ops, coeffs, K));

  for (double alpha : rep.config.alphas) {
    for (int i = 0; i < cfg.ensemble; ++i) {
      const std::uint64_t seed = realization_seed(cfg, i);
      for (const char* family : {"noise", "smooth", "control"}) {
        const std::string fam = family;
        for (std::size_t b = 0; b < bases.size(); ++b) {
          SweepRow row;
          row.alpha = alpha;
          row.level = sizes.level;
          row.M = sizes.M;
          row.N = sizes.N;
          row.K = Ks[b];
          row.P = sizes.P;
          row.seed = seed;
          row.family = fam;
          run_row(row, [&](SweepRow& r) {
            SpaceTimeField u;
            if (fam == "control") {
              const SpaceTimeField F = random_smooth_field(sg, tg, seed);
              u = solve_homogeneous_spectral(F, alpha, bases[b]).u;
              r.g_norm = l2_norm_Q(F);
              r.residual = kNaN;
            } else {
              const BoundaryData g = make_boundary_data(fam == "noise" ? GFamily::Noise : GFamily::Smooth, tg, seed);
              u = weak_solution_closed_form(g, alpha, bases[b]).u;
              r.g_norm = l2_norm_Sigma(g);
              r.residual = fam == "noise" ? safe_ratio(hrs_norm_Q(u, RegularityIndex(0.5, alpha / 4.0)), r.g_norm) : kNaN;
            }
            r.u_norm = spectral_power_norm(u, bases[b], 0.5).value;
            r.aux = kNaN;
          });
          rep.rows.push_back(std::move(row));
        }
      }
    }
  }
  rep.sort_rows();
  // Growth per doubling, filled into aux of the larger-K row.
  for (std::size_t j = 1; j < rep.rows.size(); ++j) {
    SweepRow& cur = rep.rows[j];
    const SweepRow& prev = rep.rows[j - 1];
    if (prev.alpha == cur.alpha && prev.family == cur.family && prev.seed == cur.seed && prev.K * 2 == cur.K) {
      cur.aux = prev.u_norm > 0.0 ? cur.u_norm / prev.u_norm - 1.0 : kNaN;
    }
  }
  for (double alpha : rep.config.alphas) {
    double min_noise = kNaN, top_control = kNaN, top_smooth = kNaN;
    std::vector<double> band;
    auto upd_min = [](double& acc, double v) { acc = std::isnan(acc) ? v : std::min(acc, v); };
    auto upd_max = [](double& acc, double v) { acc = std::isnan(acc) ? v : std::max(acc, v); };
    for (const SweepRow& r : rep.rows) {
      if (r.alpha != alpha) continue;
      if (r.family == "noise") {
        band.push_back(r.residual);
        if (!std::isnan(r.aux)) upd_min(min_noise, r.aux);
      }
      if (r.K == Ks.back() && !std::isnan(r.aux)) {
        if (r.family == "control") upd_max(top_control, r.aux);
        if (r.family == "smooth") upd_max(top_smooth, r.aux);
      }
    }
    rep.checks.push_back(make_check("noise D(A^{1/2}) growth per doubling (min)", alpha, min_noise, ">=", 0.2));
    rep.checks.push_back(make_check("noise H^{1/2,alpha/4}(Q) / L2(Sigma) max/min across K", alpha, max_over_min(band), "<", 3.0));
    rep.checks.push_back(make_check("control growth at top doubling (max)", alpha, top_control, "<", 0.05));
    rep.checks.push_back(make_check("smooth g growth at top doubling (max)", alpha, top_smooth, "<", 0.05, false));
  }
  return rep;
}

SweepReport run_classical_limit(const ExperimentConfig& cfg) {
  SweepReport rep = start_report("classical-limit", cfg);
  for_each_realization(rep.config, rep, to_string(cfg.g_family),
                       [&](const LevelSetup& s, double alpha, std::uint64_t seed, SweepRow& r) {
                         const BoundaryData g = make_boundary_data(cfg.g_family, s.tg, seed);
                         const SpaceTimeField u = weak_solution_closed_form(g, alpha, s.basis).u;
                         const SpaceTimeField heat = heat_solution_exponential(g, s.basis);
                         r.u_norm = l2_norm_Q(u - heat);
                         r.g_norm = l2_norm_Q(heat);
                         r.residual = l2_norm_Sigma(g);
                         r.aux = kNaN;
                       });
  rep.sort_rows();
  const double top = rep.config.alphas.back();
  double worst_top = kNaN, worst_step = kNaN;
  for (const SweepRow& r : rep.rows) {
    if (r.alpha == top && std::isfinite(r.ratio)) worst_top = std::isnan(worst_top) ? r.ratio : std::max(worst_top, r.ratio);
  }
  // err(alpha_{j+1}) / err(alpha_j) for the same level and seed.
  for (std::size_t a = 1; a < rep.config.alphas.size(); ++a) {
    for (const SweepRow& hi : rep.rows) {
      if (hi.alpha != rep.config.alphas[a]) continue;
      for (const SweepRow& lo : rep.rows) {
        if (lo.alpha == rep.config.alphas[a - 1] && lo.level == hi.level && lo.seed == hi.seed) {
          const double q = safe_ratio(hi.ratio, lo.ratio);
          if (std::isfinite(q)) worst_step = std::isnan(worst_step) ? q : std::max(worst_step, q);
        }
      }
    }
  }
  rep.checks.push_back(make_check("relative L2(Q) error to the heat solution", top, worst_top, "<", 0.05,
                                  !std::isnan(worst_top)));
  rep.checks.push_back(make_check("error ratio for increasing alpha (max)", top, worst_step, "<", 1.0,
                                  !std::isnan(worst_step)));
  return rep;
}

SweepReport run_duality_check(const ExperimentConfig& cfg) {
  SweepReport rep = start_report("verify-duality", cfg);
  for_each_realization(rep.config, rep, to_string(cfg.g_family),
                       [&](const LevelSetup& s, double alpha, std::uint64_t seed, SweepRow& r) {
                         const BoundaryData g = make_boundary_data(cfg.g_family, s.tg, seed);
                         const SpaceTimeField f = random_smooth_field(s.sg, s.tg, seed + kSourceSeedOffset, seed % 2 == 0);
                         const SpaceTimeField u = solve_lifted(g, alpha, s.coeffs, s.basis).u;
                         r.g_norm = l2_norm_Sigma(g);
                         r.u_norm = l2_norm_Q(u);
                         r.residual = duality_residual(u, g, f, alpha, s.basis, s.coeffs);
                         const SpaceTimeField cf = weak_solution_closed_form(g, alpha, s.basis).u;
                         const SpaceTimeField rz = weak_solution_riesz(g, alpha, s.basis, s.sizes.P).u;
                         r.aux = safe_ratio(l2_norm_Q(rz - cf), l2_norm_Q(cf));
                       });
  rep.sort_rows();
  for (double alpha : rep.config.alphas) {
    std::vector<double> res, gap;
    for (int level : cfg.levels) {
      double wr = kNaN, wg = kNaN;
      for (const SweepRow& r : rep.rows) {
        if (r.alpha != alpha || r.level != level) continue;
        if (std::isfinite(r.residual)) wr = std::isnan(wr) ? r.residual : std::max(wr, r.residual);
        if (std::isfinite(r.aux)) wg = std::isnan(wg) ? r.aux : std::max(wg, r.aux);
      }
      res.push_back(wr);
      gap.push_back(wg);
    }
    double res_step = kNaN, gap_step = kNaN;
    for (std::size_t i = 1; i < res.size(); ++i) {
      const double a = res[i] / res[i - 1], b = gap[i] / gap[i - 1];
      res_step = std::isnan(res_step) ? a : std::max(res_step, a);
      gap_step = std::isnan(gap_step) ? b : std::max(gap_step, b);
    }
    rep.checks.push_back(make_check("duality residual at the finest level (max)", alpha, res.back(), "<", 1e-3));
    rep.checks.push_back(make_check("duality residual ratio between levels (max)", alpha, res_step, "<", 1.0, res.size() > 1));
    rep.checks.push_back(make_check("Riesz vs closed form gap at the finest level (max)", alpha, gap.back(), "<", 1e-2));
    rep.checks.push_back(make_check("Riesz vs closed form ratio between levels (max)", alpha, gap_step, "<", 1.0, gap.size() > 1));
  }
  return rep;
}

SweepReport verify_fracops(const ExperimentConfig& cfg) {
  SweepReport rep = start_report("verify-fracops", cfg);
  const TimeGrid g(cfg.T, cfg.levels.front());
  const double T = cfg.T;
  for (double alpha : rep.config.alphas) {
    const TimeSeries t = TimeSeries::sample(g, [](double x) { return x; });
    const TimeSeries d = caputo_derivative(t, alpha);
    double caputo = 0.0;
    for (int n = 0; n <= g.N; ++n) {
      const double x = g.node(n);
      if (x < 0.1 * T) continue;
      const double exact = std::pow(x, 1.0 - alpha) * rgamma(2.0 - alpha);
      caputo = std::max(caputo, std::abs(d[n] - exact) / exact);
    }
    const TimeSeries h = TimeSeries::sample(g, [](double x) { return std::cos(2.0 * x) + x; });
    const TimeSeries lhs = backward_integral(backward_integral(h, alpha), 1.0 - alpha);
    const TimeSeries rhs = backward_integral(h, 1.0);
    TimeSeries diff(g);
    for (int n = 0; n <= g.N; ++n) diff[n] = lhs[n] - rhs[n];
    const TimeSeries one = TimeSeries::sample(g, [](double) { return 1.0; });
    const TimeSeries rl = backward_rl_derivative(one, alpha);
    double rl_err = 0.0;
    for (int n = 0; n <= g.N; ++n) {
      const double x = g.node(n);
      if (x > 0.9 * T) break;
      const double exact = std::pow(T - x, -alpha) * rgamma(1.0 - alpha);
      rl_err = std::max(rl_err, std::abs(rl[n] - exact) / exact);
    }
    rep.checks.push_back(make_check("L1 Caputo of t, max relative error on t >= T/10", alpha, caputo, "<", 1e-3));
    rep.checks.push_back(make_check("backward integral semigroup L2 residual", alpha, l2_norm(diff), "<", 1e-4));
    rep.checks.push_back(make_check("backward RL of a constant, max relative error on t <= 0.9T", alpha, rl_err, "<", 1e-2));
  }
  return rep;
}

ExperimentConfig default_config(const std::string& experiment) {
  ExperimentConfig c;
  if (experiment == "sweep-regularity" || experiment == "check-negative") {
    c.alphas = {0.3, 0.5, 0.7};
    c.levels = {128, 256, 512};
    c.ensemble = 10;
    c.g_family = GFamily::Noise;
  } else if (experiment == "check-maxreg") {
    c.alphas = {0.3, 0.5, 0.7};
    c.levels = {128, 256};
    c.ensemble = 20;
  } else if (experiment == "sharpness") {
    c.alphas = {0.5};
    c.levels = {512};
    c.ensemble = 3;
    c.g_family = GFamily::Noise;
  } else if (experiment == "classical-limit") {
    c.alphas = {0.99, 0.999};
    c.levels = {128, 256};
    c.ensemble = 3;
    c.g_family = GFamily::Smooth;
  } else if (experiment == "verify-duality") {
    c.alphas = {0.5};
    c.levels = {64, 128, 256};
    c.ensemble = 20;
    c.g_family = GFamily::Smooth;
  } else if (experiment == "verify-fracops") {
    c.alphas = {0.25, 0.5, 0.75};
    c.levels = {1024};
    c.ensemble = 1;
  } else {
    throw ConfigError("no default configuration for '" + experiment + "'");
  }
  c.out = "out/" + experiment;
  return c;
}

std::string report_csv(const SweepReport& report, bool include_wall_time) {
  std::ostringstream os;
  os << "# schema=1 experiment=" << report.experiment << "\n";
  os << "alpha,level,M,N,K,P,seed,family,g_norm,u_norm,ratio,residual,aux";
  if (include_wall_time) os << ",wall_time";
  os << ",error\n";
  for (const SweepRow& r : report.rows) {
    os << fmt(r.alpha) << ',' << r.level << ',' << r.M << ',' << r.N << ',' << r.K << ',' << r.P << ',' << r.seed << ','
       << r.family << ',' << fmt(r.g_norm) << ',' << fmt(r.u_norm) << ',' << fmt(r.ratio) << ',' << fmt(r.residual)
       << ',' << fmt(r.aux);
    if (include_wall_time) os << ',' << fmt(r.wall_time);
    std::string err = r.error;
    std::replace(err.begin(), err.end(), ',', ';');
    std::replace(err.begin(), err.end(), '\n', ' ');
    os << ',' << err << "\n";
  }
  return os.str();
}

void write_report_csv(const SweepReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << report_csv(report, true);
}

std::string report_json(const SweepReport& report) {
  using nlohmann::json;
  const ExperimentConfig& c = report.config;
  json j;
  j["schema"] = 1;
  j["experiment"] = report.experiment;
  j["config"] = {{"alpha", c.alphas}, {"T", c.T},          {"L", c.L},
                 {"profile", c.profile}, {"levels", c.levels}, {"m", c.m},
                 {"n", c.n},           {"k", c.k},          {"p", c.p},
                 {"g_family", to_string(c.g_family)}, {"ensemble", c.ensemble}, {"seed", c.seed},
                 {"out", c.out}};
  json checks = json::array();
  for (const BandCheck& b : report.checks) {
    checks.push_back({{"name", b.name},
                      {"alpha", b.alpha},
                      {"value", std::isnan(b.value) ? json(nullptr) : json(b.value)},
                      {"relation", b.relation},
                      {"threshold", b.threshold},
                      {"enforced", b.enforced},
                      {"ok", b.ok}});
  }
  j["checks"] = checks;
  j["rows"] = report.rows.size();
  std::size_t failed = 0;
  for (const SweepRow& r : report.rows) failed += r.error.empty() ? 0 : 1;
  j["failed_rows"] = failed;
  j["passed"] = report.passed();
  return j.dump(2);
}

void write_field_csv(const SpaceTimeField& u, const std::string& path, const std::string& comment) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << "# schema=1";
  if (!comment.empty()) out << " " << comment;
  out << "\nx,t,value\n";
  for (int j = 0; j <= u.sgrid.M; ++j) {
    for (int n = 0; n <= u.tgrid.N; ++n) {
      out << fmt_exact(u.sgrid.node(j)) << ',' << fmt_exact(u.tgrid.node(n)) << ',' << fmt_exact(u.at(j, n)) << "\n";
    }
  }
}

SpaceTimeField read_field_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open field '" + path + "'");
  std::string line;
  std::vector<std::array<double, 3>> rows;
  bool header = false;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      if (line != "x,t,value") throw ConfigError("field CSV: expected header x,t,value");
      header = true;
      continue;
    }
    std::array<double, 3> r{};
    std::stringstream ss(line);
    std::string cell;
    for (int c = 0; c < 3; ++c) {
      if (!std::getline(ss, cell, ',')) throw ConfigError("field CSV: short row '" + line + "'");
      r[static_cast<std::size_t>(c)] = to_double("field", trim(cell));
    }
    rows.push_back(r);
  }
  if (rows.size() < 4) throw ConfigError("field CSV: too few rows");
  int nt = 1;
  while (static_cast<std::size_t>(nt) < rows.size() && rows[static_cast<std::size_t>(nt)][0] == rows[0][0]) ++nt;
  if (rows.size() % static_cast<std::size_t>(nt) != 0) throw ConfigError("field CSV: rows do not form a grid");
  const int nx = static_cast<int>(rows.size() / static_cast<std::size_t>(nt));
  if (nx < 2 || nt < 2 || rows[0][0] != 0.0 || rows[0][1] != 0.0) {
    throw ConfigError("field CSV: grid must start at (0, 0) with at least two nodes per direction");
  }
  const SpatialGrid sg(rows.back()[0], nx - 1);
  const TimeGrid tg(rows.back()[1], nt - 1);
  SpaceTimeField u(sg, tg);
  for (int j = 0; j < nx; ++j) {
    for (int n = 0; n < nt; ++n) {
      const auto& r = rows[static_cast<std::size_t>(j) * static_cast<std::size_t>(nt) + static_cast<std::size_t>(n)];
      if (std::abs(r[0] - sg.node(j)) > 1e-9 * sg.L || std::abs(r[1] - tg.node(n)) > 1e-9 * tg.T) {
        throw ConfigError("field CSV: nodes are not a uniform grid sorted by (x, t)");
      }
      u.at(j, n) = r[2];
    }
  }
  return u;
}

}  // namespace fracdiff
