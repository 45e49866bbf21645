#pragma once

// Experiment configuration, the ensemble experiments behind the command
// line tool, and their CSV / JSON output.

#include <cstdint>
#include <string>
#include <vector>

#include "fracdiff/fields.hpp"
#include "fracdiff/generators.hpp"

namespace fracdiff {

/// Flat "key = value" configuration. Lists are comma separated, '#' starts
/// a comment. Keys: alpha, T, L, profile, levels, m, n, k, p, g_family,
/// ensemble, seed, out. m, n, k, p are optional lists aligned with levels;
/// by default M = N = level, K = min(level / 4, 128), P = level / 4.
struct ExperimentConfig {
  std::vector<double> alphas{0.5};
  double T = 1.0;
  double L = 1.0;
  std::string profile = "variable1";
  std::vector<int> levels{128, 256, 512};
  std::vector<int> m, n, k, p;
  GFamily g_family = GFamily::Noise;
  int ensemble = 10;
  std::uint64_t seed = 1;
  std::string out = "out";

  /// Throws ConfigError on alpha outside (0, 1), K > M/4, P > N/4,
  /// ensemble < 1, mismatched list lengths or non-positive sizes.
  void validate() const;

  bool operator==(const ExperimentConfig&) const = default;
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);
std::string serialize_config(const ExperimentConfig& cfg);

struct LevelSizes {
  int level = 0;
  int M = 0;
  int N = 0;
  int K = 0;
  int P = 0;
};

LevelSizes level_sizes(const ExperimentConfig& cfg, std::size_t level_index);

/// Seed of realization i.
inline std::uint64_t realization_seed(const ExperimentConfig& cfg, int i) {
  return cfg.seed + static_cast<std::uint64_t>(i);
}

/// One row per realization and level. The meaning of u_norm, g_norm,
/// residual and aux depends on the experiment (see README).
/// ratio = u_norm / g_norm, NaN when g_norm = 0. A realization that throws keeps its row with the
/// message in `error`.
struct SweepRow {
  double alpha = 0.0;
  int level = 0;
  int M = 0;
  int N = 0;
  int K = 0;
  int P = 0;
  std::uint64_t seed = 0;
  std::string family;
  double g_norm = 0.0;
  double u_norm = 0.0;
  double ratio = 0.0;
  double residual = 0.0;
  double aux = 0.0;
  double wall_time = 0.0;
  std::string error;
};

/// A band computed from the rows. ok is the plain comparison (false for an
/// undefined value); entries that are not enforced never fail the run.
struct BandCheck {
  std::string name;
  double alpha = 0.0;
  double value = 0.0;
  std::string relation;  // "<" or ">="
  double threshold = 0.0;
  bool enforced = true;
  bool ok = true;
};

struct SweepReport {
  std::string experiment;
  ExperimentConfig config;
  std::vector<SweepRow> rows;
  std::vector<BandCheck> checks;

  bool passed() const;
  /// Rows ordered by (alpha, level, family, seed, K).
  void sort_rows();
};

/// ||u||_{H^{1/2, alpha/4}(Q)} / ||g||_{L2(Sigma)} for the closed-form weak
/// solution; residual is the duality residual against a random smooth
/// test source. Band: max/min over levels and realizations < 3 per alpha.
SweepReport run_regularity_sweep(const ExperimentConfig& cfg);

/// ||u||_{L2(Q)} / ||g||_{H^{-1/2, -alpha/4}(Sigma)}, same protocol.
SweepReport run_negative_data_check(const ExperimentConfig& cfg);

/// (||A u||^2 + ||d_t^alpha u||^2)^{1/2} / ||F|| for random smooth sources
/// F and zero boundary data; residual is the truncation ratio. Band:
/// max/median < 5 per alpha.
SweepReport run_maxreg_check(const ExperimentConfig& cfg);

/// White-noise g on the finest level, K = 16, 32, ... up to min(128, M/4).
/// u_norm is the spectral norm of order 1/2 of u, residual the ratio
/// ||u||_{H^{1/2, alpha/4}(Q)} / ||g||_{L2(Sigma)}. Checks: growth >= 20%
/// per doubling for noise; the H^{1/2, alpha/4} ratio band < 3 across K;
/// saturation (< 5% at the top doubling) for the control family, which is a
/// smooth-source solution with zero boundary data. Smooth g is reported
/// as information.
SweepReport run_sharpness_probe(const ExperimentConfig& cfg);

/// Closed-form weak solution for smooth g at each configured alpha against
/// the exponential heat solution; ratio is the relative L2(Q) error.
/// Checks: error < 5% at the alpha closest to 1 and error decreasing as
/// alpha increases.
SweepReport run_classical_limit(const ExperimentConfig& cfg);

/// Duality residual over the ensemble of smooth (g, f) pairs with the
/// lifted solution, and Riesz vs closed-form gaps. Checks: residual < 1e-3
/// and route gap < 1e-2 at the finest level, both decreasing.
SweepReport run_duality_check(const ExperimentConfig& cfg);

/// Operator checks at N = first level for each alpha: L1 Caputo of t on
/// t >= T/10 (max relative error < 1e-3), backward-integral semigroup
/// I^{alpha} I^{1-alpha} = I^1 (L2 residual < 1e-4), backward RL derivative
/// of a constant on t <= 0.9 T (max relative error < 1e-2). No rows.
SweepReport verify_fracops(const ExperimentConfig& cfg);

/// Configuration used by the command line tool when none is given:
/// sweep-regularity and check-negative: alpha 0.3, 0.5, 0.7, levels 128,
/// 256, 512, ten noise realizations; check-maxreg: levels 128, 256, twenty
/// sources; sharpness: alpha 0.5, level 512, three realizations;
/// classical-limit: alpha 0.99, 0.999, levels 128, 256, three smooth g;
/// verify-duality: alpha 0.5, levels 64, 128, 256, twenty smooth pairs;
/// verify-fracops: alpha 0.25, 0.5, 0.75 at N = 1024.
ExperimentConfig default_config(const std::string& experiment);

/// Writes "# schema=1 experiment=NAME" and a header, then one line per row.
void write_report_csv(const SweepReport& report, const std::string& path);
/// Same content as a string; wall_time omitted when include_wall_time is false.
std::string report_csv(const SweepReport& report, bool include_wall_time = true);
/// Config, checks and pass flag.
std::string report_json(const SweepReport& report);

/// Field CSV: "# schema=1" line, header x,t,value, rows sorted by (x, t).
void write_field_csv(const SpaceTimeField& u, const std::string& path, const std::string& comment = "");
SpaceTimeField read_field_csv(const std::string& path);

}  // namespace fracdiff
