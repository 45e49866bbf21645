// Command line front end: experiments, single solves, norms and special
// function evaluation. Exit code 0 on success, 2 when an acceptance band
// is violated, 1 on any error.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fracdiff/errors.hpp"
#include "fracdiff/forward_solver.hpp"
#include "fracdiff/harness.hpp"
#include "fracdiff/norms.hpp"
#include "fracdiff/special_functions.hpp"
#include "fracdiff/transposition.hpp"
#include "json.hpp"

using namespace fracdiff;

namespace {

constexpr int kBandViolation = 2;

struct Common {
  std::string config;
  std::string out;
  long long seed = -1;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config, "configuration file (key = value)");
  cmd->add_option("--out", c.out, "output directory");
  cmd->add_option("--seed", c.seed, "base seed, overrides the configuration")->check(CLI::NonNegativeNumber);
}

ExperimentConfig resolve(const std::string& experiment, const Common& c) {
  ExperimentConfig cfg = c.config.empty() ? default_config(experiment) : load_config(c.config);
  if (!c.out.empty()) cfg.out = c.out;
  if (c.seed >= 0) cfg.seed = static_cast<std::uint64_t>(c.seed);
  return cfg;
}

std::string prepare_dir(const std::string& dir) {
  std::filesystem::create_directories(dir);
  return dir;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << text;
}

int finish_report(const SweepReport& rep) {
  const std::string dir = prepare_dir(rep.config.out);
  write_report_csv(rep, dir + "/" + rep.experiment + ".csv");
  write_text(dir + "/" + rep.experiment + ".json", report_json(rep) + "\n");
  for (const BandCheck& c : rep.checks) {
    std::printf("%-5s %s alpha=%g value=%.6g %s %g%s\n", c.ok ? "ok" : (c.enforced ? "FAIL" : "info"), c.name.c_str(),
                c.alpha, c.value, c.relation.c_str(), c.threshold, c.enforced ? "" : " (not enforced)");
  }
  std::size_t errors = 0;
  for (const SweepRow& r : rep.rows) errors += r.error.empty() ? 0 : 1;
  if (errors > 0) std::printf("%zu realization(s) failed, see the error column\n", errors);
  std::printf("%s: %s, %zu rows written to %s\n", rep.experiment.c_str(), rep.passed() ? "passed" : "band violation",
              rep.rows.size(), dir.c_str());
  return rep.passed() ? 0 : kBandViolation;
}

MlRoute route_from_string(const std::string& s) {
  if (s == "auto") return MlRoute::Automatic;
  if (s == "series") return MlRoute::Series;
  if (s == "asymptotic") return MlRoute::Asymptotic;
  if (s == "integral") return MlRoute::Integral;
  if (s == "exponential") return MlRoute::Exponential;
  throw ConfigError("unknown route '" + s + "'");
}

struct Problem {
  LevelSizes sizes;
  SpatialGrid sg;
  TimeGrid tg;
  Coefficients coeffs;
  OperatorMatrices ops;
  EigenBasis basis;

  Problem(const ExperimentConfig& cfg, int level)
      : sizes(level_for(cfg, level)),
        sg(cfg.L, sizes.M),
        tg(cfg.T, sizes.N),
        coeffs(Coefficients::from_profile(cfg.profile, sg)),
        ops(assemble_operator(coeffs, sg)),
        basis(eigendecompose(ops, coeffs, sizes.K)) {}

  static LevelSizes level_for(const ExperimentConfig& cfg, int level) {
    if (level <= 0) return level_sizes(cfg, 0);
    ExperimentConfig one = cfg;
    one.levels = {level};
    one.m.clear();
    one.n.clear();
    one.k.clear();
    one.p.clear();
    one.validate();
    return level_sizes(one, 0);
  }
};

nlohmann::json sizes_json(const LevelSizes& s) {
  return {{"level", s.level}, {"M", s.M}, {"N", s.N}, {"K", s.K}, {"P", s.P}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time-fractional diffusion with L2 Dirichlet data: solvers, norms and verification experiments"};
  app.require_subcommand(1);

  // ml-eval
  double ml_alpha = 0.5, ml_beta = 1.0;
  std::vector<double> ml_z;
  std::string ml_route = "auto";
  auto* ml = app.add_subcommand("ml-eval", "evaluate E_{alpha,beta}(z) for z <= 0");
  ml->add_option("--alpha", ml_alpha, "alpha in (0, 2]")->required();
  ml->add_option("--beta", ml_beta, "beta > 0");
  ml->add_option("--z", ml_z, "arguments (z <= 0)")->required()->allow_extra_args();
  ml->add_option("--route", ml_route, "auto|series|asymptotic|integral|exponential");

  // verify-fracops
  Common fracops_c;
  auto* fracops = app.add_subcommand("verify-fracops", "check the discrete fractional operators against closed forms");
  add_common(fracops, fracops_c);

  // experiments
  struct Experiment {
    const char* name;
    const char* help;
    SweepReport (*run)(const ExperimentConfig&);
    Common c;
    CLI::App* cmd = nullptr;
  };
  std::vector<Experiment> experiments{
      {"verify-duality", "duality residual and route equivalence over smooth (g, f) pairs", run_duality_check, {}},
      {"sweep-regularity", "H^{1/2,alpha/4}(Q) / L2(Sigma) ratio band", run_regularity_sweep, {}},
      {"check-negative", "L2(Q) / H^{-1/2,-alpha/4}(Sigma) ratio band", run_negative_data_check, {}},
      {"check-maxreg", "maximal regularity surrogate band", run_maxreg_check, {}},
      {"sharpness", "growth of the D(A^{1/2}) norm for white-noise data", run_sharpness_probe, {}},
      {"classical-limit", "alpha -> 1 against the heat equation", run_classical_limit, {}},
  };
  for (Experiment& e : experiments) {
    e.cmd = app.add_subcommand(e.name, e.help);
    add_common(e.cmd, e.c);
  }

  // solve
  Common solve_c;
  double solve_alpha = 0.5;
  int solve_level = 0;
  std::string solve_method = "spectral";
  auto* solve = app.add_subcommand("solve", "solve with a random smooth source and zero boundary data");
  add_common(solve, solve_c);
  solve->add_option("--alpha", solve_alpha, "fractional order in (0, 1]");
  solve->add_option("--level", solve_level, "M = N = level (default: first configured level)");
  solve->add_option("--method", solve_method, "spectral|l1")->check(CLI::IsMember({"spectral", "l1"}));

  // solve-transposition
  Common tr_c;
  double tr_alpha = 0.5;
  int tr_level = 0;
  std::string tr_family = "noise", tr_method = "closed-form";
  auto* tr = app.add_subcommand("solve-transposition", "weak solution for boundary data from a seeded family");
  add_common(tr, tr_c);
  tr->add_option("--alpha", tr_alpha, "fractional order in (0, 1]");
  tr->add_option("--level", tr_level, "M = N = level (default: first configured level)");
  tr->add_option("--g-family", tr_family, "noise|step|smooth|zero");
  tr->add_option("--method", tr_method, "closed-form|riesz")->check(CLI::IsMember({"closed-form", "riesz"}));

  // norm
  std::string norm_in, norm_r = "0", norm_s = "0";
  double norm_alpha = 0.5;
  auto* norm = app.add_subcommand("norm", "H^{r,s}(Q) norm of a field CSV");
  norm->add_option("--in", norm_in, "field CSV (x,t,value)")->required();
  norm->add_option("--r", norm_r, "space order, e.g. 1/2");
  norm->add_option("--s", norm_s, "time order, e.g. 1/4*alpha");
  norm->add_option("--alpha", norm_alpha, "value of alpha in the orders");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (ml->parsed()) {
      const MlRoute route = route_from_string(ml_route);
      std::printf("z,value,route\n");
      for (double z : ml_z) {
        const MlEvaluation v = mittag_leffler_eval(MlParams{ml_alpha, ml_beta}, z, route);
        std::printf("%.17g,%.17g,%s\n", z, v.value, to_string(v.route));
      }
      return 0;
    }
    if (fracops->parsed()) return finish_report(verify_fracops(resolve("verify-fracops", fracops_c)));
    for (Experiment& e : experiments) {
      if (e.cmd->parsed()) return finish_report(e.run(resolve(e.name, e.c)));
    }
    if (solve->parsed()) {
      ExperimentConfig cfg = resolve("verify-duality", solve_c);
      const Problem pb(cfg, solve_level);
      const SpaceTimeField F = random_smooth_field(pb.sg, pb.tg, cfg.seed);
      SpaceTimeField u;
      nlohmann::json meta;
      if (solve_method == "spectral") {
        const SpectralSolution s = solve_homogeneous_spectral(F, solve_alpha, pb.basis);
        u = s.u;
        meta["truncation_ratio"] = s.truncation_ratio;
        meta["truncated"] = s.truncated;
      } else {
        u = solve_homogeneous_l1(F, solve_alpha, pb.coeffs);
      }
      const std::string dir = prepare_dir(cfg.out);
      const std::string stem = dir + "/solve_" + solve_method;
      write_field_csv(u, stem + ".csv", "seed=" + std::to_string(cfg.seed));
      meta["schema"] = 1;
      meta["method"] = solve_method;
      meta["alpha"] = solve_alpha;
      meta["seed"] = cfg.seed;
      meta["profile"] = cfg.profile;
      meta["T"] = cfg.T;
      meta["L"] = cfg.L;
      meta["sizes"] = sizes_json(pb.sizes);
      meta["source_norm_L2Q"] = l2_norm_Q(F);
      meta["solution_norm_L2Q"] = l2_norm_Q(u);
      write_text(stem + ".json", meta.dump(2) + "\n");
      std::printf("wrote %s.csv, |u|_L2(Q) = %.10g\n", stem.c_str(), l2_norm_Q(u));
      return 0;
    }
    if (tr->parsed()) {
      ExperimentConfig cfg = resolve("sweep-regularity", tr_c);
      const GFamily family = g_family_from_string(tr_family);
      const Problem pb(cfg, tr_level);
      const BoundaryData g = make_boundary_data(family, pb.tg, cfg.seed);
      const SpaceTimeField u = tr_method == "riesz" ? weak_solution_riesz(g, tr_alpha, pb.basis, pb.sizes.P).u
                                                    : weak_solution_closed_form(g, tr_alpha, pb.basis).u;
      const double gL2 = l2_norm_Sigma(g);
      const double uH = hrs_norm_Q(u, RegularityIndex(0.5, tr_alpha / 4.0));
      const double gNeg = negative_norm_Sigma(g, RegularityIndex(-0.5, -tr_alpha / 4.0));
      const double uL2 = l2_norm_Q(u);
      const std::string dir = prepare_dir(cfg.out);
      const std::string stem = dir + "/transposition_" + tr_family + "_" + std::to_string(cfg.seed);
      write_field_csv(u, stem + ".csv", "seed=" + std::to_string(cfg.seed) + " g_family=" + tr_family);
      nlohmann::json meta{{"schema", 1},
                          {"method", tr_method},
                          {"alpha", tr_alpha},
                          {"seed", cfg.seed},
                          {"g_family", tr_family},
                          {"profile", cfg.profile},
                          {"T", cfg.T},
                          {"L", cfg.L},
                          {"sizes", sizes_json(pb.sizes)},
                          {"g_norm_L2Sigma", gL2},
                          {"u_norm_H_half_alpha_quarter_Q", uH},
                          {"g_norm_negative_Sigma", gNeg},
                          {"u_norm_L2Q", uL2}};
      write_text(stem + ".json", meta.dump(2) + "\n");
      std::printf("g_norm=%.12g u_norm=%.12g ratio=%.12g\n", gL2, uH, gL2 > 0.0 ? uH / gL2 : NAN);
      std::printf("g_negative=%.12g u_L2=%.12g ratio=%.12g\n", gNeg, uL2, gNeg > 0.0 ? uL2 / gNeg : NAN);
      return 0;
    }
    if (norm->parsed()) {
      const SpaceTimeField u = read_field_csv(norm_in);
      const double r = parse_alpha_affine(norm_r).at(norm_alpha);
      const double s = parse_alpha_affine(norm_s).at(norm_alpha);
      std::printf("%.12g\n", hrs_norm_Q(u, RegularityIndex(r, s)));
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
