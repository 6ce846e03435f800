// znd: command-line front end for the zndsolve C API.
//
//   znd run    --problem example2 --model dznd1-2i --gamma 10+20i --epsilon 0.1 --out out/
//   znd sweep  --problem example2 --epsilon 0.1 --epsilon 0.01 --epsilon 0.001 --out sweep/
//   znd verify
//
// Exit status: 0 success, 1 verify failure, 2 usage error, 3 run diverged,
// 4 I/O error, 5 any other failure.

#include "zndsolve/zndsolve.h"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

namespace {

enum Exit : int {
  kOk = 0,
  kVerifyFailed = 1,
  kUsage = 2,
  kDiverged = 3,
  kIo = 4,
  kFailure = 5,
};

struct ProblemCloser {
  void operator()(zs_problem* p) const { zs_problem_close(p); }
};
struct TrajectoryFreer {
  void operator()(zs_trajectory* t) const { zs_trajectory_free(t); }
};
struct SweepFreer {
  void operator()(zs_sweep* s) const { zs_sweep_free(s); }
};

int report(zs_status status, const char* context) {
  std::cerr << "znd: " << context << ": " << zs_status_name(status) << ": " << zs_last_error()
            << '\n';
  switch (status) {
    case ZS_ERR_INVALID_ARGUMENT:
    case ZS_ERR_UNKNOWN_NAME:
    case ZS_ERR_VALIDATION:
    case ZS_ERR_CAPABILITY:
      return kUsage;
    case ZS_ERR_IO:
      return kIo;
    default:
      return kFailure;
  }
}

struct CommonOptions {
  std::string problem = "example2";
  double duration = 10.0;
  uint64_t seed = 42;
  std::string out;
  double divergence_threshold = 1e12;
  double pinv_tolerance = -1.0;
};

void add_common(CLI::App* cmd, CommonOptions& o, const std::string& default_out) {
  o.out = default_out;
  cmd->add_option("--problem", o.problem, "Problem name (example1, example2)")
      ->capture_default_str();
  cmd->add_option("--duration", o.duration, "Simulated time in seconds")->capture_default_str();
  cmd->add_option("--seed", o.seed, "Seed for the random initial value")->capture_default_str();
  cmd->add_option("--out", o.out, "Output directory")->capture_default_str();
  cmd->add_option("--divergence-threshold", o.divergence_threshold,
                  "Equation residual that flags divergence")
      ->capture_default_str();
  cmd->add_option("--pinv-tolerance", o.pinv_tolerance,
                  "Relative singular-value cutoff for the pseudo-inverse (<0: default)");
}

int open_problem(const std::string& name, std::unique_ptr<zs_problem, ProblemCloser>& out) {
  zs_problem* raw = nullptr;
  if (const auto st = zs_problem_open(name.c_str(), &raw); st != ZS_OK) {
    return report(st, "--problem");
  }
  out.reset(raw);
  return kOk;
}

int cmd_run(const CommonOptions& o, const std::string& model_text, const std::string& gamma_text,
            double epsilon) {
  zs_config config;
  zs_config_default(&config);
  if (const auto st = zs_parse_model(model_text.c_str(), &config.model); st != ZS_OK) {
    return report(st, "--model");
  }
  if (const auto st = zs_parse_gain(gamma_text.c_str(), &config.gamma_re, &config.gamma_im);
      st != ZS_OK) {
    return report(st, "--gamma");
  }
  config.epsilon = epsilon;
  config.duration = o.duration;
  config.seed = o.seed;
  config.divergence_threshold = o.divergence_threshold;
  config.pinv_tolerance = o.pinv_tolerance;
  if (const auto st = zs_config_validate(&config); st != ZS_OK) return report(st, "run");

  std::unique_ptr<zs_problem, ProblemCloser> problem;
  if (const int rc = open_problem(o.problem, problem); rc != kOk) return rc;

  zs_trajectory* raw = nullptr;
  if (const auto st = zs_run(problem.get(), &config, &raw); st != ZS_OK) return report(st, "run");
  std::unique_ptr<zs_trajectory, TrajectoryFreer> traj(raw);

  if (const auto st = zs_trajectory_write(traj.get(), o.out.c_str()); st != ZS_OK) {
    return report(st, "writing outputs");
  }

  zs_record last{};
  zs_trajectory_record(traj.get(), zs_trajectory_size(traj.get()) - 1, &last);
  const bool diverged = zs_trajectory_outcome(traj.get()) == ZS_OUTCOME_DIVERGED;
  std::printf("%s %s gamma=%s eps=%g: %s", o.problem.c_str(), zs_model_name(config.model),
              gamma_text.c_str(), epsilon, diverged ? "DIVERGED" : "COMPLETED");
  if (diverged) std::printf(" at step %lld", static_cast<long long>(zs_trajectory_diverged_at(traj.get())));
  std::printf(", final equation residual %.6e, outputs in %s\n", last.equation_residual,
              o.out.c_str());
  return diverged ? kDiverged : kOk;
}

int cmd_sweep(const CommonOptions& o, const std::vector<std::string>& models,
              const std::vector<std::string>& gammas, const std::vector<double>& epsilons,
              unsigned workers) {
  std::vector<zs_sweep_point> grid;
  for (const auto& model_text : models) {
    zs_model model{};
    if (const auto st = zs_parse_model(model_text.c_str(), &model); st != ZS_OK) {
      return report(st, "--model");
    }
    for (const auto& gamma_text : gammas) {
      double re = 0, im = 0;
      if (const auto st = zs_parse_gain(gamma_text.c_str(), &re, &im); st != ZS_OK) {
        return report(st, "--gamma");
      }
      for (double eps : epsilons) grid.push_back({model, re, im, eps});
    }
  }

  std::unique_ptr<zs_problem, ProblemCloser> problem;
  if (const int rc = open_problem(o.problem, problem); rc != kOk) return rc;

  zs_config base;
  zs_config_default(&base);
  base.duration = o.duration;
  base.seed = o.seed;
  base.divergence_threshold = o.divergence_threshold;
  base.pinv_tolerance = o.pinv_tolerance;

  zs_sweep* raw = nullptr;
  if (const auto st = zs_sweep_run(problem.get(), grid.data(), grid.size(), &base, workers, &raw);
      st != ZS_OK) {
    return report(st, "sweep");
  }
  std::unique_ptr<zs_sweep, SweepFreer> sweep(raw);
  if (const auto st = zs_sweep_write(sweep.get(), o.out.c_str()); st != ZS_OK) {
    return report(st, "writing outputs");
  }

  for (size_t i = 0; i < zs_sweep_row_count(sweep.get()); ++i) {
    zs_sweep_row row{};
    zs_sweep_get_row(sweep.get(), i, &row);
    const char* outcome = row.outcome == ZS_OUTCOME_COMPLETED  ? "COMPLETED"
                          : row.outcome == ZS_OUTCOME_DIVERGED ? "DIVERGED"
                                                               : "ERROR";
    std::printf("%-9s gamma=%g%+gi eps=%-8g %-9s tail residual %.6e\n", zs_model_name(row.model),
                row.gamma_re, row.gamma_im, row.epsilon, outcome, row.tail_max_equation_residual);
  }
  for (size_t i = 0; i < zs_sweep_fit_count(sweep.get()); ++i) {
    zs_model model{};
    double re = 0, im = 0, slope = 0;
    int has_slope = 0;
    zs_sweep_fit(sweep.get(), i, &model, &re, &im, &has_slope, &slope);
    if (has_slope) {
      std::printf("order %s gamma=%g%+gi: slope %.4f\n", zs_model_name(model), re, im, slope);
    } else {
      std::printf("order %s gamma=%g%+gi: n/a\n", zs_model_name(model), re, im);
    }
  }
  std::printf("outputs in %s\n", o.out.c_str());
  return kOk;
}

int cmd_verify() {
  int all_passed = 0;
  const auto st = zs_verify(
      [](const char* line, void*) { std::printf("%s\n", line); }, nullptr, &all_passed);
  if (st != ZS_OK) return report(st, "verify");
  std::printf("%s\n", all_passed ? "all groups passed" : "some groups FAILED");
  return all_passed ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete zeroing-neural-dynamics solvers for Sylvester-conjugate matrix equations"};
  app.require_subcommand(1);

  CommonOptions run_opts;
  std::string run_model = "dznd1-2i";
  std::string run_gamma = "10";
  double run_epsilon = 0.001;
  auto* run = app.add_subcommand("run", "Integrate one model and write trajectory.csv, summary.txt, residual.svg");
  add_common(run, run_opts, "out");
  run->add_option("--model", run_model, "dznd1-2i or dznd2-2i")->capture_default_str();
  run->add_option("--gamma", run_gamma, "Gain: a, a+bi or a-bi")->capture_default_str();
  run->add_option("--epsilon", run_epsilon, "Step size in (0, 1)")->capture_default_str();

  CommonOptions sweep_opts;
  std::vector<std::string> sweep_models{"dznd1-2i", "dznd2-2i"};
  std::vector<std::string> sweep_gammas{"10"};
  std::vector<double> sweep_epsilons{0.1, 0.01, 0.001};
  unsigned workers = 0;
  auto* sweep = app.add_subcommand("sweep", "Run a grid over models, gains and step sizes");
  add_common(sweep, sweep_opts, "sweep");
  sweep->add_option("--model", sweep_models, "Repeatable")->capture_default_str();
  sweep->add_option("--gamma", sweep_gammas, "Repeatable")->capture_default_str();
  sweep->add_option("--epsilon", sweep_epsilons, "Repeatable")->capture_default_str();
  sweep->add_option("--workers", workers, "Parallel runs (0: all cores)");

  app.add_subcommand("verify", "Run the built-in property checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  if (run->parsed()) return cmd_run(run_opts, run_model, run_gamma, run_epsilon);
  if (sweep->parsed()) return cmd_sweep(sweep_opts, sweep_models, sweep_gammas, sweep_epsilons, workers);
  return cmd_verify();
}
