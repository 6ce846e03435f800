#pragma once

// Experiment plumbing shared by the C API and the CLI: file writers, the
// parameter sweep with its convergence-order fit, and the self-check suite.

#include "zndsolve/solver.hpp"

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace znd::experiment {

using solver::ComplexGain;
using solver::Model;
using solver::SolverConfig;
using solver::Trajectory;

/// Parses "a", "a+bi", "a-bi" (also "a+i", "a-i"); whitespace is ignored.
std::optional<ComplexGain> parse_gain(std::string_view text);
std::string format_gain(const ComplexGain& gain);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double value);

/// Everything needed to describe one finished run in output files.
struct RunResult {
  std::string problem;
  Eigen::Index m = 0;
  Eigen::Index n = 0;
  SolverConfig config;
  Trajectory trajectory;
};

RunResult run_named(const problem::Problem& problem, const SolverConfig& config);

/// step,tau,equation_residual,solution_error,x_re_<s>_<t>...,x_im_<s>_<t>...
/// State columns follow the stacked state layout (column-major, 1-based).
void write_trajectory_csv(std::ostream& out, const RunResult& run);
void write_summary(std::ostream& out, const RunResult& run);
/// log10 residual vs tau as a standalone SVG line chart.
void write_residual_svg(std::ostream& out, const RunResult& run);

/// Writes trajectory.csv, summary.txt and residual.svg into `dir`, creating
/// it if needed. Throws std::filesystem::filesystem_error / std::ios_base::failure.
void write_run_outputs(const std::filesystem::path& dir, const RunResult& run);

struct SweepPoint {
  Model model = Model::Dznd1_2i;
  ComplexGain gain{};
  double epsilon = 0.001;
};

struct SweepRow {
  Model model = Model::Dznd1_2i;
  ComplexGain gain{};
  double epsilon = 0.0;
  std::string outcome;  // COMPLETED, DIVERGED, or ERROR
  std::string message;  // error text for ERROR rows
  double tail_max_equation_residual = 0.0;
  double tail_max_solution_error = 0.0;
  std::int64_t steps = 0;
  double wall_time_seconds = 0.0;
};

struct OrderFit {
  Model model = Model::Dznd1_2i;
  ComplexGain gain{};
  std::size_t points = 0;
  std::optional<double> slope;  // set only with >= 3 distinct completed epsilons
};

struct SweepReport {
  std::string problem;
  std::vector<SweepRow> rows;  // sorted by (model, gain, epsilon)
  std::vector<OrderFit> fits;
};

struct SweepOptions {
  double duration = solver::kDefaultDuration;
  std::uint64_t seed = solver::kDefaultSeed;
  double divergence_threshold = solver::kDefaultDivergenceThreshold;
  std::optional<double> pinv_tolerance;
  unsigned workers = 0;  // 0: hardware concurrency
};

/// Every grid point runs from the same seeded initial state. A failing point
/// becomes an ERROR row; the sweep itself does not throw for it.
SweepReport run_sweep(const problem::Problem& problem, const std::vector<SweepPoint>& grid,
                      const SweepOptions& options);

/// Least-squares slope of log(y) against log(x).
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Column layout has no wall time so reruns are byte-identical.
void write_sweep_csv(std::ostream& out, const SweepReport& report);
void write_order_report(std::ostream& out, const SweepReport& report);
void write_sweep_outputs(const std::filesystem::path& dir, const SweepReport& report);

/// One line per property group; returns true when all groups pass.
bool run_verification(const std::function<void(const std::string&)>& emit);

}  // namespace znd::experiment
