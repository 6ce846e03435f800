#include "zndsolve/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>
#include <set>
#include <thread>
#include <tuple>

namespace znd::experiment {

namespace {

auto sort_key(const SweepRow& r) {
  return std::make_tuple(static_cast<int>(r.model), r.gain.re, r.gain.im, r.epsilon);
}

SweepRow run_point(const problem::Problem& problem, const SweepPoint& point,
                   const problem::InitialState& initial, const SweepOptions& options) {
  SweepRow row;
  row.model = point.model;
  row.gain = point.gain;
  row.epsilon = point.epsilon;

  SolverConfig config;
  config.model = point.model;
  config.gain = point.gain;
  config.epsilon = point.epsilon;
  config.duration = options.duration;
  config.seed = options.seed;
  config.pinv_tolerance = options.pinv_tolerance;
  config.divergence_threshold = options.divergence_threshold;

  const auto start = std::chrono::steady_clock::now();
  try {
    const Trajectory traj = solver::run(problem, config, initial);
    row.outcome = std::string(solver::to_string(traj.outcome));
    row.steps = static_cast<std::int64_t>(traj.steps.size()) - 1;
    const double from = options.duration / 2;
    row.tail_max_equation_residual = solver::tail_max_equation_residual(traj, from, options.duration);
    row.tail_max_solution_error = solver::tail_max_solution_error(traj, from, options.duration);
    if (traj.outcome == solver::Outcome::Diverged) {
      row.tail_max_equation_residual = traj.steps.back().equation_residual;
      row.tail_max_solution_error =
          traj.steps.back().solution_error.value_or(std::numeric_limits<double>::quiet_NaN());
    }
  } catch (const std::exception& e) {
    row.outcome = "ERROR";
    row.message = e.what();
    row.tail_max_equation_residual = std::numeric_limits<double>::quiet_NaN();
    row.tail_max_solution_error = std::numeric_limits<double>::quiet_NaN();
  }
  row.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return row;
}

}  // namespace

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = std::min(x.size(), y.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = static_cast<double>(n) * sxx - sx * sx;
  return (static_cast<double>(n) * sxy - sx * sy) / denom;
}

SweepReport run_sweep(const problem::Problem& problem, const std::vector<SweepPoint>& grid,
                      const SweepOptions& options) {
  SweepReport report;
  report.problem = problem.label();
  report.rows.resize(grid.size());

  const auto initial = problem::random_initial_state(problem, options.seed);
  unsigned workers = options.workers ? options.workers : std::thread::hardware_concurrency();
  workers = std::clamp<unsigned>(workers, 1, static_cast<unsigned>(std::max<std::size_t>(1, grid.size())));

  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) {
      report.rows[i] = run_point(problem, grid[i], initial, options);
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
  }

  std::stable_sort(report.rows.begin(), report.rows.end(),
                   [](const SweepRow& a, const SweepRow& b) { return sort_key(a) < sort_key(b); });

  std::map<std::tuple<int, double, double>, std::vector<const SweepRow*>> groups;
  for (const auto& row : report.rows) {
    groups[{static_cast<int>(row.model), row.gain.re, row.gain.im}].push_back(&row);
  }
  for (const auto& [key, rows] : groups) {
    OrderFit fit;
    fit.model = rows.front()->model;
    fit.gain = rows.front()->gain;
    std::vector<double> eps, residual;
    std::set<double> distinct;
    for (const SweepRow* r : rows) {
      if (r->outcome != "COMPLETED") continue;
      if (!(r->tail_max_equation_residual > 0) || !std::isfinite(r->tail_max_equation_residual)) continue;
      eps.push_back(r->epsilon);
      residual.push_back(r->tail_max_equation_residual);
      distinct.insert(r->epsilon);
    }
    fit.points = eps.size();
    if (distinct.size() >= 3) fit.slope = log_log_slope(eps, residual);
    report.fits.push_back(fit);
  }
  return report;
}

void write_sweep_csv(std::ostream& out, const SweepReport& report) {
  out << "model,gamma,epsilon,outcome,tail_max_equation_residual,tail_max_solution_error,steps\n";
  for (const auto& r : report.rows) {
    out << solver::to_string(r.model) << ',' << format_gain(r.gain) << ','
        << format_double(r.epsilon) << ',' << r.outcome << ','
        << format_double(r.tail_max_equation_residual) << ','
        << format_double(r.tail_max_solution_error) << ',' << r.steps << '\n';
  }
}

void write_order_report(std::ostream& out, const SweepReport& report) {
  out << "problem: " << report.problem << '\n'
      << "fit: least-squares slope of log(tail-max equation residual) vs log(epsilon)\n\n";
  for (const auto& fit : report.fits) {
    out << solver::to_string(fit.model) << " gamma=" << format_gain(fit.gain)
        << " completed_points=" << fit.points << " slope=";
    if (fit.slope) {
      out << format_double(*fit.slope);
    } else {
      out << "n/a (needs >= 3 completed epsilon values)";
    }
    out << '\n';
  }
  out << "\nruns:\n";
  for (const auto& r : report.rows) {
    out << "  " << solver::to_string(r.model) << " gamma=" << format_gain(r.gain)
        << " eps=" << format_double(r.epsilon) << " " << r.outcome
        << " tail_residual=" << format_double(r.tail_max_equation_residual)
        << " wall_time_s=" << r.wall_time_seconds;
    if (!r.message.empty()) out << " error=\"" << r.message << '"';
    out << '\n';
  }
}

}  // namespace znd::experiment
