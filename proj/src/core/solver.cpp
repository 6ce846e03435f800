#include "zndsolve/solver.hpp"

#include "zndsolve/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>

namespace znd::solver {

std::string_view to_string(Model model) {
  switch (model) {
    case Model::Dznd1_2i: return "dznd1-2i";
    case Model::Dznd2_2i: return "dznd2-2i";
  }
  return "?";
}

std::optional<Model> parse_model(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  if (lower == "dznd1-2i") return Model::Dznd1_2i;
  if (lower == "dznd2-2i") return Model::Dznd2_2i;
  return std::nullopt;
}

std::string_view to_string(Outcome outcome) {
  return outcome == Outcome::Completed ? "COMPLETED" : "DIVERGED";
}

std::int64_t SolverConfig::step_count() const {
  return static_cast<std::int64_t>(std::llround(duration / epsilon));
}

void validate(const SolverConfig& config) {
  std::vector<std::string> problems;
  const auto& g = config.gain;
  if (!std::isfinite(g.re) || !std::isfinite(g.im) || !(g.re > 0.0)) {
    problems.push_back("gain real part must be finite and positive");
  }
  const double eps = config.epsilon;
  if (!(eps > 0.0 && eps < 1.0)) {
    problems.push_back("epsilon must lie in (0, 1)");
  }
  if (!(config.duration > 0.0) || !std::isfinite(config.duration)) {
    problems.push_back("duration must be positive and finite");
  }
  if (problems.empty()) {
    const double k = std::round(config.duration / eps);
    const double slack = 1e-9 * std::max(1.0, config.duration);
    if (std::abs(k * eps - config.duration) > slack) {
      std::ostringstream msg;
      msg << "duration " << config.duration << " is not an integer multiple of epsilon " << eps;
      problems.push_back(msg.str());
    }
  }
  if (config.model == Model::Dznd2_2i && g.im != 0.0) {
    problems.push_back("model dznd2-2i requires a real gain");
  }
  if (config.pinv_tolerance && !(*config.pinv_tolerance >= 0.0)) {
    problems.push_back("pinv tolerance must be nonnegative");
  }
  if (!(config.divergence_threshold > 0.0)) {
    problems.push_back("divergence threshold must be positive");
  }

  if (!problems.empty()) {
    std::string joined = "invalid solver config: ";
    for (std::size_t i = 0; i < problems.size(); ++i) {
      if (i) joined += "; ";
      joined += problems[i];
    }
    throw ValidationError(joined);
  }
}

StateVector step_dznd1(const problem::Problem& problem, const StateVector& state,
                       const ComplexGain& gain, double tau, double epsilon,
                       std::optional<double> pinv_tolerance) {
  const auto sys = assembly::assemble_dznd1(problem, state, gain, tau);
  return StateVector(state.values() + epsilon * (linalg::pinv(sys.w, pinv_tolerance) * sys.b));
}

StateVector step_dznd2(const problem::Problem& problem, const StateVector& state,
                       const ComplexGain& gain, double tau, double epsilon,
                       std::optional<double> pinv_tolerance) {
  if (!gain.is_real()) {
    throw CapabilityError("dznd2-2i is defined for real gains only");
  }
  const auto sys = assembly::assemble_dznd2(problem, tau);
  const linalg::RealVector& x = state.values();
  const linalg::RealVector direction =
      *sys.b_dot - *sys.w_dot * x - gain.re * (sys.w * x - sys.b);
  return StateVector(x + epsilon * (linalg::pinv(sys.w, pinv_tolerance) * direction));
}

namespace {

StepRecord make_record(const problem::Problem& problem, std::int64_t k, double tau,
                       StateVector state) {
  StepRecord rec;
  rec.step = k;
  rec.tau = tau;
  const auto x = state.to_matrix(problem.m(), problem.n());
  rec.equation_residual = problem::equation_residual(problem, x, tau);
  if (problem.has_solution()) {
    rec.solution_error = problem::solution_error(problem, x, tau);
  }
  rec.finite = state.all_finite() && std::isfinite(rec.equation_residual) &&
               (!rec.solution_error || std::isfinite(*rec.solution_error));
  rec.state = std::move(state);
  return rec;
}

}  // namespace

Trajectory run(const problem::Problem& problem, const SolverConfig& config,
               const problem::InitialState& initial) {
  validate(config);
  if (initial.x0.rows() != problem.m() || initial.x0.cols() != problem.n()) {
    throw ShapeError("initial state is " + linalg::shape_string(initial.x0.rows(), initial.x0.cols()) +
                     ", problem expects " + linalg::shape_string(problem.m(), problem.n()));
  }

  const std::int64_t steps = config.step_count();
  const double eps = config.epsilon;

  Trajectory traj;
  traj.steps.reserve(static_cast<std::size_t>(steps) + 1);
  StateVector state = StateVector::from_matrix(initial.x0);

  for (std::int64_t k = 0;; ++k) {
    const double tau = static_cast<double>(k) * eps;
    traj.steps.push_back(make_record(problem, k, tau, state));
    const StepRecord& rec = traj.steps.back();
    if (!rec.finite || rec.equation_residual > config.divergence_threshold) {
      traj.outcome = Outcome::Diverged;
      traj.diverged_at = k;
      break;
    }
    if (k == steps) break;

    state = config.model == Model::Dznd1_2i
                ? step_dznd1(problem, state, config.gain, tau, eps, config.pinv_tolerance)
                : step_dznd2(problem, state, config.gain, tau, eps, config.pinv_tolerance);
  }
  return traj;
}

double scalar_error_modulus(const ComplexGain& gain, double epsilon) {
  return std::abs(1.0 - epsilon * gain.value());
}

namespace {

template <typename Get>
double tail_max(const Trajectory& trajectory, double from_tau, double to_tau, Get get) {
  // Window edges get a relative slack so k*eps rounding does not drop them.
  const double slack = 1e-9 * std::max(1.0, std::abs(to_tau));
  double best = std::numeric_limits<double>::quiet_NaN();
  bool any = false;
  for (const auto& rec : trajectory.steps) {
    if (rec.tau < from_tau - slack || rec.tau > to_tau + slack) continue;
    const double value = get(rec);
    if (std::isnan(value)) return value;
    best = any ? std::max(best, value) : value;
    any = true;
  }
  return best;
}

}  // namespace

double tail_max_equation_residual(const Trajectory& trajectory, double from_tau, double to_tau) {
  return tail_max(trajectory, from_tau, to_tau,
                  [](const StepRecord& r) { return r.equation_residual; });
}

double tail_max_solution_error(const Trajectory& trajectory, double from_tau, double to_tau) {
  return tail_max(trajectory, from_tau, to_tau, [](const StepRecord& r) {
    return r.solution_error.value_or(std::numeric_limits<double>::quiet_NaN());
  });
}

}  // namespace znd::solver
