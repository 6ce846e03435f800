#pragma once

// Fixed-step Euler-forward integration of the two discrete models.

#include "zndsolve/assembly.hpp"
#include "zndsolve/problem.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace znd::solver {

using assembly::ComplexGain;
using assembly::StateVector;

enum class Model {
  Dznd1_2i,  // complex-field error, x += eps * W_C^+ B_C
  Dznd2_2i,  // real-field error, x += eps * W_R^+ (B_R' - W_R' x - gamma (W_R x - B_R))
};

std::string_view to_string(Model model);
/// Accepts "dznd1-2i" / "dznd2-2i" (case-insensitive).
std::optional<Model> parse_model(std::string_view text);

inline constexpr double kDefaultDuration = 10.0;
inline constexpr std::uint64_t kDefaultSeed = 42;
inline constexpr double kDefaultDivergenceThreshold = 1e12;

struct SolverConfig {
  Model model = Model::Dznd1_2i;
  ComplexGain gain{};
  double epsilon = 0.001;
  double duration = kDefaultDuration;
  std::uint64_t seed = kDefaultSeed;
  std::optional<double> pinv_tolerance;  // nullopt: linalg::default_pinv_tolerance
  double divergence_threshold = kDefaultDivergenceThreshold;

  /// round(duration / epsilon). Only meaningful after validate().
  std::int64_t step_count() const;
};

/// Throws ValidationError naming every violated invariant.
void validate(const SolverConfig& config);

StateVector step_dznd1(const problem::Problem& problem, const StateVector& state,
                       const ComplexGain& gain, double tau, double epsilon,
                       std::optional<double> pinv_tolerance = std::nullopt);

/// Throws CapabilityError for a gain with nonzero imaginary part.
StateVector step_dznd2(const problem::Problem& problem, const StateVector& state,
                       const ComplexGain& gain, double tau, double epsilon,
                       std::optional<double> pinv_tolerance = std::nullopt);

struct StepRecord {
  std::int64_t step = 0;
  double tau = 0.0;
  StateVector state;
  double equation_residual = 0.0;
  std::optional<double> solution_error;  // absent without a theoretical solution
  bool finite = true;
};

enum class Outcome { Completed, Diverged };

struct Trajectory {
  std::vector<StepRecord> steps;
  Outcome outcome = Outcome::Completed;
  std::optional<std::int64_t> diverged_at;
};

std::string_view to_string(Outcome outcome);

/// Runs round(duration/eps) steps from `initial`, recording residuals at every
/// step including tau = 0. Stops at the first record whose state or residual
/// is non-finite or whose equation residual exceeds the divergence threshold.
Trajectory run(const problem::Problem& problem, const SolverConfig& config,
               const problem::InitialState& initial);

/// |1 - eps * gamma|: per-step contraction of the scalar error recursion.
double scalar_error_modulus(const ComplexGain& gain, double epsilon);

/// Maximum over records with tau in [from_tau, to_tau]. Non-finite values
/// propagate; returns NaN when no record falls in the window.
double tail_max_equation_residual(const Trajectory& trajectory, double from_tau, double to_tau);
double tail_max_solution_error(const Trajectory& trajectory, double from_tau, double to_tau);

}  // namespace znd::solver
