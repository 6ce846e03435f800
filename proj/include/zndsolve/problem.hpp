#pragma once

// Time-variant Sylvester-conjugate matrix equations
//
//     X(t) F(t) - A(t) conj(X(t)) - C(t) = 0,
//
// with F n x n, A m x m, C and X m x n, all complex.

#include "zndsolve/linalg.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace znd::problem {

using linalg::SplitComplexMatrix;

/// F, A and C at one instant, or their time derivatives.
struct Coefficients {
  SplitComplexMatrix f;
  SplitComplexMatrix a;
  SplitComplexMatrix c;
};

using CoefficientProvider = std::function<Coefficients(double tau)>;
using SolutionProvider = std::function<SplitComplexMatrix(double tau)>;

/// Immutable problem description. Providers must be pure and total on the
/// simulated time span.
class Problem {
 public:
  Problem(std::string label, Eigen::Index m, Eigen::Index n, CoefficientProvider coefficients,
          CoefficientProvider derivatives, std::optional<SolutionProvider> solution = std::nullopt);

  const std::string& label() const { return label_; }
  Eigen::Index m() const { return m_; }
  Eigen::Index n() const { return n_; }
  bool has_solution() const { return solution_.has_value(); }

  /// Shape-checked provider calls; a provider returning the wrong shape
  /// raises ShapeError.
  Coefficients coefficients(double tau) const;
  Coefficients derivatives(double tau) const;
  /// Throws CapabilityError when no closed form was supplied.
  SplitComplexMatrix solution(double tau) const;

 private:
  Coefficients checked(const Coefficients& c, const char* what) const;

  std::string label_;
  Eigen::Index m_;
  Eigen::Index n_;
  CoefficientProvider coefficients_;
  CoefficientProvider derivatives_;
  std::optional<SolutionProvider> solution_;
};

/// Central-difference derivative provider for problems without analytic
/// derivatives. Its truncation error limits the attainable residual floor.
CoefficientProvider finite_difference_derivatives(CoefficientProvider coefficients,
                                                  double step = 1e-6);

/// ||X F - A conj(X) - C||_F at tau.
double equation_residual(const Problem& problem, const SplitComplexMatrix& x, double tau);

/// ||X - X*(tau)||_F. Throws CapabilityError without a theoretical solution.
double solution_error(const Problem& problem, const SplitComplexMatrix& x, double tau);

/// Constant-coefficient 3x2 problem with a rational exact solution.
Problem example1();
/// Trigonometric 2x2 problem with X*(t) = (1 + i) [[sin t, cos t], [-cos t, -sin t]].
Problem example2();

std::optional<Problem> find_problem(std::string_view name);
std::vector<std::string> problem_names();

struct InitialState {
  SplitComplexMatrix x0;
  std::uint64_t seed = 0;
};

inline constexpr double kInitialLow = -5.0;
inline constexpr double kInitialHigh = 5.0;

/// Real and imaginary entries uniform in [-5, 5], reproducible per seed on
/// every platform (the mapping from mt19937_64 output is fixed here rather
/// than left to std::uniform_real_distribution).
InitialState random_initial_state(const Problem& problem, std::uint64_t seed);

}  // namespace znd::problem
