#pragma once

// Real 2mn x 2mn linear systems that define each model's update direction.
//
// Both models advance the same stacked state [vec(X_re); vec(X_im)]. For the
// complex-field model this is [Re vec(X); Im vec(X)], for the real-field
// model it is [vec(X_re); vec(X_im)]; the two coincide because vec commutes
// with taking real and imaginary parts.

#include "zndsolve/linalg.hpp"
#include "zndsolve/problem.hpp"

#include <complex>
#include <optional>
#include <vector>

namespace znd::assembly {

using linalg::RealMatrix;
using linalg::RealVector;
using linalg::SplitComplexMatrix;

/// Convergence gain gamma = re + i*im, in 1/s. re must be positive.
struct ComplexGain {
  double re = 10.0;
  double im = 0.0;

  std::complex<double> value() const { return {re, im}; }
  bool is_real() const { return im == 0.0; }
  friend bool operator==(const ComplexGain&, const ComplexGain&) = default;
};

/// Throws ValidationError unless gain.re > 0 and both parts are finite.
void validate(const ComplexGain& gain);

class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(RealVector values) : values_(std::move(values)) {}

  static StateVector from_matrix(const SplitComplexMatrix& x);
  /// Throws ShapeError unless size() == 2*m*n.
  SplitComplexMatrix to_matrix(Eigen::Index m, Eigen::Index n) const;

  const RealVector& values() const { return values_; }
  Eigen::Index size() const { return values_.size(); }
  bool all_finite() const { return values_.allFinite(); }

  friend bool operator==(const StateVector& a, const StateVector& b) {
    return a.values_.size() == b.values_.size() && a.values_ == b.values_;
  }

 private:
  RealVector values_;
};

/// w and b at one sample time; w_dot/b_dot are filled only for the
/// real-field model.
struct AssembledSystem {
  double tau = 0.0;
  RealMatrix w;
  RealVector b;
  std::optional<RealMatrix> w_dot;
  std::optional<RealVector> b_dot;
};

/// Embeds the complex linear map Z -> U Z - V conj(Z) as a real 2k x 2k block
/// matrix acting on [Re Z; Im Z].
RealMatrix conjugate_linear_embedding(const SplitComplexMatrix& u, const SplitComplexMatrix& v);

/// Complex-field system. U = F^T (x) I_m, V = I_n (x) A, and
/// G = vec(C' + A' conj(X) - X F') - gamma vec(X F - A conj(X) - C), with
/// gamma multiplying the complex error before the real/imaginary split.
AssembledSystem assemble_dznd1(const problem::Problem& problem, const StateVector& state,
                               const ComplexGain& gain, double tau);

/// Real-field system W_R x = B_R together with its time derivatives. Depends
/// on tau only.
AssembledSystem assemble_dznd2(const problem::Problem& problem, double tau);

// -- zero-stability ----------------------------------------------------------

/// Coefficients in ascending powers: p(d) = c[0] + c[1] d + ... + c[N] d^N.
using CharacteristicPolynomial = std::vector<double>;

/// Euler-forward x_{k+1} - x_k = eps f_k has p(d) = d - 1.
CharacteristicPolynomial euler_forward_polynomial();

/// Roots via the companion matrix eigenvalues.
std::vector<std::complex<double>> polynomial_roots(const CharacteristicPolynomial& poly);

/// Root condition: every root inside the closed unit disk, and the ones on
/// the circle simple. `tolerance` absorbs rounding in the root finder.
bool is_zero_stable(const std::vector<std::complex<double>>& roots, double tolerance = 1e-6);
bool is_zero_stable(const CharacteristicPolynomial& poly, double tolerance = 1e-6);

/// Roots of the Euler-forward scheme used by both models.
std::vector<std::complex<double>> zero_stability_roots();

}  // namespace znd::assembly
