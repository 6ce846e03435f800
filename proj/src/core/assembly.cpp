#include "zndsolve/assembly.hpp"

#include "zndsolve/errors.hpp"

#include <cmath>
#include <string>

namespace znd::assembly {

using linalg::complex_matmul;
using linalg::conjugate;
using linalg::kron;
using linalg::transpose;
using linalg::vec;

void validate(const ComplexGain& gain) {
  if (!std::isfinite(gain.re) || !std::isfinite(gain.im)) {
    throw ValidationError("gain must be finite");
  }
  if (!(gain.re > 0.0)) {
    throw ValidationError("gain real part must be positive, got " + std::to_string(gain.re));
  }
}

StateVector StateVector::from_matrix(const SplitComplexMatrix& x) {
  RealVector v(2 * x.rows() * x.cols());
  v << vec(x.re()), vec(x.im());
  return StateVector(std::move(v));
}

SplitComplexMatrix StateVector::to_matrix(Eigen::Index m, Eigen::Index n) const {
  const Eigen::Index mn = m * n;
  if (values_.size() != 2 * mn) {
    throw ShapeError("state of length " + std::to_string(values_.size()) + " does not hold a " +
                     linalg::shape_string(m, n) + " complex matrix");
  }
  return {linalg::unvec(RealVector(values_.head(mn)), m, n),
          linalg::unvec(RealVector(values_.tail(mn)), m, n)};
}

RealMatrix conjugate_linear_embedding(const SplitComplexMatrix& u, const SplitComplexMatrix& v) {
  const Eigen::Index k = u.rows();
  RealMatrix w(2 * k, 2 * k);
  w.topLeftCorner(k, k) = u.re() - v.re();
  w.topRightCorner(k, k) = -(u.im() + v.im());
  w.bottomLeftCorner(k, k) = u.im() - v.im();
  w.bottomRightCorner(k, k) = u.re() + v.re();
  return w;
}

namespace {

// (F^T (x) I_m, I_n (x) A) for the given F and A.
std::pair<SplitComplexMatrix, SplitComplexMatrix> kron_factors(const SplitComplexMatrix& f,
                                                               const SplitComplexMatrix& a) {
  const auto eye_m = SplitComplexMatrix::identity(a.rows());
  const auto eye_n = SplitComplexMatrix::identity(f.rows());
  return {kron(transpose(f), eye_m), kron(eye_n, a)};
}

RealVector stack(const SplitComplexMatrix& column) {
  RealVector out(2 * column.rows());
  out << column.re(), column.im();
  return out;
}

// [[K11, K12], [K21, K22]] from F and A. Identical to the conjugate-linear
// embedding of (F^T (x) I_m, I_n (x) A), spelled out from the real parts.
RealMatrix real_field_matrix(const SplitComplexMatrix& f, const SplitComplexMatrix& a) {
  const Eigen::Index m = a.rows();
  const Eigen::Index n = f.rows();
  const RealMatrix eye_m = RealMatrix::Identity(m, m);
  const RealMatrix eye_n = RealMatrix::Identity(n, n);
  const RealMatrix fr = kron(RealMatrix(f.re().transpose()), eye_m);
  const RealMatrix fi = kron(RealMatrix(f.im().transpose()), eye_m);
  const RealMatrix ar = kron(eye_n, a.re());
  const RealMatrix ai = kron(eye_n, a.im());

  const Eigen::Index mn = m * n;
  RealMatrix w(2 * mn, 2 * mn);
  w.topLeftCorner(mn, mn) = fr - ar;
  w.topRightCorner(mn, mn) = -(fi + ai);
  w.bottomLeftCorner(mn, mn) = fi - ai;
  w.bottomRightCorner(mn, mn) = fr + ar;
  return w;
}

}  // namespace

AssembledSystem assemble_dznd1(const problem::Problem& problem, const StateVector& state,
                               const ComplexGain& gain, double tau) {
  const SplitComplexMatrix x = state.to_matrix(problem.m(), problem.n());
  const problem::Coefficients k = problem.coefficients(tau);
  const problem::Coefficients dk = problem.derivatives(tau);

  const auto [u, v] = kron_factors(k.f, k.a);
  const SplitComplexMatrix x_bar = conjugate(x);

  const SplitComplexMatrix drift = vec(dk.c + complex_matmul(dk.a, x_bar) - complex_matmul(x, dk.f));
  const SplitComplexMatrix error = vec(complex_matmul(x, k.f) - complex_matmul(k.a, x_bar) - k.c);
  const SplitComplexMatrix damped(gain.re * error.re() - gain.im * error.im(),
                                  gain.re * error.im() + gain.im * error.re());

  AssembledSystem out;
  out.tau = tau;
  out.w = conjugate_linear_embedding(u, v);
  out.b = stack(drift - damped);
  return out;
}

AssembledSystem assemble_dznd2(const problem::Problem& problem, double tau) {
  const problem::Coefficients k = problem.coefficients(tau);
  const problem::Coefficients dk = problem.derivatives(tau);

  AssembledSystem out;
  out.tau = tau;
  out.w = real_field_matrix(k.f, k.a);
  out.b = stack(vec(k.c));
  out.w_dot = real_field_matrix(dk.f, dk.a);
  out.b_dot = stack(vec(dk.c));
  return out;
}

CharacteristicPolynomial euler_forward_polynomial() { return {-1.0, 1.0}; }

std::vector<std::complex<double>> polynomial_roots(const CharacteristicPolynomial& poly) {
  std::size_t degree = poly.size();
  while (degree > 0 && poly[degree - 1] == 0.0) --degree;
  if (degree < 2) return {};
  --degree;

  const double lead = poly[degree];
  RealMatrix companion = RealMatrix::Zero(static_cast<Eigen::Index>(degree),
                                          static_cast<Eigen::Index>(degree));
  for (std::size_t i = 1; i < degree; ++i) {
    companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
  }
  for (std::size_t i = 0; i < degree; ++i) {
    companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(degree - 1)) =
        -poly[i] / lead;
  }

  Eigen::EigenSolver<RealMatrix> solver(companion, false);
  if (solver.info() != Eigen::Success) {
    throw NumericError("polynomial_roots: eigenvalue iteration did not converge");
  }
  std::vector<std::complex<double>> roots;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    roots.push_back(solver.eigenvalues()(i));
  }
  return roots;
}

bool is_zero_stable(const std::vector<std::complex<double>>& roots, double tolerance) {
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const double modulus = std::abs(roots[i]);
    if (modulus > 1.0 + tolerance) return false;
    if (modulus < 1.0 - tolerance) continue;
    // A repeated root splits into a cluster of width ~sqrt(machine eps).
    for (std::size_t j = 0; j < roots.size(); ++j) {
      if (j != i && std::abs(roots[j] - roots[i]) <= std::sqrt(tolerance)) return false;
    }
  }
  return true;
}

bool is_zero_stable(const CharacteristicPolynomial& poly, double tolerance) {
  return is_zero_stable(polynomial_roots(poly), tolerance);
}

std::vector<std::complex<double>> zero_stability_roots() {
  return polynomial_roots(euler_forward_polynomial());
}

}  // namespace znd::assembly
