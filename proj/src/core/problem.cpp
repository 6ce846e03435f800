#include "zndsolve/problem.hpp"

#include "zndsolve/errors.hpp"

#include <random>

namespace znd::problem {

using linalg::complex_matmul;
using linalg::conjugate;
using linalg::frobenius_norm;
using linalg::shape_string;

namespace {

void require_shape(const SplitComplexMatrix& m, Eigen::Index rows, Eigen::Index cols,
                   const std::string& what) {
  if (m.rows() != rows || m.cols() != cols) {
    throw ShapeError(what + " is " + shape_string(m.rows(), m.cols()) + ", expected " +
                     shape_string(rows, cols));
  }
}

}  // namespace

Problem::Problem(std::string label, Eigen::Index m, Eigen::Index n,
                 CoefficientProvider coefficients, CoefficientProvider derivatives,
                 std::optional<SolutionProvider> solution)
    : label_(std::move(label)),
      m_(m),
      n_(n),
      coefficients_(std::move(coefficients)),
      derivatives_(std::move(derivatives)),
      solution_(std::move(solution)) {
  if (m_ <= 0 || n_ <= 0) {
    throw ShapeError("problem dimensions must be positive, got " + shape_string(m_, n_));
  }
  if (!coefficients_ || !derivatives_) {
    throw std::invalid_argument("problem '" + label_ + "' needs coefficient and derivative providers");
  }
}

Coefficients Problem::checked(const Coefficients& c, const char* what) const {
  const std::string prefix = label_ + ": " + what;
  require_shape(c.f, n_, n_, prefix + " F");
  require_shape(c.a, m_, m_, prefix + " A");
  require_shape(c.c, m_, n_, prefix + " C");
  return c;
}

Coefficients Problem::coefficients(double tau) const {
  return checked(coefficients_(tau), "coefficient");
}

Coefficients Problem::derivatives(double tau) const {
  return checked(derivatives_(tau), "derivative");
}

SplitComplexMatrix Problem::solution(double tau) const {
  if (!solution_) {
    throw CapabilityError("problem '" + label_ + "' has no theoretical solution");
  }
  SplitComplexMatrix x = (*solution_)(tau);
  require_shape(x, m_, n_, label_ + ": theoretical solution");
  return x;
}

CoefficientProvider finite_difference_derivatives(CoefficientProvider coefficients, double step) {
  return [coefficients = std::move(coefficients), step](double tau) {
    const Coefficients hi = coefficients(tau + step);
    const Coefficients lo = coefficients(tau - step);
    const auto diff = [step](const SplitComplexMatrix& p, const SplitComplexMatrix& q) {
      return SplitComplexMatrix((p.re() - q.re()) / (2 * step), (p.im() - q.im()) / (2 * step));
    };
    return Coefficients{diff(hi.f, lo.f), diff(hi.a, lo.a), diff(hi.c, lo.c)};
  };
}

double equation_residual(const Problem& problem, const SplitComplexMatrix& x, double tau) {
  require_shape(x, problem.m(), problem.n(), "equation_residual: candidate X");
  const Coefficients k = problem.coefficients(tau);
  return frobenius_norm(complex_matmul(x, k.f) - complex_matmul(k.a, conjugate(x)) - k.c);
}

double solution_error(const Problem& problem, const SplitComplexMatrix& x, double tau) {
  require_shape(x, problem.m(), problem.n(), "solution_error: candidate X");
  return frobenius_norm(x - problem.solution(tau));
}

std::optional<Problem> find_problem(std::string_view name) {
  if (name == "example1") return example1();
  if (name == "example2") return example2();
  return std::nullopt;
}

std::vector<std::string> problem_names() { return {"example1", "example2"}; }

InitialState random_initial_state(const Problem& problem, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  const auto draw = [&engine] {
    // 53 high bits -> [0, 1)
    const double unit = static_cast<double>(engine() >> 11) * 0x1.0p-53;
    return kInitialLow + (kInitialHigh - kInitialLow) * unit;
  };
  linalg::RealMatrix re(problem.m(), problem.n());
  linalg::RealMatrix im(problem.m(), problem.n());
  for (Eigen::Index k = 0; k < re.size(); ++k) re.data()[k] = draw();
  for (Eigen::Index k = 0; k < im.size(); ++k) im.data()[k] = draw();
  return {SplitComplexMatrix(std::move(re), std::move(im)), seed};
}

}  // namespace znd::problem
