#include "zndsolve/errors.hpp"
#include "zndsolve/problem.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>

using namespace znd::problem;
using znd::linalg::RealMatrix;

namespace {

double max_fd_deviation(const Problem& p, double tau, double h = 1e-6) {
  const auto hi = p.coefficients(tau + h);
  const auto lo = p.coefficients(tau - h);
  const auto d = p.derivatives(tau);
  double worst = 0;
  const auto check = [&](const SplitComplexMatrix& a, const SplitComplexMatrix& b,
                         const SplitComplexMatrix& da) {
    worst = std::max(worst, ((a.re() - b.re()) / (2 * h) - da.re()).cwiseAbs().maxCoeff());
    worst = std::max(worst, ((a.im() - b.im()) / (2 * h) - da.im()).cwiseAbs().maxCoeff());
  };
  check(hi.f, lo.f, d.f);
  check(hi.a, lo.a, d.a);
  check(hi.c, lo.c, d.c);
  return worst;
}

}  // namespace

TEST(Example1, CoefficientsAsPrinted) {
  const auto p = example1();
  EXPECT_EQ(p.m(), 3);
  EXPECT_EQ(p.n(), 2);
  const auto k = p.coefficients(0.0);
  EXPECT_EQ(k.f.re()(1, 0), 1.0);
  EXPECT_EQ(k.f.re()(1, 1), -1.0);
  EXPECT_EQ(k.a.im()(2, 2), -1.0);
  EXPECT_EQ(k.c.im()(2, 1), -2.0);
}

TEST(Example1, DerivativesVanish) {
  const auto p = example1();
  for (double tau : {0.0, 1.7, 9.9}) {
    const auto d = p.derivatives(tau);
    EXPECT_EQ(znd::linalg::frobenius_norm(d.f) + znd::linalg::frobenius_norm(d.a) +
                  znd::linalg::frobenius_norm(d.c),
              0.0);
  }
}

TEST(Example1, SolutionEntriesAreTheRationals) {
  const auto x = example1().solution(0.0);
  EXPECT_EQ(x.re()(0, 0), 21.0 / 40.0);
  EXPECT_EQ(x.re()(2, 1), -13.0 / 20.0);
  EXPECT_EQ(x.im()(0, 0), -33.0 / 40.0);
  EXPECT_EQ(x.im()(2, 1), 9.0 / 5.0);
}

TEST(Example1, TheoreticalSolutionResidual) {
  const auto p = example1();
  EXPECT_LE(equation_residual(p, p.solution(0.0), 0.0), 1e-12);
  EXPECT_LE(equation_residual(p, p.solution(7.3), 7.3), 1e-12);
}

TEST(Example1, ZeroCandidateGivesNormOfC) {
  const auto p = example1();
  const double r = equation_residual(p, SplitComplexMatrix::zero(3, 2), 0.0);
  // ||C||_F^2 = 1+1+1 (re) + 1+1+1+4 (im) = 10
  EXPECT_DOUBLE_EQ(r, std::sqrt(10.0));
}

TEST(Example2, SolutionAtZero) {
  const auto x = example2().solution(0.0);
  const RealMatrix expect = (RealMatrix(2, 2) << 0, 1, -1, 0).finished();
  EXPECT_EQ(x.re(), expect);
  EXPECT_EQ(x.im(), expect);
}

TEST(Example2, CoefficientEntryAtZero) {
  EXPECT_DOUBLE_EQ(example2().coefficients(0.0).c.re()(1, 0), -4.0);
}

TEST(Example2, TheoreticalSolutionResidualOnIntegerTimes) {
  const auto p = example2();
  for (int t = 0; t <= 10; ++t) {
    EXPECT_LE(equation_residual(p, p.solution(t), t), 1e-10) << "tau=" << t;
  }
}

TEST(Example2, DerivativesMatchFiniteDifferences) {
  const auto p = example2();
  for (double tau : {0.5, 2.0, 9.0}) EXPECT_LE(max_fd_deviation(p, tau), 1e-5) << tau;
}

TEST(Builtins, SolutionsSatisfyEquationOnFineGrid) {
  for (const auto& name : problem_names()) {
    const auto p = *find_problem(name);
    for (int i = 0; i <= 100; ++i) {
      const double tau = 0.1 * i;
      ASSERT_LE(equation_residual(p, p.solution(tau), tau), 1e-10) << name << " tau=" << tau;
    }
  }
}

TEST(Builtins, DerivativesConsistentOnGrid) {
  for (const auto& name : problem_names()) {
    const auto p = *find_problem(name);
    for (int i = 0; i <= 40; ++i) EXPECT_LE(max_fd_deviation(p, 0.25 * i + 0.01), 1e-5) << name;
  }
}

TEST(Registry, UnknownNameIsEmpty) {
  EXPECT_FALSE(find_problem("example3").has_value());
  EXPECT_TRUE(find_problem("example1").has_value());
}

TEST(SolutionError, ZeroAtSolutionAndSingleEntryPerturbation) {
  const auto p = example2();
  const auto x = p.solution(1.25);
  EXPECT_EQ(solution_error(p, x, 1.25), 0.0);
  RealMatrix re = x.re();
  re(1, 0) += 1e-3;
  EXPECT_NEAR(solution_error(p, SplitComplexMatrix(re, x.im()), 1.25), 1e-3, 1e-15);
}

TEST(SolutionError, MissingSolutionIsCapabilityError) {
  std::mt19937_64 rng(1);
  const auto p = znd::testing::random_problem(rng, 2, 2);
  EXPECT_FALSE(p.has_solution());
  EXPECT_THROW(solution_error(p, SplitComplexMatrix::zero(2, 2), 0.0), znd::CapabilityError);
}

TEST(EquationResidual, ShapeMismatch) {
  EXPECT_THROW(equation_residual(example1(), SplitComplexMatrix::zero(2, 2), 0.0), znd::ShapeError);
}

TEST(Problem, ProviderShapeIsChecked) {
  const Problem bad(
      "bad", 2, 2,
      [](double) {
        return Coefficients{SplitComplexMatrix::zero(2, 2), SplitComplexMatrix::zero(3, 3),
                            SplitComplexMatrix::zero(2, 2)};
      },
      [](double) {
        return Coefficients{SplitComplexMatrix::zero(2, 2), SplitComplexMatrix::zero(2, 2),
                            SplitComplexMatrix::zero(2, 2)};
      });
  EXPECT_THROW(bad.coefficients(0.0), znd::ShapeError);
  EXPECT_NO_THROW(bad.derivatives(0.0));
}

TEST(FiniteDifferenceFallback, ApproximatesAnalyticDerivatives) {
  const auto p = example2();
  const auto fd = finite_difference_derivatives([p](double t) { return p.coefficients(t); });
  for (double tau : {0.3, 4.4}) {
    const auto a = fd(tau);
    const auto b = p.derivatives(tau);
    EXPECT_LE(znd::linalg::frobenius_norm(a.c - b.c), 1e-6);
    EXPECT_LE(znd::linalg::frobenius_norm(a.f - b.f), 1e-6);
  }
}

TEST(RandomInitialState, DeterministicPerSeed) {
  const auto p = example2();
  const auto a = random_initial_state(p, 42);
  const auto b = random_initial_state(p, 42);
  EXPECT_EQ(a.x0, b.x0);
  EXPECT_EQ(std::memcmp(a.x0.re().data(), b.x0.re().data(), 4 * sizeof(double)), 0);
  EXPECT_FALSE(random_initial_state(p, 43).x0 == a.x0);
}

TEST(RandomInitialState, EntriesWithinRange) {
  const auto p = example1();
  std::size_t count = 0;
  for (std::uint64_t seed = 0; count < 10000; ++seed) {
    const auto x = random_initial_state(p, seed).x0;
    for (Eigen::Index i = 0; i < x.re().size(); ++i) {
      ASSERT_GE(x.re().data()[i], -5.0);
      ASSERT_LE(x.re().data()[i], 5.0);
      ASSERT_GE(x.im().data()[i], -5.0);
      ASSERT_LE(x.im().data()[i], 5.0);
      count += 2;
    }
  }
}
