#include "zndsolve/assembly.hpp"
#include "zndsolve/errors.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace znd::assembly;
using znd::linalg::RealVector;
using znd::testing::random_complex;

namespace {

double max_abs_diff(const RealVector& a, const std::vector<double>& b) {
  EXPECT_EQ(static_cast<std::size_t>(a.size()), b.size());
  double worst = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a(i) - b[static_cast<std::size_t>(i)]));
  }
  return worst;
}

}  // namespace

TEST(StateVector, LayoutsCoincide) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    const auto x = random_complex(rng, 1 + trial % 4, 1 + trial % 3);
    const auto state = StateVector::from_matrix(x);
    const auto z = znd::linalg::vec(x);
    RealVector complex_layout(2 * z.rows());
    complex_layout << z.re(), z.im();
    EXPECT_EQ(state.values(), complex_layout);
    EXPECT_EQ(state.to_matrix(x.rows(), x.cols()), x);
  }
}

TEST(StateVector, WrongLengthIsShapeError) {
  EXPECT_THROW(StateVector(RealVector::Zero(7)).to_matrix(2, 2), znd::ShapeError);
}

TEST(ComplexGain, RealPartMustBePositive) {
  EXPECT_NO_THROW(validate(ComplexGain{10, 20}));
  EXPECT_THROW(validate(ComplexGain{0, 1}), znd::ValidationError);
  EXPECT_THROW(validate(ComplexGain{-1, 0}), znd::ValidationError);
}

TEST(AssembleDznd1, DimensionsForExample1) {
  const auto p = znd::problem::example1();
  const auto sys = assemble_dznd1(p, StateVector::from_matrix(p.solution(0)), {10, 0}, 0.0);
  EXPECT_EQ(sys.w.rows(), 12);
  EXPECT_EQ(sys.w.cols(), 12);
  EXPECT_EQ(sys.b.size(), 12);
  EXPECT_FALSE(sys.w_dot.has_value());
}

TEST(AssembleDznd1, RightHandSideVanishesAtConstantSolution) {
  const auto p = znd::problem::example1();
  const auto sys = assemble_dznd1(p, StateVector::from_matrix(p.solution(0)), {10, 0}, 0.0);
  EXPECT_LE(sys.b.cwiseAbs().maxCoeff(), 1e-13);
}

// w * [vec dX_re; vec dX_im] - b against the complex-arithmetic derivative equation.
TEST(AssembleDznd1, MatchesDirectComplexOracleOnExample2) {
  const auto p = znd::problem::example2();
  std::mt19937_64 rng(2);
  for (const std::complex<double> gamma : {std::complex<double>(10, 0), {10, 20}, {3, -7}}) {
    const auto x = random_complex(rng, 2, 2);
    const auto dx = random_complex(rng, 2, 2);
    const auto sys = assemble_dznd1(p, StateVector::from_matrix(x), {gamma.real(), gamma.imag()}, 0.5);
    const RealVector got = sys.w * StateVector::from_matrix(dx).values() - sys.b;
    EXPECT_LE(max_abs_diff(got, znd::testing::derivative_equation_lhs(p, x, dx, gamma, 0.5)), 1e-10);
  }
}

TEST(AssembleDznd1, MatchesDirectComplexOracleOnRandomProblems) {
  std::mt19937_64 rng(3);
  for (int m = 1; m <= 3; ++m)
    for (int n = 1; n <= 3; ++n) {
      const auto p = znd::testing::random_problem(rng, m, n);
      const auto x = random_complex(rng, m, n);
      const auto dx = random_complex(rng, m, n);
      const std::complex<double> gamma(2.5, -1.5);
      const auto sys = assemble_dznd1(p, StateVector::from_matrix(x), {gamma.real(), gamma.imag()}, 0.7);
      const RealVector got = sys.w * StateVector::from_matrix(dx).values() - sys.b;
      EXPECT_LE(max_abs_diff(got, znd::testing::derivative_equation_lhs(p, x, dx, gamma, 0.7)), 1e-10)
          << m << "x" << n;
    }
}

TEST(AssembleDznd1, RealGainMatchesRealScalarReference) {
  const auto p = znd::problem::example2();
  std::mt19937_64 rng(4);
  const auto x = random_complex(rng, 2, 2);
  const auto state = StateVector::from_matrix(x);
  const auto sys = assemble_dznd1(p, state, {7, 0}, 1.1);

  // b = drift - 7 * error with a real scalar
  const auto k = p.coefficients(1.1);
  const auto dk = p.derivatives(1.1);
  using znd::linalg::complex_matmul;
  using znd::linalg::conjugate;
  const auto drift = znd::linalg::vec(dk.c + complex_matmul(dk.a, conjugate(x)) - complex_matmul(x, dk.f));
  const auto err = znd::linalg::vec(complex_matmul(x, k.f) - complex_matmul(k.a, conjugate(x)) - k.c);
  RealVector expect(8);
  expect << drift.re() - 7 * err.re(), drift.im() - 7 * err.im();
  EXPECT_EQ(sys.b, expect);
}

TEST(AssembleDznd2, SatisfiedByTheoreticalSolution) {
  const auto p = znd::problem::example2();
  for (double tau : {0.0, 3.0, 10.0}) {
    const auto sys = assemble_dznd2(p, tau);
    const RealVector x = StateVector::from_matrix(p.solution(tau)).values();
    EXPECT_LE((sys.w * x - sys.b).cwiseAbs().maxCoeff(), 1e-10) << tau;
  }
}

TEST(AssembleDznd2, ConstantProblemHasZeroRates) {
  const auto sys = assemble_dznd2(znd::problem::example1(), 2.0);
  ASSERT_TRUE(sys.w_dot && sys.b_dot);
  EXPECT_EQ(sys.w_dot->cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(sys.b_dot->cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(sys.w.rows(), 12);
}

TEST(AssembleDznd2, RateMatchesFiniteDifference) {
  const auto p = znd::problem::example2();
  constexpr double h = 1e-6;
  const auto sys = assemble_dznd2(p, 1.0);
  const auto hi = assemble_dznd2(p, 1.0 + h), lo = assemble_dznd2(p, 1.0 - h);
  EXPECT_LE(((hi.w - lo.w) / (2 * h) - *sys.w_dot).cwiseAbs().maxCoeff(), 1e-5);
  EXPECT_LE(((hi.b - lo.b) / (2 * h) - *sys.b_dot).cwiseAbs().maxCoeff(), 1e-5);
}

TEST(AssembleDznd2, ResidualEqualsDirectEquationError) {
  std::mt19937_64 rng(5);
  for (int m = 1; m <= 3; ++m)
    for (int n = 1; n <= 3; ++n) {
      const auto p = znd::testing::random_problem(rng, m, n);
      const auto x = random_complex(rng, m, n);
      const auto sys = assemble_dznd2(p, 0.4);
      const RealVector got = sys.w * StateVector::from_matrix(x).values() - sys.b;
      EXPECT_LE(max_abs_diff(got, znd::testing::equation_error_stacked(p, x, 0.4)), 1e-10);
    }
}

// Both models share the same real embedding of X -> X F - A conj(X).
TEST(Assembly, ModelMatricesCoincide) {
  const auto p = znd::problem::example2();
  std::mt19937_64 rng(6);
  const auto state = StateVector::from_matrix(random_complex(rng, 2, 2));
  EXPECT_LE((assemble_dznd1(p, state, {10, 0}, 2.2).w - assemble_dznd2(p, 2.2).w).cwiseAbs().maxCoeff(),
            1e-15);
}

TEST(ZeroStability, EulerForwardHasSingleUnitRoot) {
  const auto roots = zero_stability_roots();
  ASSERT_EQ(roots.size(), 1u);
  EXPECT_NEAR(roots[0].real(), 1.0, 1e-15);
  EXPECT_EQ(roots[0].imag(), 0.0);
  EXPECT_TRUE(is_zero_stable(roots));
}

TEST(ZeroStability, DoubleUnitRootIsUnstable) {
  EXPECT_FALSE(is_zero_stable(CharacteristicPolynomial{1, -2, 1}));
}

TEST(ZeroStability, RootInsideDiskIsStable) {
  EXPECT_TRUE(is_zero_stable(CharacteristicPolynomial{-0.5, 1}));
}

TEST(ZeroStability, MoreCases) {
  // d^2 - 1: simple roots at +-1
  EXPECT_TRUE(is_zero_stable(CharacteristicPolynomial{-1, 0, 1}));
  // d - 2: outside the disk
  EXPECT_FALSE(is_zero_stable(CharacteristicPolynomial{-2, 1}));
  // d^2 + 1: simple roots at +-i
  EXPECT_TRUE(is_zero_stable(CharacteristicPolynomial{1, 0, 1}));
  // (d - 1)(d - 0.5) with a trailing zero coefficient
  EXPECT_TRUE(is_zero_stable(CharacteristicPolynomial{0.5, -1.5, 1, 0}));
}
