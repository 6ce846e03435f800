#include "zndsolve/experiment.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <sstream>

namespace znd::experiment {

using linalg::RealMatrix;
using linalg::SplitComplexMatrix;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream detail;
};

RealMatrix uniform_matrix(std::mt19937_64& rng, Eigen::Index r, Eigen::Index c) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  RealMatrix m(r, c);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = dist(rng);
  return m;
}

SplitComplexMatrix uniform_complex(std::mt19937_64& rng, Eigen::Index r, Eigen::Index c) {
  RealMatrix re = uniform_matrix(rng, r, c);
  return {re, uniform_matrix(rng, r, c)};
}

double max_abs(const SplitComplexMatrix& m) {
  return std::max(m.re().cwiseAbs().maxCoeff(), m.im().cwiseAbs().maxCoeff());
}

Check kron_vec_identity() {
  Check c;
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> dim(1, 3);
  double worst = 0, worst_real = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const int m = dim(rng), n = dim(rng), s = dim(rng), t = dim(rng);
    const auto a = uniform_complex(rng, m, n);
    const auto x = uniform_complex(rng, n, s);
    const auto b = uniform_complex(rng, s, t);
    const auto lhs = linalg::vec(linalg::complex_matmul(linalg::complex_matmul(a, x), b));
    const auto op = linalg::kron(linalg::conjugate(linalg::hermitian_transpose(b)), a);
    worst = std::max(worst, max_abs(lhs - linalg::complex_matmul(op, linalg::vec(x))));

    const RealMatrix ar = a.re(), xr = x.re(), br = b.re();
    const linalg::RealVector real_lhs = linalg::vec(RealMatrix(ar * xr * br));
    const linalg::RealVector real_rhs = linalg::kron(RealMatrix(br.transpose()), ar) * linalg::vec(xr);
    worst_real = std::max(worst_real, (real_lhs - real_rhs).cwiseAbs().maxCoeff());
  }
  c.ok = worst <= 1e-12 && worst_real <= 1e-12;
  c.detail << "500 random triples, complex max dev " << worst << ", real max dev " << worst_real;
  return c;
}

Check penrose_conditions() {
  Check c;
  std::mt19937_64 rng(7);
  double worst = 0;
  for (int size = 1; size <= 12; ++size) {
    for (int rank_deficit : {0, size / 2}) {
      RealMatrix w = uniform_matrix(rng, size, size);
      if (rank_deficit > 0) {
        const int rank = size - rank_deficit;
        w = uniform_matrix(rng, size, rank) * uniform_matrix(rng, rank, size);
      }
      const RealMatrix p = linalg::pinv(w);
      worst = std::max({worst, (w * p * w - w).cwiseAbs().maxCoeff(),
                        (p * w * p - p).cwiseAbs().maxCoeff(),
                        (w * p - (w * p).transpose()).cwiseAbs().maxCoeff(),
                        (p * w - (p * w).transpose()).cwiseAbs().maxCoeff()});
    }
  }
  c.ok = worst <= 1e-10;
  c.detail << "sizes 1..12 full and reduced rank, max violation " << worst;
  return c;
}

Check theoretical_solutions() {
  Check c;
  for (const auto& name : problem::problem_names()) {
    const auto p = *problem::find_problem(name);
    double worst = 0;
    for (int i = 0; i <= 100; ++i) {
      const double tau = 0.1 * i;
      worst = std::max(worst, problem::equation_residual(p, p.solution(tau), tau));
    }
    c.ok = c.ok && worst <= 1e-10;
    c.detail << name << " max residual " << worst << "; ";
  }
  return c;
}

Check derivative_consistency() {
  Check c;
  constexpr double h = 1e-6;
  for (const auto& name : problem::problem_names()) {
    const auto p = *problem::find_problem(name);
    double worst = 0;
    for (int i = 0; i <= 20; ++i) {
      const double tau = 0.5 * i + 0.25;
      const auto hi = p.coefficients(tau + h);
      const auto lo = p.coefficients(tau - h);
      const auto d = p.derivatives(tau);
      const auto dev = [&](const SplitComplexMatrix& a, const SplitComplexMatrix& b,
                           const SplitComplexMatrix& da) {
        const SplitComplexMatrix fd((a.re() - b.re()) / (2 * h), (a.im() - b.im()) / (2 * h));
        return max_abs(fd - da);
      };
      worst = std::max({worst, dev(hi.f, lo.f, d.f), dev(hi.a, lo.a, d.a), dev(hi.c, lo.c, d.c)});
    }
    c.ok = c.ok && worst <= 1e-5;
    c.detail << name << " max deviation " << worst << "; ";
  }
  return c;
}

Check real_field_at_solution() {
  Check c;
  const auto p = problem::example2();
  double worst = 0;
  for (double tau : {0.0, 3.0, 10.0}) {
    const auto sys = assembly::assemble_dznd2(p, tau);
    const auto x = assembly::StateVector::from_matrix(p.solution(tau));
    worst = std::max(worst, (sys.w * x.values() - sys.b).cwiseAbs().maxCoeff());
  }
  c.ok = worst <= 1e-10;
  c.detail << "example2 |W_R x* - B_R| max " << worst;
  return c;
}

Check zero_stability() {
  Check c;
  const auto roots = assembly::zero_stability_roots();
  c.detail << "Euler-forward roots {";
  for (std::size_t i = 0; i < roots.size(); ++i) {
    c.detail << (i ? ", " : "") << format_double(roots[i].real());
    if (roots[i].imag() != 0.0) c.detail << (roots[i].imag() < 0 ? "-" : "+") << std::abs(roots[i].imag()) << "i";
  }
  const bool stable = assembly::is_zero_stable(roots);
  c.detail << "}, 0-stable = " << (stable ? "true" : "false");
  const bool double_root = assembly::is_zero_stable(assembly::CharacteristicPolynomial{1, -2, 1});
  const bool inside = assembly::is_zero_stable(assembly::CharacteristicPolynomial{-0.5, 1});
  c.detail << "; (d-1)^2 -> " << (double_root ? "true" : "false") << ", d-0.5 -> "
           << (inside ? "true" : "false");
  c.ok = roots.size() == 1 && std::abs(roots[0] - 1.0) < 1e-12 && stable && !double_root && inside;
  return c;
}

Check scalar_modulus_table() {
  Check c;
  struct Row {
    ComplexGain gain;
    double eps;
    double expected;
  };
  const Row rows[] = {{{10, 0}, 0.1, 0.0},
                      {{10, 0}, 0.001, 0.99},
                      {{10, 20}, 0.1, 2.0},
                      {{10, -20}, 0.1, 2.0},
                      {{10, 20}, 0.001, std::hypot(0.99, 0.02)},
                      {{10, -20}, 0.001, std::hypot(0.99, 0.02)}};
  for (const auto& r : rows) {
    const double got = solver::scalar_error_modulus(r.gain, r.eps);
    c.ok = c.ok && std::abs(got - r.expected) <= 1e-12;
    c.detail << "(gamma=" << format_gain(r.gain) << ", eps=" << format_double(r.eps) << ") -> "
             << format_double(got) << "; ";
  }
  return c;
}

}  // namespace

bool run_verification(const std::function<void(const std::string&)>& emit) {
  const std::pair<const char*, Check (*)()> groups[] = {
      {"kron-vec identity", kron_vec_identity},
      {"penrose conditions", penrose_conditions},
      {"theoretical solutions", theoretical_solutions},
      {"derivative consistency", derivative_consistency},
      {"real-field system at X*", real_field_at_solution},
      {"zero-stability", zero_stability},
      {"scalar error modulus", scalar_modulus_table},
  };
  bool all = true;
  for (const auto& [name, fn] : groups) {
    Check c = fn();
    all = all && c.ok;
    emit(std::string(c.ok ? "PASS " : "FAIL ") + name + ": " + c.detail.str());
  }
  return all;
}

}  // namespace znd::experiment
