#include "zndsolve/problem.hpp"

#include <cmath>

namespace znd::problem {

using linalg::RealMatrix;

namespace {

RealMatrix rows2(double a, double b, double c, double d) {
  RealMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace

Problem example1() {
  RealMatrix f_re(2, 2), f_im(2, 2);
  f_re << 0, 0,
          1, -1;
  f_im << 2, 1,
          0, 1;

  RealMatrix a_re(3, 3), a_im(3, 3);
  a_re << 1, -2, -1,
          0, 0, 0,
          0, -1, 1;
  a_im << 0, -1, 1,
          0, 1, 0,
          0, 0, -1;

  RealMatrix c_re(3, 2), c_im(3, 2);
  c_re << -1, 1,
          0, 0,
          0, 1;
  c_im << 1, 0,
          0, 1,
          -1, -2;

  RealMatrix x_re(3, 2), x_im(3, 2);
  x_re << 21.0 / 40.0, -9.0 / 8.0,
          1.0 / 2.0, 3.0 / 4.0,
          -6.0 / 5.0, -13.0 / 20.0;
  x_im << -33.0 / 40.0, 5.0 / 8.0,
          1.0 / 4.0, -1.0 / 2.0,
          21.0 / 20.0, 9.0 / 5.0;

  const Coefficients constant{SplitComplexMatrix(f_re, f_im), SplitComplexMatrix(a_re, a_im),
                              SplitComplexMatrix(c_re, c_im)};
  const Coefficients zero{SplitComplexMatrix::zero(2, 2), SplitComplexMatrix::zero(3, 3),
                          SplitComplexMatrix::zero(3, 2)};
  const SplitComplexMatrix solution(x_re, x_im);

  return Problem(
      "example1", 3, 2, [constant](double) { return constant; }, [zero](double) { return zero; },
      [solution](double) { return solution; });
}

Problem example2() {
  auto coefficients = [](double t) {
    const double s = std::sin(t), c = std::cos(t), s2 = std::sin(2 * t);
    SplitComplexMatrix f(rows2(6 + s, c, c, 4 + s), rows2(c, s, s, c));
    SplitComplexMatrix a(rows2(c, s, -s, c), rows2(s, c, c, -s));
    SplitComplexMatrix cm(rows2(2 * c * c - 2 * c * s + 6 * s, 4 * c + 2 * c * s - 2 * c * c,
                                -2 * s2 - 6 * c + 2, 2 * s2 - 4 * s - 2),
                          rows2(2 * c * c + 2 * c * s + 6 * s, 4 * c + 2 * c * s + 2 * c * c,
                                -2 * s2 - 6 * c - 2, -2 * s2 - 4 * s - 2));
    return Coefficients{std::move(f), std::move(a), std::move(cm)};
  };

  // Term-wise derivatives; d(c^2)/dt = -sin 2t, d(cs)/dt = cos 2t.
  auto derivatives = [](double t) {
    const double s = std::sin(t), c = std::cos(t);
    const double s2 = std::sin(2 * t), c2 = std::cos(2 * t);
    SplitComplexMatrix f(rows2(c, -s, -s, c), rows2(-s, c, c, -s));
    SplitComplexMatrix a(rows2(-s, c, -c, -s), rows2(c, -s, -s, -c));
    SplitComplexMatrix cm(rows2(-2 * s2 - 2 * c2 + 6 * c, -4 * s + 2 * c2 + 2 * s2,
                                -4 * c2 + 6 * s, 4 * c2 - 4 * c),
                          rows2(-2 * s2 + 2 * c2 + 6 * c, -4 * s + 2 * c2 - 2 * s2,
                                -4 * c2 + 6 * s, -4 * c2 - 4 * c));
    return Coefficients{std::move(f), std::move(a), std::move(cm)};
  };

  auto solution = [](double t) {
    const double s = std::sin(t), c = std::cos(t);
    const RealMatrix part = rows2(s, c, -c, -s);
    return SplitComplexMatrix(part, part);
  };

  return Problem("example2", 2, 2, coefficients, derivatives, solution);
}

}  // namespace znd::problem
