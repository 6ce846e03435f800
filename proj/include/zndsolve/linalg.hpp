#pragma once

// Dense real and split-complex matrix kernel.
//
// Storage is column-major throughout (Eigen's default), which is also the
// traversal order of vec(): entry (s, t) of an r x c matrix lands at index
// t * r + s of its vectorization.

#include <Eigen/Dense>

#include <optional>
#include <string>

namespace znd::linalg {

using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Complex matrix held as two real matrices, M = re + i*im.
class SplitComplexMatrix {
 public:
  SplitComplexMatrix() = default;
  SplitComplexMatrix(RealMatrix re, RealMatrix im);

  /// Real matrix with a zero imaginary part.
  static SplitComplexMatrix from_real(RealMatrix re);
  static SplitComplexMatrix zero(Eigen::Index rows, Eigen::Index cols);
  static SplitComplexMatrix identity(Eigen::Index size);

  const RealMatrix& re() const { return re_; }
  const RealMatrix& im() const { return im_; }
  Eigen::Index rows() const { return re_.rows(); }
  Eigen::Index cols() const { return re_.cols(); }

  bool all_finite() const { return re_.allFinite() && im_.allFinite(); }

  SplitComplexMatrix operator+(const SplitComplexMatrix& other) const;
  SplitComplexMatrix operator-(const SplitComplexMatrix& other) const;
  SplitComplexMatrix operator-() const;
  bool operator==(const SplitComplexMatrix& other) const;

 private:
  RealMatrix re_;
  RealMatrix im_;
};

std::string shape_string(Eigen::Index rows, Eigen::Index cols);

SplitComplexMatrix complex_matmul(const SplitComplexMatrix& a, const SplitComplexMatrix& b);
SplitComplexMatrix conjugate(const SplitComplexMatrix& m);
SplitComplexMatrix transpose(const SplitComplexMatrix& m);
SplitComplexMatrix hermitian_transpose(const SplitComplexMatrix& m);

/// Column-stacking; the result has cols() == 1.
SplitComplexMatrix vec(const SplitComplexMatrix& m);
RealVector vec(const RealMatrix& m);

/// Inverse of vec. Throws ShapeError unless v is a column of rows*cols entries.
SplitComplexMatrix unvec(const SplitComplexMatrix& v, Eigen::Index rows, Eigen::Index cols);
RealMatrix unvec(const RealVector& v, Eigen::Index rows, Eigen::Index cols);

RealMatrix kron(const RealMatrix& a, const RealMatrix& b);
SplitComplexMatrix kron(const SplitComplexMatrix& a, const SplitComplexMatrix& b);

/// Non-finite entries propagate into the result.
double frobenius_norm(const SplitComplexMatrix& m);

/// eps * max(rows, cols); singular values at or below this fraction of the
/// largest one are dropped by pinv().
double default_pinv_tolerance(const RealMatrix& w);

/// Moore-Penrose pseudo-inverse via SVD. `relative_tolerance` is a fraction
/// of the largest singular value; std::nullopt selects the default.
RealMatrix pinv(const RealMatrix& w, std::optional<double> relative_tolerance = std::nullopt);

}  // namespace znd::linalg
