#include "zndsolve/linalg.hpp"

#include "zndsolve/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace znd::linalg {

namespace {

void require_same_shape(const RealMatrix& a, const RealMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError(std::string(what) + ": " + shape_string(a.rows(), a.cols()) + " vs " +
                     shape_string(b.rows(), b.cols()));
  }
}

}  // namespace

std::string shape_string(Eigen::Index rows, Eigen::Index cols) {
  return std::to_string(rows) + "x" + std::to_string(cols);
}

SplitComplexMatrix::SplitComplexMatrix(RealMatrix re, RealMatrix im)
    : re_(std::move(re)), im_(std::move(im)) {
  require_same_shape(re_, im_, "split-complex parts");
}

SplitComplexMatrix SplitComplexMatrix::from_real(RealMatrix re) {
  RealMatrix im = RealMatrix::Zero(re.rows(), re.cols());
  return {std::move(re), std::move(im)};
}

SplitComplexMatrix SplitComplexMatrix::zero(Eigen::Index rows, Eigen::Index cols) {
  return {RealMatrix::Zero(rows, cols), RealMatrix::Zero(rows, cols)};
}

SplitComplexMatrix SplitComplexMatrix::identity(Eigen::Index size) {
  return from_real(RealMatrix::Identity(size, size));
}

SplitComplexMatrix SplitComplexMatrix::operator+(const SplitComplexMatrix& other) const {
  require_same_shape(re_, other.re_, "complex add");
  return {re_ + other.re_, im_ + other.im_};
}

SplitComplexMatrix SplitComplexMatrix::operator-(const SplitComplexMatrix& other) const {
  require_same_shape(re_, other.re_, "complex subtract");
  return {re_ - other.re_, im_ - other.im_};
}

SplitComplexMatrix SplitComplexMatrix::operator-() const { return {-re_, -im_}; }

bool SplitComplexMatrix::operator==(const SplitComplexMatrix& other) const {
  return rows() == other.rows() && cols() == other.cols() && re_ == other.re_ &&
         im_ == other.im_;
}

SplitComplexMatrix complex_matmul(const SplitComplexMatrix& a, const SplitComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw ShapeError("complex_matmul: " + shape_string(a.rows(), a.cols()) + " times " +
                     shape_string(b.rows(), b.cols()));
  }
  return {a.re() * b.re() - a.im() * b.im(), a.re() * b.im() + a.im() * b.re()};
}

SplitComplexMatrix conjugate(const SplitComplexMatrix& m) { return {m.re(), -m.im()}; }

SplitComplexMatrix transpose(const SplitComplexMatrix& m) {
  return {m.re().transpose(), m.im().transpose()};
}

SplitComplexMatrix hermitian_transpose(const SplitComplexMatrix& m) {
  return {m.re().transpose(), -m.im().transpose()};
}

RealVector vec(const RealMatrix& m) {
  return Eigen::Map<const RealVector>(m.data(), m.size());
}

SplitComplexMatrix vec(const SplitComplexMatrix& m) {
  return {vec(m.re()), vec(m.im())};
}

RealMatrix unvec(const RealVector& v, Eigen::Index rows, Eigen::Index cols) {
  if (rows < 0 || cols < 0 || v.size() != rows * cols) {
    throw ShapeError("unvec: length " + std::to_string(v.size()) + " cannot fill " +
                     shape_string(rows, cols));
  }
  return Eigen::Map<const RealMatrix>(v.data(), rows, cols);
}

SplitComplexMatrix unvec(const SplitComplexMatrix& v, Eigen::Index rows, Eigen::Index cols) {
  if (v.cols() != 1) {
    throw ShapeError("unvec: expected a column, got " + shape_string(v.rows(), v.cols()));
  }
  return {unvec(RealVector(v.re()), rows, cols), unvec(RealVector(v.im()), rows, cols)};
}

RealMatrix kron(const RealMatrix& a, const RealMatrix& b) {
  RealMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

SplitComplexMatrix kron(const SplitComplexMatrix& a, const SplitComplexMatrix& b) {
  return {kron(a.re(), b.re()) - kron(a.im(), b.im()),
          kron(a.re(), b.im()) + kron(a.im(), b.re())};
}

double frobenius_norm(const SplitComplexMatrix& m) {
  // squaredNorm keeps NaN/Inf visible instead of rescaling them away.
  return std::sqrt(m.re().squaredNorm() + m.im().squaredNorm());
}

double default_pinv_tolerance(const RealMatrix& w) {
  return std::numeric_limits<double>::epsilon() *
         static_cast<double>(std::max(w.rows(), w.cols()));
}

RealMatrix pinv(const RealMatrix& w, std::optional<double> relative_tolerance) {
  const double tol = relative_tolerance.value_or(default_pinv_tolerance(w));
  if (!(tol >= 0.0)) {
    throw NumericError("pinv: tolerance must be nonnegative");
  }
  if (w.size() == 0) {
    return RealMatrix::Zero(w.cols(), w.rows());
  }
  if (!w.allFinite()) {
    throw NumericError("pinv: input " + shape_string(w.rows(), w.cols()) +
                       " has non-finite entries");
  }

  Eigen::JacobiSVD<RealMatrix> svd(w, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "pinv: SVD of " << shape_string(w.rows(), w.cols())
        << " failed; max |entry| = " << w.cwiseAbs().maxCoeff();
    throw NumericError(msg.str());
  }

  const RealVector& sigma = svd.singularValues();
  const double cutoff = tol * (sigma.size() > 0 ? sigma(0) : 0.0);
  RealVector inverted = RealVector::Zero(sigma.size());
  for (Eigen::Index k = 0; k < sigma.size(); ++k) {
    if (sigma(k) > cutoff) inverted(k) = 1.0 / sigma(k);
  }
  return svd.matrixV() * inverted.asDiagonal() * svd.matrixU().transpose();
}

}  // namespace znd::linalg
