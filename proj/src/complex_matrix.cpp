#include "dyncorr/complex_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "dyncorr/errors.hpp"
#include "dyncorr/tolerances.hpp"

namespace dyncorr {

Tolerances Tolerances::strict() {
  Tolerances t;
  t.hermiticity = 1e-11;
  t.trace_one = 1e-10;
  t.unitarity = 1e-11;
  t.kraus_completeness = 1e-10;
  t.eig_reconstruction = 1e-9;
  t.choi_marginal = 1e-10;
  t.purity = 1e-10;
  t.uncorrelated_mi = 1e-9;
  t.reshuffle_unitarity = 1e-9;
  return t;
}

const Tolerances& Tolerances::active() {
  static const Tolerances instance = [] {
    const char* profile = std::getenv("DYNCORR_TOLERANCE_PROFILE");
    if (profile && std::string(profile) == "strict") return Tolerances::strict();
    return Tolerances::defaults();
  }();
  return instance;
}

ComplexMatrix::ComplexMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows <= 0 || cols <= 0) throw BadDimension("matrix dimensions must be positive");
  data_.assign(static_cast<size_t>(rows) * cols, Complex(0.0, 0.0));
}

ComplexMatrix::ComplexMatrix(int rows, int cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (rows <= 0 || cols <= 0) throw BadDimension("matrix dimensions must be positive");
  if (data_.size() != static_cast<size_t>(rows) * cols)
    throw BadDimension("entry count does not match rows*cols");
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  rows_ = static_cast<int>(rows.size());
  if (rows_ == 0) throw BadDimension("empty initializer");
  cols_ = static_cast<int>(rows.begin()->size());
  data_.reserve(static_cast<size_t>(rows_) * cols_);
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != cols_) throw BadDimension("ragged initializer rows");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

ComplexMatrix ComplexMatrix::identity(int n) {
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  if (!same_shape(other)) throw DimensionMismatch("matrix addition shape mismatch");
  for (size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  if (!same_shape(other)) throw DimensionMismatch("matrix subtraction shape mismatch");
  for (size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
  for (auto& x : data_) x *= s;
  return *this;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix out = *this;
  for (auto& x : out.data_) x = std::conj(x);
  return out;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

Complex ComplexMatrix::trace() const {
  if (!is_square()) throw DimensionMismatch("trace of non-square matrix");
  Complex t = 0.0;
  for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& x : data_) s += std::norm(x);
  return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& x : data_) m = std::max(m, std::abs(x));
  return m;
}

double ComplexMatrix::hermiticity_defect() const {
  if (!is_square()) throw DimensionMismatch("hermiticity defect of non-square matrix");
  double m = 0.0;
  for (int i = 0; i < rows_; ++i)
    for (int j = i; j < cols_; ++j)
      m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return m;
}

double ComplexMatrix::unitarity_defect() const {
  if (!is_square()) throw DimensionMismatch("unitarity defect of non-square matrix");
  const ComplexMatrix prod = (*this) * adjoint();
  return max_abs_diff(prod, identity(rows_));
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matrix product shape mismatch");
  ComplexMatrix out(a.rows(), b.cols());
  const int n = a.rows(), k = a.cols(), m = b.cols();
  for (int i = 0; i < n; ++i) {
    Complex* out_row = &out(i, 0);
    for (int p = 0; p < k; ++p) {
      const Complex aip = a(i, p);
      if (aip == Complex(0.0, 0.0)) continue;
      const Complex* b_row = &b(p, 0);
      for (int j = 0; j < m; ++j) out_row[j] += aip * b_row[j];
    }
  }
  return out;
}

ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int ia = 0; ia < a.rows(); ++ia)
    for (int ja = 0; ja < a.cols(); ++ja) {
      const Complex f = a(ia, ja);
      if (f == Complex(0.0, 0.0)) continue;
      for (int ib = 0; ib < b.rows(); ++ib)
        for (int jb = 0; jb < b.cols(); ++jb)
          out(ia * b.rows() + ib, ja * b.cols() + jb) = f * b(ib, jb);
    }
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (!a.same_shape(b)) throw DimensionMismatch("max_abs_diff shape mismatch");
  double m = 0.0;
  for (size_t i = 0; i < a.entries().size(); ++i)
    m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
  return m;
}

}  // namespace dyncorr
