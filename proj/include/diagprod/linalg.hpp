#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

namespace diagprod {

/// Dense complex matrix, row-major. Heavy numerics live in linalg.cpp.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

  static CMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::complex<double>& operator()(int i, int j) { return a_[idx(i, j)]; }
  const std::complex<double>& operator()(int i, int j) const {
    return a_[idx(i, j)];
  }

  CMatrix adjoint() const;
  std::complex<double> trace() const;
  double frobenius() const;

  friend CMatrix operator*(const CMatrix& a, const CMatrix& b);
  friend CMatrix operator-(const CMatrix& a, const CMatrix& b);
  friend CMatrix operator+(const CMatrix& a, const CMatrix& b);
  CMatrix scaled(std::complex<double> s) const;
  CMatrix kronecker(const CMatrix& b) const;

  bool operator==(const CMatrix&) const = default;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<std::complex<double>> a_;
  size_t idx(int i, int j) const {
    return static_cast<size_t>(i) * cols_ + j;
  }
};

/// Smallest eigenvalue of a Hermitian matrix.
double min_hermitian_eigenvalue(const CMatrix& h);

/// Unitary polar factor of A = U P; throws std::runtime_error when the
/// smallest singular value falls below the guard.
CMatrix polar_unitary(const CMatrix& a, double min_singular = 1e-8);

/// exp(i t H) for Hermitian H.
CMatrix exp_i_hermitian(const CMatrix& h, double t);

/// Random Hermitian matrix, entries Gaussian then symmetrized, normalized to
/// Frobenius norm sqrt(d) (normalized Hilbert-Schmidt norm 1).
CMatrix random_hermitian_unit(int dim, unsigned long seed);

}  // namespace diagprod
