#include "diagprod/linalg.hpp"

#include <random>

#include <Eigen/Dense>

namespace diagprod {

namespace {

using EMat = Eigen::MatrixXcd;

EMat to_eigen(const CMatrix& m) {
  EMat out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

CMatrix from_eigen(const EMat& m) {
  CMatrix out(static_cast<int>(m.rows()), static_cast<int>(m.cols()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

}  // namespace

CMatrix CMatrix::identity(int n) {
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix out(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

std::complex<double> CMatrix::trace() const {
  std::complex<double> t;
  for (int i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double CMatrix::frobenius() const {
  double s = 0;
  for (const auto& v : a_) s += std::norm(v);
  return std::sqrt(s);
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("CMatrix: shape mismatch");
  CMatrix out(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const std::complex<double> aik = a(i, k);
      if (aik == std::complex<double>{}) continue;
      for (int j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

CMatrix operator-(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("CMatrix: shape mismatch");
  CMatrix out(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) - b(i, j);
  return out;
}

CMatrix operator+(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("CMatrix: shape mismatch");
  CMatrix out(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) + b(i, j);
  return out;
}

CMatrix CMatrix::scaled(std::complex<double> s) const {
  CMatrix out = *this;
  for (auto& v : out.a_) v *= s;
  return out;
}

CMatrix CMatrix::kronecker(const CMatrix& b) const {
  CMatrix out(rows_ * b.rows(), cols_ * b.cols());
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = (*this)(i, j) * b(k, l);
  return out;
}

double min_hermitian_eigenvalue(const CMatrix& h) {
  Eigen::SelfAdjointEigenSolver<EMat> es(to_eigen(h),
                                         Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("min_hermitian_eigenvalue: solver failed");
  return es.eigenvalues()(0);
}

CMatrix polar_unitary(const CMatrix& a, double min_singular) {
  Eigen::JacobiSVD<EMat> svd(to_eigen(a),
                             Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.singularValues().minCoeff() < min_singular)
    throw std::runtime_error("polar_unitary: singular average");
  return from_eigen(svd.matrixU() * svd.matrixV().adjoint());
}

CMatrix exp_i_hermitian(const CMatrix& h, double t) {
  Eigen::SelfAdjointEigenSolver<EMat> es(to_eigen(h));
  if (es.info() != Eigen::Success)
    throw std::runtime_error("exp_i_hermitian: solver failed");
  const auto& vals = es.eigenvalues();
  const auto& vecs = es.eigenvectors();
  EMat d = EMat::Zero(vals.size(), vals.size());
  for (int i = 0; i < vals.size(); ++i)
    d(i, i) = std::exp(std::complex<double>(0.0, t * vals(i)));
  return from_eigen(vecs * d * vecs.adjoint());
}

CMatrix random_hermitian_unit(int dim, unsigned long seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  CMatrix h(dim, dim);
  for (int i = 0; i < dim; ++i) {
    h(i, i) = gauss(rng);
    for (int j = i + 1; j < dim; ++j) {
      const std::complex<double> z{gauss(rng), gauss(rng)};
      h(i, j) = z / std::sqrt(2.0);
      h(j, i) = std::conj(h(i, j));
    }
  }
  const double target = std::sqrt(static_cast<double>(dim));
  const double norm = h.frobenius();
  return h.scaled(target / norm);
}

}  // namespace diagprod
