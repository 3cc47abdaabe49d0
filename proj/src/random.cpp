#include "propsp/random.hpp"

#include <cmath>

namespace propsp {

double InstanceRng::uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }

int InstanceRng::uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

cplx InstanceRng::normal_complex() {
  const double re = normal_(engine_);
  const double im = normal_(engine_);
  return {re, im};
}

Matrix InstanceRng::gaussian(Index rows, Index cols) {
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = normal_complex();
  return m;
}

Vector InstanceRng::gaussian_vector(Index n) { return gaussian(n, 1).col(0); }

Matrix InstanceRng::unitary(Index n) {
  const Matrix g = gaussian(n, n);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index i = 0; i < n; ++i) {
    const cplx d = r(i, i);
    if (std::abs(d) > 0.0) q.col(i) *= d / std::abs(d);
  }
  return q;
}

Matrix InstanceRng::pd_weight(Index n) {
  const Matrix u = unitary(n);
  Eigen::VectorXd d(n);
  for (Index i = 0; i < n; ++i) d(i) = std::pow(10.0, uniform(-4.0, 0.0));
  d /= d.maxCoeff();
  Matrix a = u * d.cast<cplx>().asDiagonal() * u.adjoint();
  return (a + a.adjoint()) / 2.0;
}

Matrix InstanceRng::normal_matrix(Index n) {
  Vector ev(n);
  for (Index i = 0; i < n; ++i) ev(i) = normal_complex();
  return normal_matrix(ev);
}

Matrix InstanceRng::normal_matrix(const Vector& eigenvalues) {
  const Matrix u = unitary(eigenvalues.size());
  return u * eigenvalues.asDiagonal() * u.adjoint();
}

Matrix InstanceRng::low_rank(Index n, Index r) { return gaussian(n, r) * gaussian(n, r).adjoint(); }

}  // namespace propsp
