#include "propsp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace propsp::la {

namespace {

template <class Solver>
Svd unpack(const Solver& solver) {
  return {solver.singularValues(), solver.matrixU(), solver.matrixV()};
}

bool plausible(const Svd& d, const Matrix& m) {
  const Index p = d.values.size();
  if (d.u.cols() < p || d.v.cols() < p || !d.values.allFinite() || !d.u.allFinite() || !d.v.allFinite()) return false;
  for (Index i = 0; i < p; ++i)
    if (d.values(i) < 0.0 || (i > 0 && d.values(i) > d.values(i - 1))) return false;
  const double scale = std::max(m.norm(), std::numeric_limits<double>::min());
  const double recon = (d.u.leftCols(p) * d.values.asDiagonal() * d.v.leftCols(p).adjoint() - m).norm();
  const double tol = 1e-12 * static_cast<double>(std::max<Index>(16, std::max(m.rows(), m.cols())));
  const Matrix uu = d.u.adjoint() * d.u - Matrix::Identity(d.u.cols(), d.u.cols());
  const Matrix vv = d.v.adjoint() * d.v - Matrix::Identity(d.v.cols(), d.v.cols());
  return recon <= tol * scale && uu.norm() <= tol && vv.norm() <= tol;
}

/// Deterministic Haar unitary used to break exact structure before retrying.
Matrix rotation(Index n) {
  std::mt19937_64 engine(0x726f74617465ULL + static_cast<std::uint64_t>(n));
  std::normal_distribution<double> normal;
  Matrix g(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) g(i, j) = cplx(normal(engine), normal(engine));
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < n; ++j) {
    const double a = std::abs(r(j, j));
    if (a > 0.0) q.col(j) *= r(j, j) / a;
  }
  return q;
}

Eigen::VectorXd singular_values(const Matrix& m) {
  if (m.size() == 0) return {};
  return svd(m).values;
}

Index rank_from(const Eigen::VectorXd& sv, double rel_tol) {
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  const double cut = rel_tol * sv(0);
  Index r = 0;
  while (r < sv.size() && sv(r) > cut) ++r;
  return r;
}

}  // namespace

Svd svd(const Matrix& m, bool full) {
  const unsigned opts = full ? (Eigen::ComputeFullU | Eigen::ComputeFullV) : (Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (m.size() == 0) return {Eigen::VectorXd(), Matrix::Identity(m.rows(), full ? m.rows() : 0), Matrix::Identity(m.cols(), full ? m.cols() : 0)};
  Svd d = unpack(Eigen::BDCSVD<Matrix>(m, opts));
  if (plausible(d, m)) return d;
  const Matrix h = rotation(m.rows());
  d = unpack(Eigen::BDCSVD<Matrix>(h * m, opts));
  d.u = h.adjoint() * d.u;
  if (plausible(d, m)) return d;
  return unpack(Eigen::JacobiSVD<Matrix>(m, opts));
}

double spectral_norm(const Matrix& m) {
  const auto sv = singular_values(m);
  return sv.size() == 0 ? 0.0 : sv(0);
}

double min_singular_value(const Matrix& m) {
  const auto sv = singular_values(m);
  return sv.size() == 0 ? 0.0 : sv(sv.size() - 1);
}

double condition_number(const Matrix& m) {
  const auto sv = singular_values(m);
  if (sv.size() == 0) return 1.0;
  const double lo = sv(sv.size() - 1);
  return lo == 0.0 ? kInf : sv(0) / lo;
}

Index numerical_rank(const Matrix& m, double rel_tol) {
  return rank_from(singular_values(m), rel_tol);
}

Matrix orth(const Matrix& m, double rel_tol) {
  if (m.cols() == 0) return Matrix(m.rows(), 0);
  const Svd d = svd(m);
  return d.u.leftCols(rank_from(d.values, rel_tol));
}

Matrix null_space(const Matrix& m, double rel_tol) {
  const Index n = m.cols();
  if (m.rows() == 0) return Matrix::Identity(n, n);
  const Svd d = svd(m, true);
  return d.v.rightCols(n - rank_from(d.values, rel_tol));
}

Matrix euclidean_complement(const Matrix& basis) {
  const Index n = basis.rows();
  const Index r = basis.cols();
  if (r == 0) return Matrix::Identity(n, n);
  Eigen::HouseholderQR<Matrix> qr(basis);
  Matrix full = qr.householderQ() * Matrix::Identity(n, n);
  return full.rightCols(n - r);
}

Matrix qr_orthonormalize(const Matrix& m) {
  if (m.cols() == 0) return Matrix(m.rows(), 0);
  Eigen::HouseholderQR<Matrix> qr(m);
  return qr.householderQ() * Matrix::Identity(m.rows(), m.cols());
}

double containment_sine(const Matrix& u, const Matrix& v) {
  if (u.cols() == 0) return 0.0;
  if (v.cols() == 0) return 1.0;
  const Matrix residual = u - v * (v.adjoint() * u);
  return std::min(1.0, spectral_norm(residual));
}

double max_principal_angle(const Matrix& u, const Matrix& v) {
  const double s = std::max(containment_sine(u, v), containment_sine(v, u));
  return std::asin(std::min(1.0, s));
}

bool is_hermitian(const Matrix& m, double tol) {
  return m.rows() == m.cols() && (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

double multiset_distance(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) return kInf;
  std::vector<bool> used(static_cast<std::size_t>(b.size()), false);
  double worst = 0.0;
  for (Index i = 0; i < a.size(); ++i) {
    Index best = -1;
    double best_d = kInf;
    for (Index j = 0; j < b.size(); ++j) {
      if (used[static_cast<std::size_t>(j)]) continue;
      const double d = std::abs(a(i) - b(j));
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    used[static_cast<std::size_t>(best)] = true;
    worst = std::max(worst, best_d);
  }
  return worst;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace propsp::la
