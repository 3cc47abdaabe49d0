#include "propsp/schatten.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "propsp/error.hpp"

namespace propsp {

namespace {

Vector eigenvalues(const Matrix& m) { return Eigen::ComplexEigenSolver<Matrix>(m, false).eigenvalues(); }

void require_size(const Matrix& m, Index k, const char* what) {
  if (m.rows() != k || m.cols() != k)
    throw Error(ErrorKind::DimMismatch, std::string(what) + " must be " + std::to_string(k) + "x" + std::to_string(k));
}

Matrix eye(Index n) { return Matrix::Identity(n, n); }

struct SuperopBuilder {
  int k;

  Matrix operator()(const superops::Left& s) const {
    require_size(s.a, k, "left factor");
    return la::kron(eye(k), s.a);
  }
  Matrix operator()(const superops::Right& s) const {
    require_size(s.b, k, "right factor");
    return la::kron(s.b.transpose(), eye(k));
  }
  Matrix operator()(const superops::TwoSided& s) const {
    require_size(s.a, k, "left factor");
    require_size(s.b, k, "right factor");
    return la::kron(s.b.transpose(), s.a);
  }
  Matrix operator()(const superops::AdZ& s) const {
    require_size(s.z, k, "z");
    return la::kron(s.z.transpose(), s.z.adjoint());
  }
};

SuperopKind plus_kind(const SuperopKind& kind) {
  return std::visit(
      [](const auto& s) -> SuperopKind {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, superops::Left>) return superops::Left{s.a.adjoint()};
        else if constexpr (std::is_same_v<T, superops::Right>) return superops::Right{s.b.adjoint()};
        else if constexpr (std::is_same_v<T, superops::TwoSided>) return superops::TwoSided{s.a.adjoint(), s.b.adjoint()};
        else return superops::TwoSided{s.z, s.z.adjoint()};
      },
      kind);
}

double max_block_residual(const Subspace& sub, int two_k, const Matrix& z, bool literature_form) {
  const Index k = z.rows();
  double worst = 0.0;
  for (Index j = 0; j < sub.rank(); ++j) {
    const Matrix y = unvec(sub.basis().col(j), two_k);
    const Matrix y11 = y.topLeftCorner(k, k);
    const Matrix y12 = y.topRightCorner(k, k);
    const Matrix r = literature_form ? Matrix(y11 + z.adjoint() * y12) : Matrix(y11 + y12 * z.adjoint());
    worst = std::max(worst, r.norm());
  }
  return worst;
}

}  // namespace

MatrixSpaceModel make_matrix_model(int k) {
  if (k <= 0) throw Error(ErrorKind::InvalidArgument, "matrix size must be positive");
  const Index n = static_cast<Index>(k) * k;
  return {k, make_space(n, eye(n), ENorm::trace(k))};
}

Vector vec(const Matrix& x) { return Eigen::Map<const Vector>(x.data(), x.size()); }

Matrix unvec(const Vector& v, int k) {
  if (v.size() != static_cast<Index>(k) * k) throw Error(ErrorKind::DimMismatch, "vector length is not k^2");
  return Eigen::Map<const Matrix>(v.data(), k, k);
}

Matrix superop_matrix(int k, const SuperopKind& kind) { return std::visit(SuperopBuilder{k}, kind); }

Matrix superop_plus_matrix(int k, const SuperopKind& kind) { return superop_matrix(k, plus_kind(kind)); }

Operator superop(const MatrixSpaceModel& model, const SuperopKind& kind) {
  return {model.ws, superop_matrix(model.k, kind)};
}

Matrix block_q(const Matrix& z) {
  const Index k = z.rows();
  require_size(z, k, "z");
  Matrix q = Matrix::Zero(2 * k, 2 * k);
  q.topLeftCorner(k, k) = eye(k);
  q.topRightCorner(k, k) = z;
  return q;
}

ZCriterion z_criterion_margin(const Matrix& z) {
  require_size(z, z.rows(), "z");
  const Index k = z.rows();
  const Vector ev = eigenvalues(z);
  ZCriterion r;
  r.pair_margin = kInf;
  for (Index i = 0; i < k; ++i)
    for (Index j = 0; j < k; ++j) r.pair_margin = std::min(r.pair_margin, std::abs(1.0 + std::conj(ev(i)) * ev(j)));
  const int ki = static_cast<int>(k);
  r.op_margin = la::min_singular_value(eye(k * k) + superop_matrix(ki, superops::AdZ{z}));
  return r;
}

SylvesterResult sylvester(const Matrix& c, const Matrix& d, const Matrix& w, bool force_solve) {
  const Index k = c.rows();
  require_size(c, k, "c");
  require_size(d, k, "d");
  require_size(w, k, "w");
  const Matrix op = la::kron(eye(k), c) - la::kron(d.transpose(), eye(k));

  SylvesterResult r;
  const Vector lc = eigenvalues(c);
  const Vector ld = eigenvalues(d);
  r.spectral_distance = kInf;
  for (Index i = 0; i < k; ++i)
    for (Index j = 0; j < k; ++j) r.spectral_distance = std::min(r.spectral_distance, std::abs(lc(i) - ld(j)));
  const double tol = 1e-8 * (1.0 + la::spectral_norm(c) + la::spectral_norm(d));
  r.solvable = r.spectral_distance > tol;
  r.margin = la::min_singular_value(op);

  if (!r.solvable) {
    if (force_solve)
      throw Error(ErrorKind::SingularSystem, "spectra of c and d meet (distance " + std::to_string(r.spectral_distance) + ")");
    return r;
  }
  const Vector xv = op.partialPivLu().solve(vec(w));
  Matrix x = unvec(xv, static_cast<int>(k));
  r.residual = (c * x - x * d - w).norm();
  r.x = std::move(x);
  return r;
}

CqReport cq_compat_demo(const MatrixSpaceModel& model, const Matrix& z) {
  const int k = static_cast<int>(z.rows());
  require_size(z, k, "z");
  if (model.k != 2 * k)
    throw Error(ErrorKind::DimMismatch, "model must be (2k)^2-dimensional for z of size k = " + std::to_string(k));
  const Matrix q = block_q(z);
  const Operator cq = superop(model, superops::TwoSided{q, q});
  const Subspace s = range_of(cq);
  const Subspace t = kernel_of(cq);
  const Subspace s_perp = complement_L(s);

  CqReport r;
  r.k = k;
  const CompatReport direct = compat_margin(s);
  r.direct_margin = direct.margin_c;
  r.q_norm = direct.q_norm;
  r.companion_margin = la::min_singular_value(c_operator(s, t).matrix());
  const ZCriterion zc = z_criterion_margin(z);
  r.pair_margin = zc.pair_margin;
  r.op_margin = zc.op_margin;
  r.complement_residual_direct = max_block_residual(s_perp, model.k, z, false);
  r.complement_residual_literature = max_block_residual(s_perp, model.k, z, true);
  r.compatible_direct = direct_sum_gap(s, s_perp) > kTolGap;
  return r;
}

TwoCompanionsReport two_companions_demo(const MatrixSpaceModel& model, const Matrix& z, const Matrix& t) {
  TwoCompanionsReport r;
  const Index k = z.rows();
  if (z.cols() != k || t.rows() != k || t.cols() != k) throw Error(ErrorKind::DimMismatch, "z and t must be k-by-k");
  if (model.k != 2 * k) throw Error(ErrorKind::DimMismatch, "model must be (2k)^2-dimensional");

  if (la::min_singular_value(z) <= 1e-12 * std::max(1.0, la::spectral_norm(z))) r.violations.push_back("z is not invertible");
  if ((z * z.adjoint() - z.adjoint() * z).norm() > 1e-10 * std::max(1.0, z.squaredNorm()))
    r.violations.push_back("z is not normal");
  r.source_pair_margin = z_criterion_margin(z).pair_margin;
  if (!(r.source_pair_margin > 1e-12)) r.violations.push_back("z fails the |1 + conj(lambda) mu| > 0 criterion");
  if ((t - t.adjoint()).norm() > 1e-10) r.violations.push_back("t is not self-adjoint");
  if ((t * t - eye(k)).norm() > 1e-10) r.violations.push_back("t^2 != I");
  if (!r.violations.empty()) return r;

  const Matrix q = block_q(z);
  const Operator cq = superop(model, superops::TwoSided{q, q});
  const Subspace s = range_of(cq);
  const Subspace tsub = kernel_of(cq);

  Matrix x = Matrix::Zero(2 * k, 2 * k);
  x.topLeftCorner(k, k) = z;
  x.bottomRightCorner(k, k) = t;
  const Operator g = superop(model, superops::Right{x});

  r.t_fixed_angle = max_principal_angle(image(g, tsub), tsub);
  r.cond_g = la::condition_number(g.matrix());
  r.cond_g_plus = la::condition_number(g.plus_matrix());
  r.g_plus_residual = la::spectral_norm(g.plus_matrix() - superop_matrix(model.k, superops::Right{x.adjoint()}));

  const Subspace gs = image(g, s);
  const Matrix qt = block_q(t);
  const Subspace expected = range_of(superop(model, superops::TwoSided{qt, qt}));
  r.gs_expected_angle = max_principal_angle(gs, expected);
  r.gs_companion_of_t = is_proper_companion(gs, tsub).ok;
  r.transported_pair_margin = z_criterion_margin(t).pair_margin;
  r.transported_direct_margin = compat_margin(gs).margin_c;

  r.ok = r.t_fixed_angle <= kTolAngle && r.gs_expected_angle <= kTolAngle && r.cond_g < 1e14 && r.cond_g_plus < 1e14 &&
         r.g_plus_residual <= 1e-12 * std::max(1.0, la::spectral_norm(g.matrix())) && r.gs_companion_of_t;
  return r;
}

AdzNormReport adz_norm_check(const MatrixSpaceModel& model, const Matrix& z) {
  require_size(z, model.k, "z");
  const Matrix ad = superop_matrix(model.k, superops::AdZ{z});
  AdzNormReport r;
  r.frob_norm = la::spectral_norm(ad);
  r.trace_norm_estimate = trace_norm_superop_estimate(ad, model.k);
  const double zn = la::spectral_norm(z);
  r.znorm_sq = zn * zn;
  const double scale = std::max(1.0, r.znorm_sq);
  r.ok = std::abs(r.frob_norm - r.znorm_sq) <= 1e-10 * scale && r.trace_norm_estimate <= r.znorm_sq + 1e-10 * scale;
  return r;
}

}  // namespace propsp
