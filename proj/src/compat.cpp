#include "propsp/compat.hpp"

#include <cmath>
#include <string>

#include "propsp/error.hpp"

namespace propsp {

namespace {

constexpr double kTolFormula = 1e-9;
constexpr double kIllConditioned = 1e-12;
// Condition numbers above this are treated as "not invertible".
constexpr double kCondFinite = 1e14;

Matrix eye(Index n) { return Matrix::Identity(n, n); }

const Subspace& require_companion(const Subspace& s, const Subspace& t) {
  const CompanionReport r = is_proper_companion(s, t);
  if (!r.ok)
    throw Error(ErrorKind::NotComplementary, "not a proper companion (gap " + std::to_string(r.gap1) +
                                                 ", complement gap " + std::to_string(r.gap2) + ")");
  return t;
}

double l_norm(const WeightedSpace& ws, const Matrix& m) { return opnorm(ws, m, NormKind::L).value; }

}  // namespace

Matrix l_orthogonal_projector(const Subspace& s) {
  const Matrix& b = s.basis();
  const Matrix& a = s.space()->weight();
  if (b.cols() == 0) return Matrix::Zero(b.rows(), b.rows());
  const Matrix gram = b.adjoint() * a * b;
  return b * gram.llt().solve(Matrix(b.adjoint() * a));
}

Operator c_operator(const Subspace& s, const Subspace& t) {
  require_companion(s, t);
  const Matrix p = oblique_projection_matrix(s, t);
  const Operator po(s.space(), p);
  return {s.space(), p + po.plus_matrix() - eye(p.rows())};
}

CompatProjection compat_projection(const Subspace& s, const std::optional<Subspace>& t_opt) {
  const Subspace t = t_opt ? *t_opt : complement_L(s);
  require_companion(s, t);
  const SpacePtr& space = s.space();
  const Index n = s.ambient_dim();

  const Operator p(space, oblique_projection_matrix(s, t));
  const Matrix c = p.matrix() + p.plus_matrix() - eye(n);
  const Matrix direct = l_orthogonal_projector(s);

  CompatProjection out{proj_pair_from(Operator(space, direct)), Matrix(), 0.0, 1.0, 0.0, true};
  const Eigen::VectorXd sv = la::svd(c).values;
  out.sigma_min_c = sv.size() ? sv(sv.size() - 1) : 1.0;
  out.kappa_c = sv.size() && out.sigma_min_c > 0.0 ? sv(0) / out.sigma_min_c : kInf;

  if (sv.size() && out.sigma_min_c < kIllConditioned * sv(0)) {
    out.formula_used = false;
  } else {
    out.formula = c.partialPivLu().solve(p.plus_matrix());
    out.residual_cross = la::spectral_norm(out.formula - direct);
    if (out.residual_cross > kTolFormula * out.kappa_c * std::max(1.0, la::spectral_norm(direct)))
      throw Error(ErrorKind::PostconditionFailed,
                  "C^{-1} P+ and B(B*AB)^{-1}B*A disagree by " + std::to_string(out.residual_cross));
  }
  out.q.range_sub = s;
  out.q.null_sub = complement_L(s);
  return out;
}

CompatReport compat_margin(const Subspace& s, const std::optional<Subspace>& t_opt) {
  const Subspace t = t_opt ? *t_opt : complement_L(s);
  const Operator c = c_operator(s, t);
  const CompatProjection q = compat_projection(s, t);
  CompatReport r;
  r.margin_c = la::min_singular_value(c.matrix());
  const NormValue qn = opnorm(q.q.p, NormKind::E);
  r.q_norm = qn.value;
  r.q_norm_is_estimate = qn.is_estimate;
  r.residual_cross = q.residual_cross;
  r.is_compatible = r.margin_c > 0.0;
  return r;
}

bool krein_check(const Subspace& s, const Operator& q, double tol) {
  const Matrix& m = q.matrix();
  const double scale = std::max(1.0, la::spectral_norm(m));
  const double idem = la::spectral_norm(m * m - m);
  if (idem > 1e-8 * scale * scale)
    throw Error(ErrorKind::NotIdempotent, "||Q^2 - Q|| = " + std::to_string(idem));
  const Subspace range = range_of(q, 1e-8);
  const Subspace kernel = kernel_of(q, 1e-8);
  return subspace_equal(range, s, tol) && subspace_contained(kernel, complement_L(s), tol);
}

BuckholtzReport buckholtz_verify(const Subspace& s, const Subspace& t) {
  require_companion(s, t);
  const WeightedSpace& ws = *s.space();
  const Index n = s.ambient_dim();
  const Matrix ps = l_orthogonal_projector(s);
  const Matrix pt = l_orthogonal_projector(t);
  const Operator p(s.space(), oblique_projection_matrix(s, t));
  const Matrix diff = ps - pt;

  BuckholtzReport r;
  r.res1 = l_norm(ws, diff * (p.matrix() + p.plus_matrix() - eye(n)) - eye(n));
  r.res2 = l_norm(ws, ps * diff.partialPivLu().inverse() - p.matrix());
  Matrix m(n, n);
  m << s.basis(), t.basis();
  r.kappa = la::condition_number(m);
  return r;
}

double symm_identity_verify(const Subspace& s, const Subspace& t) {
  require_companion(s, t);
  const Index n = s.ambient_dim();
  const Matrix ps = l_orthogonal_projector(s);
  const Matrix pt = l_orthogonal_projector(t);
  const Matrix p = oblique_projection_matrix(s, t);
  return l_norm(*s.space(), (ps - pt) - (2.0 * p - eye(n)) * (ps + pt));
}

TransportReport companion_transport(const Subspace& s, const Subspace& t, const Subspace& t1) {
  require_companion(s, t);
  require_companion(s, t1);
  const SpacePtr& space = s.space();
  const Subspace s_perp = complement_L(s);
  const Subspace t_perp = complement_L(t);
  const Subspace t1_perp = complement_L(t1);

  const Matrix g = oblique_projection_matrix(s, t) + oblique_projection_matrix(t1, s) * oblique_projection_matrix(t, s);
  const Matrix g_plus = oblique_projection_matrix(t_perp, s_perp) +
                        oblique_projection_matrix(s_perp, t_perp) * oblique_projection_matrix(s_perp, t1_perp);

  TransportReport r{Operator(space, g), Operator(space, g_plus)};
  r.image_s_angle = max_principal_angle(image(r.g, s), s);
  r.image_t_angle = max_principal_angle(image(r.g, t), t1);
  r.cond_g = la::condition_number(g);
  r.cond_g_plus = la::condition_number(r.g.plus_matrix());
  r.plus_residual = la::spectral_norm(r.g.plus_matrix() - g_plus);
  r.ok = r.image_s_angle <= kTolAngle && r.image_t_angle <= kTolAngle && r.cond_g < kCondFinite &&
         r.cond_g_plus < kCondFinite && r.plus_residual <= kTolFormula * std::max(1.0, la::spectral_norm(g_plus));
  return r;
}

double companion_metric(const Subspace& s, const Subspace& t1, const Subspace& t2) {
  require_companion(s, t1);
  require_companion(s, t2);
  const Operator diff(s.space(), oblique_projection_matrix(t1, s) - oblique_projection_matrix(t2, s));
  return proper_norm(diff);
}

AlgebraicLemmaReport algebraic_lemma_check(const Operator& t1, const Operator& t2, double tol_rank) {
  const Matrix& a = t1.matrix();
  const Matrix& b = t2.matrix();
  const Index n = a.rows();
  if (b.rows() != n) throw Error(ErrorKind::DimMismatch, "operators have different sizes");

  auto rank = [tol_rank](const Matrix& m) { return la::numerical_rank(m, tol_rank); };
  Matrix ab(n, 2 * n);
  ab << a, b;
  const Index ra = rank(a), rb = rank(b), rab = rank(ab);
  if (ra + rb != rab)
    throw Error(ErrorKind::RangeOverlap, "dim R(T1) ∩ R(T2) = " + std::to_string(ra + rb - rab));

  const Matrix na = la::null_space(a, tol_rank);
  const Matrix nb = la::null_space(b, tol_rank);
  Matrix kernels(n, na.cols() + nb.cols());
  kernels << na, nb;
  const Matrix sum = a + b;
  const Index rsum = rank(sum);
  Matrix sum_a(n, 2 * n);
  sum_a << sum, a;

  AlgebraicLemmaReport r;
  r.kernels_span = rank(kernels) == n;
  r.ranges_add = rsum == rab;
  r.range_contained = rank(sum_a) == rsum;
  r.equivalence_holds = r.kernels_span == r.ranges_add;
  r.remark_holds = r.range_contained == r.ranges_add;
  return r;
}

}  // namespace propsp
