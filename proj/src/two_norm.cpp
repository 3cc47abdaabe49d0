#include "propsp/two_norm.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "propsp/error.hpp"

namespace propsp {

namespace {

constexpr double kTolNormCap = 1e-12;

Matrix unvec(const Vector& v, int k) { return Eigen::Map<const Matrix>(v.data(), k, k); }

double trace_norm(const Matrix& x) { return la::svd(x).values.sum(); }

void require_square(const Matrix& m, Index n, const char* what) {
  if (m.rows() != n || m.cols() != n)
    throw Error(ErrorKind::DimMismatch, std::string(what) + " must be " + std::to_string(n) + "x" +
                                            std::to_string(n) + ", got " + std::to_string(m.rows()) + "x" +
                                            std::to_string(m.cols()));
}

}  // namespace

Matrix WeightedSpace::solve_weight(const Matrix& rhs) const {
  if (identity_) return rhs;
  return chol_.solve(rhs);
}

SpacePtr make_space(Index n, const Matrix& a, ENorm enorm) {
  if (n <= 0) throw Error(ErrorKind::InvalidArgument, "dimension must be positive");
  require_square(a, n, "weight");
  if (enorm.is_trace()) {
    if (enorm.k <= 0 || static_cast<Index>(enorm.k) * enorm.k != n)
      throw Error(ErrorKind::DimMismatch, "trace(k) norm needs dim = k^2, got dim " + std::to_string(n) +
                                              " and k = " + std::to_string(enorm.k));
    if ((a - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() > kTolPd)
      throw Error(ErrorKind::NonIdentityWeightForTrace, "trace-norm spaces use the Frobenius inner product");
  }

  auto ws = std::shared_ptr<WeightedSpace>(new WeightedSpace());
  ws->enorm_ = enorm;
  ws->weight_ = (a + a.adjoint()) / 2.0;

  Eigen::SelfAdjointEigenSolver<Matrix> eig(ws->weight_);
  const Eigen::VectorXd& ev = eig.eigenvalues();
  if (ev.minCoeff() <= kTolPd)
    throw Error(ErrorKind::NotPositiveDefinite, "smallest weight eigenvalue is " + std::to_string(ev.minCoeff()));
  if (!enorm.is_trace() && ev.maxCoeff() > 1.0 + kTolNormCap)
    throw Error(ErrorKind::NormCapViolated,
                "weight spectral norm " + std::to_string(ev.maxCoeff()) + " exceeds 1, so ||f||_L <= ||f||_E fails");

  const Matrix& u = eig.eigenvectors();
  ws->sqrt_ = u * ev.cwiseSqrt().cast<cplx>().asDiagonal() * u.adjoint();
  ws->inv_sqrt_ = u * ev.cwiseSqrt().cwiseInverse().cast<cplx>().asDiagonal() * u.adjoint();
  ws->weight_norm_ = ev.maxCoeff();
  ws->identity_ = (ws->weight_ - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() == 0.0;
  if (ws->identity_) {
    ws->sqrt_ = Matrix::Identity(n, n);
    ws->inv_sqrt_ = Matrix::Identity(n, n);
  }
  ws->chol_.compute(ws->weight_);
  return ws;
}

SpacePtr euclidean_space(Index n) { return make_space(n, Matrix::Identity(n, n)); }

cplx inner_L(const WeightedSpace& ws, const Vector& f, const Vector& g) {
  if (f.size() != ws.dim() || g.size() != ws.dim())
    throw Error(ErrorKind::DimMismatch, "vectors must have length " + std::to_string(ws.dim()));
  return g.dot(ws.weight() * f);
}

double norm_L(const WeightedSpace& ws, const Vector& f) { return std::sqrt(std::max(0.0, inner_L(ws, f, f).real())); }

double norm_E(const WeightedSpace& ws, const Vector& f) {
  if (f.size() != ws.dim()) throw Error(ErrorKind::DimMismatch, "vector length mismatch");
  if (ws.enorm().is_trace()) return trace_norm(unvec(f, ws.enorm().k));
  return f.norm();
}

Operator::Operator(SpacePtr space, Matrix m)
    : space_(std::move(space)), m_(std::move(m)), cache_(std::make_shared<PlusCache>()) {
  if (!space_) throw Error(ErrorKind::InvalidArgument, "operator needs a space");
  require_square(m_, space_->dim(), "operator");
}

const Matrix& Operator::plus_matrix() const {
  std::call_once(cache_->once, [this] {
    cache_->plus = space_->identity_weight() ? Matrix(m_.adjoint())
                                             : space_->solve_weight(m_.adjoint() * space_->weight());
  });
  return cache_->plus;
}

Operator identity_operator(const SpacePtr& space) { return {space, Matrix::Identity(space->dim(), space->dim())}; }

Operator plus_adjoint(const Operator& t) { return {t.space(), t.plus_matrix()}; }

Operator compose(const Operator& a, const Operator& b) {
  if (a.space() != b.space()) throw Error(ErrorKind::DimMismatch, "operators live on different spaces");
  return {a.space(), a.matrix() * b.matrix()};
}

double trace_norm_superop_estimate(const Matrix& superop, int k, const TraceNormEstimatorOptions& opts) {
  const Index n = static_cast<Index>(k) * k;
  require_square(superop, n, "superoperator");
  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> normal;
  auto random_unit = [&] {
    Vector v(k);
    for (Index i = 0; i < k; ++i) v(i) = cplx(normal(rng), normal(rng));
    return Vector(v / v.norm());
  };

  const Matrix adj = superop.adjoint();
  double best = 0.0;
  for (int r = 0; r < opts.restarts; ++r) {
    Vector u = random_unit();
    Vector v = random_unit();
    double last = -1.0;
    for (int it = 0; it < opts.iterations; ++it) {
      const Matrix x = u * v.adjoint();
      const Vector y = superop * Eigen::Map<const Vector>(x.data(), n);
      const la::Svd svd_y = la::svd(unvec(y, k), true);
      const double value = svd_y.values.sum();
      best = std::max(best, value);
      if (value <= last * (1.0 + 1e-14)) break;
      last = value;
      // Dual certificate W = U V*; the best rank-one step for W is the top
      // singular pair of the adjoint image.
      const Matrix w = svd_y.u * svd_y.v.adjoint();
      const Vector g = adj * Eigen::Map<const Vector>(w.data(), n);
      const la::Svd svd_g = la::svd(unvec(g, k));
      u = svd_g.u.col(0);
      v = svd_g.v.col(0);
    }
  }
  return best;
}

NormValue opnorm(const WeightedSpace& ws, const Matrix& t, NormKind which) {
  require_square(t, ws.dim(), "operator");
  if (which == NormKind::L) {
    if (ws.identity_weight()) return {la::spectral_norm(t), false};
    return {la::spectral_norm(ws.weight_sqrt() * t * ws.weight_inv_sqrt()), false};
  }
  if (ws.enorm().is_trace()) return {trace_norm_superop_estimate(t, ws.enorm().k), true};
  return {la::spectral_norm(t), false};
}

NormValue opnorm(const Operator& t, NormKind which) { return opnorm(*t.space(), t.matrix(), which); }

double proper_norm(const Operator& t) {
  return opnorm(t, NormKind::E).value + opnorm(*t.space(), t.plus_matrix(), NormKind::E).value;
}

GzReport gz_bound_check(const Operator& t, double tol) {
  const WeightedSpace& ws = *t.space();
  GzReport r;
  r.lhs = opnorm(t, NormKind::L).value;
  const NormValue a = opnorm(ws, t.plus_matrix() * t.matrix(), NormKind::E);
  const NormValue b = opnorm(ws, t.matrix() * t.plus_matrix(), NormKind::E);
  r.rhs = std::min(a.value, b.value);
  r.advisory = a.is_estimate || b.is_estimate;
  r.holds = r.lhs <= r.rhs + tol;
  r.sharp_holds = r.lhs * r.lhs <= r.rhs * (1.0 + tol) + tol;
  return r;
}

bool is_symmetrizable(const Operator& t, double tol) {
  const WeightedSpace& ws = *t.space();
  const double diff = opnorm(ws, t.plus_matrix() - t.matrix(), NormKind::E).value;
  return diff <= tol * (1.0 + opnorm(t, NormKind::E).value);
}

bool is_L_isometric(const Operator& g, double tol) {
  const Matrix& a = g.space()->weight();
  return la::spectral_norm(g.matrix().adjoint() * a * g.matrix() - a) <= tol;
}

Operator exp_i(const Operator& x) {
  const Matrix ix = cplx(0.0, 1.0) * x.matrix();
  return {x.space(), ix.exp()};
}

}  // namespace propsp
