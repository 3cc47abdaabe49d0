#include "propsp/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "propsp/error.hpp"

namespace propsp {

namespace {

Vector eigenvalues(const Matrix& m) {
  if (m.rows() == 0) return {};
  return Eigen::ComplexEigenSolver<Matrix>(m, false).eigenvalues();
}

std::vector<double> isolation_gaps(const Vector& v) {
  std::vector<double> gaps(static_cast<std::size_t>(v.size()), kInf);
  for (Index i = 0; i < v.size(); ++i)
    for (Index j = 0; j < v.size(); ++j)
      if (i != j) gaps[static_cast<std::size_t>(i)] = std::min(gaps[static_cast<std::size_t>(i)], std::abs(v(i) - v(j)));
  return gaps;
}

}  // namespace

const char* to_string(Algebra a) noexcept {
  switch (a) {
    case Algebra::E: return "E";
    case Algebra::L: return "L";
    case Algebra::P: return "P";
  }
  return "?";
}

double spectrum_match_tol(const Operator& t) { return 1e-8 * (1.0 + la::spectral_norm(t.matrix())); }

SpectrumReport spectrum(const Operator& t, Algebra algebra) {
  SpectrumReport r;
  r.algebra = algebra;
  const WeightedSpace& ws = *t.space();
  switch (algebra) {
    case Algebra::E:
      r.values = eigenvalues(t.matrix());
      break;
    case Algebra::L:
      r.values = eigenvalues(ws.weight_sqrt() * t.matrix() * ws.weight_inv_sqrt());
      break;
    case Algebra::P: {
      // Union as sets: conj(sigma(T+)) values already present in sigma(T)
      // are absorbed.
      const Vector base = eigenvalues(t.matrix());
      const Vector conj_plus = eigenvalues(t.plus_matrix()).conjugate();
      const double tol = spectrum_match_tol(t);
      std::vector<cplx> values(base.data(), base.data() + base.size());
      std::vector<bool> used(values.size(), false);
      for (Index i = 0; i < conj_plus.size(); ++i) {
        std::size_t best = values.size();
        double best_d = kInf;
        for (std::size_t j = 0; j < static_cast<std::size_t>(base.size()); ++j) {
          if (used[j]) continue;
          const double d = std::abs(conj_plus(i) - base(static_cast<Index>(j)));
          if (d < best_d) {
            best_d = d;
            best = j;
          }
        }
        if (best < used.size() && best_d <= tol)
          used[best] = true;
        else
          values.push_back(conj_plus(i));
      }
      r.values = Eigen::Map<const Vector>(values.data(), static_cast<Index>(values.size()));
      break;
    }
  }
  r.gaps = isolation_gaps(r.values);
  return r;
}

Matrix riesz_quadrature(const Matrix& t, cplx lambda, double eps, int m) {
  const Index n = t.rows();
  Matrix sum = Matrix::Zero(n, n);
  const Matrix id = Matrix::Identity(n, n);
  for (int j = 0; j < m; ++j) {
    const cplx w = std::polar(1.0, 2.0 * std::numbers::pi * j / m);
    const cplx z = lambda + eps * w;
    // dz = i eps w dtheta, dtheta = 2 pi / m; the 1/(2 pi i) cancels both.
    sum += (eps * w) * (z * id - t).partialPivLu().inverse();
  }
  return sum / static_cast<double>(m);
}

RieszResult riesz_projection(const Operator& t, cplx lambda, double eps, int m) {
  if (!(eps > 0.0)) throw Error(ErrorKind::InvalidArgument, "eps must be positive");
  if (m < 16 || m % 2 != 0) throw Error(ErrorKind::InvalidArgument, "m must be an even integer >= 16");

  const Vector sigma_p = spectrum(t, Algebra::P).values;
  for (Index i = 0; i < sigma_p.size(); ++i) {
    const double d = std::abs(sigma_p(i) - lambda);
    if (std::abs(d - eps) < eps / 2.0)
      throw Error(ErrorKind::ContourTooClose, "eigenvalue at distance " + std::to_string(std::abs(d - eps)) +
                                                  " from the contour (minimum eps/2 = " + std::to_string(eps / 2.0) + ")");
  }
  for (Index i = 0; i < sigma_p.size(); ++i) {
    const double d = std::abs(sigma_p(i) - lambda);
    if (d >= eps && d <= 2.0 * eps)
      throw Error(ErrorKind::NotIsolated, "spectral point at distance " + std::to_string(d) + " lies in [eps, 2 eps]");
  }

  const Matrix q = riesz_quadrature(t.matrix(), lambda, eps, m);
  const Matrix p = riesz_quadrature(t.plus_matrix(), std::conj(lambda), eps, m);
  const Operator qo(t.space(), q);

  RieszResult r{proj_pair_from(qo)};
  r.idempotency_res = la::spectral_norm(q * q - q);
  r.plus_res = la::spectral_norm(qo.plus_matrix() - p);
  // Nonzero singular values of a projection are >= 1.
  const Eigen::VectorXd sv = la::svd(q).values;
  r.range_dim = (sv.array() > 0.5).count();
  return r;
}

VVPlusReport vvplus_diagnostics(const Operator& q) {
  const Matrix& m = q.matrix();
  const Index n = m.rows();
  const double scale = std::max(1.0, la::spectral_norm(m));
  const double idem = la::spectral_norm(m * m - m);
  if (idem > 1e-8 * scale * scale) throw Error(ErrorKind::NotIdempotent, "||Q^2 - Q|| = " + std::to_string(idem));

  const Operator v(q.space(), 2.0 * m - Matrix::Identity(n, n));
  VVPlusReport r;
  // Eigenvalues are taken in L coordinates (a similarity), where V V+ is
  // normal and the nonsymmetric solver is well conditioned.
  const WeightedSpace& ws = *q.space();
  r.spec_vvplus = eigenvalues(ws.weight_sqrt() * (v.matrix() * v.plus_matrix()) * ws.weight_inv_sqrt());
  const Vector sym = eigenvalues(v.matrix() + v.plus_matrix());
  r.min_symmetric = n ? sym.cwiseAbs().minCoeff() : 0.0;
  r.max_imag = n ? r.spec_vvplus.imag().cwiseAbs().maxCoeff() : 0.0;
  r.min_real = n ? r.spec_vvplus.real().minCoeff() : 0.0;
  return r;
}

}  // namespace propsp
