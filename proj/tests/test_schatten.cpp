#include <doctest.h>

#include "oracles.hpp"
#include "propsp/compat.hpp"
#include "propsp/error.hpp"
#include "propsp/random.hpp"
#include "propsp/schatten.hpp"

using namespace propsp;

namespace {

Matrix dmat(std::initializer_list<cplx> d) {
  Matrix m = Matrix::Zero(static_cast<Index>(d.size()), static_cast<Index>(d.size()));
  Index i = 0;
  for (cplx v : d) m(i, i) = v, ++i;
  return m;
}

double pair_oracle(const Matrix& z) {
  const auto ev = oracle::sorted_eigs(z);
  double best = kInf;
  for (cplx l : ev)
    for (cplx m : ev) best = std::min(best, std::abs(1.0 + std::conj(l) * m));
  return best;
}

}  // namespace

TEST_CASE("vec and superoperator conventions") {
  InstanceRng rng(1);
  const Matrix a = rng.gaussian(3, 3), b = rng.gaussian(3, 3), x = rng.gaussian(3, 3);
  CHECK((unvec(vec(x), 3) - x).norm() == 0.0);
  CHECK(vec(x)(1) == x(1, 0));
  const Vector vx = vec(x);
  CHECK((superop_matrix(3, superops::Left{a}) * vx - vec(a * x)).norm() <= 1e-12 * a.norm() * x.norm());
  CHECK((superop_matrix(3, superops::Right{b}) * vx - vec(x * b)).norm() <= 1e-12 * b.norm() * x.norm());
  CHECK((superop_matrix(3, superops::TwoSided{a, b}) * vx - vec(a * x * b)).norm() <= 1e-12 * a.norm() * b.norm() * x.norm());
  CHECK((superop_matrix(3, superops::AdZ{a}) * vx - vec(a.adjoint() * x * a)).norm() <= 1e-12 * a.squaredNorm() * x.norm());
  CHECK((superop_matrix(3, superops::Left{Matrix::Identity(3, 3)}) - Matrix::Identity(9, 9)).norm() == 0.0);
}

TEST_CASE("closed-form plus adjoints agree with the Frobenius adjoint") {
  InstanceRng rng(2);
  const MatrixSpaceModel model = make_matrix_model(3);
  const Matrix a = rng.gaussian(3, 3), b = rng.gaussian(3, 3);
  const std::vector<SuperopKind> kinds{superops::Left{a}, superops::Right{b}, superops::TwoSided{a, b}, superops::AdZ{a}};
  for (const auto& k : kinds) {
    const Matrix s = superop_matrix(3, k);
    CHECK((superop_plus_matrix(3, k) - s.adjoint()).norm() <= 1e-12 * s.norm());
    CHECK((superop(model, k).plus_matrix() - s.adjoint()).norm() <= 1e-12 * s.norm());
  }
  CHECK_THROWS_AS(superop(model, superops::Left{Matrix::Identity(2, 2)}), Error);
}

TEST_CASE("block_q") {
  const Matrix q0 = block_q(Matrix::Zero(2, 2));
  CHECK(q0 == dmat({1, 1, 0, 0}));
  InstanceRng rng(3);
  const Matrix q = block_q(rng.gaussian(2, 2));
  CHECK((q * q - q).norm() <= 1e-14);
}

TEST_CASE("z criterion") {
  const ZCriterion sym = z_criterion_margin(dmat({1, -1}));
  CHECK(sym.pair_margin == 0.0);
  CHECK(sym.op_margin <= 1e-12);
  CHECK(z_criterion_margin(dmat({0.5, 0.5})).pair_margin == doctest::Approx(1.25).epsilon(1e-12));
  CHECK(z_criterion_margin(Matrix::Identity(3, 3)).pair_margin == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(z_criterion_margin(dmat({1.1, 1.1, -0.9, -0.9})).pair_margin == doctest::Approx(0.01).epsilon(1e-10));

  InstanceRng rng(4);
  for (int i = 0; i < 50; ++i) {
    const Matrix z = rng.normal_matrix(rng.uniform_int(2, 4));
    const ZCriterion c = z_criterion_margin(z);
    const double ref = pair_oracle(z);
    CHECK(c.pair_margin == doctest::Approx(ref).epsilon(1e-10));
    // for normal z, I + Ad_z is normal with eigenvalues 1 + lambda conj(mu)
    CHECK(std::abs(c.op_margin - ref) <= 1e-8);
    const Matrix ad = oracle::kron(z.transpose(), z.adjoint());
    CHECK(std::abs(c.op_margin - oracle::sigma_min(Matrix::Identity(ad.rows(), ad.cols()) + ad)) <= 1e-10);
  }
}

TEST_CASE("Sylvester solves") {
  const SylvesterResult r = sylvester(dmat({1, 2}), dmat({3, 4}), Matrix::Ones(2, 2));
  REQUIRE(r.solvable);
  CHECK(r.residual <= 1e-12);
  // diagonal case: x_ij = w_ij / (c_i - d_j)
  CHECK(std::abs((*r.x)(0, 1) - cplx(1.0 / (1 - 4), 0)) <= 1e-12);
  CHECK(std::abs((*r.x)(1, 0) - cplx(1.0 / (2 - 3), 0)) <= 1e-12);

  const SylvesterResult same = sylvester(dmat({1, 2}), dmat({1, 2}), Matrix::Ones(2, 2));
  CHECK_FALSE(same.solvable);
  CHECK(same.margin <= 1e-14);
  CHECK_FALSE(same.x.has_value());
  CHECK_THROWS_AS(sylvester(dmat({1, 2}), dmat({1, 2}), Matrix::Ones(2, 2), true), Error);

  InstanceRng rng(5);
  for (int i = 0; i < 30; ++i) {
    const Index k = rng.uniform_int(2, 5);
    const Matrix c = rng.normal_matrix(k), d = rng.normal_matrix(k) + Matrix::Identity(k, k) * 10.0;
    const Matrix w = rng.gaussian(k, k);
    const SylvesterResult s = sylvester(c, d, w);
    REQUIRE(s.solvable);
    CHECK((c * (*s.x) - (*s.x) * d - w).norm() <= 1e-8);
    CHECK(s.margin == doctest::Approx(oracle::sigma_min(oracle::kron(Matrix::Identity(k, k), c) -
                                                        oracle::kron(d.transpose(), Matrix::Identity(k, k))))
                          .epsilon(1e-8));
  }
}

TEST_CASE("complement of {q x q} satisfies the direct block condition") {
  InstanceRng rng(6);
  for (int k : {1, 2, 3}) {
    const Matrix z = rng.gaussian(k, k);
    const Matrix q = block_q(z);
    const int n = 2 * k;
    // brute force: span of vec(q E_ij q), orthogonal complement by full SVD
    Matrix cols(n * n, n * n);
    for (int j = 0; j < n * n; ++j) {
      Matrix e = Matrix::Zero(n, n);
      e(j % n, j / n) = 1;
      cols.col(j) = oracle::vec_matrix(q * e * q);
    }
    Eigen::JacobiSVD<Matrix> svd(cols.adjoint(), Eigen::ComputeFullV);
    const Index r = (svd.singularValues().array() > 1e-10).count();
    CHECK(r == k * k);
    const Matrix perp = svd.matrixV().rightCols(n * n - r);
    double direct = 0, literature = 0;
    for (Index c = 0; c < perp.cols(); ++c) {
      const Matrix y = Eigen::Map<const Matrix>(perp.col(c).data(), n, n);
      const Matrix y11 = y.topLeftCorner(k, k), y12 = y.topRightCorner(k, k);
      direct = std::max(direct, (y11 + y12 * z.adjoint()).norm());
      literature = std::max(literature, (y11 + z.adjoint() * y12).norm());
    }
    CHECK(direct <= 1e-10);
    const CqReport rep = cq_compat_demo(make_matrix_model(n), z);
    CHECK(rep.complement_residual_direct <= 1e-10);
    if (k > 1) {
      CHECK(literature > 1e-3);
      CHECK(rep.complement_residual_literature > 1e-3);
    }
  }
}

TEST_CASE("cq demo") {
  const CqReport zero = cq_compat_demo(make_matrix_model(4), Matrix::Zero(2, 2));
  CHECK(zero.direct_margin == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(zero.compatible_direct);

  const CqReport half = cq_compat_demo(make_matrix_model(4), dmat({0.5, 0.5}));
  CHECK(half.direct_margin > 0);
  CHECK(half.pair_margin == doctest::Approx(1.25).epsilon(1e-12));

  const CqReport sym = cq_compat_demo(make_matrix_model(4), dmat({1, -1}));
  CHECK(sym.pair_margin == 0.0);
  CHECK(sym.direct_margin > 0);
  CHECK(sym.compatible_direct);
  CHECK_THROWS_AS(cq_compat_demo(make_matrix_model(3), dmat({1, -1})), Error);
}

TEST_CASE("two companions") {
  const TwoCompanionsReport r = two_companions_demo(make_matrix_model(4), dmat({0.5, 0.5}), dmat({1, -1}));
  CHECK(r.violations.empty());
  CHECK(r.t_fixed_angle <= 1e-8);
  CHECK(r.gs_expected_angle <= 1e-8);
  CHECK(r.transported_pair_margin <= 1e-12);
  CHECK(r.source_pair_margin == doctest::Approx(1.25));
  CHECK(r.ok);

  const TwoCompanionsReport id = two_companions_demo(make_matrix_model(4), dmat({0.5, 0.5}), Matrix::Identity(2, 2));
  CHECK(id.transported_pair_margin == doctest::Approx(2.0));
  CHECK(id.ok);

  const TwoCompanionsReport bad = two_companions_demo(make_matrix_model(4), dmat({1, -1}), dmat({1, 2}));
  CHECK(bad.violations.size() == 2);
  CHECK_FALSE(bad.ok);
}

TEST_CASE("norm of Ad_z") {
  const AdzNormReport id = adz_norm_check(make_matrix_model(2), Matrix::Identity(2, 2));
  CHECK(id.frob_norm == doctest::Approx(1.0));
  CHECK(id.trace_norm_estimate == doctest::Approx(1.0).epsilon(1e-8));
  const AdzNormReport d = adz_norm_check(make_matrix_model(2), dmat({2, 3}));
  CHECK(d.frob_norm == doctest::Approx(9.0).epsilon(1e-12));
  CHECK(d.znorm_sq == doctest::Approx(9.0).epsilon(1e-12));
  CHECK(d.ok);
  InstanceRng rng(7);
  const Matrix z = rng.gaussian(4, 4);
  const AdzNormReport r = adz_norm_check(make_matrix_model(4), z);
  CHECK(std::abs(r.frob_norm - r.znorm_sq) <= 1e-10 * r.znorm_sq);
  CHECK(r.trace_norm_estimate <= r.znorm_sq * (1 + 1e-10));
  CHECK(r.trace_norm_estimate >= r.znorm_sq * (1 - 1e-6));
}
