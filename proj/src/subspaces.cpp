#include "propsp/subspaces.hpp"

#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <string>

#include "propsp/error.hpp"
#include "propsp/matrix_io.hpp"

namespace propsp {

namespace {

constexpr double kTolOrthonormal = 1e-12;
// Cross-check between the plus-adjoint and the independently built
// projection onto T^⊥∩E along S^⊥∩E, relative to the conditioning of the two
// block solves.
constexpr double kTolCross = 1e-9;

Matrix stack(std::span<const Vector> vectors, Index n) {
  Matrix m(n, static_cast<Index>(vectors.size()));
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    if (vectors[j].size() != n)
      throw Error(ErrorKind::DimMismatch, "vector " + std::to_string(j) + " has length " +
                                              std::to_string(vectors[j].size()) + ", expected " + std::to_string(n));
    m.col(static_cast<Index>(j)) = vectors[j];
  }
  return m;
}

void require_same_space(const Subspace& a, const Subspace& b) {
  if (a.space() != b.space() && a.ambient_dim() != b.ambient_dim())
    throw Error(ErrorKind::DimMismatch, "subspaces live in different spaces");
}

}  // namespace

Subspace::Subspace(SpacePtr space, Matrix basis, double tol_rank)
    : space_(std::move(space)), basis_(std::move(basis)), tol_rank_(tol_rank) {
  if (!space_) throw Error(ErrorKind::InvalidArgument, "subspace needs a space");
  if (basis_.rows() != space_->dim())
    throw Error(ErrorKind::DimMismatch, "basis has " + std::to_string(basis_.rows()) + " rows, space dimension is " +
                                            std::to_string(space_->dim()));
  if (basis_.cols() > 0) {
    const double err = (basis_.adjoint() * basis_ - Matrix::Identity(basis_.cols(), basis_.cols())).cwiseAbs().maxCoeff();
    if (err > kTolOrthonormal * std::max<double>(1.0, static_cast<double>(basis_.rows()) / 16.0))
      throw Error(ErrorKind::InvalidArgument, "basis columns are not orthonormal (error " + std::to_string(err) + ")");
  }
}

Subspace span(const SpacePtr& space, const Matrix& vectors, double tol_rank) {
  if (vectors.rows() != space->dim()) throw Error(ErrorKind::DimMismatch, "spanning vectors have wrong length");
  return {space, la::orth(vectors, tol_rank), tol_rank};
}

Subspace span(const SpacePtr& space, std::span<const Vector> vectors, double tol_rank) {
  return span(space, stack(vectors, space->dim()), tol_rank);
}

Subspace zero_subspace(const SpacePtr& space) { return {space, Matrix(space->dim(), 0)}; }

Subspace full_subspace(const SpacePtr& space) { return {space, Matrix::Identity(space->dim(), space->dim())}; }

Subspace range_of(const Operator& t, double tol_rank) { return span(t.space(), t.matrix(), tol_rank); }

Subspace kernel_of(const Operator& t, double tol_rank) {
  return {t.space(), la::null_space(t.matrix(), tol_rank), tol_rank};
}

Subspace image(const Operator& t, const Subspace& s, double tol_rank) {
  return span(t.space(), Matrix(t.matrix() * s.basis()), tol_rank);
}

Subspace complement_L(const Subspace& s) {
  const Matrix w = la::euclidean_complement(s.basis());
  return {s.space(), la::qr_orthonormalize(s.space()->solve_weight(w)), s.tol_rank()};
}

double direct_sum_gap(const Subspace& s, const Subspace& t) {
  require_same_space(s, t);
  if (s.rank() + t.rank() != s.ambient_dim()) return 0.0;
  if (s.ambient_dim() == 0) return 1.0;
  Matrix m(s.ambient_dim(), s.ambient_dim());
  m << s.basis(), t.basis();
  return la::min_singular_value(m);
}

double max_principal_angle(const Subspace& a, const Subspace& b) {
  require_same_space(a, b);
  if (a.rank() != b.rank()) return std::numbers::pi / 2.0;
  return la::max_principal_angle(a.basis(), b.basis());
}

bool subspace_equal(const Subspace& a, const Subspace& b, double tol) {
  return a.rank() == b.rank() && max_principal_angle(a, b) <= tol;
}

bool subspace_contained(const Subspace& a, const Subspace& b, double tol) {
  require_same_space(a, b);
  if (a.rank() > b.rank()) return false;
  return std::asin(la::containment_sine(a.basis(), b.basis())) <= tol;
}

Matrix oblique_projection_matrix(const Subspace& s, const Subspace& t, double tol_gap) {
  const double gap = direct_sum_gap(s, t);
  if (!(gap > tol_gap))
    throw Error(ErrorKind::NotComplementary, "direct-sum gap " + std::to_string(gap) + " (dims " +
                                                 std::to_string(s.rank()) + " + " + std::to_string(t.rank()) +
                                                 ", n = " + std::to_string(s.ambient_dim()) + ")");
  const Index n = s.ambient_dim();
  Matrix m(n, n);
  m << s.basis(), t.basis();
  const Matrix inv = m.partialPivLu().inverse();
  return s.basis() * inv.topRows(s.rank());
}

ProjPair oblique_projection(const Subspace& s, const Subspace& t, double tol_gap) {
  Operator p(s.space(), oblique_projection_matrix(s, t, tol_gap));
  Operator p_plus = plus_adjoint(p);
  const Subspace s_perp = complement_L(s);
  const Subspace t_perp = complement_L(t);
  const Matrix independent = oblique_projection_matrix(t_perp, s_perp, 0.0);

  Matrix m(s.ambient_dim(), s.ambient_dim());
  m << s.basis(), t.basis();
  const double kappa = la::condition_number(m);
  const double cross = la::spectral_norm(p_plus.matrix() - independent);
  const double scale = std::max(1.0, la::spectral_norm(independent));
  if (cross > kTolCross * kappa * scale)
    throw Error(ErrorKind::PostconditionFailed, "plus-adjoint of P_{S//T} disagrees with P_{T^⊥//S^⊥} by " +
                                                    std::to_string(cross));
  return ProjPair{std::move(p), std::move(p_plus), s, t, cross, kappa};
}

ProjPair proj_pair_from(const Operator& p, double tol_rank) {
  Operator p_plus = plus_adjoint(p);
  Subspace range = range_of(p, tol_rank);
  Subspace kernel = kernel_of(p, tol_rank);
  return ProjPair{p, std::move(p_plus), std::move(range), std::move(kernel), 0.0, 1.0};
}

CompanionReport is_proper_companion(const Subspace& s, const Subspace& t, double tol_gap) {
  CompanionReport r;
  r.gap1 = direct_sum_gap(s, t);
  r.gap2 = direct_sum_gap(complement_L(s), complement_L(t));
  r.ok = r.gap1 > tol_gap && r.gap2 > tol_gap;
  return r;
}

std::vector<Vector> gram_schmidt_L(const SpacePtr& space, std::span<const Vector> vectors, double tol_rank) {
  const Matrix input = stack(vectors, space->dim());
  if (la::numerical_rank(input, tol_rank) < input.cols())
    throw Error(ErrorKind::DependentInput, "input vectors are linearly dependent at tol_rank " + std::to_string(tol_rank));

  const WeightedSpace& ws = *space;
  std::vector<Vector> out;
  out.reserve(vectors.size());
  for (const Vector& v0 : vectors) {
    Vector v = v0;
    for (int pass = 0; pass < 2; ++pass)
      for (const Vector& q : out) v -= inner_L(ws, v, q) * q;
    const double nv = norm_L(ws, v);
    if (!(nv > 0.0)) throw Error(ErrorKind::DependentInput, "vector collapsed during orthogonalization");
    out.push_back(v / nv);
  }
  return out;
}

ProjPair finite_rank_proper_projection(const SpacePtr& space, std::span<const Vector> f_list,
                                       std::span<const Vector> h_list, double tol_bio) {
  if (f_list.size() != h_list.size())
    throw Error(ErrorKind::DimMismatch, "f and h lists must have equal length");
  const Index n = space->dim();
  const Matrix f = stack(f_list, n);
  const Matrix h = stack(h_list, n);
  const Matrix& a = space->weight();

  // bio(i, j) = <f_j, h_i>_L
  const Matrix bio = h.adjoint() * a * f;
  const Index m = f.cols();
  const double err = m ? (bio - Matrix::Identity(m, m)).cwiseAbs().maxCoeff() : 0.0;
  if (err > tol_bio)
    throw Error(ErrorKind::BiorthogonalityViolated, "max |<f_i, h_j>_L - delta_ij| = " + std::to_string(err));

  Operator q(space, f * h.adjoint() * a);
  Operator q_plus_formula(space, h * f.adjoint() * a);
  const double cross = la::spectral_norm(q.plus_matrix() - q_plus_formula.matrix());
  const Subspace range = span(space, f);
  const Subspace kernel = complement_L(span(space, h));
  return ProjPair{q, std::move(q_plus_formula), range, kernel, cross, la::condition_number(f)};
}

NullspacePlusReport nullspace_plus_check(const Operator& t, double tol, double tol_rank) {
  const Operator tp = plus_adjoint(t);
  const Subspace kernel_plus = kernel_of(tp, tol_rank);
  const Subspace range_perp = complement_L(range_of(t, tol_rank));
  const Subspace range_plus = range_of(tp, tol_rank);
  const Subspace kernel_perp = complement_L(kernel_of(t, tol_rank));

  NullspacePlusReport r;
  r.kernel_angle = max_principal_angle(kernel_plus, range_perp);
  r.range_angle = max_principal_angle(range_plus, kernel_perp);
  r.kernel_plus_dim = kernel_plus.rank();
  r.range_complement_dim = range_perp.rank();
  r.ok = r.kernel_angle <= tol && r.range_angle <= tol;
  return r;
}

void write_subspace(std::ostream& os, const Subspace& s) {
  os << "subspace " << s.ambient_dim() << ' ' << s.rank() << '\n';
  write_matrix(os, s.basis());
}

Subspace read_subspace(std::istream& is, const SpacePtr& space) {
  std::string tag;
  long n = -1, r = -1;
  if (!(is >> tag >> n >> r) || tag != "subspace" || n < 0 || r < 0 || r > n)
    throw Error(ErrorKind::ParseError, "subspace header must be 'subspace n r'");
  if (n != space->dim()) throw Error(ErrorKind::DimMismatch, "subspace dimension does not match the space");
  const Matrix basis = read_matrix(is);
  if (basis.rows() != n || basis.cols() != r)
    throw Error(ErrorKind::ParseError, "basis shape does not match the subspace header");
  // an orthonormal basis is kept verbatim so write/read is exact
  if (r > 0 && (basis.adjoint() * basis - Matrix::Identity(r, r)).cwiseAbs().maxCoeff() <= kTolOrthonormal)
    return {space, basis};
  Subspace s = span(space, basis);
  if (s.rank() != r) throw Error(ErrorKind::ParseError, "basis columns are linearly dependent");
  return s;
}

}  // namespace propsp
