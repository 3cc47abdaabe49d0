#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "propsp/compat.hpp"

namespace propsp {

/// k-by-k matrices flattened to C^{k^2} by column stacking, with the trace
/// norm on E and <x, y> = Tr(x y*) on L. Under this convention the map
/// x -> a x b has matrix transpose(b) ⊗ a.
struct MatrixSpaceModel {
  int k = 0;
  SpacePtr ws;
};

MatrixSpaceModel make_matrix_model(int k);

Vector vec(const Matrix& x);
Matrix unvec(const Vector& v, int k);

namespace superops {
struct Left { Matrix a; };              ///< x -> a x
struct Right { Matrix b; };             ///< x -> x b
struct TwoSided { Matrix a, b; };       ///< x -> a x b
struct AdZ { Matrix z; };               ///< x -> z* x z
}  // namespace superops

using SuperopKind = std::variant<superops::Left, superops::Right, superops::TwoSided, superops::AdZ>;

/// Flattened k^2-by-k^2 matrix of the superoperator.
Matrix superop_matrix(int k, const SuperopKind& kind);

/// Closed-form plus-adjoint: L_a -> L_{a*}, R_b -> R_{b*}, x -> a x b maps to
/// y -> a* y b*, Ad_z maps to y -> z y z*.
Matrix superop_plus_matrix(int k, const SuperopKind& kind);

/// Throws DimMismatch when an argument is not k-by-k.
Operator superop(const MatrixSpaceModel& model, const SuperopKind& kind);

/// The 2k-by-2k idempotent [[I, z], [0, 0]].
Matrix block_q(const Matrix& z);

struct ZCriterion {
  double pair_margin = 0.0;  ///< min over eigenvalue pairs of |1 + conj(lambda) mu|
  double op_margin = 0.0;    ///< sigma_min(I + Ad_z)
};

ZCriterion z_criterion_margin(const Matrix& z);

struct SylvesterResult {
  bool solvable = false;
  std::optional<Matrix> x;
  double margin = 0.0;    ///< sigma_min of x -> c x - x d
  double residual = 0.0;  ///< ||c x - x d - w||_F when solved
  double spectral_distance = 0.0;  ///< min |lambda(c) - mu(d)|
};

/// Solves c x - x d = w through the flattened system. `solvable` means the
/// spectra of c and d are disjoint at 1e-8 (1 + ||c|| + ||d||). With
/// force_solve, an unsolvable system throws SingularSystem.
SylvesterResult sylvester(const Matrix& c, const Matrix& d, const Matrix& w, bool force_solve = false);

struct CqReport {
  int k = 0;                     ///< size of z
  double direct_margin = 0.0;    ///< compat margin of S with T = S^⊥∩E
  double companion_margin = 0.0; ///< sigma_min(C_{S,T}) with T = N(C_q)
  double q_norm = 0.0;           ///< ||Q_S||_E (trace-norm estimate)
  double pair_margin = 0.0;
  double op_margin = 0.0;
  /// max ||y11 + y12 z*|| over an orthonormal basis of S^⊥∩E (direct form)
  double complement_residual_direct = 0.0;
  /// max ||y11 + z* y12|| over the same basis (block form used in the literature)
  double complement_residual_literature = 0.0;
  bool compatible_direct = false;
};

/// S = { q x q } for q = block_q(z) in the (2k)^2-dimensional model.
CqReport cq_compat_demo(const MatrixSpaceModel& model, const Matrix& z);

struct TwoCompanionsReport {
  std::vector<std::string> violations;  ///< failed preconditions, empty when ok
  double t_fixed_angle = 0.0;      ///< angle(G(T), T)
  double gs_expected_angle = 0.0;  ///< angle(G(S), range of C_{block_q(t)})
  double cond_g = 0.0;
  double cond_g_plus = 0.0;
  double g_plus_residual = 0.0;    ///< ||plus_adjoint(G) - R_{x*}||
  bool gs_companion_of_t = false;
  double transported_pair_margin = 0.0;
  double source_pair_margin = 0.0;
  double transported_direct_margin = 0.0;
  bool ok = false;
};

/// G = R_x with x = diag(z, t) fixes T = N(C_q) and moves S onto the range of
/// C_{block_q(t)}.
TwoCompanionsReport two_companions_demo(const MatrixSpaceModel& model, const Matrix& z, const Matrix& t);

struct AdzNormReport {
  double frob_norm = 0.0;
  double trace_norm_estimate = 0.0;
  double znorm_sq = 0.0;
  bool ok = false;
};

AdzNormReport adz_norm_check(const MatrixSpaceModel& model, const Matrix& z);

}  // namespace propsp
