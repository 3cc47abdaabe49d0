#pragma once

#include <optional>

#include "propsp/subspaces.hpp"

namespace propsp {

/// Compatibility measurements for a subspace S and a companion T.
struct CompatReport {
  /// sigma_min of C_{S,T} = P + P+ - I in E coordinates (Frobenius
  /// coordinates for the trace tag).
  double margin_c = 0.0;
  /// ||Q_S||_E
  double q_norm = 0.0;
  bool q_norm_is_estimate = false;
  /// disagreement between C^{-1} P+ and the direct L-orthogonal construction
  double residual_cross = 0.0;
  /// always true at finite dimension; kept for report symmetry
  bool is_compatible = true;
};

/// L-orthogonal projection onto S restricted to E: B (B* A B)^{-1} B* A.
Matrix l_orthogonal_projector(const Subspace& s);

/// C_{S,T} = P_{S//T} + P_{S//T}+ - I. Throws NotComplementary unless T is a
/// proper companion of S.
Operator c_operator(const Subspace& s, const Subspace& t);

struct CompatProjection {
  ProjPair q;                  ///< Q_S with range S and nullspace S^⊥∩E
  Matrix formula;              ///< C^{-1} P+ (empty when suppressed)
  double residual_cross = 0.0; ///< ||C^{-1} P+ - B(B*AB)^{-1}B*A||
  double kappa_c = 1.0;        ///< condition number of C
  double sigma_min_c = 0.0;
  bool formula_used = true;    ///< false when C was too ill-conditioned
};

/// The unique self-plus-adjoint projection onto S, computed as C^{-1} P+ and
/// cross-checked against the direct formula. T defaults to S^⊥∩E.
CompatProjection compat_projection(const Subspace& s, const std::optional<Subspace>& t = std::nullopt);

CompatReport compat_margin(const Subspace& s, const std::optional<Subspace>& t = std::nullopt);

/// R(Q) = S and N(Q) ⊆ S^⊥∩E. Throws NotIdempotent.
bool krein_check(const Subspace& s, const Operator& q, double tol = kTolAngle);

struct BuckholtzReport {
  double res1 = 0.0;  ///< ||(P_S - P_T)(P + P+ - I) - I||_L
  double res2 = 0.0;  ///< ||P_S (P_S - P_T)^{-1} - P||_L
  double kappa = 1.0; ///< condition number of [B_S | B_T]
};

BuckholtzReport buckholtz_verify(const Subspace& s, const Subspace& t);

/// Residual of P_S - P_T = (2 P_{S//T} - I)(P_S + P_T) in the L operator norm,
/// with P_S, P_T the L-orthogonal projections.
double symm_identity_verify(const Subspace& s, const Subspace& t);

struct TransportReport {
  Operator g;               ///< P_{S//T} + P_{T1//S} P_{T//S}
  Operator g_plus_formula;  ///< P_{T^⊥//S^⊥} + P_{S^⊥//T^⊥} P_{S^⊥//T1^⊥}
  double image_s_angle = 0.0;  ///< angle(G(S), S)
  double image_t_angle = 0.0;  ///< angle(G(T), T1)
  double cond_g = 0.0;
  double cond_g_plus = 0.0;
  double plus_residual = 0.0;  ///< ||plus_adjoint(G) - g_plus_formula||
  bool ok = false;
};

/// Operator mapping the companion T onto T1 while fixing S.
TransportReport companion_transport(const Subspace& s, const Subspace& t, const Subspace& t1);

/// d(T1, T2) = ||P_{T1//S} - P_{T2//S}||_P.
double companion_metric(const Subspace& s, const Subspace& t1, const Subspace& t2);

struct AlgebraicLemmaReport {
  bool kernels_span = false;      ///< N(T1) + N(T2) = E
  bool ranges_add = false;        ///< R(T1) + R(T2) = R(T1 + T2)
  bool range_contained = false;   ///< R(T1) ⊆ R(T1 + T2)
  bool equivalence_holds = false; ///< kernels_span == ranges_add
  bool remark_holds = false;      ///< range_contained == ranges_add
};

/// Both sides of: E = N(T1) + N(T2) iff R(T1) + R(T2) = R(T1 + T2), for
/// operators with R(T1) ∩ R(T2) = {0}. Throws RangeOverlap otherwise.
AlgebraicLemmaReport algebraic_lemma_check(const Operator& t1, const Operator& t2, double tol_rank = kTolRank);

}  // namespace propsp
