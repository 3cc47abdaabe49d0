#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "propsp/two_norm.hpp"

namespace propsp {

inline constexpr double kTolRank = 1e-10;
inline constexpr double kTolGap = 1e-10;
inline constexpr double kTolAngle = 1e-8;

/// Closed subspace of E stored by a Euclidean-orthonormal basis. The L
/// geometry always goes through the space's weight explicitly. At finite
/// dimension the L-closure of S is the same column space, so
/// closure(S) ∩ E = S holds by construction.
class Subspace {
 public:
  /// `basis` must have orthonormal columns (checked to 1e-12).
  Subspace(SpacePtr space, Matrix basis, double tol_rank = kTolRank);

  const Matrix& basis() const { return basis_; }
  const SpacePtr& space() const { return space_; }
  Index rank() const { return basis_.cols(); }
  Index ambient_dim() const { return basis_.rows(); }
  double tol_rank() const { return tol_rank_; }

 private:
  SpacePtr space_;
  Matrix basis_;
  double tol_rank_;
};

/// Span of the columns of `vectors`, truncated at tol_rank * sigma_max.
Subspace span(const SpacePtr& space, const Matrix& vectors, double tol_rank = kTolRank);
Subspace span(const SpacePtr& space, std::span<const Vector> vectors, double tol_rank = kTolRank);
Subspace zero_subspace(const SpacePtr& space);
Subspace full_subspace(const SpacePtr& space);

Subspace range_of(const Operator& t, double tol_rank = kTolRank);
Subspace kernel_of(const Operator& t, double tol_rank = kTolRank);
/// Span of T applied to the basis of S.
Subspace image(const Operator& t, const Subspace& s, double tol_rank = kTolRank);

/// S^⊥ ∩ E = { f : g* A f = 0 for all g in S } = A^{-1} (S^⊥Euclid).
Subspace complement_L(const Subspace& s);

/// Smallest singular value of [B_S | B_T]; 0 unless dim S + dim T = n.
double direct_sum_gap(const Subspace& s, const Subspace& t);

/// Largest principal angle; pi/2 when the dimensions differ.
double max_principal_angle(const Subspace& a, const Subspace& b);
bool subspace_equal(const Subspace& a, const Subspace& b, double tol = kTolAngle);
/// a ⊆ b up to angle tol.
bool subspace_contained(const Subspace& a, const Subspace& b, double tol = kTolAngle);

/// An oblique projection P_{S//T} together with its plus-adjoint.
struct ProjPair {
  Operator p;
  Operator p_plus;
  Subspace range_sub;
  Subspace null_sub;
  /// ||p_plus - P_{T^⊥∩E // S^⊥∩E}|| from the independent construction;
  /// zero when no independent construction was made.
  double cross_residual = 0.0;
  /// Condition number of [B_S | B_T] used by the block solve.
  double kappa = 1.0;
};

/// Matrix of the projection onto S along T by the block solve [B_S|B_T] x = f.
Matrix oblique_projection_matrix(const Subspace& s, const Subspace& t, double tol_gap = kTolGap);

/// Throws NotComplementary when the gap is below tol_gap. Cross-checks the
/// plus-adjoint against the projection onto T^⊥∩E along S^⊥∩E.
ProjPair oblique_projection(const Subspace& s, const Subspace& t, double tol_gap = kTolGap);

/// Wraps an idempotent operator: plus-adjoint and numerical range/kernel.
ProjPair proj_pair_from(const Operator& p, double tol_rank = 1e-8);

struct CompanionReport {
  double gap1 = 0.0;  ///< direct_sum_gap(S, T)
  double gap2 = 0.0;  ///< direct_sum_gap(S^⊥∩E, T^⊥∩E)
  bool ok = false;
};

CompanionReport is_proper_companion(const Subspace& s, const Subspace& t, double tol_gap = kTolGap);

/// Modified Gram-Schmidt with one reorthogonalization pass in <.,.>_L.
/// Throws DependentInput.
std::vector<Vector> gram_schmidt_L(const SpacePtr& space, std::span<const Vector> vectors,
                                   double tol_rank = kTolRank);

/// Q = sum_i <., h_i>_L f_i for a biorthogonal system <f_i, h_j>_L = delta_ij.
/// Throws BiorthogonalityViolated.
ProjPair finite_rank_proper_projection(const SpacePtr& space, std::span<const Vector> f_list,
                                       std::span<const Vector> h_list, double tol_bio = 1e-8);

struct NullspacePlusReport {
  /// angle between N(T+) and R(T)^⊥ ∩ E
  double kernel_angle = 0.0;
  /// angle between R(T+) and N(T)^⊥ ∩ E
  double range_angle = 0.0;
  Index kernel_plus_dim = 0;
  Index range_complement_dim = 0;
  bool ok = false;
};

NullspacePlusReport nullspace_plus_check(const Operator& t, double tol = kTolAngle, double tol_rank = kTolRank);

/// Subspace text format: "subspace n r" header followed by the basis in the
/// matrix text format.
void write_subspace(std::ostream& os, const Subspace& s);
Subspace read_subspace(std::istream& is, const SpacePtr& space);

}  // namespace propsp
