#pragma once

#include <cstdint>
#include <memory>
#include <mutex>

#include "propsp/linalg.hpp"

namespace propsp {

/// Which norm E carries. `trace(k)` identifies C^{k*k} with k-by-k matrices
/// (column stacking) under the trace norm; the weight must then be I.
struct ENorm {
  enum class Kind { euclid, trace };
  Kind kind = Kind::euclid;
  int k = 0;

  static ENorm euclid() { return {}; }
  static ENorm trace(int k) { return {Kind::trace, k}; }
  bool is_trace() const { return kind == Kind::trace; }
};

/// Finite model of a Banach space E densely embedded in a Hilbert space L:
/// E = C^n with the chosen E-norm, L = C^n with <f, g>_L = g* A f.
class WeightedSpace {
 public:
  Index dim() const { return weight_.rows(); }
  const Matrix& weight() const { return weight_; }
  ENorm enorm() const { return enorm_; }
  const Matrix& weight_sqrt() const { return sqrt_; }
  const Matrix& weight_inv_sqrt() const { return inv_sqrt_; }
  double weight_norm() const { return weight_norm_; }
  bool identity_weight() const { return identity_; }

  /// A^{-1} rhs.
  Matrix solve_weight(const Matrix& rhs) const;

 private:
  friend std::shared_ptr<const WeightedSpace> make_space(Index, const Matrix&, ENorm);
  WeightedSpace() = default;

  Matrix weight_;
  Matrix sqrt_;
  Matrix inv_sqrt_;
  Eigen::LLT<Matrix> chol_;
  double weight_norm_ = 1.0;
  bool identity_ = false;
  ENorm enorm_;
};

using SpacePtr = std::shared_ptr<const WeightedSpace>;

inline constexpr double kTolPd = 1e-12;

/// Validates and Hermitian-symmetrizes A. Throws NotPositiveDefinite,
/// NormCapViolated, DimMismatch, NonIdentityWeightForTrace.
SpacePtr make_space(Index n, const Matrix& a, ENorm enorm = ENorm::euclid());
SpacePtr euclidean_space(Index n);

/// <f, g>_L = g* A f, linear in f.
cplx inner_L(const WeightedSpace& ws, const Vector& f, const Vector& g);
double norm_L(const WeightedSpace& ws, const Vector& f);

/// Norm of a vector in E (Euclidean or trace norm of the unflattened matrix).
double norm_E(const WeightedSpace& ws, const Vector& f);

/// A square matrix bound to a space. The plus-adjoint A^{-1} T* A is computed
/// on first use and shared between copies.
class Operator {
 public:
  Operator(SpacePtr space, Matrix m);

  const Matrix& matrix() const { return m_; }
  const SpacePtr& space() const { return space_; }
  Index dim() const { return m_.rows(); }
  const Matrix& plus_matrix() const;

 private:
  struct PlusCache {
    std::once_flag once;
    Matrix plus;
  };
  SpacePtr space_;
  Matrix m_;
  std::shared_ptr<PlusCache> cache_;
};

Operator identity_operator(const SpacePtr& space);
Operator plus_adjoint(const Operator& t);
Operator compose(const Operator& a, const Operator& b);

enum class NormKind { E, L };

struct NormValue {
  double value = 0.0;
  bool is_estimate = false;
};

/// Operator norm of a matrix acting on the space. L: exact spectral norm of
/// A^{1/2} T A^{-1/2}. E/euclid: exact spectral norm. E/trace: lower-bound
/// estimate from ascent over rank-one unit-trace-norm inputs.
NormValue opnorm(const WeightedSpace& ws, const Matrix& t, NormKind which);
NormValue opnorm(const Operator& t, NormKind which);

/// ||T||_E + ||T+||_E.
double proper_norm(const Operator& t);

struct TraceNormEstimatorOptions {
  int restarts = 50;
  int iterations = 200;
  std::uint64_t seed = 0x7472616365ULL;
};

/// Lower bound for the trace-norm-to-trace-norm norm of a k^2-by-k^2
/// superoperator, maximized over extreme points u v* of the unit ball.
double trace_norm_superop_estimate(const Matrix& superop, int k, const TraceNormEstimatorOptions& opts = {});

struct GzReport {
  double lhs = 0.0;   ///< ||T||_L
  double rhs = 0.0;   ///< min(||T+ T||_E, ||T T+||_E)
  bool holds = false; ///< lhs <= rhs + tol
  /// lhs^2 <= rhs + tol, which holds for every operator
  bool sharp_holds = false;
  /// rhs came from the trace-norm estimator, so `holds` is indicative only
  bool advisory = false;
};

GzReport gz_bound_check(const Operator& t, double tol = 1e-10);

/// ||T+ - T||_E <= tol (1 + ||T||_E).
bool is_symmetrizable(const Operator& t, double tol = 1e-10);

/// ||G* A G - A||_2 <= tol.
bool is_L_isometric(const Operator& g, double tol = 1e-10);

/// exp(iX) through the eigendecomposition of the L-representation.
Operator exp_i(const Operator& x);

}  // namespace propsp
