#pragma once

#include <vector>

#include "propsp/subspaces.hpp"

namespace propsp {

/// E: spectrum on E; L: spectrum of the L-extension; P: spectrum in the
/// algebra of proper operators, sigma_E(T) ∪ conj(sigma_E(T+)).
enum class Algebra { E, L, P };

const char* to_string(Algebra a) noexcept;

struct SpectrumReport {
  Algebra algebra = Algebra::E;
  Vector values;
  /// distance from each value to the nearest other value (inf when alone)
  std::vector<double> gaps;
};

/// Matching tolerance for eigenvalue multisets: 1e-8 (1 + ||T||).
double spectrum_match_tol(const Operator& t);

SpectrumReport spectrum(const Operator& t, Algebra algebra);

/// Raw m-point trapezoidal approximation of (1/2 pi i) ∮ (z - T)^{-1} dz on
/// the circle |z - lambda| = eps with nodes lambda + eps e^{2 pi i j / m}.
/// The node set is closed under reflection in the horizontal line through
/// lambda.
Matrix riesz_quadrature(const Matrix& t, cplx lambda, double eps, int m);

struct RieszResult {
  ProjPair q;
  double idempotency_res = 0.0;  ///< ||Q^2 - Q||
  double plus_res = 0.0;         ///< ||Q+ - Riesz(T+, conj lambda)||
  Index range_dim = 0;
};

/// Throws ContourTooClose when an eigenvalue sits within eps/2 of the circle
/// and NotIsolated when sigma_P meets the annulus eps <= |z - lambda| <= 2 eps.
RieszResult riesz_projection(const Operator& t, cplx lambda, double eps, int m = 64);

struct VVPlusReport {
  Vector spec_vvplus;          ///< eigenvalues of V V+, V = 2Q - I
  double min_symmetric = 0.0;  ///< smallest |eigenvalue| of V + V+
  double max_imag = 0.0;
  double min_real = 0.0;
};

/// Throws NotIdempotent.
VVPlusReport vvplus_diagnostics(const Operator& q);

}  // namespace propsp
