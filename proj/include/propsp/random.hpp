#pragma once

#include <cstdint>
#include <random>

#include "propsp/linalg.hpp"

namespace propsp {

/// Seeded instance generator. Every random object in the suites and the CLI
/// comes from one of these, so a seed pins the whole run.
class InstanceRng {
 public:
  explicit InstanceRng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi);
  int uniform_int(int lo, int hi);  ///< inclusive
  cplx normal_complex();

  /// Entries i.i.d. standard complex normal.
  Matrix gaussian(Index rows, Index cols);
  Vector gaussian_vector(Index n);
  /// Haar-distributed unitary (QR of a Gaussian with phase correction).
  Matrix unitary(Index n);
  /// U D U* with log-uniform D in [1e-4, 1], scaled to spectral norm 1.
  Matrix pd_weight(Index n);
  /// U diag(lambda) U* with complex normal eigenvalues.
  Matrix normal_matrix(Index n);
  Matrix normal_matrix(const Vector& eigenvalues);
  /// Random rank-r matrix X Y*.
  Matrix low_rank(Index n, Index r);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

/// Per-trial seed: seed XOR trial index.
inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) { return seed ^ trial; }

}  // namespace propsp
