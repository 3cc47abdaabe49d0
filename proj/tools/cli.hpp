#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace propsp::cli {

struct RunConfig {
  std::uint64_t seed = 1;
  int dim = 10;
  int trials = 100;
  double tol = 1e-9;
  std::string format = "json";
  std::string out;  ///< empty means stdout
};

struct SuiteSummary {
  std::string suite;
  int trials = 0;
  double max_residual = 0.0;
  bool pass = false;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"adjoint", "buckholtz", "compat", "krein", "lemma", "gz", "spectra"};
  return names;
}

/// Runs one randomized identity suite. Residuals are normalized by the scale
/// each identity is stated against; pass means every normalized residual is
/// at most cfg.tol and every boolean decision came out as predicted.
SuiteSummary run_suite(const std::string& suite, const RunConfig& cfg);

/// Entry point. Exit codes: 0 success, 1 failed check or postcondition,
/// 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace propsp::cli
