#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace propsp {

/// One instance of a truncation study. Fields that do not apply are NaN.
struct StudyRow {
  long n = 0;
  double margin_c = 0.0;
  double q_norm = 0.0;
  double g_enorm = 0.0;
  /// extra named columns, in emission order
  std::vector<std::pair<std::string, double>> aux;
};

enum class DefiningVector {
  power_decay,  ///< g_i = i^{-beta}: in L but not in E as n -> inf
  unit_first,   ///< g = e1: in E, the compatible control
};

/// S_n = {g}^⊥ ∩ E under the weight diag(i^{-2}) for each n. Throws
/// BadExponent unless beta is in (0, 1/2], InvalidArgument unless n_list is
/// strictly increasing.
std::vector<StudyRow> diverging_vector_study(const std::vector<long>& n_list, double beta,
                                             DefiningVector g = DefiningVector::power_decay);

/// z_k = diag(1, ..., 1, -1, ..., -1) for each even k >= 2.
std::vector<StudyRow> symmetry_truncation_study(const std::vector<long>& k_list);

enum class EmitFormat { csv, json };

/// CSV columns are n,margin_c,q_norm,g_enorm followed by the aux names of the
/// first row. JSON is an array of row objects.
void emit(const std::vector<StudyRow>& rows, EmitFormat format, std::ostream& out);
void emit(const std::vector<StudyRow>& rows, EmitFormat format, const std::string& path);

std::vector<StudyRow> parse_csv_rows(std::istream& in);

}  // namespace propsp
