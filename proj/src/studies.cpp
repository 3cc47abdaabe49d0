#include "propsp/studies.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "propsp/compat.hpp"
#include "propsp/error.hpp"
#include "propsp/schatten.hpp"
#include "propsp/spectra.hpp"

namespace propsp {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

double parse_double(const std::string& s) {
  if (s == "nan") return kNaN;
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw Error(ErrorKind::ParseError, "bad number '" + s + "'");
  return v;
}

void require_increasing(const std::vector<long>& list, const char* what) {
  for (std::size_t i = 1; i < list.size(); ++i)
    if (list[i] <= list[i - 1])
      throw Error(ErrorKind::InvalidArgument, std::string(what) + " must be strictly increasing");
}

}  // namespace

std::vector<StudyRow> diverging_vector_study(const std::vector<long>& n_list, double beta, DefiningVector g_kind) {
  if (!(beta > 0.0 && beta <= 0.5))
    throw Error(ErrorKind::BadExponent, "beta must lie in (0, 1/2], got " + format_double(beta));
  require_increasing(n_list, "dimension list");

  std::vector<StudyRow> rows;
  rows.reserve(n_list.size());
  for (long n : n_list) {
    if (n < 2) throw Error(ErrorKind::InvalidArgument, "dimensions must be >= 2");
    // weight diag(i^{-2}) already has spectral norm 1
    Matrix a = Matrix::Zero(n, n);
    Vector g = Vector::Zero(n);
    for (long i = 1; i <= n; ++i) {
      a(i - 1, i - 1) = 1.0 / (static_cast<double>(i) * static_cast<double>(i));
      g(i - 1) = g_kind == DefiningVector::power_decay ? std::pow(static_cast<double>(i), -beta) : (i == 1 ? 1.0 : 0.0);
    }
    const SpacePtr ws = make_space(n, a);
    const Subspace s = complement_L(span(ws, Matrix(g)));
    const CompatReport rep = compat_margin(s);

    StudyRow row;
    row.n = n;
    row.margin_c = rep.margin_c;
    row.q_norm = rep.q_norm;
    row.g_enorm = g.norm();
    row.aux = {{"g_lnorm", norm_L(*ws, g)}, {"residual_cross", rep.residual_cross}};
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<StudyRow> symmetry_truncation_study(const std::vector<long>& k_list) {
  require_increasing(k_list, "size list");
  std::vector<StudyRow> rows;
  for (long k : k_list) {
    if (k < 2 || k % 2 != 0) throw Error(ErrorKind::InvalidArgument, "each k must be even and >= 2");
    Matrix z = Matrix::Identity(k, k);
    for (long i = k / 2; i < k; ++i) z(i, i) = -1.0;

    const ZCriterion zc = z_criterion_margin(z);
    const MatrixSpaceModel model = make_matrix_model(static_cast<int>(2 * k));
    const Matrix q = block_q(z);
    const Operator cq = superop(model, superops::TwoSided{q, q});
    const Subspace s = range_of(cq);
    const Subspace t = kernel_of(cq);
    const VVPlusReport vv = vvplus_diagnostics(cq);

    StudyRow row;
    row.n = k;
    row.margin_c = la::min_singular_value(c_operator(s, t).matrix());
    row.q_norm = compat_margin(s).q_norm;
    row.g_enorm = kNaN;
    row.aux = {{"pair_margin", zc.pair_margin}, {"op_margin", zc.op_margin}, {"min_symmetric", vv.min_symmetric}};
    rows.push_back(std::move(row));
  }
  return rows;
}

void emit(const std::vector<StudyRow>& rows, EmitFormat format, std::ostream& out) {
  if (format == EmitFormat::csv) {
    out << "n,margin_c,q_norm,g_enorm";
    if (!rows.empty())
      for (const auto& [name, value] : rows.front().aux) out << ',' << name;
    out << '\n';
    for (const StudyRow& r : rows) {
      out << r.n << ',' << format_double(r.margin_c) << ',' << format_double(r.q_norm) << ',' << format_double(r.g_enorm);
      for (const auto& [name, value] : r.aux) out << ',' << format_double(value);
      out << '\n';
    }
  } else {
    auto num = [](double v) { return std::isnan(v) ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(v); };
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const StudyRow& r : rows) {
      nlohmann::ordered_json o;
      o["n"] = r.n;
      o["margin_c"] = num(r.margin_c);
      o["q_norm"] = num(r.q_norm);
      o["g_enorm"] = num(r.g_enorm);
      for (const auto& [name, value] : r.aux) o[name] = num(value);
      arr.push_back(std::move(o));
    }
    out << arr.dump(2) << '\n';
  }
  if (!out) throw Error(ErrorKind::IoFailure, "write failed");
}

void emit(const std::vector<StudyRow>& rows, EmitFormat format, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorKind::IoFailure, "cannot open '" + path + "' for writing");
  emit(rows, format, f);
}

std::vector<StudyRow> parse_csv_rows(std::istream& in) {
  auto split = [](const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
  };
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::ParseError, "missing CSV header");
  const auto header = split(line);
  if (header.size() < 4 || header[0] != "n" || header[1] != "margin_c" || header[2] != "q_norm" || header[3] != "g_enorm")
    throw Error(ErrorKind::ParseError, "unexpected CSV header '" + line + "'");

  std::vector<StudyRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != header.size()) throw Error(ErrorKind::ParseError, "row has wrong number of cells");
    StudyRow r;
    r.n = std::stol(cells[0]);
    r.margin_c = parse_double(cells[1]);
    r.q_norm = parse_double(cells[2]);
    r.g_enorm = parse_double(cells[3]);
    for (std::size_t i = 4; i < cells.size(); ++i) r.aux.emplace_back(header[i], parse_double(cells[i]));
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace propsp
