#include "propsp/matrix_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "propsp/error.hpp"

namespace propsp {

namespace {

double parse_real(std::string_view s) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || s.empty())
    throw Error(ErrorKind::ParseError, "not a real number: '" + std::string(s) + "'");
  if (!std::isfinite(v)) throw Error(ErrorKind::ParseError, "non-finite value: '" + std::string(s) + "'");
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

}  // namespace

void write_matrix(std::ostream& os, const Matrix& m) {
  const auto flags = os.flags();
  const auto prec = os.precision();
  os << m.rows() << ' ' << m.cols() << '\n' << std::setprecision(17);
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) os << ' ';
      os << m(i, j).real() << ',' << m(i, j).imag();
    }
    os << '\n';
  }
  os.flags(flags);
  os.precision(prec);
}

std::string format_matrix(const Matrix& m) {
  std::ostringstream os;
  write_matrix(os, m);
  return os.str();
}

Matrix read_matrix(std::istream& is) {
  long rows = -1, cols = -1;
  if (!(is >> rows >> cols) || rows < 0 || cols < 0)
    throw Error(ErrorKind::ParseError, "matrix header must be 'rows cols'");
  Matrix m(rows, cols);
  std::string token;
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      if (!(is >> token))
        throw Error(ErrorKind::ParseError, "matrix truncated at entry (" + std::to_string(i) + "," +
                                               std::to_string(j) + ")");
      const auto parts = split(token, ',');
      if (parts.size() != 2) throw Error(ErrorKind::ParseError, "entry must be 're,im': '" + token + "'");
      m(i, j) = cplx(parse_real(parts[0]), parse_real(parts[1]));
    }
  }
  return m;
}

Matrix parse_matrix(std::string_view text) {
  std::istringstream is{std::string(text)};
  return read_matrix(is);
}

Matrix load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoFailure, "cannot open '" + path + "'");
  return read_matrix(in);
}

cplx parse_complex(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) throw Error(ErrorKind::ParseError, "empty number");
  if (s.back() != 'i') return {parse_real(s), 0.0};
  s.remove_suffix(1);
  // Split at the last sign that is not the leading sign or an exponent sign.
  std::size_t split_at = std::string_view::npos;
  for (std::size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split_at = i;
      break;
    }
  }
  auto imag_of = [](std::string_view t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return parse_real(t.front() == '+' ? t.substr(1) : t);
  };
  if (split_at == std::string_view::npos) return {0.0, imag_of(s)};
  return {parse_real(s.substr(0, split_at)), imag_of(s.substr(split_at))};
}

Matrix parse_matrix_literal(std::string_view literal, std::optional<Index> size) {
  const auto colon = literal.find(':');
  if (colon == std::string_view::npos)
    throw Error(ErrorKind::ParseError, "matrix literal must be diag:..., scalar:... or file:...");
  const std::string_view head = literal.substr(0, colon);
  const std::string_view body = literal.substr(colon + 1);
  Matrix m;
  if (head == "diag") {
    const auto parts = split(body, ',');
    m = Matrix::Zero(static_cast<Index>(parts.size()), static_cast<Index>(parts.size()));
    for (std::size_t i = 0; i < parts.size(); ++i) m(static_cast<Index>(i), static_cast<Index>(i)) = parse_complex(parts[i]);
  } else if (head == "scalar") {
    if (!size) throw Error(ErrorKind::ParseError, "scalar literal needs an explicit size");
    m = parse_complex(body) * Matrix::Identity(*size, *size);
  } else if (head == "file") {
    m = load_matrix(std::string(body));
  } else {
    throw Error(ErrorKind::ParseError, "unknown matrix literal kind '" + std::string(head) + "'");
  }
  if (size && (m.rows() != *size || m.cols() != *size))
    throw Error(ErrorKind::DimMismatch, "matrix literal has size " + std::to_string(m.rows()) + "x" +
                                            std::to_string(m.cols()) + ", expected " + std::to_string(*size));
  return m;
}

}  // namespace propsp
