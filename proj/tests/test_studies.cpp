#include <doctest.h>

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "propsp/error.hpp"
#include "propsp/studies.hpp"

using namespace propsp;

namespace {

double aux(const StudyRow& r, const std::string& name) {
  for (const auto& [k, v] : r.aux)
    if (k == name) return v;
  FAIL("missing column " << name);
  return 0;
}

}  // namespace

TEST_CASE("diverging vector study") {
  const auto rows = diverging_vector_study({8, 16, 32, 64}, 0.5);
  REQUIRE(rows.size() == 4);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    double harmonic = 0;
    for (long j = 1; j <= rows[i].n; ++j) harmonic += 1.0 / static_cast<double>(j);
    CHECK(rows[i].g_enorm == doctest::Approx(std::sqrt(harmonic)).epsilon(1e-13));
    double l2 = 0;
    for (long j = 1; j <= rows[i].n; ++j) l2 += std::pow(static_cast<double>(j), -3.0);
    CHECK(aux(rows[i], "g_lnorm") == doctest::Approx(std::sqrt(l2)).epsilon(1e-12));
    // ||I - g g* A / (g* A g)||_2, with the rank-one part of norm ||g|| ||A g|| / (g* A g)
    const Index n = rows[i].n;
    Matrix a = Matrix::Zero(n, n);
    Vector g(n);
    for (Index j = 0; j < n; ++j) {
      a(j, j) = 1.0 / double((j + 1) * (j + 1));
      g(j) = std::pow(double(j + 1), -0.5);
    }
    const Matrix q = Matrix::Identity(n, n) - g * (g.adjoint() * a) / (g.adjoint() * a * g)(0, 0);
    CHECK(rows[i].q_norm == doctest::Approx(oracle::norm2(q)).epsilon(1e-9));
    if (i > 0) {
      CHECK(rows[i].g_enorm > rows[i - 1].g_enorm);
      CHECK(rows[i].q_norm >= rows[i - 1].q_norm - 1e-12);
    }
  }
  CHECK(rows[3].g_enorm / rows[0].g_enorm >= 1.2);
}

TEST_CASE("control vector keeps the norm constant") {
  const auto rows = diverging_vector_study({8, 16, 32, 64}, 0.5, DefiningVector::unit_first);
  for (const auto& r : rows) {
    CHECK(r.q_norm == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.g_enorm == 1.0);
  }
}

TEST_CASE("diverging study parameter checks") {
  CHECK_THROWS_AS(diverging_vector_study({8, 16}, 0.9), Error);
  CHECK_THROWS_AS(diverging_vector_study({8, 16}, 0.0), Error);
  CHECK_THROWS_AS(diverging_vector_study({16, 8}, 0.5), Error);
  CHECK_THROWS_AS(diverging_vector_study({1, 8}, 0.5), Error);
  try {
    diverging_vector_study({8}, 0.9);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BadExponent);
  }
}

TEST_CASE("symmetry truncation study") {
  const auto rows = symmetry_truncation_study({2, 4});
  REQUIRE(rows.size() == 2);
  for (const auto& r : rows) {
    CHECK(aux(r, "pair_margin") == 0.0);
    CHECK(aux(r, "op_margin") <= 1e-12);
    CHECK(std::isnan(r.g_enorm));
    CHECK(r.margin_c > 0);
  }
  CHECK_THROWS_AS(symmetry_truncation_study({3}), Error);
}

TEST_CASE("study emission round trip") {
  const auto rows = diverging_vector_study({4, 8}, 0.25);
  std::stringstream ss;
  emit(rows, EmitFormat::csv, ss);
  const std::string text = ss.str();
  CHECK(text.rfind("n,margin_c,q_norm,g_enorm,g_lnorm,residual_cross\n", 0) == 0);
  const auto back = parse_csv_rows(ss);
  REQUIRE(back.size() == 2);
  CHECK(back[1].n == 8);
  CHECK(back[1].q_norm == rows[1].q_norm);
  CHECK(back[1].aux[0].second == rows[1].aux[0].second);

  std::stringstream js;
  emit(symmetry_truncation_study({2}), EmitFormat::json, js);
  CHECK(js.str().find("\"g_enorm\": null") != std::string::npos);

  std::stringstream nan_csv;
  emit(symmetry_truncation_study({2}), EmitFormat::csv, nan_csv);
  const auto nan_back = parse_csv_rows(nan_csv);
  CHECK(std::isnan(nan_back[0].g_enorm));
}
