#include <doctest.h>

#include <sstream>

#include "oracles.hpp"
#include "propsp/error.hpp"
#include "propsp/matrix_io.hpp"

using namespace propsp;

TEST_CASE("matrix text round trip is exact") {
  Matrix m(2, 3);
  m << cplx(1.0 / 3.0, -2.0), cplx(0.1, 0.0), cplx(-1e-300, 5e300), cplx(0, 1), cplx(2, 2), cplx(-0.0, 7);
  const Matrix back = parse_matrix(format_matrix(m));
  CHECK(back.rows() == 2);
  CHECK(back.cols() == 3);
  CHECK((back - m).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("matrix text rejects malformed input") {
  CHECK_THROWS_AS(parse_matrix("2 2\n1,0 0,0\n0,0\n"), Error);
  CHECK_THROWS_AS(parse_matrix("1 1\nnan,0\n"), Error);
  CHECK_THROWS_AS(parse_matrix("1 1\ninf,0\n"), Error);
  CHECK_THROWS_AS(parse_matrix("x 1\n1,0\n"), Error);
}

TEST_CASE("parse_complex forms") {
  CHECK(parse_complex("1") == cplx(1, 0));
  CHECK(parse_complex("-0.5") == cplx(-0.5, 0));
  CHECK(parse_complex("2i") == cplx(0, 2));
  CHECK(parse_complex("1+2i") == cplx(1, 2));
  CHECK(parse_complex("1.5e-3-4i") == cplx(1.5e-3, -4));
  CHECK_THROWS_AS(parse_complex("abc"), Error);
  CHECK_THROWS_AS(parse_complex(""), Error);
}

TEST_CASE("parse_matrix_literal") {
  const Matrix d = parse_matrix_literal("diag:1,-1,2i");
  CHECK(d.rows() == 3);
  CHECK(d(2, 2) == cplx(0, 2));
  CHECK(d(0, 1) == cplx(0, 0));

  const Matrix s = parse_matrix_literal("scalar:0.5", 2);
  CHECK(s == Matrix::Identity(2, 2) * 0.5);
  CHECK_THROWS_AS(parse_matrix_literal("scalar:0.5"), Error);
  CHECK_THROWS_AS(parse_matrix_literal("diag:1,2", 3), Error);
  CHECK_THROWS_AS(parse_matrix_literal("bogus:1"), Error);
  try {
    parse_matrix_literal("file:/nonexistent/really");
    FAIL("expected IoFailure");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IoFailure);
  }
}
