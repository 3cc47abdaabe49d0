#pragma once

#include <complex>
#include <limits>

#include <Eigen/Dense>

namespace propsp {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Dense helpers shared by every module. All rank decisions are relative to
/// the largest singular value of the input.
namespace la {

struct Svd {
  Eigen::VectorXd values;  ///< descending
  Matrix u;
  Matrix v;
};

/// SVD with a reconstruction check. Divide-and-conquer first; on a failed
/// check it retries on a fixed random rotation of the input and finally
/// falls back to one-sided Jacobi. `full` requests square U and V.
Svd svd(const Matrix& m, bool full = false);

double spectral_norm(const Matrix& m);

/// Smallest of the min(rows, cols) singular values; 0 for an empty matrix.
double min_singular_value(const Matrix& m);

/// sigma_max / sigma_min, or +inf when sigma_min is exactly zero.
double condition_number(const Matrix& m);

Index numerical_rank(const Matrix& m, double rel_tol);

/// Orthonormal basis of the column space.
Matrix orth(const Matrix& m, double rel_tol);

/// Orthonormal basis of the right null space.
Matrix null_space(const Matrix& m, double rel_tol);

/// Orthonormal basis of the orthogonal complement (Euclidean) of the span of
/// the orthonormal columns of `basis`.
Matrix euclidean_complement(const Matrix& basis);

/// Orthonormalize full-column-rank input by thin QR.
Matrix qr_orthonormalize(const Matrix& m);

/// sin of the largest principal angle of span(u) against span(v) measured as
/// ||(I - V V*) U||_2 for orthonormal U, V. Zero when span(u) is inside span(v).
double containment_sine(const Matrix& u, const Matrix& v);

/// Largest principal angle in radians between two equal-dimension spans with
/// orthonormal bases.
double max_principal_angle(const Matrix& u, const Matrix& v);

bool is_hermitian(const Matrix& m, double tol);

/// Greedy nearest-partner matching of two eigenvalue multisets. Returns the
/// largest matched distance, or +inf when the sizes differ.
double multiset_distance(const Vector& a, const Vector& b);

Matrix kron(const Matrix& a, const Matrix& b);

}  // namespace la
}  // namespace propsp
