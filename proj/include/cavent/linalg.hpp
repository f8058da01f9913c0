// linalg.hpp — dense complex kernels: Kronecker product, matrix exponential,
// Hermitian eigenvalues, rank-1 null-space extraction, vectorization helpers.

#pragma once

#include <Eigen/Dense>

#include <complex>

namespace cavent {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Complex = std::complex<double>;

}  // namespace cavent

namespace cavent::linalg {

bool all_finite(const Matrix& m);

// Entry ((i*rb+k),(j*cb+l)) = a(i,j)*b(k,l).
Matrix kron(const Matrix& a, const Matrix& b);

// exp(m) for square m, non-Hermitian inputs allowed (Liouvillians).
Matrix matexp(const Matrix& m);

// Real eigenvalues of a Hermitian matrix, sorted descending.
// Throws if max |h - h^dag| entry exceeds herm_tol.
RealVector hermitian_eigvals(const Matrix& h, double herm_tol = 1e-10);

// Unit-norm v with m*v ~ 0 for a matrix of numerical rank deficiency exactly 1
// (smallest singular value <= rank_tol * largest, second smallest above it).
// Phase convention: the largest-magnitude entry is made real positive.
Vector null_vector(const Matrix& m, double rank_tol = 1e-10);

// Column-stacking vectorization, fixed globally so superoperators agree:
// vec(rho)(i + rows*j) = rho(i,j), and vec(A rho B) = (B^T kron A) vec(rho).
Vector vec(const Matrix& rho);
Matrix unvec(const Vector& v, Eigen::Index rows, Eigen::Index cols);

}  // namespace cavent::linalg
