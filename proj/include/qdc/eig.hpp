#pragma once

// Hermitian eigensolver and the spectral predicates built on it.
//
// The solver is a cyclic complex Jacobi iteration: each sweep walks the
// strict upper triangle in a fixed order and annihilates the pivot with a
// phased Givens rotation. No pivot-size ordering, no randomness, so a given
// input always produces bitwise-identical output. Quadratic convergence
// makes ~10 sweeps plenty at the dimensions used here.

#include <vector>

#include "qdc/matrix.hpp"

namespace qdc {

constexpr double kDefaultTol = 1e-9;

struct EigenDecomposition {
    std::vector<double> eigenvalues;  // ascending, ties keep input order
    Matrix eigenvectors;              // column k pairs with eigenvalues[k]
};

// Requires hermiticity within `tol` (relative); throws NonHermitianInput.
// Reconstruction V diag(w) V^dag matches the hermitized input to ~1e-14.
EigenDecomposition eig_hermitian(const Matrix& a, double tol = kDefaultTol);

// Largest singular value, computed as sqrt(lambda_max(A^dag A)).
double operator_norm(const Matrix& a);

// Normality via the direct defect ||A A^dag - A^dag A||_F <= tol * scale^2.
bool is_normal(const Matrix& a, double tol = kDefaultTol);

// Positive semidefinite: hermitian and min eigenvalue >= -tol * scale.
bool is_psd(const Matrix& a, double tol = kDefaultTol);

double min_eigenvalue(const Matrix& hermitian, double tol = kDefaultTol);

// Common eigenbasis of a commuting hermitian family, by eigendecomposing
// the first matrix and recursively refining inside degenerate clusters with
// the next ones. Deterministic. If the family does not actually commute the
// returned unitary is still a valid basis, it just fails to diagonalize;
// callers decide by checking residuals.
Matrix simultaneous_eigenbasis(const std::vector<Matrix>& hermitians, double tol = kDefaultTol);

}  // namespace qdc
