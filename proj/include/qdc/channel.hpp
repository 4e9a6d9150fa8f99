#pragma once

// Quantum channels in Kraus form plus the Choi-matrix conversions.
//
// Conventions. A channel L on n x n matrices is L(A) = sum_k X_k A X_k^dag
// with sum_k X_k^dag X_k = I. Its Choi matrix is the n^2 x n^2 block matrix
//   J = sum_ij E_ij (x) L(E_ij),
// i.e. row index (i, r) = i*n + r with i the input-copy index and r the
// output index. L is completely positive iff J >= 0, trace preserving iff
// the partial trace of J over the output factor is I.
//
// Three structured families get dedicated constructors:
//  * isotropic:  L = w G + (1 - w) Tr(.) I/n, where G conjugates by a
//    unitary or composes transposition with one. The mixing weight w keeps
//    J positive for -1/(n^2-1) <= w <= 1 on the unitary branch and
//    -1/(n-1) <= w <= 1/(n+1) on the transpose branch.
//  * completely decohering:  L(A) = sum_i Tr(W_i A) |e_i><e_i| for a POVM
//    {W_i} and an orthonormal basis {e_i}; the output algebra is diagonal.
//  * qubit normal form:  L(A) = U [ D(A) + a12 X + a21 X^dag ] U^dag with
//    D(A) = diag(l a11 + (1-l) a22, (1-l) a11 + l a22) and
//    X = [[sqrt(l(1-l)) alpha, l beta], [(1-l) gamma, -sqrt(l(1-l)) alpha]].
//    Complete positivity is exactly contractivity of
//    S = [[alpha, beta], [gamma, -alpha]].

#include <functional>
#include <vector>

#include "qdc/eig.hpp"
#include "qdc/matrix.hpp"

namespace qdc {

struct QuantumChannel {
    int dim = 0;
    std::vector<Matrix> kraus;
};

struct ChoiMatrix {
    int dim = 0;   // channel dimension n; the matrix is n^2 x n^2
    Matrix m;
};

struct CptpReport {
    bool cp = false;
    bool tp = false;
    bool unital = false;
    double min_choi_eig = 0.0;
};

enum class IsotropicBranch { Unitary, Transpose };

struct IsotropicParams {
    Matrix unitary;
    IsotropicBranch branch = IsotropicBranch::Unitary;
    double weight = 0.0;
};

struct DecoheringParams {
    std::vector<Matrix> povm;  // n effects, PSD, summing to I
    Matrix basis;              // unitary; column i is the output basis vector
};

struct QubitCpuParams {
    Matrix unitary;       // 2 x 2
    double lambda = 0.5;  // diagonal mixing weight, gauge-fixed to >= 1/2 by fits
    cd alpha, beta, gamma;
};

Matrix apply(const QuantumChannel& ch, const Matrix& a);

QuantumChannel compose(const QuantumChannel& outer, const QuantumChannel& inner);

ChoiMatrix choi_from_kraus(const QuantumChannel& ch);

// Assembles the Choi matrix of an arbitrary linear map from its action on
// matrix units. No positivity is implied; feed the result to
// kraus_from_choi to certify and convert.
ChoiMatrix choi_from_action(int n, const std::function<Matrix(const Matrix&)>& action);

// Eigendecomposes J, keeps eigenvalues above 1e-12, and rebuilds Kraus
// operators. Throws NotCPTP when J has an eigenvalue below -tol * scale or
// its output partial trace is not I within tol.
QuantumChannel kraus_from_choi(const ChoiMatrix& choi, double tol = kDefaultTol);

CptpReport is_cptp(const QuantumChannel& ch, double tol = kDefaultTol);

// Valid weight interval for the given branch at dimension n.
std::pair<double, double> isotropic_weight_range(int n, IsotropicBranch branch);

QuantumChannel make_isotropic(const Matrix& unitary, double weight, IsotropicBranch branch,
                              double tol = kDefaultTol);

// basis: unitary whose columns are the output basis; identity by default.
QuantumChannel make_decohering(const std::vector<Matrix>& povm, const Matrix& basis,
                               double tol = kDefaultTol);
QuantumChannel make_decohering(const std::vector<Matrix>& povm, double tol = kDefaultTol);

QuantumChannel make_qubit_cpu(const QubitCpuParams& p, double tol = kDefaultTol);

// Exact action of the qubit normal form, usable without CP validation.
Matrix qubit_cpu_apply(const QubitCpuParams& p, const Matrix& a);

void require_unitary(const Matrix& u, double tol = 1e-10);

}  // namespace qdc
