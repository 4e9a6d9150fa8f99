#pragma once

// Bipartite states, the block test for zero discord, and the measured
// discord itself.
//
// A state on C^m (x) C^n decomposes as rho = sum_ij E_ij (x) B_ij with
// E_ij the m x m matrix units and B_ij = (<i| (x) I) rho (|j> (x) I) acting
// on the second party. Discord as seen from that party vanishes exactly
// when the blocks are mutually commuting normal operators; since the block
// family is closed under adjoints (B_ji = B_ij^dag), pairwise commutation
// already covers normality.
//
// The measured quantity is
//   D(rho) = S(rho_B) - S(rho) + min over projective bases sum_k p_k S(rho_k)
// where measuring the second party in basis {|b_k>} leaves the first party
// in rho_k = (I (x) <b_k|) rho (I (x) |b_k>)/p_k with probability p_k.
// Entropies are base-2. The basis search runs a dense grid plus simplex
// refinement for n = 2 and seeded multistart simplex over a Givens
// parameterization for n = 3; evaluating at the common eigenbasis of the
// blocks (and of rho_B) first makes the zero-discord case exact.

#include <vector>

#include "qdc/channel.hpp"
#include "qdc/eig.hpp"
#include "qdc/matrix.hpp"

namespace qdc {

struct BipartiteState {
    int dim_a = 0;
    int dim_b = 0;
    Matrix rho;
};

// Validates hermiticity, unit trace (1e-10) and positivity (tol) and throws
// NotDensityMatrix / DimensionMismatch on failure.
BipartiteState make_bipartite_state(int dim_a, int dim_b, Matrix rho,
                                    double tol = kDefaultTol);

BipartiteState swap_parties(const BipartiteState& s);

Matrix reduced_a(const BipartiteState& s);
Matrix reduced_b(const BipartiteState& s);

// Row-major m x m grid of n x n blocks: blocks(s)[i][j] = B_ij.
std::vector<std::vector<Matrix>> blocks(const BipartiteState& s);

// Max Frobenius norm over pairwise block commutators (adjoint-closed family,
// so this includes every normality defect).
double zero_discord_residual(const BipartiteState& s);

bool is_zero_discord_b(const BipartiteState& s, double tol = kDefaultTol);

// Base-2 entropy; eigenvalues in [-1e-12, 0) clamp to zero, anything lower
// throws NotDensityMatrix.
double von_neumann_entropy(const Matrix& rho, double tol = kDefaultTol);

double mutual_information(const BipartiteState& s, double tol = kDefaultTol);

struct MeasurementBasis {
    std::vector<std::vector<cd>> vectors;  // orthonormal, one per outcome
};

MeasurementBasis basis_from_unitary_columns(const Matrix& u);
void require_orthonormal(const MeasurementBasis& basis, int dim, double tol = 1e-10);

struct MeasurementOutcome {
    double probability = 0.0;
    Matrix state_a;  // conditional state of the unmeasured party
};

// Outcomes with probability below 1e-14 are dropped.
std::vector<MeasurementOutcome> post_measurement(const BipartiteState& s,
                                                 const MeasurementBasis& basis);

// sum_k p_k S(rho_k) for the given basis; the quantity minimized below.
double measured_conditional_entropy(const BipartiteState& s, const MeasurementBasis& basis);

struct DiscordResult {
    double value = 0.0;
    MeasurementBasis basis;  // best measurement found
    bool converged = false;
    int evaluations = 0;
};

// Supported for dim_b in {2, 3}; throws UnsupportedDimension beyond that.
DiscordResult discord_b(const BipartiteState& s, double tol = kDefaultTol);

}  // namespace qdc
