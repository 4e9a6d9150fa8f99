#pragma once

// Seeded samplers used by the verification harness, the classifier's
// witness search, and the tests. Same seed, same output, everywhere.

#include <cstdint>

#include "qdc/channel.hpp"
#include "qdc/discord.hpp"
#include "qdc/rng.hpp"

namespace qdc {

// Entries i.i.d. complex Gaussian, then QR via modified Gram-Schmidt with
// positive diagonal, which is Haar distributed.
Matrix sample_haar_unitary(int n, Rng& rng);

Matrix sample_gaussian_hermitian(int n, Rng& rng);

// G G^dag / Tr(G G^dag) with G square Gaussian (Hilbert-Schmidt ensemble).
Matrix sample_density(int n, Rng& rng);

BipartiteState sample_random_state(int dim_a, int dim_b, uint64_t seed);

// Classical-quantum construction sum_k p_k rho_k (x) |b_k><b_k| with k
// orthonormal |b_k>; zero discord toward party B by construction.
BipartiteState sample_zero_discord_state(int dim_a, int dim_b, int k, uint64_t seed);

// Kraus operators cut from a Haar-ish random isometry C^n -> C^(n*rank).
QuantumChannel sample_random_channel(int n, int kraus_rank, uint64_t seed);

// Random convex mixture of Haar unitaries: unital and trace preserving,
// and almost surely neither isotropic nor decohering for 2+ summands.
QuantumChannel sample_unital_channel(int n, int num_unitaries, uint64_t seed);

// Uniform parameters over the valid region of each structured family.
QuantumChannel sample_isotropic_channel(int n, IsotropicBranch branch, uint64_t seed,
                                        IsotropicParams* params_out = nullptr);
QuantumChannel sample_decohering_channel(int n, uint64_t seed,
                                         DecoheringParams* params_out = nullptr);
QuantumChannel sample_qubit_cpu_channel(uint64_t seed, QubitCpuParams* params_out = nullptr);

}  // namespace qdc
