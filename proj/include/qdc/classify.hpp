#pragma once

// Decides which channels can never create discord locally, and recovers
// the structured form when one exists.
//
// The complete characterization implemented here: a channel acting on one
// party of a bipartite system maps every zero-discord state to a
// zero-discord state exactly when it either
//   (a) has commutative range (then it is completely decohering,
//       L(A) = sum_i Tr(W_i A) |e_i><e_i|), or
//   (b) for n >= 3, is a nontrivial isotropic channel
//       L = w G + (1 - w) Tr(.) I/n with G unitary or transpose-unitary
//       conjugation and w != 0, or
//   (c) for n = 2, fits the qubit normal form (see channel.hpp).
// Everything else creates discord, and a zero-discord input whose image
// fails the block test is searched for as an explicit witness.
//
// classify applies the decision tree in order of specificity: commutative
// range first, then the isotropic fit at any dimension (for qubits the
// isotropic channels are a slice of the normal form, and the more specific
// label wins), then the qubit normal form, else CreatesDiscord with a
// witness attempt.

#include <optional>
#include <string>

#include "qdc/channel.hpp"
#include "qdc/discord.hpp"

namespace qdc {

enum class ChannelFamily {
    CompletelyDecohering,
    NontrivialIsotropic,
    QubitCPU,
    CreatesDiscord,
};

std::string family_name(ChannelFamily f);

struct DiscordWitness {
    BipartiteState input;   // zero-discord state (party A is an ancilla qubit)
    BipartiteState output;  // image under id (x) channel
    double input_residual = 0.0;
    double output_residual = 0.0;
    uint64_t seed = 0;
};

struct ChannelClass {
    ChannelFamily family = ChannelFamily::CreatesDiscord;
    std::optional<DecoheringParams> decohering;
    std::optional<IsotropicParams> isotropic;
    std::optional<QubitCpuParams> qubit_cpu;
    std::optional<DiscordWitness> witness;
};

// Applies the channel to party B of a bipartite state (id (x) channel).
BipartiteState apply_channel_b(const BipartiteState& s, const QuantumChannel& ch);

// True when all images of a hermitian operator basis pairwise commute.
bool range_commutative(const QuantumChannel& ch, double tol = kDefaultTol);

// Recovers POVM and basis from a commutative-range channel by simultaneous
// diagonalization of the range; throws NotDecohering when the range does
// not commute or the reconstruction misses at tolerance.
DecoheringParams extract_decohering(const QuantumChannel& ch, double tol = kDefaultTol);

// Structured fits; NoFit is reported as nullopt with the reason in
// *why (when given). Fits validate by reconstructing the channel action.
std::optional<IsotropicParams> fit_isotropic(const QuantumChannel& ch,
                                             double tol = kDefaultTol,
                                             std::string* why = nullptr);
std::optional<QubitCpuParams> fit_qubit_cpu(const QuantumChannel& ch,
                                            double tol = kDefaultTol,
                                            std::string* why = nullptr);

struct ClassifyOptions {
    double tol = kDefaultTol;
    int witness_tries = 500;
    uint64_t witness_seed = 0x5EEDull;
    double witness_threshold = 1e-6;  // output block residual that counts
};

ChannelClass classify(const QuantumChannel& ch, const ClassifyOptions& opts = {});

struct CommutingPairCounterexample {
    Matrix a, b;  // commuting hermitian inputs with non-commuting images
    double image_commutator = 0.0;
    uint64_t seed = 0;
};

// Samples commuting hermitian pairs (shared Haar eigenbasis, random
// spectra) and reports the first pair whose images fail to commute at
// 1e-7 relative; nullopt when the channel survives all trials.
std::optional<CommutingPairCounterexample> preserves_commutativity_probe(
    const QuantumChannel& ch, int trials, uint64_t seed, double tol = kDefaultTol);

// The contrapositive probe: non-commuting inputs whose images commute.
// Random pairs almost never land on a degenerate direction, so when the
// channel's superoperator is near-singular a kernel-directed pair is tried
// as well; anything returned is verified by direct computation.
std::optional<CommutingPairCounterexample> reverse_commutativity_probe(
    const QuantumChannel& ch, int trials, uint64_t seed, double tol = kDefaultTol);

struct BothDirectionsReport {
    bool both = false;       // the verdict
    bool injective = false;  // superoperator full rank at tolerance
    double sigma_min = 0.0;
    double sigma_max = 0.0;
    ChannelFamily family = ChannelFamily::CreatesDiscord;
    // Literal parameter-clause reading for the qubit form, kept as a
    // cross-check; empty diagnostic means it agrees with the verdict.
    std::optional<bool> clause_verdict;
    std::string diagnostic;
};

// A channel preserves commutativity in both directions iff images commute
// exactly when inputs do. Verdict: nontrivial isotropic for n >= 3; qubit
// normal form plus injective superoperator for n = 2.
BothDirectionsReport both_directions_report(const QuantumChannel& ch,
                                            double tol = kDefaultTol);
bool both_directions(const QuantumChannel& ch, double tol = kDefaultTol);

}  // namespace qdc
