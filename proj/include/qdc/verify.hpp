#pragma once

// Monte-Carlo verification campaigns for the statements the library
// implements. Each campaign draws independent trials from per-trial seeds
// derived from (config seed, trial index), so runs are reproducible and a
// recorded failure can be replayed from its seed alone.
//
// Campaign ids:
//   T1_FWD   zero-discord states survive isotropic channels (both branches)
//   T1_CONV  unital non-isotropic channels admit explicit discord witnesses
//   T2_FWD   qubit normal-form channels preserve zero discord
//   T3       completely decohering channels send every state to zero discord
//   T4_RT    decohering construct -> extract -> reconstruct round trip
//   T5_FWD   hermitian-preserving qubit maps of the two commutativity-
//            preserving forms preserve commutators of hermitian pairs
//   P1       both-directions verdicts for isotropic vs decohering (n >= 3)
//   P2       qubit superoperator-rank test vs probe sampling agreement
//   OBS1     collinearity test tracks the commutator norm identically
//   OBS3     Bloch affine map reproduces direct channel action
//
// A campaign passes when every trial passes, except T1_CONV whose witness
// search is allowed a 4% miss rate (sampling, not certainty).

#include <optional>
#include <string>
#include <vector>

#include "qdc/classify.hpp"

namespace qdc {

enum class TheoremId { T1_FWD, T1_CONV, T2_FWD, T3, T4_RT, T5_FWD, P1, P2, OBS1, OBS3 };

std::string theorem_name(TheoremId id);
std::optional<TheoremId> parse_theorem(const std::string& name);
std::vector<TheoremId> all_theorems();

struct RunConfig {
    uint64_t seed = 1;
    int trials = 100;
    int dim_a = 2;
    int dim_b = 3;
    double tol = kDefaultTol;
    std::string out_dir;  // when non-empty, failure payloads are dumped here
};

struct TrialFailure {
    uint64_t seed = 0;
    double residual = 0.0;
    std::string payload;  // path of the dumped payload, empty if not dumped
};

struct TrialReport {
    std::string theorem;
    int trials = 0;
    int passes = 0;
    std::vector<TrialFailure> failures;
    bool ok = false;
};

TrialReport verify(TheoremId id, const RunConfig& cfg);

// Exactly {"theorem", "trials", "passes", "failures"}; the pass/fail rule
// is part of the campaign, not the schema.
std::string report_to_json_string(const TrialReport& rep);

}  // namespace qdc
