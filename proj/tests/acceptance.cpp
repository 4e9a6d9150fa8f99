// End-to-end acceptance run. Each criterion prints one PASS/FAIL line;
// the process exits nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qdc/bloch.hpp"
#include "qdc/channel.hpp"
#include "qdc/classify.hpp"
#include "qdc/cli.hpp"
#include "qdc/discord.hpp"
#include "qdc/errors.hpp"
#include "qdc/io.hpp"
#include "qdc/rng.hpp"
#include "qdc/sampling.hpp"
#include "qdc/verify.hpp"

using namespace qdc;
using nlohmann::json;

namespace {

std::string fmt(double x) {
    std::ostringstream s;
    s << x;
    return s.str();
}

double action_diff(const QuantumChannel& a, const QuantumChannel& b) {
    double d = 0.0;
    for (int i = 0; i < a.dim; ++i)
        for (int j = 0; j < a.dim; ++j) {
            const Matrix e = matrix_unit(a.dim, i, j);
            d = std::max(d, (apply(a, e) - apply(b, e)).frobenius_norm());
        }
    return d;
}

QuantumChannel rebuild(const ChannelClass& cls) {
    if (cls.isotropic)
        return make_isotropic(cls.isotropic->unitary, cls.isotropic->weight,
                              cls.isotropic->branch);
    if (cls.decohering) return make_decohering(cls.decohering->povm, cls.decohering->basis);
    if (cls.qubit_cpu) return make_qubit_cpu(*cls.qubit_cpu);
    throw Error("no parameters to rebuild from");
}

// Criterion 1: the transpose map must be rejected with its exact Choi spectrum.
std::string cp_detection() {
    const ChoiMatrix choi =
        choi_from_action(2, [](const Matrix& a) { return a.transpose(); });
    const double min_eig = eig_hermitian(choi.m).eigenvalues.front();
    if (std::abs(min_eig + 1.0) > 1e-12)
        return "transpose Choi minimum eigenvalue " + fmt(min_eig) + ", expected -1";
    try {
        kraus_from_choi(choi);
        return "transpose map was accepted as a channel";
    } catch (const NotCPTP&) {
    }
    return "";
}

// Criterion 2: 200 random constructions per family classify back to the
// family and rebuild to the same action, negative isotropic weights included.
std::string family_round_trips() {
    int negative_weights = 0;

    Rng urng(4242);
    for (const int n : {2, 3, 4})
        for (const IsotropicBranch branch :
             {IsotropicBranch::Unitary, IsotropicBranch::Transpose}) {
            const auto [lo, hi] = isotropic_weight_range(n, branch);
            const QuantumChannel ch =
                make_isotropic(sample_haar_unitary(n, urng), 0.9 * lo, branch);
            const ChannelClass cls = classify(ch);
            if (cls.family != ChannelFamily::NontrivialIsotropic)
                return "negative-weight isotropic (n=" + std::to_string(n) +
                       ") classified as " + family_name(cls.family);
            const double d = action_diff(ch, rebuild(cls));
            if (d > 1e-8) return "negative-weight isotropic rebuild off by " + fmt(d);
            if (cls.isotropic->weight < 0.0) ++negative_weights;
        }

    for (int i = 0; i < 200; ++i) {
        const int n = 2 + i % 3;
        const IsotropicBranch branch =
            (i % 2) ? IsotropicBranch::Transpose : IsotropicBranch::Unitary;
        const QuantumChannel ch = sample_isotropic_channel(n, branch, derive_seed(101, i));
        const ChannelClass cls = classify(ch);
        if (cls.family != ChannelFamily::NontrivialIsotropic)
            return "isotropic draw " + std::to_string(i) + " classified as " +
                   family_name(cls.family);
        const double d = action_diff(ch, rebuild(cls));
        if (d > 1e-8) return "isotropic rebuild " + std::to_string(i) + " off by " + fmt(d);
        if (cls.isotropic->weight < 0.0) ++negative_weights;
    }
    if (negative_weights == 0) return "no negative isotropic weight was exercised";

    for (int i = 0; i < 200; ++i) {
        const int n = 2 + i % 3;
        const QuantumChannel ch = sample_decohering_channel(n, derive_seed(102, i));
        const ChannelClass cls = classify(ch);
        if (cls.family != ChannelFamily::CompletelyDecohering)
            return "decohering draw " + std::to_string(i) + " classified as " +
                   family_name(cls.family);
        const double d = action_diff(ch, rebuild(cls));
        if (d > 1e-8) return "decohering rebuild " + std::to_string(i) + " off by " + fmt(d);
    }

    for (int i = 0; i < 200; ++i) {
        const QuantumChannel ch = sample_qubit_cpu_channel(derive_seed(103, i));
        const ChannelClass cls = classify(ch);
        if (cls.family != ChannelFamily::QubitCPU)
            return "qubit normal-form draw " + std::to_string(i) + " classified as " +
                   family_name(cls.family);
        const double d = action_diff(ch, rebuild(cls));
        if (d > 1e-8) return "qubit rebuild " + std::to_string(i) + " off by " + fmt(d);
    }
    return "";
}

// Criterion 3: zero-discord states stay zero-discord through isotropic and
// decohering channels, 500 draws at dimensions 2 x 3.
std::string zero_discord_preserved() {
    double worst = 0.0;
    for (int i = 0; i < 500; ++i) {
        const uint64_t s = derive_seed(303, i);
        const BipartiteState in = sample_zero_discord_state(2, 3, 3, derive_seed(s, 1));
        const QuantumChannel ch =
            (i % 2 == 0)
                ? sample_isotropic_channel(3,
                                           (i % 4 == 0) ? IsotropicBranch::Unitary
                                                        : IsotropicBranch::Transpose,
                                           derive_seed(s, 2))
                : sample_decohering_channel(3, derive_seed(s, 2));
        worst = std::max(worst, zero_discord_residual(apply_channel_b(in, ch)));
    }
    if (worst >= 1e-9) return "worst image block residual " + fmt(worst);
    return "";
}

// Criterion 4: unital non-isotropic channels at n=3 admit zero-discord
// witnesses whose images carry measurable discord.
std::string unital_channels_create_discord() {
    int found = 0;
    std::vector<BipartiteState> images;
    for (int i = 0; i < 50; ++i) {
        const uint64_t s = derive_seed(404, i);
        const QuantumChannel ch = sample_unital_channel(3, 2 + i % 2, derive_seed(s, 1));
        ClassifyOptions opts;
        opts.witness_tries = 2000;
        opts.witness_seed = derive_seed(s, 2);
        const ChannelClass cls = classify(ch, opts);
        if (cls.family == ChannelFamily::CreatesDiscord && cls.witness &&
            cls.witness->output_residual > 1e-6) {
            ++found;
            if (images.size() < 3) images.push_back(cls.witness->output);
        }
    }
    if (found < 48)
        return "witnesses found for only " + std::to_string(found) + "/50 channels";
    for (const BipartiteState& img : images) {
        const double d = discord_b(img).value;
        if (d <= 1e-4) return "witness image discord " + fmt(d) + " not above 1e-4";
    }
    return "";
}

// Criterion 5: decohering channels erase discord from arbitrary states.
std::string decohering_erases_discord() {
    double worst = 0.0;
    int spots = 0;
    for (int i = 0; i < 200; ++i) {
        const int n = 2 + i % 2;
        const uint64_t s = derive_seed(505, i);
        const BipartiteState in = sample_random_state(2, n, derive_seed(s, 1));
        const QuantumChannel ch = sample_decohering_channel(n, derive_seed(s, 2));
        const BipartiteState img = apply_channel_b(in, ch);
        worst = std::max(worst, zero_discord_residual(img));
        if (i % 20 == 0 && spots < 10) {
            ++spots;
            const double d = discord_b(img).value;
            if (d >= 1e-5)
                return "image discord " + fmt(d) + " at draw " + std::to_string(i);
        }
    }
    if (worst >= 1e-9) return "worst image block residual " + fmt(worst);
    if (spots != 10) return "only " + std::to_string(spots) + " spot checks ran";
    return "";
}

// Criterion 6: one exact bit of discord for the maximally entangled pair.
std::string bell_discord() {
    Matrix rho(4);
    rho(0, 0) = rho(0, 3) = rho(3, 0) = rho(3, 3) = 0.5;
    const DiscordResult res = discord_b(make_bipartite_state(2, 2, rho));
    if (std::abs(res.value - 1.0) > 1e-4)
        return "discord " + fmt(res.value) + ", expected 1.0";
    if (!res.converged) return "optimizer did not converge";
    return "";
}

// Criterion 7: the affine Bloch picture reproduces channel action, and the
// commutator test agrees with the cross-product test pair by pair.
std::string bloch_geometry() {
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const uint64_t s = derive_seed(707, i);
        QubitCpuParams params;
        const QuantumChannel ch = sample_qubit_cpu_channel(derive_seed(s, 1), &params);
        Rng rng(derive_seed(s, 2));
        const Matrix rho = sample_density(2, rng);
        const BlochVector r = to_bloch(rho);
        const BlochVector actual = to_bloch(apply(ch, rho));
        const BlochAffineMap map = channel_bloch_map(ch);
        const BlochVector mapped = apply_affine(map, r);
        const auto rot = rotation_from_unitary(params.unitary);
        const auto lin = qubit_cpu_linear_map(params);
        BlochVector analytic{};
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                for (int c = 0; c < 3; ++c) analytic[a] += rot[a][b] * lin[b][c] * r[c];
        for (int a = 0; a < 3; ++a) {
            worst = std::max(worst, std::abs(mapped[a] - actual[a]));
            worst = std::max(worst, std::abs(analytic[a] - actual[a]));
            worst = std::max(worst, std::abs(map.offset[a]));
        }
    }
    if (worst >= 1e-10) return "worst Bloch-map deviation " + fmt(worst);

    const double matched = 2.0 * std::sqrt(2.0) * 1e-9;
    for (int i = 0; i < 2000; ++i) {
        Rng rng(derive_seed(708, i));
        const Matrix rho1 = sample_density(2, rng);
        Matrix rho2;
        const bool built_collinear = (i % 2 == 1);
        if (built_collinear) {
            const BlochVector r = to_bloch(rho1);
            const double c = rng.uniform(-1.0, 1.0);
            rho2 = from_bloch({c * r[0], c * r[1], c * r[2]});
        } else {
            rho2 = sample_density(2, rng);
        }
        const CollinearityCheck chk = commute_iff_collinear(rho1, rho2);
        const double drift =
            std::abs(chk.commutator_norm - 2.0 * std::sqrt(2.0) * chk.cross_norm);
        if (drift >= 1e-10) return "norm identity drift " + fmt(drift);
        if ((chk.commutator_norm <= matched) != chk.collinear)
            return "commutator and cross-product verdicts disagree at pair " +
                   std::to_string(i);
        if (built_collinear && !chk.collinear)
            return "constructed collinear pair " + std::to_string(i) + " missed";
    }
    return "";
}

// Criterion 8: the isotropic qubit channels are the alpha=0 slice of the
// normal form, with weight 2*lambda - 1 on matching branches.
std::string isotropic_embedding() {
    Rng rng(808);
    const std::vector<Matrix> frames = {Matrix::identity(2), sample_haar_unitary(2, rng)};
    for (const Matrix& u : frames) {
        for (const double lambda : {0.6, 0.75, 1.0}) {
            QubitCpuParams p;
            p.unitary = u;
            p.lambda = lambda;
            p.beta = (2.0 * lambda - 1.0) / lambda;
            const double d = action_diff(make_qubit_cpu(p),
                                         make_isotropic(u, 2.0 * lambda - 1.0,
                                                        IsotropicBranch::Unitary));
            if (d > 1e-12)
                return "unitary-branch embedding at lambda=" + fmt(lambda) + " off by " +
                       fmt(d);
        }
        for (const double lambda : {0.55, 0.6, 0.65}) {
            QubitCpuParams p;
            p.unitary = u;
            p.lambda = lambda;
            p.gamma = (2.0 * lambda - 1.0) / (1.0 - lambda);
            const double d = action_diff(make_qubit_cpu(p),
                                         make_isotropic(u, 2.0 * lambda - 1.0,
                                                        IsotropicBranch::Transpose));
            if (d > 1e-12)
                return "transpose-branch embedding at lambda=" + fmt(lambda) + " off by " +
                       fmt(d);
        }
    }
    return "";
}

// Criterion 9: the two-directions verdict by family, and rank-test versus
// probe agreement on random qubit normal forms.
std::string both_directions_gate() {
    Rng rng(909);
    if (!both_directions(make_isotropic(sample_haar_unitary(3, rng), 0.4,
                                        IsotropicBranch::Unitary)))
        return "nontrivial isotropic (unitary branch) rejected";
    if (!both_directions(make_isotropic(sample_haar_unitary(3, rng), -0.2,
                                        IsotropicBranch::Transpose)))
        return "nontrivial isotropic (transpose branch) rejected";
    if (both_directions(sample_decohering_channel(2, 90901)) ||
        both_directions(sample_decohering_channel(3, 90902)))
        return "a decohering channel passed the two-directions gate";
    QubitCpuParams p;
    p.unitary = Matrix::identity(2);
    p.lambda = 0.5;
    p.alpha = 0.3;
    p.beta = 0.4;
    p.gamma = 0.2;
    if (both_directions(make_qubit_cpu(p)))
        return "a non-injective normal form passed the two-directions gate";

    for (int i = 0; i < 100; ++i) {
        const uint64_t s = derive_seed(910, i);
        const QuantumChannel ch = sample_qubit_cpu_channel(derive_seed(s, 1));
        const BothDirectionsReport rep = both_directions_report(ch);
        const auto fwd = preserves_commutativity_probe(ch, 500, derive_seed(s, 2));
        const auto rev = reverse_commutativity_probe(ch, 500, derive_seed(s, 3));
        const bool probe_says = !fwd.has_value() && !rev.has_value();
        if (rep.both != probe_says)
            return "rank and probe verdicts disagree at draw " + std::to_string(i) +
                   " (sigma_min " + fmt(rep.sigma_min) + ")";
    }
    return "";
}

struct CliRun {
    int code = 0;
    std::string out;
};

CliRun cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.push_back("qdc");
    for (const std::string& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    CliRun r;
    r.code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    return r;
}

// Criterion 10: shipped fixtures, schema, exit codes, reproducibility.
std::string cli_contract() {
    const std::string dir = QDC_FIXTURES_DIR;

    const std::pair<std::string, std::string> families[] = {
        {"isotropic_n3.json", "nontrivial_isotropic"},
        {"decohering_n3.json", "completely_decohering"},
        {"qubit_cpu.json", "qubit_commutativity_preserving"},
        {"amplitude_damping.json", "creates_discord"},
    };
    for (const auto& [file, family] : families) {
        const CliRun r = cli({"classify", dir + "/" + file});
        if (r.code != 0) return file + ": exit code " + std::to_string(r.code);
        const json j = json::parse(r.out);
        if (j["family"] != family)
            return file + ": family " + j["family"].get<std::string>();
        if (family == "creates_discord" && !j.contains("witness"))
            return file + ": no witness reported";
    }

    const json iso = json::parse(cli({"classify", dir + "/isotropic_n3.json"}).out);
    if (iso["isotropic"]["branch"] != "transpose")
        return "isotropic fixture branch drifted";

    const CliRun zq = cli({"zeroqd", dir + "/cq_state.json"});
    if (zq.code != 0 || json::parse(zq.out)["zero_discord"] != true)
        return "classical-quantum fixture not accepted as zero discord";

    const CliRun bd = cli({"discord", dir + "/bell.json"});
    const double bell = json::parse(bd.out)["value"].get<double>();
    if (bd.code != 0 || std::abs(bell - 1.0) > 1e-4)
        return "fixture discord " + fmt(bell) + ", expected 1.0";

    const CliRun va = cli({"verify", "T2_FWD", "--trials", "4", "--seed", "9"});
    if (va.code != 0) return "verification campaign exited " + std::to_string(va.code);
    const json rep = json::parse(va.out);
    if (rep.size() != 4 || !rep.contains("theorem") || !rep.contains("trials") ||
        !rep.contains("passes") || !rep.contains("failures"))
        return "report schema drifted";
    if (rep["passes"] != 4) return "campaign failed trials";
    if (cli({"verify", "T2_FWD", "--trials", "4", "--seed", "9"}).out != va.out)
        return "identical seeds gave different report bytes";

    if (cli({"verify", "NOT_A_CAMPAIGN"}).code != 2)
        return "unknown campaign did not exit 2";
    if (cli({"verify", "T1_FWD", "--trials", "2", "--tol", "1e-30"}).code != 1)
        return "failing campaign did not exit 1";
    if (cli({"classify", dir + "/does_not_exist.json"}).code != 2)
        return "missing input did not exit 2";

    const std::string smoke = std::string(QDC_CLI_PATH) + " classify " + dir +
                              "/qubit_cpu.json --format text > /dev/null";
    if (std::system(smoke.c_str()) != 0) return "installed binary smoke call failed";
    return "";
}

}  // namespace

int main() {
    const std::pair<std::string, std::function<std::string()>> criteria[] = {
        {"transpose map rejected with exact Choi spectrum", cp_detection},
        {"family round trips recover parameters and action", family_round_trips},
        {"zero discord preserved by isotropic and decohering channels",
         zero_discord_preserved},
        {"unital non-isotropic channels create discord with witnesses",
         unital_channels_create_discord},
        {"decohering channels erase discord", decohering_erases_discord},
        {"maximally entangled state carries one bit of discord", bell_discord},
        {"Bloch maps match channel action; commutator and cross tests agree",
         bloch_geometry},
        {"isotropic qubit channels embed in the normal form", isotropic_embedding},
        {"two-directions gate and rank/probe agreement", both_directions_gate},
        {"CLI fixtures, schema, exit codes, reproducibility", cli_contract},
    };

    int failures = 0;
    int index = 0;
    for (const auto& [label, body] : criteria) {
        ++index;
        const auto t0 = std::chrono::steady_clock::now();
        std::string detail;
        try {
            detail = body();
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cout << "criterion " << index << " "
                  << (detail.empty() ? "PASS" : "FAIL") << " (" << std::fixed
                  << std::setprecision(1) << secs << "s) " << label;
        std::cout.unsetf(std::ios::fixed);
        if (!detail.empty()) {
            std::cout << ": " << detail;
            ++failures;
        }
        std::cout << "\n";
    }
    std::cout << (failures == 0 ? "acceptance: all criteria passed"
                                : "acceptance: " + std::to_string(failures) + " failed")
              << "\n";
    return failures == 0 ? 0 : 1;
}
