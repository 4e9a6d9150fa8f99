#include "qdc/verify.hpp"

#include <cmath>
#include <filesystem>
#include <functional>

#include "qdc/bloch.hpp"
#include "qdc/io.hpp"
#include "qdc/rng.hpp"
#include "qdc/sampling.hpp"

namespace qdc {

namespace {

struct TrialOutcome {
    bool pass = false;
    double residual = 0.0;
    json payload;
};

double rel_comm(const Matrix& a, const Matrix& b) {
    return commutator(a, b).frobenius_norm() /
           std::max(1.0, a.frobenius_norm() * b.frobenius_norm());
}

// Commuting hermitian pair with a shared random eigenbasis.
std::pair<Matrix, Matrix> commuting_pair(int n, Rng& rng) {
    const Matrix v = sample_haar_unitary(n, rng);
    Matrix a(n), b(n);
    for (int k = 0; k < n; ++k) {
        const double wa = rng.uniform(-1.0, 1.0);
        const double wb = rng.uniform(-1.0, 1.0);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) {
                const cd vv = v(r, k) * std::conj(v(c, k));
                a(r, c) += wa * vv;
                b(r, c) += wb * vv;
            }
    }
    return {a, b};
}

TrialOutcome run_t1_fwd(const RunConfig& cfg, uint64_t s) {
    const IsotropicBranch branch =
        (s & 1u) ? IsotropicBranch::Transpose : IsotropicBranch::Unitary;
    const QuantumChannel ch = sample_isotropic_channel(cfg.dim_b, branch, derive_seed(s, 1));
    const BipartiteState in =
        sample_zero_discord_state(cfg.dim_a, cfg.dim_b, cfg.dim_b, derive_seed(s, 2));
    const double resid = zero_discord_residual(apply_channel_b(in, ch));
    TrialOutcome o;
    o.residual = resid;
    o.pass = resid <= cfg.tol;
    if (!o.pass) o.payload = {{"channel", channel_to_json(ch)}, {"state", state_to_json(in)}};
    return o;
}

TrialOutcome run_t1_conv(const RunConfig& cfg, uint64_t s) {
    const int num_unitaries = 2 + static_cast<int>(s % 2);
    const QuantumChannel ch = sample_unital_channel(cfg.dim_b, num_unitaries, derive_seed(s, 1));
    ClassifyOptions opts;
    opts.tol = cfg.tol;
    opts.witness_tries = 2000;
    opts.witness_seed = derive_seed(s, 2);
    const ChannelClass cls = classify(ch, opts);
    TrialOutcome o;
    if (cls.family != ChannelFamily::CreatesDiscord) {
        o.pass = false;
        o.payload = {{"channel", channel_to_json(ch)},
                     {"note", "expected a discord-creating channel, classified as " +
                                  family_name(cls.family)}};
        return o;
    }
    o.pass = cls.witness.has_value();
    o.residual = cls.witness ? cls.witness->output_residual : 0.0;
    if (!o.pass) o.payload = {{"channel", channel_to_json(ch)}};
    return o;
}

TrialOutcome run_t2_fwd(const RunConfig& cfg, uint64_t s) {
    const QuantumChannel ch = sample_qubit_cpu_channel(derive_seed(s, 1));
    const BipartiteState in = sample_zero_discord_state(cfg.dim_a, 2, 2, derive_seed(s, 2));
    const double resid = zero_discord_residual(apply_channel_b(in, ch));
    TrialOutcome o;
    o.residual = resid;
    o.pass = resid <= cfg.tol;
    if (!o.pass) o.payload = {{"channel", channel_to_json(ch)}, {"state", state_to_json(in)}};
    return o;
}

TrialOutcome run_t3(const RunConfig& cfg, uint64_t s) {
    const QuantumChannel ch = sample_decohering_channel(cfg.dim_b, derive_seed(s, 1));
    const BipartiteState in = sample_random_state(cfg.dim_a, cfg.dim_b, derive_seed(s, 2));
    const double resid = zero_discord_residual(apply_channel_b(in, ch));
    TrialOutcome o;
    o.residual = resid;
    o.pass = resid <= cfg.tol;
    if (!o.pass) o.payload = {{"channel", channel_to_json(ch)}, {"state", state_to_json(in)}};
    return o;
}

TrialOutcome run_t4_rt(const RunConfig& cfg, uint64_t s) {
    const QuantumChannel ch = sample_decohering_channel(cfg.dim_b, derive_seed(s, 1));
    TrialOutcome o;
    try {
        const DecoheringParams ext = extract_decohering(ch, cfg.tol);
        const QuantumChannel rebuilt = make_decohering(ext.povm, ext.basis);
        double resid = 0.0;
        for (int i = 0; i < cfg.dim_b; ++i)
            for (int j = 0; j < cfg.dim_b; ++j) {
                const Matrix e = matrix_unit(cfg.dim_b, i, j);
                resid = std::max(resid, (apply(ch, e) - apply(rebuilt, e)).frobenius_norm());
            }
        o.residual = resid;
        o.pass = resid <= std::max(cfg.tol, 1e-8);
    } catch (const Error& e) {
        o.pass = false;
        o.payload["note"] = e.what();
    }
    if (!o.pass) o.payload["channel"] = channel_to_json(ch);
    return o;
}

TrialOutcome run_t5_fwd(const RunConfig& cfg, uint64_t s) {
    Rng rng(derive_seed(s, 1));
    std::function<Matrix(const Matrix&)> map;
    if (s % 2 == 0) {
        // Two-outcome functional form with hermitian (not necessarily
        // positive) weights: commutative range by construction.
        const Matrix u = sample_haar_unitary(2, rng);
        const Matrix w0 = sample_gaussian_hermitian(2, rng);
        const Matrix w1 = sample_gaussian_hermitian(2, rng);
        map = [u, w0, w1](const Matrix& a) {
            Matrix out(2);
            const cd c0 = (w0 * a).trace();
            const cd c1 = (w1 * a).trace();
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c)
                    out(r, c) = c0 * u(r, 0) * std::conj(u(c, 0)) +
                                c1 * u(r, 1) * std::conj(u(c, 1));
            return out;
        };
    } else {
        // Co-diagonal images of E_00 and E_11 with matched spectral sums;
        // the off-diagonal image is unconstrained.
        const Matrix v = sample_haar_unitary(2, rng);
        const double l1 = rng.gaussian(), l2 = rng.gaussian(), m1 = rng.gaussian();
        const double m2 = l1 + m1 - l2;
        Matrix x(2);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) x(r, c) = cd(rng.gaussian(), rng.gaussian());
        map = [v, l1, l2, m1, m2, x](const Matrix& a) {
            Matrix mid(2);
            mid(0, 0) = a(0, 0) * l1 + a(1, 1) * m1;
            mid(1, 1) = a(0, 0) * l2 + a(1, 1) * m2;
            mid += a(0, 1) * x + a(1, 0) * x.adjoint();
            return v * mid * v.adjoint();
        };
    }
    const auto [a, b] = commuting_pair(2, rng);
    TrialOutcome o;
    o.residual = rel_comm(map(a), map(b));
    o.pass = o.residual <= cfg.tol;
    if (!o.pass) o.payload = {{"seed", s}, {"branch", s % 2 == 0 ? "functional" : "codiagonal"}};
    return o;
}

TrialOutcome run_p1(const RunConfig& cfg, uint64_t s) {
    TrialOutcome o;
    QuantumChannel ch;
    bool expect;
    if (s % 2 == 0) {
        const IsotropicBranch branch =
            (s & 2u) ? IsotropicBranch::Transpose : IsotropicBranch::Unitary;
        ch = sample_isotropic_channel(cfg.dim_b, branch, derive_seed(s, 1));
        expect = true;
    } else {
        ch = sample_decohering_channel(cfg.dim_b, derive_seed(s, 1));
        expect = false;
    }
    const BothDirectionsReport rep = both_directions_report(ch, cfg.tol);
    o.residual = rep.sigma_min;
    o.pass = rep.both == expect;
    if (!o.pass)
        o.payload = {{"channel", channel_to_json(ch)},
                     {"expected", expect},
                     {"family", family_name(rep.family)}};
    return o;
}

TrialOutcome run_p2(const RunConfig& cfg, uint64_t s) {
    const QuantumChannel ch = sample_qubit_cpu_channel(derive_seed(s, 1));
    const BothDirectionsReport rep = both_directions_report(ch, cfg.tol);
    const auto fwd = preserves_commutativity_probe(ch, 500, derive_seed(s, 2), cfg.tol);
    const auto rev = reverse_commutativity_probe(ch, 500, derive_seed(s, 3), cfg.tol);
    const bool probe_says = !fwd.has_value() && !rev.has_value();
    TrialOutcome o;
    o.residual = rep.sigma_min;
    o.pass = rep.both == probe_says;
    if (!o.pass)
        o.payload = {{"channel", channel_to_json(ch)},
                     {"rank_verdict", rep.both},
                     {"probe_verdict", probe_says},
                     {"diagnostic", rep.diagnostic}};
    return o;
}

TrialOutcome run_obs1(const RunConfig& cfg, uint64_t s) {
    (void)cfg;
    Rng rng(derive_seed(s, 1));
    const Matrix rho1 = sample_density(2, rng);
    Matrix rho2;
    bool expect_collinear = false;
    if (s % 2 == 0) {
        rho2 = sample_density(2, rng);
    } else {
        const BlochVector r = to_bloch(rho1);
        const double c = rng.uniform(-1.0, 1.0);
        rho2 = from_bloch({c * r[0], c * r[1], c * r[2]});
        expect_collinear = true;
    }
    TrialOutcome o;
    try {
        const CollinearityCheck chk = commute_iff_collinear(rho1, rho2, 1e-8);
        o.residual = std::abs(chk.commutator_norm - 2.0 * std::sqrt(2.0) * chk.cross_norm);
        o.pass = !expect_collinear || chk.collinear;
    } catch (const Error& e) {
        o.pass = false;
        o.payload["note"] = e.what();
    }
    if (!o.pass) {
        o.payload["state1"] = matrix_to_json(rho1);
        o.payload["state2"] = matrix_to_json(rho2);
    }
    return o;
}

TrialOutcome run_obs3(const RunConfig& cfg, uint64_t s) {
    QubitCpuParams params;
    const QuantumChannel ch = sample_qubit_cpu_channel(derive_seed(s, 1), &params);
    Rng rng(derive_seed(s, 2));
    const Matrix rho = sample_density(2, rng);
    const BlochVector r = to_bloch(rho);
    const BlochVector actual = to_bloch(apply(ch, rho));

    const BlochAffineMap map = channel_bloch_map(ch);
    const BlochVector direct = apply_affine(map, r);

    const auto rot = rotation_from_unitary(params.unitary);
    const auto lin = qubit_cpu_linear_map(params);
    BlochVector analytic{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) analytic[i] += rot[i][j] * lin[j][k] * r[k];

    double resid = 0.0;
    for (int i = 0; i < 3; ++i) {
        resid = std::max(resid, std::abs(direct[i] - actual[i]));
        resid = std::max(resid, std::abs(analytic[i] - actual[i]));
        resid = std::max(resid, std::abs(map.offset[i]));
    }
    TrialOutcome o;
    o.residual = resid;
    o.pass = resid <= cfg.tol;
    if (!o.pass)
        o.payload = {{"channel", channel_to_json(ch)}, {"state", matrix_to_json(rho)}};
    return o;
}

TrialOutcome run_trial(TheoremId id, const RunConfig& cfg, uint64_t s) {
    switch (id) {
        case TheoremId::T1_FWD:
            return run_t1_fwd(cfg, s);
        case TheoremId::T1_CONV:
            return run_t1_conv(cfg, s);
        case TheoremId::T2_FWD:
            return run_t2_fwd(cfg, s);
        case TheoremId::T3:
            return run_t3(cfg, s);
        case TheoremId::T4_RT:
            return run_t4_rt(cfg, s);
        case TheoremId::T5_FWD:
            return run_t5_fwd(cfg, s);
        case TheoremId::P1:
            return run_p1(cfg, s);
        case TheoremId::P2:
            return run_p2(cfg, s);
        case TheoremId::OBS1:
            return run_obs1(cfg, s);
        default:
            return run_obs3(cfg, s);
    }
}

}  // namespace

std::string theorem_name(TheoremId id) {
    switch (id) {
        case TheoremId::T1_FWD:
            return "T1_FWD";
        case TheoremId::T1_CONV:
            return "T1_CONV";
        case TheoremId::T2_FWD:
            return "T2_FWD";
        case TheoremId::T3:
            return "T3";
        case TheoremId::T4_RT:
            return "T4_RT";
        case TheoremId::T5_FWD:
            return "T5_FWD";
        case TheoremId::P1:
            return "P1";
        case TheoremId::P2:
            return "P2";
        case TheoremId::OBS1:
            return "OBS1";
        default:
            return "OBS3";
    }
}

std::optional<TheoremId> parse_theorem(const std::string& name) {
    for (const TheoremId id : all_theorems())
        if (theorem_name(id) == name) return id;
    return std::nullopt;
}

std::vector<TheoremId> all_theorems() {
    return {TheoremId::T1_FWD, TheoremId::T1_CONV, TheoremId::T2_FWD, TheoremId::T3,
            TheoremId::T4_RT,  TheoremId::T5_FWD,  TheoremId::P1,     TheoremId::P2,
            TheoremId::OBS1,   TheoremId::OBS3};
}

TrialReport verify(TheoremId id, const RunConfig& cfg) {
    TrialReport rep;
    rep.theorem = theorem_name(id);
    rep.trials = cfg.trials;

    std::string dump_dir;
    if (!cfg.out_dir.empty()) {
        dump_dir = cfg.out_dir + "/" + rep.theorem + "-" + std::to_string(cfg.seed);
        std::filesystem::create_directories(dump_dir);
    }

    for (int trial = 0; trial < cfg.trials; ++trial) {
        const uint64_t s = derive_seed(cfg.seed, static_cast<uint64_t>(trial));
        const TrialOutcome o = run_trial(id, cfg, s);
        if (o.pass) {
            ++rep.passes;
            continue;
        }
        TrialFailure f;
        f.seed = s;
        f.residual = o.residual;
        if (!dump_dir.empty()) {
            f.payload = dump_dir + "/trial-" + std::to_string(trial) + ".json";
            write_json_file(f.payload, o.payload.is_null() ? json::object() : o.payload);
        }
        rep.failures.push_back(std::move(f));
    }

    if (id == TheoremId::T1_CONV) {
        rep.ok = rep.passes * 25 >= rep.trials * 24;  // 96%: sampling campaign
    } else {
        rep.ok = rep.passes == rep.trials;
    }
    return rep;
}

std::string report_to_json_string(const TrialReport& rep) {
    json j;
    j["theorem"] = rep.theorem;
    j["trials"] = rep.trials;
    j["passes"] = rep.passes;
    json failures = json::array();
    for (const TrialFailure& f : rep.failures)
        failures.push_back(
            {{"seed", f.seed}, {"residual", f.residual}, {"payload", f.payload}});
    j["failures"] = std::move(failures);
    return j.dump(2) + "\n";
}

}  // namespace qdc
