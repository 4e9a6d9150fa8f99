#include "qdc/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "qdc/bloch.hpp"
#include "qdc/classify.hpp"
#include "qdc/discord.hpp"
#include "qdc/errors.hpp"
#include "qdc/io.hpp"
#include "qdc/sampling.hpp"
#include "qdc/verify.hpp"

namespace qdc {

namespace {

json complex_to_json(cd z) { return json::array({z.real(), z.imag()}); }

json witness_to_json(const DiscordWitness& w) {
    return {{"input", state_to_json(w.input)},
            {"output", state_to_json(w.output)},
            {"input_residual", w.input_residual},
            {"output_residual", w.output_residual},
            {"seed", w.seed}};
}

json class_to_json(const ChannelClass& cls) {
    json j;
    j["family"] = family_name(cls.family);
    if (cls.isotropic) {
        j["isotropic"] = {
            {"branch", cls.isotropic->branch == IsotropicBranch::Unitary ? "unitary"
                                                                         : "transpose"},
            {"weight", cls.isotropic->weight},
            {"unitary", matrix_to_json(cls.isotropic->unitary)}};
    }
    if (cls.decohering) {
        json povm = json::array();
        for (const Matrix& w : cls.decohering->povm) povm.push_back(matrix_to_json(w));
        j["decohering"] = {{"povm", std::move(povm)},
                           {"basis", matrix_to_json(cls.decohering->basis)}};
    }
    if (cls.qubit_cpu) {
        j["qubit_cpu"] = {{"unitary", matrix_to_json(cls.qubit_cpu->unitary)},
                          {"lambda", cls.qubit_cpu->lambda},
                          {"alpha", complex_to_json(cls.qubit_cpu->alpha)},
                          {"beta", complex_to_json(cls.qubit_cpu->beta)},
                          {"gamma", complex_to_json(cls.qubit_cpu->gamma)}};
    }
    if (cls.witness) j["witness"] = witness_to_json(*cls.witness);
    return j;
}

void print_class_text(const ChannelClass& cls, std::ostream& out) {
    out << "family: " << family_name(cls.family) << "\n";
    if (cls.isotropic) {
        out << "branch: "
            << (cls.isotropic->branch == IsotropicBranch::Unitary ? "unitary" : "transpose")
            << "\n";
        out << "weight: " << cls.isotropic->weight << "\n";
    }
    if (cls.decohering)
        out << "povm effects: " << cls.decohering->povm.size() << "\n";
    if (cls.qubit_cpu) {
        const QubitCpuParams& p = *cls.qubit_cpu;
        out << "lambda: " << p.lambda << "\n";
        out << "alpha: " << p.alpha.real() << (p.alpha.imag() < 0 ? "" : "+")
            << p.alpha.imag() << "i\n";
        out << "beta: " << p.beta.real() << (p.beta.imag() < 0 ? "" : "+") << p.beta.imag()
            << "i\n";
        out << "gamma: " << p.gamma.real() << (p.gamma.imag() < 0 ? "" : "+")
            << p.gamma.imag() << "i\n";
    }
    if (cls.witness) {
        out << "witness output residual: " << cls.witness->output_residual << "\n";
        out << "witness seed: " << cls.witness->seed << "\n";
    }
}

json basis_to_json(const MeasurementBasis& basis) {
    json j = json::array();
    for (const auto& v : basis.vectors) {
        json vec = json::array();
        for (cd z : v) vec.push_back(complex_to_json(z));
        j.push_back(std::move(vec));
    }
    return j;
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

void write_output(const std::string& path, const json& j, std::ostream& out) {
    if (path.empty())
        emit(out, j);
    else
        write_json_file(path, j);
}

struct GlobalOpts {
    double tol = kDefaultTol;
    std::string format = "json";
    uint64_t seed = 1;
};

int run_bloch_map(const QuantumChannel& ch, const GlobalOpts& g, const std::string& csv_path,
                  int csv_samples, std::ostream& out) {
    if (ch.dim != 2) throw UnsupportedDimension("bloch-map needs a qubit channel");
    const BlochAffineMap map = channel_bloch_map(ch);
    const double violation = ball_violation(map);

    if (!csv_path.empty()) {
        std::ofstream f(csv_path);
        if (!f) throw ParseError("cannot write " + csv_path);
        f << "x,y,z,xp,yp,zp\n";
        f << std::setprecision(17);
        const double golden = 3.0 - std::sqrt(5.0);
        for (int k = 0; k < csv_samples; ++k) {
            const double z = 0.5 * (1.0 - 2.0 * (k + 0.5) / csv_samples);
            const double rad = std::sqrt(std::max(0.0, 0.25 - z * z));
            const double phi = 3.14159265358979323846 * golden * k;
            const BlochVector r{rad * std::cos(phi), rad * std::sin(phi), z};
            const BlochVector img = apply_affine(map, r);
            f << r[0] << "," << r[1] << "," << r[2] << "," << img[0] << "," << img[1] << ","
              << img[2] << "\n";
        }
    }

    if (g.format == "json") {
        json lin = json::array();
        for (int i = 0; i < 3; ++i)
            lin.push_back(json::array(
                {map.linear[i][0], map.linear[i][1], map.linear[i][2]}));
        emit(out, {{"linear", std::move(lin)},
                   {"offset", json::array({map.offset[0], map.offset[1], map.offset[2]})},
                   {"ball_violation", violation}});
    } else {
        out << "linear:\n";
        for (int i = 0; i < 3; ++i)
            out << "  " << map.linear[i][0] << " " << map.linear[i][1] << " "
                << map.linear[i][2] << "\n";
        out << "offset: " << map.offset[0] << " " << map.offset[1] << " " << map.offset[2]
            << "\n";
        out << "ball violation: " << violation << "\n";
    }
    return 0;
}

int run_verify(const std::string& which, const RunConfig& cfg, const GlobalOpts& g,
               std::ostream& out) {
    std::vector<TheoremId> ids;
    if (which == "all") {
        ids = all_theorems();
    } else {
        const auto id = parse_theorem(which);
        if (!id) throw ParseError("unknown campaign: " + which);
        ids = {*id};
    }

    bool all_ok = true;
    std::vector<TrialReport> reports;
    reports.reserve(ids.size());
    for (const TheoremId id : ids) {
        reports.push_back(verify(id, cfg));
        all_ok = all_ok && reports.back().ok;
    }

    if (g.format == "json") {
        if (reports.size() == 1) {
            out << report_to_json_string(reports.front());
        } else {
            json arr = json::array();
            for (const TrialReport& rep : reports)
                arr.push_back(json::parse(report_to_json_string(rep)));
            emit(out, arr);
        }
    } else {
        for (const TrialReport& rep : reports) {
            out << rep.theorem << ": " << rep.passes << "/" << rep.trials << " trials passed"
                << (rep.ok ? "" : "  FAILED") << "\n";
            for (const TrialFailure& f : rep.failures) {
                out << "  failure seed=" << f.seed << " residual=" << f.residual;
                if (!f.payload.empty()) out << " payload=" << f.payload;
                out << "\n";
            }
        }
        out << (all_ok ? "ok" : "FAILED") << "\n";
    }
    return all_ok ? 0 : 1;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Local creation of quantum discord: channels, tests, verification"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--tol", g.tol, "numerical tolerance");
    app.add_option("--format", g.format, "output format")
        ->check(CLI::IsMember({"json", "text"}));
    app.add_option("--seed", g.seed, "RNG seed");

    auto* c_classify = app.add_subcommand("classify", "classify a channel file");
    std::string classify_path;
    c_classify->add_option("channel", classify_path, "channel JSON file")->required();
    int witness_tries = 500;
    c_classify->add_option("--witness-tries", witness_tries,
                           "witness search attempts for discord-creating channels");

    auto* c_discord = app.add_subcommand("discord", "measured discord of a state file");
    std::string discord_path;
    bool swap = false;
    c_discord->add_option("state", discord_path, "bipartite state JSON file")->required();
    c_discord->add_flag("--swap-parties", swap, "measure party A instead of party B");

    auto* c_zeroqd = app.add_subcommand("zeroqd", "block commutation test of a state file");
    std::string zeroqd_path;
    c_zeroqd->add_option("state", zeroqd_path, "bipartite state JSON file")->required();

    auto* c_verify = app.add_subcommand("verify", "run a verification campaign");
    std::string which = "all";
    RunConfig cfg;
    c_verify->add_option("campaign", which,
                         "campaign id (T1_FWD, T1_CONV, T2_FWD, T3, T4_RT, T5_FWD, P1, P2, "
                         "OBS1, OBS3) or 'all'");
    c_verify->add_option("--trials", cfg.trials, "trials per campaign")
        ->check(CLI::PositiveNumber);
    c_verify->add_option("--dim-a", cfg.dim_a, "first party dimension")
        ->check(CLI::Range(2, 8));
    c_verify->add_option("--dim-b", cfg.dim_b, "second party dimension")
        ->check(CLI::Range(2, 8));
    c_verify->add_option("--out-dir", cfg.out_dir, "directory for failure payloads");

    auto* c_sample = app.add_subcommand("sample", "draw a reproducible random object");
    c_sample->require_subcommand(1);
    std::string sample_out;
    c_sample->add_option("--out", sample_out, "write to file instead of stdout");
    int dim_a = 2, dim_b = 3, dim = 3, rank = 0, kraus_rank = 0;
    std::string branch_name = "unitary";
    auto* s_state = c_sample->add_subcommand("state", "random bipartite state");
    s_state->add_option("--dim-a", dim_a)->check(CLI::Range(2, 8));
    s_state->add_option("--dim-b", dim_b)->check(CLI::Range(2, 8));
    auto* s_zeroqd = c_sample->add_subcommand("zeroqd-state", "random zero-discord state");
    s_zeroqd->add_option("--dim-a", dim_a)->check(CLI::Range(2, 8));
    s_zeroqd->add_option("--dim-b", dim_b)->check(CLI::Range(2, 8));
    s_zeroqd->add_option("--rank", rank, "number of classical flags (default dim-b)");
    auto* s_channel = c_sample->add_subcommand("channel", "random CPTP channel");
    s_channel->add_option("--dim", dim)->check(CLI::Range(2, 8));
    s_channel->add_option("--kraus-rank", kraus_rank, "Kraus rank (default dim)");
    auto* s_iso = c_sample->add_subcommand("isotropic", "random isotropic channel");
    s_iso->add_option("--dim", dim)->check(CLI::Range(2, 8));
    s_iso->add_option("--branch", branch_name)->check(CLI::IsMember({"unitary", "transpose"}));
    auto* s_dec = c_sample->add_subcommand("decohering", "random completely decohering channel");
    s_dec->add_option("--dim", dim)->check(CLI::Range(2, 8));
    auto* s_cpu = c_sample->add_subcommand("qubit-cpu", "random qubit normal-form channel");

    auto* c_bloch = app.add_subcommand("bloch-map", "Bloch affine map of a qubit channel");
    std::string bloch_path, csv_path;
    int csv_samples = 1000;
    c_bloch->add_option("channel", bloch_path, "channel JSON file")->required();
    c_bloch->add_option("--emit-csv", csv_path, "write sphere sample images as CSV");
    c_bloch->add_option("--csv-samples", csv_samples, "rows in the CSV")
        ->check(CLI::PositiveNumber);

    for (CLI::App* sub : app.get_subcommands({})) {
        sub->fallthrough();
        for (CLI::App* nested : sub->get_subcommands({})) nested->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 2;
    }

    try {
        if (*c_classify) {
            QuantumChannel ch = channel_from_json(load_json_file(classify_path));
            ClassifyOptions opts;
            opts.tol = g.tol;
            opts.witness_tries = witness_tries;
            opts.witness_seed = derive_seed(g.seed, 0xA11CEull);
            const ChannelClass cls = classify(ch, opts);
            if (g.format == "json")
                emit(out, class_to_json(cls));
            else
                print_class_text(cls, out);
            return 0;
        }
        if (*c_discord) {
            BipartiteState s = state_from_json(load_json_file(discord_path), g.tol);
            if (swap) s = swap_parties(s);
            const DiscordResult res = discord_b(s, g.tol);
            if (g.format == "json") {
                emit(out, {{"value", res.value},
                           {"converged", res.converged},
                           {"evaluations", res.evaluations},
                           {"basis", basis_to_json(res.basis)}});
            } else {
                out << "discord: " << res.value << "\n";
                out << "converged: " << (res.converged ? "yes" : "no") << "\n";
                out << "evaluations: " << res.evaluations << "\n";
            }
            return 0;
        }
        if (*c_zeroqd) {
            const BipartiteState s = state_from_json(load_json_file(zeroqd_path), g.tol);
            const double resid = zero_discord_residual(s);
            const bool zero = resid <= g.tol;
            if (g.format == "json")
                emit(out, {{"residual", resid}, {"zero_discord", zero}, {"tol", g.tol}});
            else
                out << "residual: " << resid << "\n"
                    << "zero discord: " << (zero ? "yes" : "no") << "\n";
            return 0;
        }
        if (*c_verify) {
            cfg.seed = g.seed;
            cfg.tol = g.tol;
            return run_verify(which, cfg, g, out);
        }
        if (*c_sample) {
            json j;
            if (*s_state) {
                j = state_to_json(sample_random_state(dim_a, dim_b, g.seed));
            } else if (*s_zeroqd) {
                const int k = rank > 0 ? rank : dim_b;
                if (k > dim_b) throw ParseError("--rank cannot exceed --dim-b");
                j = state_to_json(sample_zero_discord_state(dim_a, dim_b, k, g.seed));
            } else if (*s_channel) {
                const int kr = kraus_rank > 0 ? kraus_rank : dim;
                j = channel_to_json(sample_random_channel(dim, kr, g.seed));
            } else if (*s_iso) {
                const IsotropicBranch branch = branch_name == "unitary"
                                                   ? IsotropicBranch::Unitary
                                                   : IsotropicBranch::Transpose;
                j = channel_to_json(sample_isotropic_channel(dim, branch, g.seed));
            } else if (*s_dec) {
                j = channel_to_json(sample_decohering_channel(dim, g.seed));
            } else if (*s_cpu) {
                j = channel_to_json(sample_qubit_cpu_channel(g.seed));
            }
            write_output(sample_out, j, out);
            return 0;
        }
        if (*c_bloch) {
            const QuantumChannel ch = channel_from_json(load_json_file(bloch_path));
            return run_bloch_map(ch, g, csv_path, csv_samples, out);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace qdc
