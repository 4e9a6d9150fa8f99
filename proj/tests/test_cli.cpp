#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qdc/cli.hpp"
#include "qdc/io.hpp"
#include "util.hpp"

using namespace qdc;
using nlohmann::json;

namespace {

struct CliResult {
    int code = 0;
    std::string out;
    std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.push_back("qdc");
    for (const std::string& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    CliResult r;
    r.code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string fixture(const std::string& name) {
    return testutil::fixtures_dir() + "/" + name;
}

}  // namespace

TEST_CASE("classify reports the recorded family for each fixture") {
    const std::pair<std::string, std::string> cases[] = {
        {"isotropic_n3.json", "nontrivial_isotropic"},
        {"decohering_n3.json", "completely_decohering"},
        {"qubit_cpu.json", "qubit_commutativity_preserving"},
        {"amplitude_damping.json", "creates_discord"},
    };
    for (const auto& [file, family] : cases) {
        const CliResult r = run_cli({"classify", fixture(file)});
        INFO(file, ": ", r.err);
        CHECK(r.code == 0);
        const json j = json::parse(r.out);
        CHECK(j["family"] == family);
    }
}

TEST_CASE("classify fills the family-specific parameter block") {
    const json iso = json::parse(run_cli({"classify", fixture("isotropic_n3.json")}).out);
    CHECK(iso["isotropic"]["branch"] == "transpose");
    CHECK(iso["isotropic"]["weight"].get<double>() == doctest::Approx(0.0368322).epsilon(1e-4));

    const json cpu = json::parse(run_cli({"classify", fixture("qubit_cpu.json")}).out);
    CHECK(cpu["qubit_cpu"]["lambda"].get<double>() == doctest::Approx(0.865742).epsilon(1e-4));

    const json wit = json::parse(run_cli({"classify", fixture("amplitude_damping.json")}).out);
    REQUIRE(wit.contains("witness"));
    CHECK(wit["witness"]["input_residual"].get<double>() < 1e-8);
    CHECK(wit["witness"]["output_residual"].get<double>() > 1e-6);
}

TEST_CASE("discord evaluates the maximally entangled fixture to one bit") {
    const CliResult r = run_cli({"discord", fixture("bell.json")});
    CHECK(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["value"].get<double>() == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(j["converged"] == true);
}

TEST_CASE("zeroqd accepts the classical-quantum fixture") {
    const CliResult r = run_cli({"zeroqd", fixture("cq_state.json")});
    CHECK(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["zero_discord"] == true);
    CHECK(j["residual"].get<double>() < 1e-10);
}

TEST_CASE("verify runs a campaign deterministically") {
    const std::vector<std::string> args = {"verify", "T1_FWD", "--trials", "5", "--seed", "9"};
    const CliResult a = run_cli(args);
    const CliResult b = run_cli(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    const json j = json::parse(a.out);
    CHECK(j["theorem"] == "T1_FWD");
    CHECK(j["trials"] == 5);
    CHECK(j["passes"] == 5);
}

TEST_CASE("verify all emits one report per campaign") {
    const CliResult r = run_cli({"verify", "all", "--trials", "2"});
    CHECK(r.code == 0);
    const json j = json::parse(r.out);
    REQUIRE(j.is_array());
    CHECK(j.size() == 10);
    for (const auto& rep : j) CHECK(rep["passes"] == rep["trials"]);
}

TEST_CASE("verify exit codes separate campaign failure from bad input") {
    CHECK(run_cli({"verify", "T1_FWD", "--trials", "3", "--tol", "1e-30"}).code == 1);
    const CliResult r = run_cli({"verify", "T9_SIDEWAYS"});
    CHECK(r.code == 2);
    CHECK(r.err.find("error:") != std::string::npos);
}

TEST_CASE("file errors exit with code 2 and a diagnostic") {
    const CliResult missing = run_cli({"classify", "/nonexistent/channel.json"});
    CHECK(missing.code == 2);
    CHECK(missing.err.find("error:") != std::string::npos);

    const std::string bad =
        (std::filesystem::temp_directory_path() / "qdc-bad-input.json").string();
    {
        std::ofstream f(bad);
        f << "{\"kraus\": \"not a list\"";
    }
    const CliResult malformed = run_cli({"classify", bad});
    CHECK(malformed.code == 2);
    CHECK(malformed.err.find("error:") != std::string::npos);
    std::filesystem::remove(bad);

    const CliResult wrongkind = run_cli({"discord", fixture("qubit_cpu.json")});
    CHECK(wrongkind.code == 2);
}

TEST_CASE("sample emits deterministic states that parse back") {
    const std::vector<std::string> args = {"sample", "state", "--dim-a", "2",
                                           "--dim-b", "3",    "--seed",  "42"};
    const CliResult a = run_cli(args);
    const CliResult b = run_cli(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    const BipartiteState st = state_from_json(json::parse(a.out));
    CHECK(st.dim_a == 2);
    CHECK(st.dim_b == 3);

    const CliResult ch = run_cli({"sample", "qubit-cpu", "--seed", "7"});
    CHECK(ch.code == 0);
    const QuantumChannel parsed = channel_from_json(json::parse(ch.out));
    CHECK(parsed.dim == 2);
}

TEST_CASE("sample --out writes the file instead of stdout") {
    const std::string path =
        (std::filesystem::temp_directory_path() / "qdc-sample-out.json").string();
    std::filesystem::remove(path);
    const CliResult r =
        run_cli({"sample", "channel", "--dim", "3", "--seed", "3", "--out", path});
    CHECK(r.code == 0);
    std::ifstream in(path);
    REQUIRE(in.good());
    json j;
    in >> j;
    CHECK(channel_from_json(j).dim == 3);
    std::filesystem::remove(path);
}

TEST_CASE("bloch-map reports the affine action and writes sample images") {
    const CliResult r = run_cli({"bloch-map", fixture("qubit_cpu.json")});
    CHECK(r.code == 0);
    const json j = json::parse(r.out);
    REQUIRE(j.contains("linear"));
    REQUIRE(j.contains("offset"));
    REQUIRE(j.contains("ball_violation"));
    CHECK(j["linear"].size() == 3);
    CHECK(j["offset"].size() == 3);
    CHECK(j["ball_violation"].get<double>() < 1e-9);

    const std::string csv =
        (std::filesystem::temp_directory_path() / "qdc-bloch.csv").string();
    std::filesystem::remove(csv);
    const CliResult rc = run_cli({"bloch-map", fixture("qubit_cpu.json"), "--emit-csv", csv,
                                  "--csv-samples", "64"});
    CHECK(rc.code == 0);
    std::ifstream in(csv);
    REQUIRE(in.good());
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "x,y,z,xp,yp,zp");
    int rows = 0;
    while (std::getline(in, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 64);
    std::filesystem::remove(csv);
}

TEST_CASE("text format prints a readable summary") {
    const CliResult r = run_cli({"classify", fixture("qubit_cpu.json"), "--format", "text"});
    CHECK(r.code == 0);
    CHECK(r.out.find("qubit_commutativity_preserving") != std::string::npos);
    CHECK(r.out.find("lambda") != std::string::npos);

    const CliResult v = run_cli({"verify", "T3", "--trials", "3", "--format", "text"});
    CHECK(v.code == 0);
    CHECK(v.out.find("T3") != std::string::npos);
    CHECK(v.out.find("3/3") != std::string::npos);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli({}).code == 2);
    CHECK(run_cli({"frobnicate"}).code == 2);
}

TEST_CASE("--help exits cleanly") {
    CHECK(run_cli({"--help"}).code == 0);
    CHECK(run_cli({"classify", "--help"}).code == 0);
}

TEST_CASE("the installed binary answers a smoke call") {
    const std::string cmd = std::string(QDC_CLI_PATH) + " verify T2_FWD --trials 2 > /dev/null";
    CHECK(std::system(cmd.c_str()) == 0);
}
