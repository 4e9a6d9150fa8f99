#include "qdc/io.hpp"

#include <fstream>

namespace qdc {

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (int r = 0; r < m.dim(); ++r) {
        json row = json::array();
        for (int c = 0; c < m.dim(); ++c)
            row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("matrix: expected a non-empty array of rows");
    const int n = static_cast<int>(j.size());
    Matrix m(n);
    for (int r = 0; r < n; ++r) {
        const json& row = j.at(r);
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw ParseError("matrix: row " + std::to_string(r) + " must have " +
                             std::to_string(n) + " entries");
        for (int c = 0; c < n; ++c) {
            const json& e = row.at(c);
            if (!e.is_array() || e.size() != 2 || !e.at(0).is_number() || !e.at(1).is_number())
                throw ParseError("matrix: entry (" + std::to_string(r) + ", " +
                                 std::to_string(c) + ") must be [re, im]");
            m(r, c) = cd(e.at(0).get<double>(), e.at(1).get<double>());
        }
    }
    return m;
}

json channel_to_json(const QuantumChannel& ch) {
    json out;
    out["dim"] = ch.dim;
    json kraus = json::array();
    for (const Matrix& k : ch.kraus) kraus.push_back(matrix_to_json(k));
    out["kraus"] = std::move(kraus);
    return out;
}

QuantumChannel channel_from_json(const json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("kraus"))
        throw ParseError("channel: expected an object with \"dim\" and \"kraus\"");
    if (!j["dim"].is_number_integer()) throw ParseError("channel: \"dim\" must be an integer");
    QuantumChannel ch;
    ch.dim = j["dim"].get<int>();
    if (ch.dim < 1) throw ParseError("channel: \"dim\" must be positive");
    if (!j["kraus"].is_array() || j["kraus"].empty())
        throw ParseError("channel: \"kraus\" must be a non-empty array");
    for (const json& k : j["kraus"]) {
        Matrix m = matrix_from_json(k);
        if (m.dim() != ch.dim)
            throw ParseError("channel: Kraus operator dimension does not match \"dim\"");
        ch.kraus.push_back(std::move(m));
    }
    return ch;
}

json state_to_json(const BipartiteState& s) {
    json out;
    out["dims"] = json::array({s.dim_a, s.dim_b});
    out["rho"] = matrix_to_json(s.rho);
    return out;
}

BipartiteState state_from_json(const json& j, double tol) {
    if (!j.is_object() || !j.contains("dims") || !j.contains("rho"))
        throw ParseError("state: expected an object with \"dims\" and \"rho\"");
    const json& dims = j["dims"];
    if (!dims.is_array() || dims.size() != 2 || !dims.at(0).is_number_integer() ||
        !dims.at(1).is_number_integer())
        throw ParseError("state: \"dims\" must be [m, n]");
    const int m = dims.at(0).get<int>();
    const int n = dims.at(1).get<int>();
    return make_bipartite_state(m, n, matrix_from_json(j["rho"]), tol);
}

json load_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write file: " + path);
    out << j.dump(2) << "\n";
}

}  // namespace qdc
