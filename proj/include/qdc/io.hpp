#pragma once

// JSON schemas for the objects that cross the CLI boundary.
//
// Matrices serialize row-major with explicit complex pairs:
//   [[[re, im], [re, im]], [[re, im], [re, im]]]
// A channel is {"dim": n, "kraus": [matrix, ...]}; a bipartite state is
// {"dims": [m, n], "rho": matrix}. Parsing failures throw ParseError with
// the byte offset nlohmann reports; shape problems throw ParseError with a
// description, and semantic validation (CPTP, density matrix) is left to
// the constructors invoked afterwards.

#include <string>

#include <json.hpp>

#include "qdc/channel.hpp"
#include "qdc/discord.hpp"

namespace qdc {

using nlohmann::json;

json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

json channel_to_json(const QuantumChannel& ch);
QuantumChannel channel_from_json(const json& j);

json state_to_json(const BipartiteState& s);
BipartiteState state_from_json(const json& j, double tol = kDefaultTol);

json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

}  // namespace qdc
