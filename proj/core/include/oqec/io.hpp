#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "oqec/channels.hpp"
#include "oqec/conditions.hpp"
#include "oqec/recovery.hpp"
#include "oqec/spaces.hpp"

// JSON interchange. Complex numbers are [re, im]; matrices are row-major
// nested arrays of those pairs. Doubles are written in shortest round-trip
// form, so a written file re-parses to bit-identical values.
//
//   decomposition: {"dim_a", "dim_b", "dim_c", "frame"?: matrix}
//   channel:       {"dim_in", "dim_out", "kraus": [matrix...],
//                   "trace_decreasing"?: bool, "metadata"?: object}
namespace oqec::io {

using json = nlohmann::json;

json to_json(const Matrix& m);
Matrix matrix_from_json(const json& j, const std::string& path);

json to_json(const Decomposition& dec);
Decomposition decomposition_from_json(const json& j);

json to_json(const Channel& ch);
Channel channel_from_json(const json& j);

json to_json(const ConditionReport& rep, bool include_blocks = true);
json to_json(const VerificationReport& rep);
json to_json(const DpiTrace& trace);

// Recovery channel with a "metadata" block (method, residuals, seeds).
json to_json(const Recovery& rec, const json& extra_metadata = json::object());

json read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const json& j);

}  // namespace oqec::io
