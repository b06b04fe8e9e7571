#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "mprs/engine/aq.hpp"
#include "mprs/uncertainty/instance.hpp"
#include "mprs/uncertainty/omega.hpp"

namespace mprs {

using Json = nlohmann::ordered_json;

// {kind, n, K, c_lower, deviations, partition,
//  constraints{rows, senses, rhs}, metadata{...}}
Json instance_to_json(const Instance& inst);
// Throws ModelError on schema violations; the result passes validate().
Instance instance_from_json(const Json& j);

Json omega_to_json(const OmegaSpec& omega);
OmegaSpec omega_from_json(const Json& j);

// Everything except elapsed time, which goes under "timing".
Json result_to_json(const MprsResult& result);
MprsResult result_from_json(const Json& j);

Json trace_to_json(const TraceRecord& rec);

// Two-space indented text with a trailing newline.
std::string dump(const Json& j);

Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace mprs
