#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "chernband/chern_topology.hpp"
#include "chernband/hamiltonians.hpp"

namespace chernband {

// Spec schema: {"terms": [{"coeff": number, "j_word": ["Jx", ...], "s_word": ["Sz", ...]}]}.
// Word arrays are optional (empty = constant factor); anything else is rejected.
HamiltonianSpec parse_spec_json(const std::string& text);
HamiltonianSpec load_spec_file(const std::filesystem::path& path);

nlohmann::json spec_to_json(const HamiltonianSpec& spec);
nlohmann::json chern_to_json(const ChernResult& result);
nlohmann::json winding_to_json(const WindingResult& result);

// 12 significant digits; CSV emitted with this round-trips to full precision.
std::string format_real(double value);

// Write via a temp file in the same directory, then rename.
void atomic_write_text(const std::filesystem::path& path, const std::string& content);

}  // namespace chernband
