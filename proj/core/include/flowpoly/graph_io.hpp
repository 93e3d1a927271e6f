#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "flowpoly/multigraph.hpp"

namespace flowpoly {

// Graph JSON: {"vertices": ["u","v"], "edges": [["u","v"],["u","u"]]}.
// Edge order defines edge indices. Throws ParseError carrying the line and
// column of the offending token.
MultiGraph parse_graph_json(std::string_view text);
MultiGraph load_graph_file(const std::filesystem::path& path);

nlohmann::json graph_to_json(const MultiGraph& g);

}  // namespace flowpoly
