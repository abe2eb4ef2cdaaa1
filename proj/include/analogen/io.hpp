#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "analogen/semnet.hpp"

namespace analogen {

/// `{"concepts": [...], "relations": [{"head", "label", "tail"}, ...]}` in
/// canonical (sorted) order.
nlohmann::json to_json(const SemanticNetwork& net);

/// Concept labels are normalized on the way in. Throws Error(Parse).
SemanticNetwork network_from_json(const nlohmann::json& j);

std::string serialize(const SemanticNetwork& net);
SemanticNetwork deserialize(std::string_view text);

SemanticNetwork load_network(const std::filesystem::path& path);
void save_network(const SemanticNetwork& net, const std::filesystem::path& path);

/// Graphviz digraph, one labeled edge per relation.
std::string to_dot(const SemanticNetwork& net, std::string_view graph_name = "semnet");

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

/// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view bytes);

}  // namespace analogen
