#include <filesystem>

#include "analogen/error.hpp"
#include "analogen/io.hpp"

namespace analogen {

using nlohmann::json;

json to_json(const SemanticNetwork& net) {
  json concepts = json::array();
  for (const auto& c : net.concepts()) concepts.push_back(c);
  json relations = json::array();
  for (const auto& r : net.relations())
    relations.push_back({{"label", r.label}, {"head", r.head}, {"tail", r.tail}});
  return {{"concepts", std::move(concepts)}, {"relations", std::move(relations)}};
}

SemanticNetwork network_from_json(const json& j) {
  auto fail = [](const std::string& why) { return Error(ErrorCode::Parse, "network: " + why); };
  if (!j.is_object()) throw fail("expected an object");
  SemanticNetwork net;
  try {
    if (j.contains("concepts")) {
      if (!j.at("concepts").is_array()) throw fail("'concepts' must be an array");
      for (const auto& c : j.at("concepts")) {
        auto label = normalize_concept(c.get<std::string>());
        if (label.empty()) throw fail("empty concept label");
        net.add_concept(label);
      }
    }
    if (j.contains("relations")) {
      if (!j.at("relations").is_array()) throw fail("'relations' must be an array");
      for (const auto& r : j.at("relations")) {
        Relation rel{r.at("label").get<std::string>(), normalize_concept(r.at("head").get<std::string>()),
                     normalize_concept(r.at("tail").get<std::string>())};
        if (rel.label.empty() || rel.head.empty() || rel.tail.empty())
          throw fail("relation with empty field");
        if (rel.head == rel.tail) throw fail("self-loop " + to_string(rel));
        net.add_relation(rel);
      }
    }
  } catch (const json::exception& e) {
    throw fail(e.what());
  }
  return net;
}

std::string serialize(const SemanticNetwork& net) { return to_json(net).dump(2) + "\n"; }

SemanticNetwork deserialize(std::string_view text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw Error(ErrorCode::Parse, "network: invalid JSON");
  return network_from_json(j);
}

SemanticNetwork load_network(const std::filesystem::path& path) {
  try {
    return deserialize(read_file(path));
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

void save_network(const SemanticNetwork& net, const std::filesystem::path& path) {
  write_file(path, serialize(net));
}

namespace {

std::string dot_id(std::string_view s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out.push_back('\\');
    out.push_back(ch);
  }
  out.push_back('"');
  return out;
}

}  // namespace

std::string to_dot(const SemanticNetwork& net, std::string_view graph_name) {
  std::string out = "digraph " + dot_id(graph_name) + " {\n";
  for (const auto& c : net.concepts()) out += "  " + dot_id(c) + " [label=" + dot_id(c) + "];\n";
  for (const auto& r : net.relations())
    out += "  " + dot_id(r.head) + " -> " + dot_id(r.tail) + " [label=" + dot_id(r.label) + "];\n";
  out += "}\n";
  return out;
}

}  // namespace analogen
