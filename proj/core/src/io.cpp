#include "hyperthresh/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace hyperthresh {

Json to_json(const Hypergraph& h) {
  std::vector<std::vector<std::string>> edges;
  edges.reserve(h.num_edges());
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    auto names = h.edge_names(e);
    std::sort(names.begin(), names.end());
    edges.push_back(std::move(names));
  }
  std::sort(edges.begin(), edges.end());
  Json j;
  j["r"] = h.r();
  j["vertices"] = h.names();
  j["edges"] = edges;
  return j;
}

Hypergraph hypergraph_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("hypergraph JSON must be an object");
  if (!j.contains("r") || !j["r"].is_number_integer()) throw InputError("hypergraph JSON needs an integer 'r'");
  if (!j.contains("vertices") || !j["vertices"].is_array()) throw InputError("hypergraph JSON needs a 'vertices' array");
  if (!j.contains("edges") || !j["edges"].is_array()) throw InputError("hypergraph JSON needs an 'edges' array");
  const int r = j["r"].get<int>();
  if (r < 2) throw InputError("uniformity 'r' must be at least 2");
  std::vector<std::string> vertices;
  for (const auto& v : j["vertices"]) {
    if (!v.is_string()) throw InputError("vertex identifiers must be strings");
    vertices.push_back(v.get<std::string>());
  }
  std::vector<std::vector<std::string>> edges;
  for (const auto& e : j["edges"]) {
    if (!e.is_array()) throw InputError("each edge must be an array of vertex identifiers");
    std::vector<std::string> names;
    for (const auto& v : e) {
      if (!v.is_string()) throw InputError("vertex identifiers must be strings");
      names.push_back(v.get<std::string>());
    }
    edges.push_back(std::move(names));
  }
  return Hypergraph::from_names(r, std::move(vertices), edges);
}

Json coloring_to_json(const Hypergraph& h, const Coloring& c) {
  Json j = Json::object();
  for (Vertex v = 0; v < h.num_vertices(); ++v) j[h.name(v)] = c.color.at(v);
  return j;
}

Coloring coloring_from_json(const Hypergraph& h, const Json& j) {
  if (!j.is_object()) throw InputError("coloring must be an object mapping vertex to color");
  Coloring c;
  c.color.assign(h.num_vertices(), 0);
  for (const auto& [name, color] : j.items()) {
    if (!color.is_number_unsigned() || color.get<std::uint32_t>() == 0) {
      throw InputError("color of vertex '" + name + "' must be a positive integer");
    }
    c.color[h.index_of(name)] = color.get<std::uint32_t>();
  }
  return c;
}

Json cycle_to_json(const Hypergraph& h, const Cycle& c) {
  Json j;
  j["vertices"] = Json::array();
  j["edges"] = Json::array();
  for (Vertex v : c.vertices) j["vertices"].push_back(h.name(v));
  for (EdgeId e : c.edges) j["edges"].push_back(h.edge_names(e));
  return j;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_json_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << dump(j);
}

}  // namespace hyperthresh
