#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "hyperthresh/cycles.hpp"
#include "hyperthresh/hypergraph.hpp"

namespace hyperthresh {

using Json = nlohmann::ordered_json;

/// {"r": int, "vertices": [...], "edges": [[...], ...]}; each edge's names
/// and the edge list are sorted lexicographically so output is byte-stable.
Json to_json(const Hypergraph& h);
Hypergraph hypergraph_from_json(const Json& j);

Json coloring_to_json(const Hypergraph& h, const Coloring& c);
Coloring coloring_from_json(const Hypergraph& h, const Json& j);

Json cycle_to_json(const Hypergraph& h, const Cycle& c);

Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j);
std::string dump(const Json& j);

inline Hypergraph read_hypergraph(const std::filesystem::path& path) {
  return hypergraph_from_json(read_json_file(path));
}

}  // namespace hyperthresh
