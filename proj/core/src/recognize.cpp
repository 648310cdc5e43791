#include "hyperthresh/recognize.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace hyperthresh {

VertexSet PartitionWitness::part(int i) const {
  VertexSet out;
  for (Vertex v = 0; v < part_of.size(); ++v) {
    if (part_of[v] == i) out.push_back(v);
  }
  return out;
}

std::vector<VertexSet> PartitionWitness::parts(int r) const {
  std::vector<VertexSet> out(static_cast<std::size_t>(r));
  for (Vertex v = 0; v < part_of.size(); ++v) {
    if (part_of[v] < out.size()) out[part_of[v]].push_back(v);
  }
  return out;
}

namespace {

void validate_partition(const Hypergraph& f, const PartitionWitness& w) {
  if (w.part_of.size() != f.num_vertices()) {
    throw InputError("witness assigns " + std::to_string(w.part_of.size()) + " vertices but F has " +
                     std::to_string(f.num_vertices()));
  }
  for (Vertex v = 0; v < f.num_vertices(); ++v) {
    if (w.part_of[v] >= f.r()) {
      throw InputError("witness puts vertex '" + f.name(v) + "' in part " + std::to_string(w.part_of[v] + 1) +
                       " of " + std::to_string(f.r()));
    }
  }
}

bool inside_v1(const Edge& e, const PartitionWitness& w) {
  return std::all_of(e.begin(), e.end(), [&](Vertex v) { return w.part_of[v] == 0; });
}

bool is_transversal(const Edge& e, const PartitionWitness& w, int r) {
  std::vector<char> seen(static_cast<std::size_t>(r), 0);
  for (Vertex v : e) {
    if (seen[w.part_of[v]]) return false;
    seen[w.part_of[v]] = 1;
  }
  return true;
}

std::optional<EdgeId> first_non_transversal(const Hypergraph& f, const PartitionWitness& w) {
  for (EdgeId e = 0; e < f.num_edges(); ++e) {
    const Edge& edge = f.edge(e);
    if (!inside_v1(edge, w) && !is_transversal(edge, w, f.r())) return e;
  }
  return std::nullopt;
}

/// Component id of each V_1 vertex inside F[V_1]; -1 outside V_1.
std::vector<int> forest_component_ids(const Hypergraph& f, const PartitionWitness& w) {
  std::vector<Vertex> parent(f.num_vertices());
  std::iota(parent.begin(), parent.end(), Vertex{0});
  auto find = [&](Vertex v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const Edge& e : f.edges()) {
    if (!inside_v1(e, w)) continue;
    for (std::size_t i = 1; i < e.size(); ++i) {
      const Vertex a = find(e[0]), b = find(e[i]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::vector<int> id(f.num_vertices(), -1);
  std::vector<int> root_id(f.num_vertices(), -1);
  int next = 0;
  for (Vertex v = 0; v < f.num_vertices(); ++v) {
    if (w.part_of[v] != 0) continue;
    const Vertex root = find(v);
    if (root_id[root] < 0) root_id[root] = next++;
    id[v] = root_id[root];
  }
  return id;
}

UnifoliateCheck check_with_cycles(const Hypergraph& f, const PartitionWitness& w, const std::vector<Cycle>& cycles) {
  auto fail = [](UnifoliateViolation v) { return UnifoliateCheck{false, std::move(v)}; };
  if (auto e = first_non_transversal(f, w)) {
    return fail({UnifoliateViolation::Kind::non_transversal, std::nullopt, *e});
  }
  std::vector<char> in_v1(f.num_edges(), 0);
  for (EdgeId e = 0; e < f.num_edges(); ++e) in_v1[e] = inside_v1(f.edge(e), w);

  for (const Cycle& c : cycles) {
    if (std::all_of(c.edges.begin(), c.edges.end(), [&](EdgeId e) { return in_v1[e]; })) {
      return fail({UnifoliateViolation::Kind::forest_cycle, c, std::nullopt});
    }
  }
  const auto comp = forest_component_ids(f, w);
  for (const Cycle& c : cycles) {
    const auto forest_edges = std::count_if(c.edges.begin(), c.edges.end(), [&](EdgeId e) { return in_v1[e]; });
    if (forest_edges != 1) continue;
    const EdgeId leaf = *std::find_if(c.edges.begin(), c.edges.end(), [&](EdgeId e) { return in_v1[e]; });
    const int home = comp[f.edge(leaf).front()];
    bool one_component = true;
    for (EdgeId e : c.edges) {
      for (Vertex v : f.edge(e)) {
        if (w.part_of[v] == 0 && comp[v] != home) one_component = false;
      }
    }
    if (one_component) return fail({UnifoliateViolation::Kind::single_forest_edge, c, std::nullopt});
  }
  return {};
}

StrongCheck strong_path_search(const Hypergraph& f, const PartitionWitness& w) {
  const auto comp = forest_component_ids(f, w);
  const auto cross = cross_edges(f, w);
  // Cross-edges are adjacent when they share a vertex outside V_1.
  std::vector<std::vector<std::size_t>> adjacent(cross.size());
  for (std::size_t i = 0; i < cross.size(); ++i) {
    for (std::size_t j = 0; j < cross.size(); ++j) {
      if (i == j) continue;
      const Edge& a = f.edge(cross[i]);
      const Edge& b = f.edge(cross[j]);
      const bool meet = std::any_of(a.begin(), a.end(), [&](Vertex v) {
        return w.part_of[v] != 0 && std::binary_search(b.begin(), b.end(), v);
      });
      if (meet) adjacent[i].push_back(j);
    }
  }
  auto v1_vertex = [&](std::size_t i) {
    const Edge& e = f.edge(cross[i]);
    return *std::find_if(e.begin(), e.end(), [&](Vertex v) { return w.part_of[v] == 0; });
  };
  for (Vertex x = 0; x < f.num_vertices(); ++x) {
    if (w.part_of[x] != 0) continue;
    for (Vertex y = x + 1; y < f.num_vertices(); ++y) {
      if (w.part_of[y] != 0 || comp[y] != comp[x]) continue;
      std::vector<long> from(cross.size(), -2);
      std::deque<std::size_t> queue;
      for (std::size_t i = 0; i < cross.size(); ++i) {
        if (v1_vertex(i) == x) {
          from[i] = -1;
          queue.push_back(i);
        }
      }
      while (!queue.empty()) {
        const std::size_t i = queue.front();
        queue.pop_front();
        if (v1_vertex(i) == y) {
          StrongViolation v{x, y, {}};
          for (long k = static_cast<long>(i); k >= 0; k = from[static_cast<std::size_t>(k)]) {
            v.path.push_back(cross[static_cast<std::size_t>(k)]);
          }
          std::reverse(v.path.begin(), v.path.end());
          return {false, std::move(v)};
        }
        for (std::size_t j : adjacent[i]) {
          if (from[j] == -2) {
            from[j] = static_cast<long>(i);
            queue.push_back(j);
          }
        }
      }
    }
  }
  return {};
}

}  // namespace

PartitionWitness witness_from_parts(const Hypergraph& f, const std::vector<VertexSet>& parts) {
  if (parts.size() != static_cast<std::size_t>(f.r())) {
    throw InputError("witness must list exactly " + std::to_string(f.r()) + " parts");
  }
  PartitionWitness w;
  w.part_of.assign(f.num_vertices(), 0xff);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (Vertex v : parts[i]) {
      if (v >= f.num_vertices()) throw InputError("witness names a vertex outside F");
      if (w.part_of[v] != 0xff) throw InputError("vertex '" + f.name(v) + "' appears in two parts");
      w.part_of[v] = static_cast<std::uint8_t>(i);
    }
  }
  for (Vertex v = 0; v < f.num_vertices(); ++v) {
    if (w.part_of[v] == 0xff) throw InputError("vertex '" + f.name(v) + "' is missing from the witness");
  }
  return w;
}

Json witness_to_json(const Hypergraph& f, const PartitionWitness& w) {
  Json parts = Json::array();
  for (const auto& part : w.parts(f.r())) {
    Json names = Json::array();
    for (Vertex v : part) names.push_back(f.name(v));
    parts.push_back(std::move(names));
  }
  Json j;
  j["parts"] = std::move(parts);
  return j;
}

PartitionWitness witness_from_json(const Hypergraph& f, const Json& j) {
  if (!j.is_object() || !j.contains("parts") || !j["parts"].is_array()) {
    throw InputError("witness JSON needs a 'parts' array");
  }
  std::vector<VertexSet> parts;
  for (const auto& part : j["parts"]) {
    VertexSet vs;
    for (const auto& name : part) vs.push_back(f.index_of(name.get<std::string>()));
    parts.push_back(std::move(vs));
  }
  return witness_from_parts(f, parts);
}

std::vector<VertexSet> tree_components(const Hypergraph& f, const PartitionWitness& w) {
  validate_partition(f, w);
  const auto id = forest_component_ids(f, w);
  std::vector<VertexSet> out;
  for (Vertex v = 0; v < f.num_vertices(); ++v) {
    if (id[v] < 0) continue;
    if (static_cast<std::size_t>(id[v]) >= out.size()) out.resize(static_cast<std::size_t>(id[v]) + 1);
    out[static_cast<std::size_t>(id[v])].push_back(v);
  }
  return out;
}

std::vector<EdgeId> cross_edges(const Hypergraph& f, const PartitionWitness& w) {
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < f.num_edges(); ++e) {
    if (!inside_v1(f.edge(e), w)) out.push_back(e);
  }
  return out;
}

ShadowHypergraph shadow(const Hypergraph& f, const PartitionWitness& w) {
  validate_partition(f, w);
  if (auto e = first_non_transversal(f, w)) {
    throw InputError("witness invalid: edge " + f.edge_label(*e) + " is neither inside V1 nor transversal");
  }
  if (f.r() < 2) throw InputError("shadow needs uniformity at least 2");
  ShadowHypergraph s;
  std::vector<Vertex> to_shadow(f.num_vertices(), 0);
  std::vector<std::string> names;
  for (Vertex v = 0; v < f.num_vertices(); ++v) {
    if (w.part_of[v] == 0) continue;
    to_shadow[v] = static_cast<Vertex>(names.size());
    names.push_back(f.name(v));
    s.origin.push_back(v);
  }
  std::vector<Edge> edges;
  for (EdgeId e : cross_edges(f, w)) {
    Edge projected;
    for (Vertex v : f.edge(e)) {
      if (w.part_of[v] != 0) projected.push_back(to_shadow[v]);
    }
    edges.push_back(std::move(projected));
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  s.graph = Hypergraph(f.r() - 1, std::move(names), std::move(edges));
  s.components = components(s.graph);
  s.component.assign(s.graph.num_vertices(), 0);
  for (std::size_t c = 0; c < s.components.size(); ++c) {
    for (Vertex v : s.components[c]) s.component[v] = c;
  }
  return s;
}

VertexSet v1_neighborhood(const Hypergraph& f, const PartitionWitness& w, const ShadowHypergraph& s,
                          std::size_t component) {
  if (component >= s.components.size()) {
    throw InputError("unknown shadow component " + std::to_string(component));
  }
  std::vector<int> to_shadow(f.num_vertices(), -1);
  for (Vertex sv = 0; sv < s.origin.size(); ++sv) to_shadow[s.origin[sv]] = static_cast<int>(sv);
  VertexSet out;
  for (EdgeId e : cross_edges(f, w)) {
    Vertex x = 0;
    bool in_component = false;
    for (Vertex v : f.edge(e)) {
      if (w.part_of[v] == 0) x = v;
      else in_component = s.component[static_cast<std::size_t>(to_shadow[v])] == component;
    }
    if (in_component) out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Cycle> witness_cycles(const Hypergraph& f) {
  const std::size_t bound = std::max<std::size_t>(2, std::min(f.num_edges(), f.num_vertices()));
  return enumerate_cycles(f, bound);
}

UnifoliateCheck check_unifoliate_witness(const Hypergraph& f, const PartitionWitness& w) {
  return check_unifoliate_witness(f, w, witness_cycles(f));
}

UnifoliateCheck check_unifoliate_witness(const Hypergraph& f, const PartitionWitness& w,
                                         const std::vector<Cycle>& cycles) {
  if (w.part_of.size() != f.num_vertices() ||
      std::any_of(w.part_of.begin(), w.part_of.end(), [&](std::uint8_t p) { return p >= f.r(); })) {
    return {false, UnifoliateViolation{}};
  }
  return check_with_cycles(f, w, cycles);
}

StrongCheck check_strong_witness(const Hypergraph& f, const PartitionWitness& w) {
  if (!check_unifoliate_witness(f, w).ok) {
    throw InputError("strong check needs a valid unifoliate witness");
  }
  return strong_path_search(f, w);
}

bool strong_by_shadow_components(const Hypergraph& f, const PartitionWitness& w) {
  const ShadowHypergraph s = shadow(f, w);
  const auto comp = forest_component_ids(f, w);
  for (std::size_t c = 0; c < s.components.size(); ++c) {
    const VertexSet n = v1_neighborhood(f, w, s, c);
    std::vector<int> hits;
    for (Vertex x : n) hits.push_back(comp[x]);
    std::sort(hits.begin(), hits.end());
    if (std::adjacent_find(hits.begin(), hits.end()) != hits.end()) return false;
  }
  return true;
}

namespace {

/// Backtracking over part vectors in lexicographic order. Parts 2..r are
/// interchangeable, so only restricted-growth labelings of them are visited;
/// the lexicographically first witness always has that form.
class PartitionSearch {
 public:
  enum class Goal { unifoliate, strong, both };

  PartitionSearch(const Hypergraph& f, Goal goal, std::uint64_t budget)
      : f_(f), goal_(goal), budget_(budget), cycles_(witness_cycles(f)), edges_ending_at_(f.num_vertices()) {
    for (EdgeId e = 0; e < f.num_edges(); ++e) edges_ending_at_[f.edge(e).back()].push_back(e);
    current_.part_of.assign(f.num_vertices(), 0);
  }

  void run() { recurse(0, 0); }

  std::optional<PartitionWitness> first_unifoliate;
  std::optional<PartitionWitness> first_strong;
  std::optional<StrongViolation> unifoliate_strong_violation;

  std::uint64_t leaves() const { return leaves_; }
  bool exhausted() const { return budget_.exhausted(); }
  std::uint64_t nodes() const { return budget_.used(); }

 private:
  bool done() const {
    switch (goal_) {
      case Goal::unifoliate: return first_unifoliate.has_value();
      case Goal::strong:
      case Goal::both: return first_strong.has_value();
    }
    return false;
  }

  bool edges_ok(Vertex v) const {
    for (EdgeId e : edges_ending_at_[v]) {
      const Edge& edge = f_.edge(e);
      if (!inside_v1(edge, current_) && !is_transversal(edge, current_, f_.r())) return false;
    }
    return true;
  }

  void leaf() {
    ++leaves_;
    if (!check_with_cycles(f_, current_, cycles_).ok) return;
    if (!first_unifoliate) first_unifoliate = current_;
    if (goal_ == Goal::unifoliate) return;
    StrongCheck strong = strong_path_search(f_, current_);
    if (strong.ok) {
      first_strong = current_;
    } else if (*first_unifoliate == current_) {
      unifoliate_strong_violation = strong.violation;
    }
  }

  void recurse(Vertex v, int max_label) {
    if (done() || !budget_.tick()) return;
    if (v == f_.num_vertices()) {
      leaf();
      return;
    }
    const int top = std::min(f_.r() - 1, max_label + 1);
    for (int p = 0; p <= top; ++p) {
      current_.part_of[v] = static_cast<std::uint8_t>(p);
      if (edges_ok(v)) recurse(v + 1, std::max(max_label, p));
      if (done() || budget_.exhausted()) break;
    }
    current_.part_of[v] = 0;
  }

  const Hypergraph& f_;
  Goal goal_;
  Budget budget_;
  std::vector<Cycle> cycles_;
  std::vector<std::vector<EdgeId>> edges_ending_at_;
  PartitionWitness current_;
  std::uint64_t leaves_ = 0;
};

Search<PartitionWitness> run_search(const Hypergraph& f, PartitionSearch::Goal goal, std::uint64_t budget) {
  PartitionSearch search(f, goal, budget);
  search.run();
  Search<PartitionWitness> out;
  out.value = goal == PartitionSearch::Goal::unifoliate ? search.first_unifoliate : search.first_strong;
  out.status = !out.value && search.exhausted() ? SearchStatus::budget_exhausted : SearchStatus::complete;
  out.nodes = search.nodes();
  return out;
}

}  // namespace

Search<PartitionWitness> is_unifoliate(const Hypergraph& f, std::uint64_t budget) {
  return run_search(f, PartitionSearch::Goal::unifoliate, budget);
}

Search<PartitionWitness> is_strong_unifoliate(const Hypergraph& f, std::uint64_t budget) {
  return run_search(f, PartitionSearch::Goal::strong, budget);
}

std::string to_string(Classification::Class c) {
  switch (c) {
    case Classification::Class::not_unifoliate: return "NotUnifoliate";
    case Classification::Class::unifoliate_only: return "UnifoliateOnly";
    case Classification::Class::strong_unifoliate: return "StrongUnifoliate";
  }
  return "?";
}

Classification classify(const Hypergraph& f, std::uint64_t budget) {
  PartitionSearch search(f, PartitionSearch::Goal::both, budget);
  search.run();
  Classification out;
  out.partitions_checked = search.leaves();
  if (search.first_strong) {
    out.cls = Classification::Class::strong_unifoliate;
    out.witness = search.first_strong;
    return out;
  }
  if (search.exhausted()) {
    throw BudgetExceeded("partition search exhausted its budget after " + std::to_string(search.nodes()) +
                         " nodes");
  }
  if (search.first_unifoliate) {
    out.cls = Classification::Class::unifoliate_only;
    out.witness = search.first_unifoliate;
    out.strong_violation = search.unifoliate_strong_violation;
  }
  return out;
}

Json violation_to_json(const Hypergraph& f, const UnifoliateViolation& v) {
  Json j;
  switch (v.kind) {
    case UnifoliateViolation::Kind::bad_partition: j["kind"] = "bad_partition"; break;
    case UnifoliateViolation::Kind::forest_cycle: j["kind"] = "forest_cycle"; break;
    case UnifoliateViolation::Kind::non_transversal: j["kind"] = "non_transversal"; break;
    case UnifoliateViolation::Kind::single_forest_edge: j["kind"] = "single_forest_edge"; break;
  }
  if (v.cycle) j["cycle"] = cycle_to_json(f, *v.cycle);
  if (v.edge) j["edge"] = f.edge_names(*v.edge);
  return j;
}

Json strong_violation_to_json(const Hypergraph& f, const StrongViolation& v) {
  Json j;
  j["kind"] = "strong_path";
  j["x"] = f.name(v.x);
  j["y"] = f.name(v.y);
  j["path"] = Json::array();
  for (EdgeId e : v.path) j["path"].push_back(f.edge_names(e));
  return j;
}

Json classification_to_json(const Hypergraph& f, const Classification& c) {
  Json j;
  j["class"] = to_string(c.cls);
  if (c.witness) j["witness"] = witness_to_json(f, *c.witness);
  if (c.strong_violation) {
    j["violation"] = strong_violation_to_json(f, *c.strong_violation);
  } else if (c.cls == Classification::Class::not_unifoliate) {
    Json v;
    v["kind"] = "no_witness";
    v["partitions_checked"] = c.partitions_checked;
    j["violation"] = std::move(v);
  }
  return j;
}

}  // namespace hyperthresh
