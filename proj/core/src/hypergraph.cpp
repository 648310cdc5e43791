#include "hyperthresh/hypergraph.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>

namespace hyperthresh {

std::uint64_t default_budget() {
  static const std::uint64_t budget = [] {
    if (const char* env = std::getenv("UNIFOLIATE_BUDGET")) {
      char* end = nullptr;
      const unsigned long long v = std::strtoull(env, &end, 10);
      if (end != env && *end == '\0' && v > 0) return static_cast<std::uint64_t>(v);
    }
    return std::uint64_t{50'000'000};
  }();
  return budget;
}

Hypergraph::Hypergraph(int r, std::vector<std::string> names, std::vector<Edge> edges)
    : r_(r), names_(std::move(names)), edges_(std::move(edges)) {
  if (r_ < 1) throw InputError("uniformity must be at least 1, got " + std::to_string(r_));
  index_.reserve(names_.size());
  for (Vertex v = 0; v < names_.size(); ++v) {
    if (!index_.emplace(names_[v], v).second) throw InputError("duplicate vertex '" + names_[v] + "'");
  }
  for (auto& e : edges_) {
    if (e.size() != static_cast<std::size_t>(r_)) {
      throw InputError("edge of size " + std::to_string(e.size()) + " in a " + std::to_string(r_) +
                       "-uniform hypergraph");
    }
    std::sort(e.begin(), e.end());
    if (std::adjacent_find(e.begin(), e.end()) != e.end()) {
      throw InputError("edge repeats vertex '" + names_.at(*std::adjacent_find(e.begin(), e.end())) + "'");
    }
    if (!e.empty() && e.back() >= names_.size()) {
      throw InputError("edge references vertex index " + std::to_string(e.back()) + " out of range");
    }
  }
  std::sort(edges_.begin(), edges_.end());
  if (auto dup = std::adjacent_find(edges_.begin(), edges_.end()); dup != edges_.end()) {
    std::string label;
    for (Vertex v : *dup) label += (label.empty() ? "" : " ") + names_[v];
    throw InputError("duplicate edge {" + label + "}");
  }
  incidence_.assign(names_.size(), {});
  for (EdgeId e = 0; e < edges_.size(); ++e) {
    for (Vertex v : edges_[e]) incidence_[v].push_back(e);
  }
}

Hypergraph Hypergraph::from_names(int r, std::vector<std::string> vertices,
                                  const std::vector<std::vector<std::string>>& edges) {
  std::unordered_map<std::string, Vertex> idx;
  for (Vertex v = 0; v < vertices.size(); ++v) idx.emplace(vertices[v], v);
  std::vector<Edge> converted;
  converted.reserve(edges.size());
  for (const auto& e : edges) {
    Edge out;
    out.reserve(e.size());
    for (const auto& name : e) {
      auto it = idx.find(name);
      if (it == idx.end()) throw InputError("edge references unknown vertex '" + name + "'");
      out.push_back(it->second);
    }
    converted.push_back(std::move(out));
  }
  return Hypergraph(r, std::move(vertices), std::move(converted));
}

Hypergraph Hypergraph::numbered(int r, std::size_t n, std::vector<Edge> edges) {
  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) names.push_back(std::to_string(i));
  return Hypergraph(r, std::move(names), std::move(edges));
}

std::optional<Vertex> Hypergraph::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Vertex Hypergraph::index_of(std::string_view name) const {
  if (auto v = find(name)) return *v;
  throw InputError("unknown vertex '" + std::string(name) + "'");
}

std::optional<EdgeId> Hypergraph::edge_id(std::span<const Vertex> vertices) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), vertices, [](const Edge& e, std::span<const Vertex> key) {
    return std::lexicographical_compare(e.begin(), e.end(), key.begin(), key.end());
  });
  if (it != edges_.end() && std::equal(it->begin(), it->end(), vertices.begin(), vertices.end())) {
    return static_cast<EdgeId>(it - edges_.begin());
  }
  return std::nullopt;
}

std::vector<std::string> Hypergraph::edge_names(EdgeId e) const {
  std::vector<std::string> out;
  for (Vertex v : edges_.at(e)) out.push_back(names_[v]);
  return out;
}

std::string Hypergraph::edge_label(EdgeId e) const {
  std::string out;
  for (const auto& n : edge_names(e)) out += (out.empty() ? "" : " ") + n;
  return "{" + out + "}";
}

std::uint32_t Coloring::num_colors() const {
  std::set<std::uint32_t> used(color.begin(), color.end());
  used.erase(0);
  return static_cast<std::uint32_t>(used.size());
}

bool Coloring::is_complete() const {
  return std::none_of(color.begin(), color.end(), [](std::uint32_t c) { return c == 0; });
}

bool Coloring::is_proper(const Hypergraph& h) const {
  if (color.size() != h.num_vertices() || !is_complete()) return false;
  return std::none_of(h.edges().begin(), h.edges().end(), [&](const Edge& e) {
    return std::all_of(e.begin(), e.end(), [&](Vertex v) { return color[v] == color[e.front()]; });
  });
}

std::size_t degree(const Hypergraph& h, Vertex v) {
  if (v >= h.num_vertices()) throw InputError("unknown vertex index " + std::to_string(v));
  return h.incident(v).size();
}

std::size_t degree(const Hypergraph& h, std::string_view name) { return h.incident(h.index_of(name)).size(); }

std::size_t min_degree(const Hypergraph& h) {
  if (h.num_vertices() == 0) throw InputError("minimum degree of a hypergraph without vertices");
  std::size_t best = h.incident(0).size();
  for (Vertex v = 1; v < h.num_vertices(); ++v) best = std::min(best, h.incident(v).size());
  return best;
}

VertexSet resolve(const Hypergraph& h, const std::vector<std::string>& names) {
  VertexSet out;
  out.reserve(names.size());
  for (const auto& n : names) out.push_back(h.index_of(n));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

std::vector<char> membership(const Hypergraph& h, const VertexSet& x) {
  std::vector<char> in(h.num_vertices(), 0);
  for (Vertex v : x) {
    if (v >= h.num_vertices()) throw InputError("vertex index " + std::to_string(v) + " is not in the hypergraph");
    in[v] = 1;
  }
  return in;
}

}  // namespace

Hypergraph induced(const Hypergraph& h, const VertexSet& x) {
  const auto in = membership(h, x);
  std::vector<Vertex> remap(h.num_vertices(), 0);
  std::vector<std::string> names;
  for (Vertex v = 0; v < h.num_vertices(); ++v) {
    if (in[v]) {
      remap[v] = static_cast<Vertex>(names.size());
      names.push_back(h.name(v));
    }
  }
  std::vector<Edge> edges;
  for (const auto& e : h.edges()) {
    if (std::all_of(e.begin(), e.end(), [&](Vertex v) { return in[v]; })) {
      Edge mapped;
      for (Vertex v : e) mapped.push_back(remap[v]);
      edges.push_back(std::move(mapped));
    }
  }
  return Hypergraph(h.r(), std::move(names), std::move(edges));
}

std::vector<VertexSet> components(const Hypergraph& h) {
  std::vector<Vertex> parent(h.num_vertices());
  std::iota(parent.begin(), parent.end(), Vertex{0});
  auto find = [&](Vertex v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& e : h.edges()) {
    for (std::size_t i = 1; i < e.size(); ++i) {
      Vertex a = find(e[0]), b = find(e[i]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::vector<VertexSet> out;
  std::vector<int> slot(h.num_vertices(), -1);
  for (Vertex v = 0; v < h.num_vertices(); ++v) {
    const Vertex root = find(v);
    if (slot[root] < 0) {
      slot[root] = static_cast<int>(out.size());
      out.emplace_back();
    }
    out[slot[root]].push_back(v);
  }
  return out;
}

bool is_linear(const Hypergraph& h) {
  for (Vertex v = 0; v < h.num_vertices(); ++v) {
    const auto& inc = h.incident(v);
    for (std::size_t i = 0; i < inc.size(); ++i) {
      for (std::size_t j = i + 1; j < inc.size(); ++j) {
        const Edge& a = h.edge(inc[i]);
        const Edge& b = h.edge(inc[j]);
        std::size_t common = 0;
        for (auto ia = a.begin(), ib = b.begin(); ia != a.end() && ib != b.end();) {
          if (*ia < *ib) ++ia;
          else if (*ib < *ia) ++ib;
          else { ++common; ++ia; ++ib; }
        }
        if (common > 1) return false;
      }
    }
  }
  return true;
}

bool is_independent(const Hypergraph& h, const VertexSet& x) {
  const auto in = membership(h, x);
  return std::none_of(h.edges().begin(), h.edges().end(), [&](const Edge& e) {
    return std::all_of(e.begin(), e.end(), [&](Vertex v) { return in[v]; });
  });
}

bool is_strong_independent(const Hypergraph& h, const VertexSet& x) {
  const auto in = membership(h, x);
  return std::none_of(h.edges().begin(), h.edges().end(), [&](const Edge& e) {
    return std::count_if(e.begin(), e.end(), [&](Vertex v) { return in[v]; }) > 1;
  });
}

namespace {

class IndependentSetSearch {
 public:
  IndependentSetSearch(const Hypergraph& h, std::uint64_t budget)
      : h_(h), budget_(budget), chosen_count_(h.num_edges(), 0), in_(h.num_vertices(), 0) {
    order_.resize(h.num_vertices());
    std::iota(order_.begin(), order_.end(), Vertex{0});
    // Low-degree vertices first: they are the likely members of large independent sets.
    std::stable_sort(order_.begin(), order_.end(),
                     [&](Vertex a, Vertex b) { return h.incident(a).size() < h.incident(b).size(); });
  }

  IndependenceResult run() {
    // Greedy seed.
    for (Vertex v : order_) {
      if (can_add(v)) add(v);
    }
    best_ = current_;
    for (Vertex v : current_) remove(v);
    current_.clear();

    recurse(0);
    IndependenceResult out;
    out.value = best_.size();
    out.certificate = best_;
    std::sort(out.certificate.begin(), out.certificate.end());
    out.status = budget_.exhausted() ? SearchStatus::budget_exhausted : SearchStatus::complete;
    out.nodes = budget_.used();
    return out;
  }

 private:
  bool can_add(Vertex v) const {
    for (EdgeId e : h_.incident(v)) {
      if (chosen_count_[e] + 1 == h_.r()) return false;
    }
    return true;
  }
  void add(Vertex v) {
    in_[v] = 1;
    current_.push_back(v);
    for (EdgeId e : h_.incident(v)) ++chosen_count_[e];
  }
  void remove(Vertex v) {
    in_[v] = 0;
    for (EdgeId e : h_.incident(v)) --chosen_count_[e];
  }

  void recurse(std::size_t pos) {
    if (!budget_.tick()) return;
    if (current_.size() + (order_.size() - pos) <= best_.size()) return;
    if (pos == order_.size()) {
      best_ = current_;
      return;
    }
    const Vertex v = order_[pos];
    if (can_add(v)) {
      add(v);
      recurse(pos + 1);
      remove(v);
      current_.pop_back();
      if (budget_.exhausted()) return;
    }
    recurse(pos + 1);
  }

  const Hypergraph& h_;
  Budget budget_;
  std::vector<Vertex> order_;
  std::vector<int> chosen_count_;
  std::vector<char> in_;
  VertexSet current_;
  VertexSet best_;
};

}  // namespace

IndependenceResult independence_number(const Hypergraph& h, std::uint64_t budget) {
  return IndependentSetSearch(h, budget).run();
}

namespace {

/// True when giving `v` color `c` makes some edge through v monochromatic.
bool completes_monochromatic(const Hypergraph& h, const std::vector<std::uint32_t>& color, Vertex v,
                             std::uint32_t c) {
  for (EdgeId e : h.incident(v)) {
    const Edge& edge = h.edge(e);
    if (std::all_of(edge.begin(), edge.end(), [&](Vertex u) { return u == v || color[u] == c; })) return true;
  }
  return false;
}

std::vector<Vertex> check_permutation(const Hypergraph& h, const std::vector<Vertex>& order) {
  if (order.size() != h.num_vertices()) throw InputError("order is not a permutation of the vertex set");
  std::vector<char> seen(h.num_vertices(), 0);
  for (Vertex v : order) {
    if (v >= h.num_vertices() || seen[v]) throw InputError("order is not a permutation of the vertex set");
    seen[v] = 1;
  }
  return order;
}

}  // namespace

Coloring greedy_color(const Hypergraph& h, const std::vector<Vertex>& order) {
  check_permutation(h, order);
  Coloring out;
  out.color.assign(h.num_vertices(), 0);
  for (Vertex v : order) {
    std::uint32_t c = 1;
    while (completes_monochromatic(h, out.color, v, c)) ++c;
    out.color[v] = c;
  }
  return out;
}

namespace {

class ColoringSearch {
 public:
  ColoringSearch(const Hypergraph& h, std::vector<Vertex> order, Budget& budget)
      : h_(h), order_(std::move(order)), budget_(budget), color_(h.num_vertices(), 0) {}

  /// Tries to color with at most k colors; nullopt if impossible or budget ran out.
  std::optional<Coloring> solve(std::uint32_t k) {
    k_ = k;
    std::fill(color_.begin(), color_.end(), 0);
    if (!recurse(0, 0)) return std::nullopt;
    return Coloring{color_};
  }

 private:
  bool recurse(std::size_t pos, std::uint32_t used) {
    if (!budget_.tick()) return false;
    if (pos == order_.size()) return true;
    const Vertex v = order_[pos];
    const std::uint32_t top = std::min(k_, used + 1);
    for (std::uint32_t c = 1; c <= top; ++c) {
      if (completes_monochromatic(h_, color_, v, c)) continue;
      color_[v] = c;
      if (recurse(pos + 1, std::max(used, c))) return true;
      color_[v] = 0;
      if (budget_.exhausted()) return false;
    }
    return false;
  }

  const Hypergraph& h_;
  std::vector<Vertex> order_;
  Budget& budget_;
  std::vector<std::uint32_t> color_;
  std::uint32_t k_ = 0;
};

}  // namespace

ChromaticResult chromatic_number(const Hypergraph& h, std::uint32_t limit, std::uint64_t budget) {
  ChromaticResult out;
  if (h.num_vertices() == 0) return out;
  if (h.num_edges() == 0) {
    out.value = out.lower_bound = 1;
    out.coloring.color.assign(h.num_vertices(), 1);
    out.kind = limit >= 1 ? ChromaticResult::Kind::exact : ChromaticResult::Kind::exceeds_limit;
    return out;
  }
  if (h.r() == 1) {
    // A singleton edge is monochromatic under every coloring.
    out.kind = ChromaticResult::Kind::exceeds_limit;
    return out;
  }
  std::vector<Vertex> order(h.num_vertices());
  std::iota(order.begin(), order.end(), Vertex{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Vertex a, Vertex b) { return h.incident(a).size() > h.incident(b).size(); });

  out.coloring = greedy_color(h, order);
  out.value = out.coloring.num_colors();
  out.lower_bound = 2;

  Budget counter(budget);
  ColoringSearch search(h, order, counter);
  for (std::uint32_t k = 2; k < out.value && k <= limit; ++k) {
    if (auto c = search.solve(k)) {
      out.value = c->num_colors();
      out.coloring = std::move(*c);
      break;
    }
    if (counter.exhausted()) break;
    out.lower_bound = k + 1;
  }
  out.nodes = counter.used();
  if (counter.exhausted()) {
    out.kind = ChromaticResult::Kind::budget_exhausted;
  } else if (out.value > limit) {
    out.kind = ChromaticResult::Kind::exceeds_limit;
  } else {
    out.kind = ChromaticResult::Kind::exact;
    out.lower_bound = out.value;
  }
  return out;
}

}  // namespace hyperthresh
