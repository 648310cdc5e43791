#include "hyperthresh/bundle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

namespace hyperthresh {

bool verify_embedding(const Hypergraph& h, const Hypergraph& f, const Embedding& e) {
  if (e.map.size() != f.num_vertices()) return false;
  std::vector<char> seen(h.num_vertices(), 0);
  for (Vertex v : e.map) {
    if (v >= h.num_vertices() || seen[v]) return false;
    seen[v] = 1;
  }
  for (const Edge& edge : f.edges()) {
    Edge image;
    for (Vertex v : edge) image.push_back(e.map[v]);
    std::sort(image.begin(), image.end());
    if (!h.has_edge(image)) return false;
  }
  return true;
}

Json embedding_to_json(const Hypergraph& h, const Hypergraph& f, const Embedding& e) {
  Json j = Json::object();
  for (Vertex v = 0; v < f.num_vertices(); ++v) j[f.name(v)] = h.name(e.map.at(v));
  return j;
}

Embedding embedding_from_json(const Hypergraph& h, const Hypergraph& f, const Json& j) {
  if (!j.is_object()) throw InputError("embedding must be an object mapping vertex names");
  Embedding e;
  e.map.assign(f.num_vertices(), 0);
  std::vector<char> set(f.num_vertices(), 0);
  for (const auto& [key, value] : j.items()) {
    if (!value.is_string()) throw InputError("embedding target of '" + key + "' must be a string");
    const Vertex v = f.index_of(key);
    e.map[v] = h.index_of(value.get<std::string>());
    set[v] = 1;
  }
  for (Vertex v = 0; v < f.num_vertices(); ++v) {
    if (!set[v]) throw InputError("embedding misses vertex '" + f.name(v) + "'");
  }
  return e;
}

namespace {

std::vector<VertexSet> neighbour_lists(const Hypergraph& h) {
  std::vector<VertexSet> out(h.num_vertices());
  for (const Edge& e : h.edges()) {
    for (Vertex u : e) {
      for (Vertex v : e) {
        if (u != v) out[u].push_back(v);
      }
    }
  }
  for (auto& n : out) {
    std::sort(n.begin(), n.end());
    n.erase(std::unique(n.begin(), n.end()), n.end());
  }
  return out;
}

/// Monomorphism search. F's vertices are placed in a connectivity-first
/// order so most candidates come from a neighbour list, and each F edge is
/// checked as soon as its last vertex is placed.
class CopySearch {
 public:
  CopySearch(const Hypergraph& h, const Hypergraph& f, std::uint64_t budget)
      : h_(h), f_(f), budget_(budget), h_adj_(neighbour_lists(h)), f_adj_(neighbour_lists(f)) {
    const std::size_t n = f.num_vertices();
    std::vector<char> placed(n, 0);
    std::vector<std::size_t> placed_neighbours(n, 0);
    for (std::size_t step = 0; step < n; ++step) {
      Vertex best = 0;
      bool have = false;
      for (Vertex v = 0; v < n; ++v) {
        if (placed[v]) continue;
        const auto key = std::make_pair(placed_neighbours[v], f_adj_[v].size());
        const auto best_key = std::make_pair(placed_neighbours[best], f_adj_[best].size());
        if (!have || key > best_key) {
          best = v;
          have = true;
        }
      }
      placed[best] = 1;
      order_.push_back(best);
      for (Vertex u : f_adj_[best]) ++placed_neighbours[u];
    }
    position_.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) position_[order_[i]] = i;
    closing_.assign(n, {});
    earlier_.assign(n, {});
    for (EdgeId e = 0; e < f.num_edges(); ++e) {
      std::size_t last = 0;
      for (Vertex v : f.edge(e)) last = std::max(last, position_[v]);
      closing_[last].push_back(e);
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (Vertex u : f_adj_[order_[i]]) {
        if (position_[u] < i) earlier_[i].push_back(u);
      }
    }
    h_degree_.resize(h.num_vertices());
    for (Vertex v = 0; v < h.num_vertices(); ++v) h_degree_[v] = h.incident(v).size();
    f_degree_.resize(n);
    for (Vertex v = 0; v < n; ++v) f_degree_[v] = f.incident(v).size();
    current_.map.assign(n, 0);
    used_.assign(h.num_vertices(), 0);
    all_.resize(h.num_vertices());
    std::iota(all_.begin(), all_.end(), Vertex{0});
  }

  Search<Embedding> run(const std::function<bool(const Embedding&)>& visit) {
    visit_ = &visit;
    Search<Embedding> out;
    if (f_.num_vertices() <= h_.num_vertices()) place(0);
    out.status = exhausted_ ? SearchStatus::budget_exhausted : SearchStatus::complete;
    out.value = first_;
    out.nodes = nodes_;
    return out;
  }

 private:
  bool place(std::size_t i) {
    if (i == order_.size()) {
      if (!first_) first_ = current_;
      return (*visit_)(current_);
    }
    const Vertex fv = order_[i];
    const VertexSet& candidates = earlier_[i].empty() ? all_ : h_adj_[current_.map[earlier_[i].front()]];
    for (Vertex hv : candidates) {
      if (used_[hv] || h_degree_[hv] < f_degree_[fv]) continue;
      if (nodes_ >= budget_) {
        exhausted_ = true;
        return false;
      }
      ++nodes_;
      if (!compatible(i, hv)) continue;
      used_[hv] = 1;
      current_.map[fv] = hv;
      const bool go_on = place(i + 1);
      used_[hv] = 0;
      if (!go_on) return false;
    }
    return true;
  }

  bool compatible(std::size_t i, Vertex hv) {
    for (Vertex u : earlier_[i]) {
      const VertexSet& adj = h_adj_[current_.map[u]];
      if (!std::binary_search(adj.begin(), adj.end(), hv)) return false;
    }
    current_.map[order_[i]] = hv;
    for (EdgeId e : closing_[i]) {
      scratch_.clear();
      for (Vertex v : f_.edge(e)) scratch_.push_back(current_.map[v]);
      std::sort(scratch_.begin(), scratch_.end());
      if (!h_.has_edge(scratch_)) return false;
    }
    return true;
  }

  const Hypergraph& h_;
  const Hypergraph& f_;
  std::uint64_t budget_;
  std::vector<VertexSet> h_adj_;
  std::vector<VertexSet> f_adj_;
  std::vector<Vertex> order_;
  std::vector<std::size_t> position_;
  std::vector<std::vector<EdgeId>> closing_;
  std::vector<VertexSet> earlier_;
  std::vector<std::size_t> h_degree_;
  std::vector<std::size_t> f_degree_;
  VertexSet all_;
  Embedding current_;
  std::vector<char> used_;
  Edge scratch_;
  const std::function<bool(const Embedding&)>* visit_ = nullptr;
  std::optional<Embedding> first_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
};

}  // namespace

Search<Embedding> for_each_copy(const Hypergraph& h, const Hypergraph& f,
                                const std::function<bool(const Embedding&)>& visit, std::uint64_t budget) {
  if (f.num_edges() > 0 && f.r() != h.r()) {
    throw InputError("cannot embed a " + std::to_string(f.r()) + "-uniform hypergraph into a " +
                     std::to_string(h.r()) + "-uniform one");
  }
  return CopySearch(h, f, budget).run(visit);
}

Search<Embedding> contains_copy(const Hypergraph& h, const Hypergraph& f, std::uint64_t budget) {
  return for_each_copy(h, f, [](const Embedding&) { return false; }, budget);
}

namespace {

/// Edges through v whose vertices are all alive.
std::vector<EdgeId> live_edges(const Hypergraph& h, const std::vector<char>& alive, Vertex v) {
  std::vector<EdgeId> out;
  for (EdgeId e : h.incident(v)) {
    const Edge& edge = h.edge(e);
    if (std::all_of(edge.begin(), edge.end(), [&](Vertex u) { return alive[u]; })) out.push_back(e);
  }
  return out;
}

bool hit_all(const Hypergraph& h, const std::vector<EdgeId>& edges, Vertex v, VertexSet& chosen, std::size_t limit) {
  for (EdgeId e : edges) {
    const Edge& edge = h.edge(e);
    const bool hit = std::any_of(chosen.begin(), chosen.end(),
                                 [&](Vertex u) { return std::binary_search(edge.begin(), edge.end(), u); });
    if (hit) continue;
    if (chosen.size() == limit) return false;
    for (Vertex u : edge) {
      if (u == v) continue;
      chosen.push_back(u);
      if (hit_all(h, edges, v, chosen, limit)) return true;
      chosen.pop_back();
    }
    return false;
  }
  return true;
}

std::optional<VertexSet> guard_among(const Hypergraph& h, const std::vector<char>& alive, Vertex v, std::size_t d) {
  const auto edges = live_edges(h, alive, v);
  for (std::size_t k = 0; k <= d; ++k) {
    VertexSet chosen;
    if (hit_all(h, edges, v, chosen, k)) {
      std::sort(chosen.begin(), chosen.end());
      return chosen;
    }
  }
  return std::nullopt;
}

struct Peeling {
  std::vector<Vertex> removed;
  std::vector<VertexSet> guards;
  std::vector<char> alive;
};

/// Passes over the alive vertices in index order, removing every vertex that
/// has a small guard, until a pass removes nothing. Deleting vertices only
/// shrinks guard requirements, so the final state does not depend on order.
Peeling peel(const Hypergraph& h, std::size_t d) {
  Peeling p;
  p.alive.assign(h.num_vertices(), 1);
  bool progress = true;
  while (progress) {
    progress = false;
    for (Vertex v = 0; v < h.num_vertices(); ++v) {
      if (!p.alive[v]) continue;
      if (auto guard = guard_among(h, p.alive, v, d)) {
        p.alive[v] = 0;
        p.removed.push_back(v);
        p.guards.push_back(std::move(*guard));
        progress = true;
      }
    }
  }
  return p;
}

}  // namespace

std::optional<VertexSet> find_guard(const Hypergraph& h, Vertex v, std::size_t d) {
  if (v >= h.num_vertices()) throw InputError("vertex index out of range");
  return guard_among(h, std::vector<char>(h.num_vertices(), 1), v, d);
}

std::optional<DegeneracyCertificate> is_d_degenerate(const Hypergraph& h, std::size_t d) {
  Peeling p = peel(h, d);
  if (p.removed.size() != h.num_vertices()) return std::nullopt;
  DegeneracyCertificate cert;
  cert.d = d;
  cert.order.assign(p.removed.rbegin(), p.removed.rend());
  cert.guards.assign(std::make_move_iterator(p.guards.rbegin()), std::make_move_iterator(p.guards.rend()));
  return cert;
}

VertexSet degeneracy_core(const Hypergraph& h, std::size_t d) {
  const Peeling p = peel(h, d);
  VertexSet out;
  for (Vertex v = 0; v < h.num_vertices(); ++v) {
    if (p.alive[v]) out.push_back(v);
  }
  return out;
}

void validate_certificate(const Hypergraph& h, const DegeneracyCertificate& cert) {
  const std::size_t n = h.num_vertices();
  if (cert.order.size() != n || cert.guards.size() != n) {
    throw InputError("certificate must list every vertex once with one guard set each");
  }
  std::vector<std::size_t> position(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vertex v = cert.order[i];
    if (v >= n || position[v] != n) throw InputError("certificate order is not a permutation (index " + std::to_string(i) + ")");
    position[v] = i;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Vertex v = cert.order[i];
    const VertexSet& guard = cert.guards[i];
    const std::string where = "certificate fails at index " + std::to_string(i) + " (vertex " + h.name(v) + "): ";
    if (guard.size() > cert.d) throw InputError(where + "guard larger than d");
    for (Vertex g : guard) {
      if (g >= n || g == v || position[g] >= i) throw InputError(where + "guard vertex outside the earlier prefix");
    }
    for (EdgeId e : h.incident(v)) {
      const Edge& edge = h.edge(e);
      if (!std::all_of(edge.begin(), edge.end(), [&](Vertex u) { return position[u] <= i; })) continue;
      const bool hit = std::any_of(guard.begin(), guard.end(),
                                   [&](Vertex g) { return std::binary_search(edge.begin(), edge.end(), g); });
      if (!hit) throw InputError(where + "edge " + h.edge_label(e) + " misses the guard");
    }
  }
}

Coloring degeneracy_color(const Hypergraph& h, const DegeneracyCertificate& cert) {
  validate_certificate(h, cert);
  Coloring c;
  c.color.assign(h.num_vertices(), 0);
  std::vector<char> forbidden;
  for (Vertex v : cert.order) {
    forbidden.assign(cert.d + 2, 0);
    for (EdgeId e : h.incident(v)) {
      std::uint32_t shared = 0;
      bool mono = true;
      for (Vertex u : h.edge(e)) {
        if (u == v) continue;
        if (c.color[u] == 0 || (shared != 0 && c.color[u] != shared)) {
          mono = false;
          break;
        }
        shared = c.color[u];
      }
      if (mono && shared != 0 && shared < forbidden.size()) forbidden[shared] = 1;
    }
    std::uint32_t pick = 1;
    while (forbidden[pick]) ++pick;
    c.color[v] = pick;
  }
  return c;
}

Embedding embed_linear_hyperforest(const Hypergraph& h, const Hypergraph& t) {
  if (!is_linear(t) || !is_hyperforest(t)) throw InputError("T must be a linear hyperforest");
  Embedding out;
  const std::size_t d = t.num_vertices();
  if (d == 0) return out;
  if (t.num_edges() > 0 && t.r() != h.r()) throw InputError("T and H must have the same uniformity");
  if (is_d_degenerate(h, d)) {
    throw InputError("H is " + std::to_string(d) + "-degenerate; color it via its degeneracy certificate instead");
  }
  const VertexSet core = degeneracy_core(h, d);
  std::vector<char> in_core(h.num_vertices(), 0);
  for (Vertex v : core) in_core[v] = 1;

  out.map.assign(d, 0);
  std::vector<char> placed(d, 0), used(h.num_vertices(), 0);
  std::vector<char> edge_done(t.num_edges(), 0);

  // Core edge through x avoiding every used vertex except x.
  auto free_edge = [&](Vertex x) -> std::optional<EdgeId> {
    for (EdgeId e : h.incident(x)) {
      const Edge& edge = h.edge(e);
      const bool ok = std::all_of(edge.begin(), edge.end(), [&](Vertex u) { return in_core[u] && (u == x || !used[u]); });
      if (ok) return e;
    }
    return std::nullopt;
  };

  for (std::size_t done = 0; done < t.num_edges(); ++done) {
    // Prefer an edge hanging off the placed part; otherwise start a component.
    std::optional<EdgeId> next;
    std::optional<Vertex> anchor;
    for (EdgeId e = 0; e < t.num_edges() && !anchor; ++e) {
      if (edge_done[e]) continue;
      for (Vertex v : t.edge(e)) {
        if (placed[v]) {
          next = e;
          anchor = v;
          break;
        }
      }
    }
    if (!next) {
      for (EdgeId e = 0; e < t.num_edges(); ++e) {
        if (!edge_done[e]) {
          next = e;
          break;
        }
      }
      const Vertex v = t.edge(*next).front();
      for (Vertex x : core) {
        if (!used[x] && free_edge(x)) {
          out.map[v] = x;
          placed[v] = 1;
          used[x] = 1;
          anchor = v;
          break;
        }
      }
      if (!anchor) throw Error("no free core vertex left for a new tree component");
    }
    const Vertex x = out.map[*anchor];
    const auto host = free_edge(x);
    if (!host) throw Error("core vertex " + h.name(x) + " has no edge avoiding the embedded vertices");
    std::size_t k = 0;
    const Edge& target = h.edge(*host);
    for (Vertex v : t.edge(*next)) {
      if (v == *anchor) continue;
      while (target[k] == x) ++k;
      out.map[v] = target[k++];
      placed[v] = 1;
      used[out.map[v]] = 1;
    }
    edge_done[*next] = 1;
  }
  for (Vertex v = 0; v < d; ++v) {
    if (placed[v]) continue;
    const auto spare = std::find_if(core.begin(), core.end(), [&](Vertex x) { return !used[x]; });
    if (spare == core.end()) throw Error("no free core vertex for an isolated vertex of T");
    out.map[v] = *spare;
    placed[v] = 1;
    used[*spare] = 1;
  }
  if (!verify_embedding(h, t, out)) throw Error("greedy hyperforest embedding failed verification");
  return out;
}

namespace {

std::vector<Edge> fiber_of(const Hypergraph& h, Vertex b) {
  std::vector<Edge> out;
  for (EdgeId e : h.incident(b)) {
    Edge rest;
    for (Vertex u : h.edge(e)) {
      if (u != b) rest.push_back(u);
    }
    out.push_back(std::move(rest));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

FiberBundle t_bundle(const Hypergraph& h, const Hypergraph& t, std::uint64_t budget) {
  const std::size_t m = t.num_vertices();
  if (m == 0) throw InputError("t_bundle needs T with at least one vertex");
  if (h.r() < 2) throw InputError("t_bundle needs H of uniformity at least 2");

  VertexSet active;
  for (Vertex v = 0; v < m; ++v) {
    if (!t.incident(v).empty()) active.push_back(v);
  }
  const Hypergraph core = induced(t, active);
  std::set<Edge> images;
  const auto search = for_each_copy(h, core, [&](const Embedding& e) {
    Edge image = e.map;
    std::sort(image.begin(), image.end());
    images.insert(std::move(image));
    return true;
  }, budget);
  if (search.exhausted()) {
    throw BudgetExceeded("T-bundle base enumeration exceeded " + std::to_string(budget) + " nodes");
  }

  // Pad each copy's vertex set with isolated-vertex images in every way.
  const std::size_t extra = m - active.size();
  std::set<Edge> base_edges;
  for (const Edge& image : images) {
    VertexSet rest;
    for (Vertex v = 0; v < h.num_vertices(); ++v) {
      if (!std::binary_search(image.begin(), image.end(), v)) rest.push_back(v);
    }
    if (rest.size() < extra) continue;
    std::vector<std::size_t> pick(extra);
    std::iota(pick.begin(), pick.end(), std::size_t{0});
    while (true) {
      Edge e = image;
      for (std::size_t i : pick) e.push_back(rest[i]);
      std::sort(e.begin(), e.end());
      base_edges.insert(std::move(e));
      if (base_edges.size() > budget) {
        throw BudgetExceeded("T-bundle base exceeds " + std::to_string(budget) + " edges");
      }
      std::size_t i = extra;
      while (i > 0 && pick[i - 1] == rest.size() - extra + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t k = i; k < extra; ++k) pick[k] = pick[k - 1] + 1;
    }
  }

  FiberBundle b;
  b.base = Hypergraph(static_cast<int>(m), h.names(), std::vector<Edge>(base_edges.begin(), base_edges.end()));
  b.fiber_names = h.names();
  b.fiber_r = h.r() - 1;
  for (Vertex v = 0; v < h.num_vertices(); ++v) b.fibers.push_back(fiber_of(h, v));
  return b;
}

Hypergraph section(const FiberBundle& bundle, const VertexSet& x) {
  if (x.empty()) throw InputError("the section of an empty base set is not defined");
  for (Vertex v : x) {
    if (v >= bundle.fibers.size()) throw InputError("base vertex index out of range");
  }
  std::vector<Edge> common = bundle.fibers[x.front()];
  for (std::size_t i = 1; i < x.size() && !common.empty(); ++i) {
    const auto& next = bundle.fibers[x[i]];
    std::vector<Edge> kept;
    std::set_intersection(common.begin(), common.end(), next.begin(), next.end(), std::back_inserter(kept));
    common = std::move(kept);
  }
  return Hypergraph(bundle.fiber_r, bundle.fiber_names, std::move(common));
}

namespace {

/// Fills the parts round-robin; a transversal is checked when its last
/// vertex is placed. With `symmetric`, parts are unlabelled and ordered by
/// their first vertex.
class PartiteSearch {
 public:
  PartiteSearch(const Hypergraph& s, std::vector<std::size_t> sizes, const VertexSet& excluded, bool symmetric,
                std::uint64_t budget)
      : s_(s), sizes_(std::move(sizes)), symmetric_(symmetric), budget_(budget) {
    blocked_.assign(s.num_vertices(), 0);
    for (Vertex v : excluded) {
      if (v < s.num_vertices()) blocked_[v] = 1;
    }
    const std::size_t q = sizes_.size();
    std::size_t rounds = 0;
    for (std::size_t size : sizes_) rounds = std::max(rounds, size);
    for (std::size_t k = 0; k < rounds; ++k) {
      for (std::size_t i = 0; i < q; ++i) {
        if (sizes_[i] > k) slots_.push_back(i);
      }
    }
    required_.assign(q, 1);
    const bool any_empty = std::any_of(sizes_.begin(), sizes_.end(), [](std::size_t x) { return x == 0; });
    for (std::size_t i = 0; i < q; ++i) {
      if (any_empty) {
        required_[i] = 0;
        continue;
      }
      for (std::size_t j = 0; j < q; ++j) {
        if (j != i) required_[i] *= sizes_[j];
      }
    }
    parts_.assign(q, {});
  }

  Search<std::vector<VertexSet>> run() {
    Search<std::vector<VertexSet>> out;
    if (static_cast<std::size_t>(s_.r()) != sizes_.size() && s_.num_edges() > 0) {
      throw InputError("partite search needs as many parts as the uniformity");
    }
    if (place(0)) out.value = parts_;
    out.status = exhausted_ ? SearchStatus::budget_exhausted : SearchStatus::complete;
    out.nodes = nodes_;
    return out;
  }

 private:
  bool place(std::size_t slot) {
    if (slot == slots_.size()) return true;
    const std::size_t i = slots_[slot];
    Vertex from = 0;
    if (!parts_[i].empty()) from = parts_[i].back() + 1;
    else if (symmetric_ && i > 0) from = parts_[i - 1].front() + 1;
    for (Vertex v = from; v < s_.num_vertices(); ++v) {
      if (blocked_[v] || s_.incident(v).size() < required_[i]) continue;
      if (nodes_ >= budget_) {
        exhausted_ = true;
        return false;
      }
      ++nodes_;
      if (!closes_cleanly(i, v)) continue;
      blocked_[v] = 1;
      parts_[i].push_back(v);
      if (place(slot + 1)) return true;
      parts_[i].pop_back();
      blocked_[v] = 0;
      if (exhausted_) return false;
    }
    return false;
  }

  bool closes_cleanly(std::size_t i, Vertex v) {
    const std::size_t q = parts_.size();
    for (std::size_t j = 0; j < q; ++j) {
      if (j != i && parts_[j].empty()) return true;
    }
    std::vector<std::size_t> pick(q, 0);
    Edge e(q);
    while (true) {
      for (std::size_t j = 0; j < q; ++j) e[j] = j == i ? v : parts_[j][pick[j]];
      std::sort(e.begin(), e.end());
      if (!s_.has_edge(e)) return false;
      std::size_t j = 0;
      while (j < q && (j == i || ++pick[j] == parts_[j].size())) {
        if (j != i) pick[j] = 0;
        ++j;
      }
      if (j == q) return true;
    }
  }

  const Hypergraph& s_;
  std::vector<std::size_t> sizes_;
  bool symmetric_;
  std::uint64_t budget_;
  std::vector<char> blocked_;
  std::vector<std::size_t> slots_;
  std::vector<std::size_t> required_;
  std::vector<VertexSet> parts_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
};

}  // namespace

Search<std::vector<VertexSet>> contains_complete_partite(const Hypergraph& s, const KSpec& spec, std::uint64_t budget) {
  if (spec.parts < 1) throw InputError("KSpec needs at least one part");
  if (spec.part_size < 1) throw InputError("KSpec part size must be at least 1");
  return PartiteSearch(s, std::vector<std::size_t>(static_cast<std::size_t>(spec.parts), spec.part_size), {}, true,
                       budget)
      .run();
}

Search<std::vector<VertexSet>> find_complete_partite(const Hypergraph& s, const std::vector<std::size_t>& sizes,
                                                     const VertexSet& excluded, std::uint64_t budget) {
  if (sizes.empty()) throw InputError("partite search needs at least one part");
  return PartiteSearch(s, sizes, excluded, false, budget).run();
}

namespace {

class DimSearch {
 public:
  DimSearch(const FiberBundle& bundle, const KSpec& spec, std::size_t t, std::uint64_t budget)
      : bundle_(bundle), spec_(spec), t_(t), budget_(budget) {}

  Search<std::vector<EdgeId>> run() {
    Search<std::vector<EdgeId>> out;
    const Hypergraph& base = bundle_.base;
    std::vector<char> used(base.num_vertices(), 0);
    for (EdgeId e = 0; e < base.num_edges() && !exhausted_; ++e) {
      const Edge& edge = base.edge(e);
      bool ok = true;
      for (Vertex x : edge) {
        ok = ok && rich({x});
        if (exhausted_) break;
      }
      if (ok) candidates_.push_back(e);
    }
    if (!exhausted_) {
      std::vector<EdgeId> chosen;
      if (extend(chosen, 0, used)) out.value = chosen;
    }
    out.status = exhausted_ ? SearchStatus::budget_exhausted : SearchStatus::complete;
    out.nodes = nodes_;
    return out;
  }

 private:
  bool rich(VertexSet x) {
    std::sort(x.begin(), x.end());
    x.erase(std::unique(x.begin(), x.end()), x.end());
    if (auto it = cache_.find(x); it != cache_.end()) return it->second;
    if (nodes_ >= budget_) {
      exhausted_ = true;
      return false;
    }
    const auto found = contains_complete_partite(section(bundle_, x), spec_, budget_ - nodes_);
    nodes_ += found.nodes + 1;
    if (found.exhausted()) {
      exhausted_ = true;
      return false;
    }
    cache_.emplace(x, found.found());
    return found.found();
  }

  /// Every transversal of the chosen edges.
  bool transversals_rich(const std::vector<EdgeId>& chosen) {
    const std::size_t k = chosen.size();
    std::vector<std::size_t> pick(k, 0);
    VertexSet x(k);
    while (true) {
      for (std::size_t j = 0; j < k; ++j) x[j] = bundle_.base.edge(chosen[j])[pick[j]];
      if (!rich(x)) return false;
      std::size_t j = 0;
      while (j < k && ++pick[j] == bundle_.base.edge(chosen[j]).size()) pick[j++] = 0;
      if (j == k) return true;
    }
  }

  bool extend(std::vector<EdgeId>& chosen, std::size_t from, std::vector<char>& used) {
    if (chosen.size() == t_) return true;
    for (std::size_t c = from; c < candidates_.size(); ++c) {
      const Edge& edge = bundle_.base.edge(candidates_[c]);
      if (std::any_of(edge.begin(), edge.end(), [&](Vertex v) { return used[v]; })) continue;
      chosen.push_back(candidates_[c]);
      // Sections only shrink as X grows, so partial matchings prune.
      if (transversals_rich(chosen)) {
        for (Vertex v : edge) used[v] = 1;
        if (extend(chosen, c + 1, used)) return true;
        for (Vertex v : edge) used[v] = 0;
      }
      chosen.pop_back();
      if (exhausted_) return false;
    }
    return false;
  }

  const FiberBundle& bundle_;
  KSpec spec_;
  std::size_t t_;
  std::uint64_t budget_;
  std::vector<EdgeId> candidates_;
  std::map<VertexSet, bool> cache_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
};

}  // namespace

Search<std::vector<EdgeId>> dim_at_least(const FiberBundle& bundle, const KSpec& spec, std::size_t t,
                                         std::uint64_t budget) {
  if (spec.part_size < 1) throw InputError("KSpec part size must be at least 1");
  if (t == 0) {
    Search<std::vector<EdgeId>> out;
    out.value = std::vector<EdgeId>{};
    return out;
  }
  return DimSearch(bundle, spec, t, budget).run();
}

namespace {

struct Remaining {
  std::uint64_t limit;
  std::uint64_t used = 0;

  std::uint64_t left() const { return used >= limit ? 0 : limit - used; }
  void spend(std::uint64_t n) { used += n; }
};

/// Vertices of each shadow component grouped by part 2..r (as K parts 0..r-2).
std::vector<std::vector<VertexSet>> component_parts(const Hypergraph& g, const PartitionWitness& w,
                                                    const ShadowHypergraph& sh) {
  std::vector<std::vector<VertexSet>> out;
  for (const VertexSet& comp : sh.components) {
    std::vector<VertexSet> parts(static_cast<std::size_t>(g.r() - 1));
    for (Vertex sv : comp) {
      const Vertex v = sh.origin[sv];
      parts[static_cast<std::size_t>(w.part_of[v] - 1)].push_back(v);
    }
    out.push_back(std::move(parts));
  }
  return out;
}

std::vector<std::size_t> sizes_of(const std::vector<VertexSet>& parts) {
  std::vector<std::size_t> sizes;
  for (const auto& p : parts) sizes.push_back(p.size());
  return sizes;
}

Coloring color_directly(const Hypergraph& h, Remaining& budget, ColorOrEmbedResult& result) {
  const auto chi = chromatic_number(h, static_cast<std::uint32_t>(std::max<std::size_t>(1, h.num_vertices())),
                                    budget.left());
  budget.spend(chi.nodes);
  if (chi.kind == ChromaticResult::Kind::exact) return chi.coloring;
  result.notes.push_back("exact coloring ran out of budget; greedy coloring used");
  if (chi.value > 0) return chi.coloring;
  std::vector<Vertex> order(h.num_vertices());
  std::iota(order.begin(), order.end(), Vertex{0});
  return greedy_color(h, order);
}

}  // namespace

ColorOrEmbedResult color_or_embed(const Hypergraph& h, const Hypergraph& g, const PartitionWitness& w,
                                  const ColorOrEmbedOptions& options) {
  if (g.r() != h.r()) throw InputError("G and H must have the same uniformity");
  const StrongCheck strong = check_strong_witness(g, w);
  if (!strong.ok) throw InputError("witness is not strong unifoliate for G");

  ColorOrEmbedResult result;
  Remaining budget{options.budget};
  const int r = g.r();
  const std::size_t m = g.num_vertices();
  const VertexSet v1 = w.part(0);
  const Hypergraph tree = induced(g, v1);
  const std::vector<VertexSet> trees = tree_components(g, w);
  const ShadowHypergraph sh = shadow(g, w);
  const auto comp_parts = component_parts(g, w, sh);

  result.tree_vertices = v1.size();
  result.t = trees.size();
  std::size_t needed = 1;
  for (const auto& parts : comp_parts) {
    for (const auto& p : parts) needed = std::max(needed, p.size());
  }
  result.part_size_formula = std::pow(static_cast<double>(r) * static_cast<double>(m), static_cast<double>(m));
  const std::size_t wanted = std::max(needed, options.part_size_cap);
  result.part_size = result.part_size_formula < static_cast<double>(wanted)
                         ? std::max<std::size_t>(1, static_cast<std::size_t>(result.part_size_formula))
                         : wanted;
  result.part_size_clamped = static_cast<double>(result.part_size) < result.part_size_formula;
  const KSpec spec{r - 1, result.part_size};

  auto finish_embedding = [&](Embedding e) {
    if (!verify_embedding(h, g, e)) throw Error("assembled embedding failed verification");
    result.embedding = std::move(e);
    return result;
  };

  if (result.t == 0) {
    // V_1 is empty, so G has no edges; place each part inside one fiber's
    // complete partite system.
    std::vector<VertexSet> totals(static_cast<std::size_t>(r - 1));
    for (const auto& parts : comp_parts) {
      for (std::size_t p = 0; p < parts.size(); ++p) totals[p].insert(totals[p].end(), parts[p].begin(), parts[p].end());
    }
    for (Vertex x = 0; x < h.num_vertices() && budget.left() > 0; ++x) {
      const Hypergraph fiber(r - 1, h.names(), fiber_of(h, x));
      const auto k = find_complete_partite(fiber, sizes_of(totals), {x}, budget.left());
      budget.spend(k.nodes);
      if (!k.found()) continue;
      Embedding e;
      e.map.assign(m, 0);
      for (std::size_t p = 0; p < totals.size(); ++p) {
        for (std::size_t i = 0; i < totals[p].size(); ++i) e.map[totals[p][i]] = (*k.value)[p][i];
      }
      result.dim_found = true;
      return finish_embedding(std::move(e));
    }
    result.notes.push_back("no fiber hosts the shadow parts; V1 is empty so the base bound is vacuous");
    result.coloring = color_directly(h, budget, result);
    result.colors = result.coloring->num_colors();
    return result;
  }

  const FiberBundle bundle = t_bundle(h, tree, budget.left());
  const auto dim = dim_at_least(bundle, spec, result.t, budget.left());
  budget.spend(dim.nodes);
  result.dim_exhausted = dim.exhausted();
  if (dim.found()) {
    result.dim_found = true;
    for (EdgeId id : *dim.value) result.matching.push_back(bundle.base.edge(id));
    Embedding e;
    e.map.assign(m, 0);
    std::vector<char> used(h.num_vertices(), 0);
    for (std::size_t j = 0; j < trees.size(); ++j) {
      const VertexSet& host = result.matching[j];
      const auto copy = contains_copy(induced(h, host), induced(g, trees[j]), budget.left());
      budget.spend(copy.nodes);
      if (!copy.found()) throw Error("base edge does not host its tree component");
      for (std::size_t k = 0; k < trees[j].size(); ++k) {
        e.map[trees[j][k]] = host[copy.value->map[k]];
        used[e.map[trees[j][k]]] = 1;
      }
    }
    std::vector<int> tree_of(m, -1);
    for (std::size_t j = 0; j < trees.size(); ++j) {
      for (Vertex v : trees[j]) tree_of[v] = static_cast<int>(j);
    }
    bool assembled = true;
    for (std::size_t c = 0; c < sh.components.size() && assembled; ++c) {
      // One representative per tree: the neighbourhood vertex if the
      // component touches that tree, else the tree's first vertex.
      VertexSet reps(trees.size());
      for (std::size_t j = 0; j < trees.size(); ++j) reps[j] = e.map[trees[j].front()];
      for (Vertex y : v1_neighborhood(g, w, sh, c)) reps[static_cast<std::size_t>(tree_of[y])] = e.map[y];
      std::sort(reps.begin(), reps.end());
      VertexSet blocked;
      for (Vertex v = 0; v < h.num_vertices(); ++v) {
        if (used[v]) blocked.push_back(v);
      }
      const auto k = find_complete_partite(section(bundle, reps), sizes_of(comp_parts[c]), blocked, budget.left());
      budget.spend(k.nodes);
      if (!k.found()) {
        assembled = false;
        break;
      }
      for (std::size_t p = 0; p < comp_parts[c].size(); ++p) {
        for (std::size_t i = 0; i < comp_parts[c][p].size(); ++i) {
          e.map[comp_parts[c][p][i]] = (*k.value)[p][i];
          used[(*k.value)[p][i]] = 1;
        }
      }
    }
    if (assembled) return finish_embedding(std::move(e));
    result.notes.push_back("dim witness found but the shadow components did not fit around the used vertices");
  }

  const std::size_t d = result.tree_vertices;
  if (d <= 1) {
    result.notes.push_back("T has one vertex, so the base carries loops and cannot be colored; H colored directly");
    result.coloring = color_directly(h, budget, result);
    result.colors = result.coloring->num_colors();
    return result;
  }

  const auto chi = chromatic_number(bundle.base, static_cast<std::uint32_t>(std::max<std::size_t>(1, h.num_vertices())),
                                    budget.left());
  budget.spend(chi.nodes);
  Coloring base_coloring;
  if (chi.kind == ChromaticResult::Kind::exact) {
    base_coloring = chi.coloring;
    result.base_exact = true;
  } else if (chi.value > 0) {
    base_coloring = chi.coloring;
    result.notes.push_back("base coloring not proven optimal within budget");
  } else {
    std::vector<Vertex> order(bundle.base.num_vertices());
    std::iota(order.begin(), order.end(), Vertex{0});
    base_coloring = greedy_color(bundle.base, order);
    result.notes.push_back("base colored greedily");
  }
  result.base_colors = base_coloring.num_colors();

  Coloring out;
  out.color.assign(h.num_vertices(), 0);
  for (std::uint32_t c = 1; c <= result.base_colors; ++c) {
    VertexSet cls;
    for (Vertex v = 0; v < h.num_vertices(); ++v) {
      if (base_coloring.color[v] == c) cls.push_back(v);
    }
    const Hypergraph part = induced(h, cls);
    const auto cert = is_d_degenerate(part, d);
    if (!cert) throw Error("color class " + std::to_string(c) + " of the base is not " + std::to_string(d) + "-degenerate");
    const Coloring inner = degeneracy_color(part, *cert);
    for (std::size_t i = 0; i < cls.size(); ++i) {
      out.color[cls[i]] = static_cast<std::uint32_t>((c - 1) * (d + 1)) + inner.color[i];
    }
  }
  if (!out.is_proper(h)) throw Error("combined coloring is not proper");
  result.colors = out.num_colors();
  result.bound_applies = true;
  if (result.colors > (d + 1) * result.base_colors) throw Error("combined coloring exceeds (|V(T)|+1) colors per base color");
  result.coloring = std::move(out);
  return result;
}

Json color_or_embed_to_json(const Hypergraph& h, const Hypergraph& g, const ColorOrEmbedResult& result) {
  Json j;
  if (result.embedding) {
    j["embedding"] = embedding_to_json(h, g, *result.embedding);
  } else if (result.coloring) {
    j["coloring"] = coloring_to_json(h, *result.coloring);
    j["colors"] = result.colors;
    j["base_colors"] = result.base_colors;
    j["base_exact"] = result.base_exact;
    j["bound_applies"] = result.bound_applies;
    if (result.bound_applies) j["bound"] = (result.tree_vertices + 1) * result.base_colors;
  }
  j["tree_vertices"] = result.tree_vertices;
  j["t"] = result.t;
  j["part_size"] = result.part_size;
  j["part_size_formula"] = result.part_size_formula;
  j["part_size_clamped"] = result.part_size_clamped;
  j["dim_found"] = result.dim_found;
  j["dim_exhausted"] = result.dim_exhausted;
  if (!result.matching.empty()) {
    Json matching = Json::array();
    for (const VertexSet& e : result.matching) {
      Json names = Json::array();
      for (Vertex v : e) names.push_back(h.name(v));
      matching.push_back(std::move(names));
    }
    j["matching"] = std::move(matching);
  }
  j["notes"] = result.notes;
  return j;
}

}  // namespace hyperthresh
