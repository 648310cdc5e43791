#include "hyperthresh/cycles.hpp"

#include <algorithm>
#include <string>

namespace hyperthresh {

Cycle canonical(const Cycle& c) {
  const std::size_t t = c.vertices.size();
  if (t == 0) return c;
  const std::size_t start = static_cast<std::size_t>(
      std::min_element(c.vertices.begin(), c.vertices.end()) - c.vertices.begin());
  Cycle forward, backward;
  for (std::size_t i = 0; i < t; ++i) {
    forward.vertices.push_back(c.vertices[(start + i) % t]);
    forward.edges.push_back(c.edges[(start + i) % t]);
    // Reversed traversal: x_s, x_{s-1}, ... with edges E_{s-1}, E_{s-2}, ...
    backward.vertices.push_back(c.vertices[(start + t - i) % t]);
    backward.edges.push_back(c.edges[(start + 2 * t - 1 - i) % t]);
  }
  auto key = [](const Cycle& x) { return std::tie(x.vertices, x.edges); };
  return key(backward) < key(forward) ? backward : forward;
}

bool is_cycle(const Hypergraph& h, const Cycle& c) {
  const std::size_t t = c.vertices.size();
  if (t < 2 || c.edges.size() != t) return false;
  auto sorted_v = c.vertices;
  auto sorted_e = c.edges;
  std::sort(sorted_v.begin(), sorted_v.end());
  std::sort(sorted_e.begin(), sorted_e.end());
  if (std::adjacent_find(sorted_v.begin(), sorted_v.end()) != sorted_v.end()) return false;
  if (std::adjacent_find(sorted_e.begin(), sorted_e.end()) != sorted_e.end()) return false;
  for (std::size_t i = 0; i < t; ++i) {
    if (c.edges[i] >= h.num_edges()) return false;
    const Edge& e = h.edge(c.edges[i]);
    if (!std::binary_search(e.begin(), e.end(), c.vertices[i]) ||
        !std::binary_search(e.begin(), e.end(), c.vertices[(i + 1) % t])) {
      return false;
    }
  }
  return true;
}

VertexSet cycle_span(const Hypergraph& h, const Cycle& c) {
  VertexSet out;
  for (EdgeId e : c.edges) out.insert(out.end(), h.edge(e).begin(), h.edge(e).end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

class CycleWalker {
 public:
  CycleWalker(const Hypergraph& h, const CycleFilter& filter, const std::function<bool(const Cycle&)>& visit)
      : h_(h),
        filter_(filter),
        visit_(visit),
        on_path_(h.num_vertices(), 0),
        edge_used_(h.num_edges(), 0),
        cover_(h.num_vertices(), 0) {}

  bool run() {
    for (Vertex s = filter_.first_start; s < h_.num_vertices(); ++s) {
      start_ = s;
      path_.vertices.assign(1, s);
      path_.edges.clear();
      on_path_[s] = 1;
      const bool go_on = extend();
      on_path_[s] = 0;
      if (!go_on) return false;
    }
    return true;
  }

 private:
  bool add_cover(const Edge& e) {
    for (Vertex v : e) {
      if (cover_[v]++ == 0) ++span_;
    }
    return filter_.max_span == 0 || span_ <= filter_.max_span;
  }
  void drop_cover(const Edge& e) {
    for (Vertex v : e) {
      if (--cover_[v] == 0) --span_;
    }
  }

  bool extend() {
    if (filter_.max_nodes != 0 && ++nodes_ > filter_.max_nodes) {
      throw BudgetExceeded("cycle search exceeded " + std::to_string(filter_.max_nodes) + " nodes");
    }
    const Vertex here = path_.vertices.back();
    const std::size_t t = path_.vertices.size();
    for (EdgeId eid : h_.incident(here)) {
      if (edge_used_[eid] || (filter_.removed && (*filter_.removed)[eid])) continue;
      const Edge& e = h_.edge(eid);
      const bool within = add_cover(e);
      if (within) {
        edge_used_[eid] = 1;
        path_.edges.push_back(eid);
        bool go_on = true;
        // Close back to the start.
        if (t >= 2 && t >= filter_.min_length && std::binary_search(e.begin(), e.end(), start_) &&
            is_canonical_direction()) {
          go_on = visit_(path_);
        }
        // Or continue along a fresh vertex larger than the start.
        if (go_on && t < filter_.max_length) {
          for (Vertex next : e) {
            if (next <= start_ || on_path_[next]) continue;
            on_path_[next] = 1;
            path_.vertices.push_back(next);
            go_on = extend();
            path_.vertices.pop_back();
            on_path_[next] = 0;
            if (!go_on) break;
          }
        }
        path_.edges.pop_back();
        edge_used_[eid] = 0;
        drop_cover(e);
        if (!go_on) return false;
      } else {
        drop_cover(e);
      }
    }
    return true;
  }

  bool is_canonical_direction() const {
    const std::size_t t = path_.vertices.size();
    if (t == 2) return path_.edges[0] < path_.edges[1];
    return path_.vertices[1] < path_.vertices[t - 1];
  }

  const Hypergraph& h_;
  const CycleFilter& filter_;
  const std::function<bool(const Cycle&)>& visit_;
  std::vector<char> on_path_;
  std::vector<char> edge_used_;
  std::vector<int> cover_;
  std::size_t span_ = 0;
  std::uint64_t nodes_ = 0;
  Vertex start_ = 0;
  Cycle path_;
};

}  // namespace

bool for_each_cycle(const Hypergraph& h, const CycleFilter& filter, const std::function<bool(const Cycle&)>& visit) {
  if (filter.max_length < 2) throw InputError("cycle length bound must be at least 2");
  return CycleWalker(h, filter, visit).run();
}

std::vector<Cycle> enumerate_cycles(const Hypergraph& h, std::size_t max_t) {
  std::vector<Cycle> out;
  for_each_cycle(h, CycleFilter{.max_length = max_t}, [&](const Cycle& c) {
    out.push_back(c);
    return true;
  });
  return out;
}

bool is_hyperforest(const Hypergraph& h) {
  // Berge cycles of H are exactly the cycles of its bipartite incidence
  // graph, which is a forest iff #incidences = #nodes - #components.
  const std::size_t incidences = h.num_edges() * static_cast<std::size_t>(h.r());
  return incidences + components(h).size() == h.num_vertices() + h.num_edges();
}

bool is_hypertree(const Hypergraph& h) { return components(h).size() == 1 && is_hyperforest(h); }

}  // namespace hyperthresh
