#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "hyperthresh/hypergraph.hpp"

namespace hyperthresh {

/**
 * Berge-style cycle: distinct vertices x_1..x_t and distinct edges E_1..E_t
 * with {x_i, x_{i+1}} inside E_i, indices cyclic, t >= 2.
 *
 * Cycles produced by this module are canonical: x_1 is the least vertex,
 * and the direction is the one with the smaller second vertex (for t = 2,
 * the one with the smaller first edge).
 */
struct Cycle {
  std::vector<Vertex> vertices;
  std::vector<EdgeId> edges;

  std::size_t length() const { return vertices.size(); }
  friend bool operator==(const Cycle&, const Cycle&) = default;
};

/// Rotation/reflection normal form of an arbitrary valid cycle.
Cycle canonical(const Cycle& c);

/// True when `c` satisfies the cycle definition in `h`.
bool is_cycle(const Hypergraph& h, const Cycle& c);

/// Vertices covered by the union of the cycle's edges, sorted.
VertexSet cycle_span(const Hypergraph& h, const Cycle& c);

struct CycleFilter {
  std::size_t max_length = 0;  ///< t <= max_length (required, >= 2)
  std::size_t min_length = 2;  ///< only cycles with t >= min_length are visited
  std::size_t max_span = 0;    ///< union of edges spans <= max_span vertices; 0 = unbounded
  Vertex first_start = 0;      ///< only cycles whose least vertex is >= first_start
  std::uint64_t max_nodes = 0; ///< search-node cap; BudgetExceeded when hit, 0 = unbounded
  const std::vector<char>* removed = nullptr;  ///< edges flagged nonzero are treated as absent
};

/// Depth-first enumeration of canonical cycles in a fixed order: by least
/// vertex, then lexicographically by (E_1, x_2, E_2, ...). The visitor
/// returns false to stop. Returns false iff stopped early.
bool for_each_cycle(const Hypergraph& h, const CycleFilter& filter, const std::function<bool(const Cycle&)>& visit);

/// All cycles with t <= max_t, one representative per rotation/reflection
/// class, in enumeration order. Exponential; callers bound max_t.
std::vector<Cycle> enumerate_cycles(const Hypergraph& h, std::size_t max_t);

/// Cycle-free, decided via the vertex/edge incidence graph being a forest.
bool is_hyperforest(const Hypergraph& h);
bool is_hypertree(const Hypergraph& h);

}  // namespace hyperthresh
