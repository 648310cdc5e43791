#pragma once

#include <string>
#include <vector>

#include "hyperthresh/hypergraph.hpp"
#include "hyperthresh/recognize.hpp"

namespace hyperthresh::testing {

/// The 8-vertex example: edges a1a2a3, a1b1c1, a2b2c2, a4b1c2, a4b2c1.
inline Hypergraph fstar() {
  return Hypergraph::from_names(3, {"a1", "a2", "a3", "a4", "b1", "b2", "c1", "c2"},
                                {{"a1", "a2", "a3"},
                                 {"a1", "b1", "c1"},
                                 {"a2", "b2", "c2"},
                                 {"a4", "b1", "c2"},
                                 {"a4", "b2", "c1"}});
}

/// Parts ({a1..a4}, {b1,b2}, {c1,c2}).
inline PartitionWitness fstar_witness(const Hypergraph& f) {
  return witness_from_parts(f, {resolve(f, {"a1", "a2", "a3", "a4"}), resolve(f, {"b1", "b2"}),
                                resolve(f, {"c1", "c2"})});
}

/// Complete r-uniform hypergraph on vertices "1".."n".
inline Hypergraph complete(int r, std::size_t n) {
  std::vector<Edge> edges;
  std::vector<int> pick(static_cast<std::size_t>(n), 0);
  std::fill(pick.begin(), pick.begin() + r, 1);
  do {
    Edge e;
    for (std::size_t i = 0; i < n; ++i) {
      if (pick[i]) e.push_back(static_cast<Vertex>(i));
    }
    edges.push_back(e);
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return Hypergraph::numbered(r, n, std::move(edges));
}

inline Hypergraph k4() { return complete(3, 4); }

/// One edge {1..r}.
inline Hypergraph single_edge(int r) {
  Edge e;
  for (int i = 0; i < r; ++i) e.push_back(static_cast<Vertex>(i));
  return Hypergraph::numbered(r, static_cast<std::size_t>(r), {e});
}

inline Hypergraph edgeless(int r, std::size_t n) { return Hypergraph::numbered(r, n, {}); }

}  // namespace hyperthresh::testing
