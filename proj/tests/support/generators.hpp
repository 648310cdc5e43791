#pragma once

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "hyperthresh/hypergraph.hpp"
#include "hyperthresh/recognize.hpp"

namespace hyperthresh::testing {

using Rng = std::mt19937_64;

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

/// Random r-subset of {0..n-1}, sorted.
inline Edge random_edge(Rng& rng, int r, std::size_t n) {
  std::vector<Vertex> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<Vertex>(i);
  std::shuffle(all.begin(), all.end(), rng);
  Edge e(all.begin(), all.begin() + r);
  std::sort(e.begin(), e.end());
  return e;
}

/// Up to m distinct random edges (fewer when the attempts run out).
inline Hypergraph random_hypergraph(Rng& rng, int r, std::size_t n, std::size_t m) {
  std::set<Edge> edges;
  for (std::size_t attempt = 0; attempt < 20 * m + 20 && edges.size() < m; ++attempt) {
    edges.insert(random_edge(rng, r, n));
  }
  return Hypergraph::numbered(r, n, std::vector<Edge>(edges.begin(), edges.end()));
}

/// Every r-subset independently with probability p.
inline Hypergraph random_dense(Rng& rng, int r, std::size_t n, double p) {
  std::vector<Edge> edges;
  std::vector<int> pick(n, 0);
  std::fill(pick.begin(), pick.begin() + r, 1);
  do {
    if (!coin(rng, p)) continue;
    Edge e;
    for (std::size_t i = 0; i < n; ++i) {
      if (pick[i]) e.push_back(static_cast<Vertex>(i));
    }
    edges.push_back(e);
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return Hypergraph::numbered(r, n, std::move(edges));
}

/// Linear hyperforest on exactly d vertices: each new edge either hangs off
/// one placed vertex or starts a component; leftovers stay isolated.
inline Hypergraph random_linear_hyperforest(Rng& rng, int r, std::size_t d) {
  std::vector<Edge> edges;
  std::size_t next = 0;
  const std::size_t ru = static_cast<std::size_t>(r);
  while (true) {
    const bool can_attach = next > 0 && d - next >= ru - 1;
    const bool can_start = d - next >= ru;
    if (!can_attach && !can_start) break;
    if (coin(rng, 0.15)) break;
    Edge e;
    if (can_attach && (!can_start || coin(rng, 0.6))) {
      e.push_back(static_cast<Vertex>(uniform(rng, 0, next - 1)));
      for (std::size_t i = 0; i + 1 < ru; ++i) e.push_back(static_cast<Vertex>(next++));
    } else {
      for (std::size_t i = 0; i < ru; ++i) e.push_back(static_cast<Vertex>(next++));
    }
    std::sort(e.begin(), e.end());
    edges.push_back(e);
  }
  return Hypergraph::numbered(r, d, std::move(edges));
}

inline PartitionWitness random_partition(Rng& rng, std::size_t n, int r) {
  PartitionWitness w;
  for (std::size_t i = 0; i < n; ++i) w.part_of.push_back(static_cast<std::uint8_t>(uniform(rng, 0, static_cast<std::size_t>(r - 1))));
  return w;
}

/// F made unifoliate by construction: a linear hyperforest on V_1 plus
/// random transversal edges over V_1..V_r.
inline std::pair<Hypergraph, PartitionWitness> random_witnessed(Rng& rng, int r, std::size_t n,
                                                                std::size_t max_cross = 5, std::size_t min_v1 = 1) {
  PartitionWitness w;
  const std::size_t v1 = uniform(rng, std::min(min_v1, n / 2 + 1), n / 2 + 1);
  for (std::size_t i = 0; i < n; ++i) {
    w.part_of.push_back(i < v1 ? 0 : static_cast<std::uint8_t>(uniform(rng, 1, static_cast<std::size_t>(r - 1))));
  }
  std::set<Edge> edges;
  const Hypergraph forest = random_linear_hyperforest(rng, r, v1);
  edges.insert(forest.edges().begin(), forest.edges().end());
  const auto parts = w.parts(r);
  const bool all_nonempty = std::all_of(parts.begin(), parts.end(), [](const VertexSet& p) { return !p.empty(); });
  if (all_nonempty) {
    const std::size_t cross = uniform(rng, 1, max_cross);
    for (std::size_t k = 0; k < cross; ++k) {
      Edge e;
      for (const auto& p : parts) e.push_back(p[uniform(rng, 0, p.size() - 1)]);
      std::sort(e.begin(), e.end());
      edges.insert(e);
    }
  }
  return {Hypergraph::numbered(r, n, std::vector<Edge>(edges.begin(), edges.end())), w};
}

}  // namespace hyperthresh::testing
