#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hyperthresh/hypergraph.hpp"
#include "hyperthresh/io.hpp"
#include "hyperthresh/recognize.hpp"

namespace hyperthresh {

/// Injection V(F) -> V(H) indexed by F's vertices.
struct Embedding {
  std::vector<Vertex> map;

  friend bool operator==(const Embedding&, const Embedding&) = default;
};

/// Injective and every edge of F lands on an edge of H.
bool verify_embedding(const Hypergraph& h, const Hypergraph& f, const Embedding& e);

/// {"F-vertex": "H-vertex", ...}
Json embedding_to_json(const Hypergraph& h, const Hypergraph& f, const Embedding& e);
Embedding embedding_from_json(const Hypergraph& h, const Hypergraph& f, const Json& j);

/// Visits every embedding of F into H (automorphic images included) in a
/// fixed order; the visitor returns false to stop. Exhausting the budget
/// yields status budget_exhausted. F and H must share uniformity unless F is
/// edgeless.
Search<Embedding> for_each_copy(const Hypergraph& h, const Hypergraph& f,
                                const std::function<bool(const Embedding&)>& visit,
                                std::uint64_t budget = default_budget());

/// First embedding in search order, if any.
Search<Embedding> contains_copy(const Hypergraph& h, const Hypergraph& f, std::uint64_t budget = default_budget());

/// Ordering v_1..v_n with guard sets: in H[v_1..v_i] every edge through v_i
/// meets guards[i], |guards[i]| <= d, v_i not in guards[i].
struct DegeneracyCertificate {
  std::size_t d = 0;
  std::vector<Vertex> order;
  std::vector<VertexSet> guards;
};

/// Throws InputError naming the first index where the certificate fails.
void validate_certificate(const Hypergraph& h, const DegeneracyCertificate& cert);

/// Smallest set of at most d vertices other than v meeting every edge of h
/// through v, if one exists.
std::optional<VertexSet> find_guard(const Hypergraph& h, Vertex v, std::size_t d);

/// Greedy peeling: removes any vertex with a guard of size <= d until none
/// is left (certificate, reversed removal order) or peeling stalls (none).
std::optional<DegeneracyCertificate> is_d_degenerate(const Hypergraph& h, std::size_t d);

/// Vertices left when peeling stalls; empty when h is d-degenerate.
VertexSet degeneracy_core(const Hypergraph& h, std::size_t d);

/// Least color not completing a monochromatic edge, along the certificate
/// order. At most d + 1 colors.
Coloring degeneracy_color(const Hypergraph& h, const DegeneracyCertificate& cert);

/// T must be a linear hyperforest and H not |V(T)|-degenerate (InputError
/// otherwise). Embeds T's edges greedily into the degeneracy core of H.
Embedding embed_linear_hyperforest(const Hypergraph& h, const Hypergraph& t);

/// Base hypergraph over V(H) plus, for each base vertex b, the (r-1)-sets A
/// (over the fiber set, here V(H)) with A u {b} an edge.
struct FiberBundle {
  Hypergraph base;
  std::vector<std::string> fiber_names;
  int fiber_r = 0;
  std::vector<std::vector<Edge>> fibers;  ///< sorted per base vertex
};

/// Base edges: |V(T)|-sets X with T contained in H[X]. Throws
/// BudgetExceeded when the copy enumeration runs out of budget.
FiberBundle t_bundle(const Hypergraph& h, const Hypergraph& t, std::uint64_t budget = default_budget());

/// Sets present in every fiber over X; X must be nonempty.
Hypergraph section(const FiberBundle& bundle, const VertexSet& x);

/// Complete `parts`-partite, `parts`-uniform hypergraph with part_size
/// vertices per part.
struct KSpec {
  int parts = 2;
  std::size_t part_size = 1;
};

/// Disjoint parts, each sorted, whose transversals are all edges of S.
Search<std::vector<VertexSet>> contains_complete_partite(const Hypergraph& s, const KSpec& spec,
                                                         std::uint64_t budget = default_budget());

/// Same with prescribed sizes for labelled parts and forbidden vertices.
Search<std::vector<VertexSet>> find_complete_partite(const Hypergraph& s, const std::vector<std::size_t>& sizes,
                                                     const VertexSet& excluded,
                                                     std::uint64_t budget = default_budget());

/// A matching E_1..E_t of base edges (ids, increasing) such that the section
/// of every transversal contains K.
Search<std::vector<EdgeId>> dim_at_least(const FiberBundle& bundle, const KSpec& spec, std::size_t t,
                                         std::uint64_t budget = default_budget());

struct ColorOrEmbedOptions {
  std::size_t part_size_cap = 3;
  std::uint64_t budget = default_budget();
};

struct ColorOrEmbedResult {
  std::optional<Embedding> embedding;
  std::optional<Coloring> coloring;

  std::size_t tree_vertices = 0;      ///< |V(T)| for T = G[V_1]
  std::size_t t = 0;                  ///< components of G[V_1]
  double part_size_formula = 0;       ///< (rm)^m
  std::size_t part_size = 0;          ///< size actually searched
  bool part_size_clamped = false;
  std::vector<VertexSet> matching;    ///< dim witness as vertex sets of H
  bool dim_found = false;
  bool dim_exhausted = false;
  std::uint32_t base_colors = 0;
  bool base_exact = false;
  bool bound_applies = false;         ///< colors <= (|V(T)|+1) base_colors is claimed
  std::uint32_t colors = 0;
  std::vector<std::string> notes;
};

/// Either an embedding of G into H assembled from a dim witness, or a
/// proper coloring of H from a base coloring and per-class degeneracy
/// colorings. G must be strong unifoliate with witness w.
ColorOrEmbedResult color_or_embed(const Hypergraph& h, const Hypergraph& g, const PartitionWitness& w,
                                  const ColorOrEmbedOptions& options = {});

Json color_or_embed_to_json(const Hypergraph& h, const Hypergraph& g, const ColorOrEmbedResult& result);

}  // namespace hyperthresh
