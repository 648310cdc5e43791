#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hyperthresh/cycles.hpp"
#include "hyperthresh/hypergraph.hpp"
#include "hyperthresh/io.hpp"

namespace hyperthresh {

/// Ordered partition V_1..V_r of V(F). Part 0 plays the role of V_1, the
/// part that may carry edges (the "leaf" forest).
struct PartitionWitness {
  std::vector<std::uint8_t> part_of;

  VertexSet part(int i) const;
  std::vector<VertexSet> parts(int r) const;
  friend bool operator==(const PartitionWitness&, const PartitionWitness&) = default;
};

PartitionWitness witness_from_parts(const Hypergraph& f, const std::vector<VertexSet>& parts);
Json witness_to_json(const Hypergraph& f, const PartitionWitness& w);
PartitionWitness witness_from_json(const Hypergraph& f, const Json& j);

/// Components of F[V_1] (including isolated V_1 vertices), in F's indices.
std::vector<VertexSet> tree_components(const Hypergraph& f, const PartitionWitness& w);

/// Edges of F not inside V_1.
std::vector<EdgeId> cross_edges(const Hypergraph& f, const PartitionWitness& w);

/// (r-1)-uniform projection of the cross-edges onto V_2 u ... u V_r.
struct ShadowHypergraph {
  Hypergraph graph;                    ///< vertices named as in F
  std::vector<Vertex> origin;          ///< shadow vertex -> F vertex
  std::vector<std::size_t> component;  ///< shadow vertex -> component id
  std::vector<VertexSet> components;   ///< shadow vertex ids per component
};

/// Throws InputError if `w` is not a partition of V(F) or some edge outside
/// V_1 is not transversal.
ShadowHypergraph shadow(const Hypergraph& f, const PartitionWitness& w);

/// V_1-vertices lying in a cross-edge together with a shadow edge of the
/// given component.
VertexSet v1_neighborhood(const Hypergraph& f, const PartitionWitness& w, const ShadowHypergraph& s,
                          std::size_t component);

struct UnifoliateViolation {
  enum class Kind {
    bad_partition,       ///< wrong size or part index out of range
    forest_cycle,        ///< F[V_1] is not a linear hyperforest
    non_transversal,     ///< an edge outside V_1 misses some part
    single_forest_edge,  ///< cycle with one V_1-edge staying inside one V_1-component
  };
  Kind kind = Kind::bad_partition;
  std::optional<Cycle> cycle;
  std::optional<EdgeId> edge;
};

struct UnifoliateCheck {
  bool ok = true;
  std::optional<UnifoliateViolation> violation;
};

/// All cycles of F that matter for witness checks (length <= |E(F)|).
std::vector<Cycle> witness_cycles(const Hypergraph& f);

UnifoliateCheck check_unifoliate_witness(const Hypergraph& f, const PartitionWitness& w);
/// Variant reusing a precomputed witness_cycles(f).
UnifoliateCheck check_unifoliate_witness(const Hypergraph& f, const PartitionWitness& w,
                                         const std::vector<Cycle>& cycles);

/// Two distinct same-component V_1 vertices joined by cross-edges whose
/// consecutive members meet outside V_1.
struct StrongViolation {
  Vertex x = 0;
  Vertex y = 0;
  std::vector<EdgeId> path;
};

struct StrongCheck {
  bool ok = true;
  std::optional<StrongViolation> violation;
};

/// Breadth-first search over cross-edges. Throws InputError when `w` does
/// not pass check_unifoliate_witness.
StrongCheck check_strong_witness(const Hypergraph& f, const PartitionWitness& w);

/// Same verdict via shadow components: every shadow component meets each
/// V_1-component in at most one neighbourhood vertex.
bool strong_by_shadow_components(const Hypergraph& f, const PartitionWitness& w);

Search<PartitionWitness> is_unifoliate(const Hypergraph& f, std::uint64_t budget = default_budget());
Search<PartitionWitness> is_strong_unifoliate(const Hypergraph& f, std::uint64_t budget = default_budget());

struct Classification {
  enum class Class { not_unifoliate, unifoliate_only, strong_unifoliate };
  Class cls = Class::not_unifoliate;
  std::optional<PartitionWitness> witness;
  /// For unifoliate_only: the strong violation of `witness`.
  std::optional<StrongViolation> strong_violation;
  std::uint64_t partitions_checked = 0;
};

std::string to_string(Classification::Class c);

/// Throws BudgetExceeded when the partition search cannot finish.
Classification classify(const Hypergraph& f, std::uint64_t budget = default_budget());

Json classification_to_json(const Hypergraph& f, const Classification& c);
Json violation_to_json(const Hypergraph& f, const UnifoliateViolation& v);
Json strong_violation_to_json(const Hypergraph& f, const StrongViolation& v);

}  // namespace hyperthresh
