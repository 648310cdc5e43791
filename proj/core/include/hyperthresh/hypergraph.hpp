#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hyperthresh/common.hpp"

namespace hyperthresh {

/**
 * Uniform hypergraph over named vertices.
 *
 * Vertices keep the order they were given in and are addressed internally by
 * their position. Every edge is stored as a sorted index list and the edge
 * list itself is sorted lexicographically, so two hypergraphs built from the
 * same data compare equal regardless of input order. Values are immutable
 * once constructed.
 */
class Hypergraph {
 public:
  Hypergraph() = default;

  /// Throws InputError on duplicate names, wrong edge sizes, repeated
  /// vertices inside an edge, out-of-range indices or repeated edges.
  Hypergraph(int r, std::vector<std::string> names, std::vector<Edge> edges);

  static Hypergraph from_names(int r, std::vector<std::string> vertices,
                               const std::vector<std::vector<std::string>>& edges);

  /// Vertices named "1".."n".
  static Hypergraph numbered(int r, std::size_t n, std::vector<Edge> edges);

  int r() const { return r_; }
  std::size_t num_vertices() const { return names_.size(); }
  std::size_t num_edges() const { return edges_.size(); }

  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(Vertex v) const { return names_.at(v); }
  std::optional<Vertex> find(std::string_view name) const;
  /// Like find() but throws InputError naming the vertex.
  Vertex index_of(std::string_view name) const;

  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  const std::vector<EdgeId>& incident(Vertex v) const { return incidence_.at(v); }

  /// `vertices` must be sorted.
  std::optional<EdgeId> edge_id(std::span<const Vertex> vertices) const;
  bool has_edge(std::span<const Vertex> vertices) const { return edge_id(vertices).has_value(); }

  std::vector<std::string> edge_names(EdgeId e) const;
  std::string edge_label(EdgeId e) const;

  friend bool operator==(const Hypergraph& a, const Hypergraph& b) {
    return a.r_ == b.r_ && a.names_ == b.names_ && a.edges_ == b.edges_;
  }

 private:
  int r_ = 2;
  std::vector<std::string> names_;
  std::unordered_map<std::string, Vertex> index_;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> incidence_;
};

/// Proper-or-not assignment of colors 1..k to vertices (0 = uncolored).
struct Coloring {
  std::vector<std::uint32_t> color;

  std::uint32_t num_colors() const;
  bool is_complete() const;
  bool is_proper(const Hypergraph& h) const;
};

std::size_t degree(const Hypergraph& h, Vertex v);
std::size_t degree(const Hypergraph& h, std::string_view name);
std::size_t min_degree(const Hypergraph& h);

/// Resolves names to indices, throwing InputError on unknown names.
VertexSet resolve(const Hypergraph& h, const std::vector<std::string>& names);

/// Vertex set X in the parent's order; edges fully inside X.
Hypergraph induced(const Hypergraph& h, const VertexSet& x);

/// Connected components as sorted vertex lists, ordered by least vertex.
/// Isolated vertices form singleton components.
std::vector<VertexSet> components(const Hypergraph& h);

bool is_linear(const Hypergraph& h);
bool is_independent(const Hypergraph& h, const VertexSet& x);
bool is_strong_independent(const Hypergraph& h, const VertexSet& x);

struct IndependenceResult {
  std::size_t value = 0;  ///< exact when status is complete, else a lower bound
  VertexSet certificate;
  SearchStatus status = SearchStatus::complete;
  std::uint64_t nodes = 0;
};

IndependenceResult independence_number(const Hypergraph& h, std::uint64_t budget = default_budget());

/// `order` must be a permutation of the vertices.
Coloring greedy_color(const Hypergraph& h, const std::vector<Vertex>& order);

struct ChromaticResult {
  enum class Kind { exact, exceeds_limit, budget_exhausted };
  Kind kind = Kind::exact;
  std::uint32_t value = 0;       ///< chi(H) when exact, else best upper bound found (0 if none)
  std::uint32_t lower_bound = 0; ///< largest k proven infeasible, plus one
  Coloring coloring;             ///< realizes `value` when value > 0
  std::uint64_t nodes = 0;
};

ChromaticResult chromatic_number(const Hypergraph& h, std::uint32_t limit,
                                 std::uint64_t budget = default_budget());

}  // namespace hyperthresh
