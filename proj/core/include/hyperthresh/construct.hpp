#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hyperthresh/hypergraph.hpp"
#include "hyperthresh/io.hpp"
#include "hyperthresh/spheregeo.hpp"

namespace hyperthresh {

/// Bit-string cover of K_[r]: vertex j (0-based) carries the ell-bit code of
/// j, most significant bit first; graph i joins codes that differ in bit i.
struct BipartiteCover {
  int r = 0;
  int ell = 0;

  int bit(int graph, int vertex) const { return (vertex >> (ell - 1 - graph)) & 1; }
  /// Crossing pairs (a < b, 0-based) of graph i.
  std::vector<std::pair<int, int>> edges(int graph) const;
  bool covers_all_pairs() const;
};

/// Throws InputError for r < 3.
BipartiteCover bipartite_cover(int r);

/// Hypergraph whose vertices are ell-tuples of sample point indices.
struct TupleHypergraph {
  Hypergraph graph;
  int ell = 0;
  std::vector<std::uint32_t> tuples;  ///< ell entries per vertex

  std::span<const std::uint32_t> tuple(Vertex v) const {
    return {tuples.data() + static_cast<std::size_t>(v) * static_cast<std::size_t>(ell),
            static_cast<std::size_t>(ell)};
  }
};

struct ConstructionBudget {
  std::size_t max_vertices = 20'000;
  std::size_t max_edges = 2'000'000;
  std::uint64_t cycle_nodes = 200'000'000;
};

/// Vertices are all ell-tuples over the sample (ell = ceil(log2 r)); an
/// r-set is an edge when some ordering puts every crossing pair of every
/// cover graph at distance > 2 - theta in that graph's coordinate.
TupleHypergraph build_h_prime(const SphereSample& sample, int r, double theta,
                              const ConstructionBudget& budget = {});

struct Blowup {
  Hypergraph graph;
  std::vector<Vertex> origin;  ///< blown-up vertex -> original vertex
};

/// Each vertex v becomes copies "v~0".."v~(b-1)"; each edge becomes all b^r
/// copy choices.
Blowup blowup(const Hypergraph& h, std::size_t b);

/// Keeps each edge independently with probability p. The coin of an edge is
/// a hash of (seed, its vertex names), so it does not depend on edge order.
Hypergraph sparsen(const Hypergraph& h, double p, std::uint64_t seed);

struct CycleDeletion {
  Hypergraph graph;
  std::vector<std::vector<std::string>> deleted;  ///< removed edges, in order
};

/// Repeatedly takes the first cycle whose edges span at most L vertices and
/// removes its last edge, until none is left. Cycles are taken shortest
/// first, then in enumeration order.
CycleDeletion delete_short_cycles(const Hypergraph& h, std::size_t L,
                                  std::uint64_t node_budget = 200'000'000);

/// Tuples whose coordinates are pairwise within chordal distance sqrt(2).
bool in_v0(std::span<const std::uint32_t> tuple, const SphereSample& sample);

/// Induced subhypergraph on the V0 tuples; `tuples` holds ell entries per
/// vertex of h.
TupleHypergraph restrict_v0(const Hypergraph& h, int ell, const std::vector<std::uint32_t>& tuples,
                            const SphereSample& sample);

struct PipelineStats {
  std::size_t h_prime_vertices = 0;
  std::size_t h_prime_edges = 0;
  std::size_t blown_up_edges = 0;
  std::size_t sparsened_edges = 0;
  std::size_t deleted_edges = 0;
  std::size_t v0_tuples = 0;
  std::size_t h0_vertices = 0;
  std::size_t h0_edges = 0;
};

struct H0Options {
  std::size_t blowup = 2;
  double sparsen_p = 1.0;
  std::size_t L = 0;
  std::uint64_t seed = 0;
  ConstructionBudget budget;
};

/// build_h_prime -> blowup -> sparsen -> delete_short_cycles -> restrict_v0.
TupleHypergraph build_h0(const SphereSample& sample, int r, double theta, const H0Options& options,
                         PipelineStats* stats = nullptr);

enum class Mode { strict, relaxed };

struct ConstructionParams {
  int r = 3;
  std::size_t n = 0;  ///< |C_1| + ... + |C_{r-1}| + |D|
  int k = 2;
  double epsilon = 0.1;
  std::uint64_t seed = 0;
  Mode mode = Mode::relaxed;
  std::size_t points = 6;  ///< sphere points behind the A layer
  int d = 3;
  std::size_t blowup = 2;
  double sparsen_p = 1.0;
  std::size_t L = 0;  ///< |V(F)|; 0 = 2r when no F is given
  int f = 0;          ///< |E(F)|; 0 = 1 when no F is given
  double beta = 0.1;  ///< used as given in relaxed mode; chosen in strict mode
  double theta = 0.5; ///< used as given in relaxed mode; chosen in strict mode
  std::size_t beta_samples = 200'000;
  ConstructionBudget budget;
};

/// Layer of a vertex: 0 = A, 1..r-1 = C_i, r = D.
using Layer = int;

struct LayeredHypergraph {
  Hypergraph graph;
  std::vector<Layer> layer;
  int ell = 0;
  SphereSample a_points;
  SphereSample c_points;
  /// A vertex -> tuple into a_points (ell entries); C vertex -> one index
  /// into c_points; D vertex -> empty.
  std::vector<std::vector<std::uint32_t>> geometry;
  ConstructionParams params;
  GeoParams geo;
  PipelineStats stats;

  std::string layer_label(Vertex v) const;
  VertexSet layer_vertices(Layer l) const;
};

/// The layered construction. Strict mode derives beta and theta (f = |E(F)|,
/// L = |V(F)|) and throws InfeasibleParameters if they cannot be realized;
/// relaxed mode takes params.beta and params.theta as given.
LayeredHypergraph build_g(const std::optional<Hypergraph>& forbidden, ConstructionParams params);

Json layered_to_json(const LayeredHypergraph& g);
LayeredHypergraph layered_from_json(const Json& j);

struct LayerStats {
  std::string label;
  std::size_t count = 0;
  std::size_t min_degree = 0;
  double mean_degree = 0;
};

struct ConstructionReport {
  std::vector<LayerStats> layers;
  std::size_t edges_inside_a = 0;
  std::size_t edges_c_d = 0;
  std::size_t edges_a_c = 0;
  std::size_t edges_other = 0;
  double transversal_degree = 0;    ///< (n/r)^(r-1)
  double eq2_reference = 0;         ///< (n/(r 2^ell))^(r-1)
  double a_min_degree_ratio = 0;    ///< A min degree / eq2_reference
  std::size_t a_alpha = 0;
  bool a_alpha_exact = false;
  double a_independence_ratio = 0;  ///< alpha(G[A]) / |A|
  std::size_t forest_samples = 0;
  std::size_t forest_failures = 0;  ///< sampled L-subsets of A not inducing a linear hyperforest
  bool sizes_ok = false;
  bool edge_types_ok = false;
  bool d_degrees_exact = false;
  bool c_degrees_ok = false;
  bool theta_budget_ok = false;
  bool cap_diameter_ok = false;
  bool a_edgeless = false;

  bool invariants_ok() const { return sizes_ok && edge_types_ok && d_degrees_exact && c_degrees_ok; }
};

ConstructionReport verify_construction(const LayeredHypergraph& g, std::uint64_t alpha_budget = 2'000'000,
                                       std::size_t forest_samples = 1000);

/// key,value rows.
std::string report_summary_csv(const LayeredHypergraph& g, const ConstructionReport& report);
/// vertex,layer,degree rows.
std::string degree_csv(const LayeredHypergraph& g);

}  // namespace hyperthresh
