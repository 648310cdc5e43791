#include "hyperthresh/construct.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "hyperthresh/cycles.hpp"

namespace hyperthresh {

std::vector<std::pair<int, int>> BipartiteCover::edges(int graph) const {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < r; ++a) {
    for (int b = a + 1; b < r; ++b) {
      if (bit(graph, a) != bit(graph, b)) out.emplace_back(a, b);
    }
  }
  return out;
}

bool BipartiteCover::covers_all_pairs() const {
  for (int a = 0; a < r; ++a) {
    for (int b = a + 1; b < r; ++b) {
      bool covered = false;
      for (int i = 0; i < ell; ++i) covered = covered || bit(i, a) != bit(i, b);
      if (!covered) return false;
    }
  }
  return true;
}

BipartiteCover bipartite_cover(int r) {
  if (r < 3) throw InputError("bipartite cover is defined for r >= 3, got " + std::to_string(r));
  BipartiteCover c;
  c.r = r;
  while ((1 << c.ell) < r) ++c.ell;
  return c;
}

namespace {

std::string tuple_name(std::span<const std::uint32_t> t) {
  std::string out;
  for (std::size_t i = 0; i < t.size(); ++i) out += (i ? "_" : "") + std::to_string(t[i]);
  return out;
}

class HPrimeBuilder {
 public:
  HPrimeBuilder(const SphereSample& sample, int r, double theta, const ConstructionBudget& budget)
      : sample_(sample), cover_(bipartite_cover(r)), theta_(theta), budget_(budget) {
    n_points_ = sample.size();
    ell_ = cover_.ell;
    std::size_t count = 1;
    for (int i = 0; i < ell_; ++i) {
      count *= n_points_;
      if (count > budget_.max_vertices) {
        throw BudgetExceeded("H' would have more than " + std::to_string(budget_.max_vertices) + " vertices");
      }
    }
    n_vertices_ = count;
    far_.assign(n_points_, {});
    for (std::uint32_t p = 0; p < n_points_; ++p) {
      for (std::uint32_t q = 0; q < n_points_; ++q) {
        if (p != q && is_far(p, q)) far_[p].push_back(q);
      }
    }
    // Position a >= 1 is constrained against position 0 in the first bit
    // where their codes differ.
    anchor_bit_.assign(static_cast<std::size_t>(r), 0);
    for (int a = 1; a < r; ++a) {
      int i = 0;
      while (cover_.bit(i, a) == cover_.bit(i, 0)) ++i;
      anchor_bit_[static_cast<std::size_t>(a)] = i;
    }
  }

  TupleHypergraph build() {
    TupleHypergraph out;
    out.ell = ell_;
    out.tuples.resize(n_vertices_ * static_cast<std::size_t>(ell_));
    std::vector<std::string> names;
    names.reserve(n_vertices_);
    for (std::size_t v = 0; v < n_vertices_; ++v) {
      auto t = coords(v);
      std::copy(t.begin(), t.end(), out.tuples.begin() + static_cast<long>(v * static_cast<std::size_t>(ell_)));
      names.push_back(tuple_name(t));
    }
    order_.assign(static_cast<std::size_t>(cover_.r), 0);
    for (std::size_t v = 0; v < n_vertices_; ++v) {
      order_[0] = v;
      extend(1);
    }
    out.graph = Hypergraph(cover_.r, std::move(names), std::vector<Edge>(found_.begin(), found_.end()));
    return out;
  }

 private:
  bool is_far(std::uint32_t p, std::uint32_t q) const {
    return p != q && dist(sample_.point(p), sample_.point(q)) > 2.0 - theta_;
  }

  std::vector<std::uint32_t> coords(std::size_t v) const {
    std::vector<std::uint32_t> t(static_cast<std::size_t>(ell_));
    for (int i = ell_ - 1; i >= 0; --i) {
      t[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(v % n_points_);
      v /= n_points_;
    }
    return t;
  }

  std::uint32_t coord(std::size_t v, int i) const {
    for (int k = ell_ - 1; k > i; --k) v /= n_points_;
    return static_cast<std::uint32_t>(v % n_points_);
  }

  bool consistent(int a, std::size_t v) const {
    for (int b = 0; b < a; ++b) {
      for (int i = 0; i < ell_; ++i) {
        if (cover_.bit(i, a) != cover_.bit(i, b) && !is_far(coord(v, i), coord(order_[static_cast<std::size_t>(b)], i))) {
          return false;
        }
      }
    }
    return true;
  }

  void extend(int a) {
    if (a == cover_.r) {
      Edge e(order_.begin(), order_.end());
      std::sort(e.begin(), e.end());
      found_.insert(std::move(e));
      if (found_.size() > budget_.max_edges) {
        throw BudgetExceeded("H' exceeds " + std::to_string(budget_.max_edges) + " edges");
      }
      return;
    }
    const int i = anchor_bit_[static_cast<std::size_t>(a)];
    std::size_t stride = 1;
    for (int k = ell_ - 1; k > i; --k) stride *= n_points_;
    // Every tuple whose coordinate i is far from the anchor's coordinate i.
    for (std::uint32_t q : far_[coord(order_[0], i)]) {
      for (std::size_t high = 0; high < n_vertices_ / (stride * n_points_); ++high) {
        for (std::size_t low = 0; low < stride; ++low) {
          const std::size_t v = (high * n_points_ + q) * stride + low;
          if (!consistent(a, v)) continue;
          order_[static_cast<std::size_t>(a)] = v;
          extend(a + 1);
        }
      }
    }
  }

  const SphereSample& sample_;
  BipartiteCover cover_;
  double theta_;
  ConstructionBudget budget_;
  std::size_t n_points_ = 0;
  std::size_t n_vertices_ = 0;
  int ell_ = 0;
  std::vector<std::vector<std::uint32_t>> far_;
  std::vector<int> anchor_bit_;
  std::vector<std::size_t> order_;
  std::set<Edge> found_;
};

}  // namespace

TupleHypergraph build_h_prime(const SphereSample& sample, int r, double theta, const ConstructionBudget& budget) {
  if (!(theta > 0.0)) throw InputError("theta must be positive");
  return HPrimeBuilder(sample, r, theta, budget).build();
}

Blowup blowup(const Hypergraph& h, std::size_t b) {
  if (b == 0) throw InputError("blowup factor must be at least 1");
  Blowup out;
  std::vector<std::string> names;
  for (Vertex v = 0; v < h.num_vertices(); ++v) {
    for (std::size_t k = 0; k < b; ++k) {
      names.push_back(h.name(v) + "~" + std::to_string(k));
      out.origin.push_back(v);
    }
  }
  std::vector<Edge> edges;
  const std::size_t r = static_cast<std::size_t>(h.r());
  for (const Edge& e : h.edges()) {
    std::vector<std::size_t> pick(r, 0);
    while (true) {
      Edge copy(r);
      for (std::size_t i = 0; i < r; ++i) copy[i] = static_cast<Vertex>(e[i] * b + pick[i]);
      edges.push_back(std::move(copy));
      std::size_t i = 0;
      while (i < r && ++pick[i] == b) pick[i++] = 0;
      if (i == r) break;
    }
  }
  out.graph = Hypergraph(h.r(), std::move(names), std::move(edges));
  return out;
}

Hypergraph sparsen(const Hypergraph& h, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("sparsening probability must lie in [0, 1]");
  std::vector<Edge> kept;
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    auto names = h.edge_names(e);
    std::sort(names.begin(), names.end());
    std::string key;
    for (const auto& n : names) key += n + '\x1f';
    const double u = static_cast<double>(derive_seed(seed, key) >> 11) * 0x1.0p-53;
    if (u < p) kept.push_back(h.edge(e));
  }
  return Hypergraph(h.r(), h.names(), std::move(kept));
}

CycleDeletion delete_short_cycles(const Hypergraph& h, std::size_t L, std::uint64_t node_budget) {
  if (L < 2) throw InputError("cycle span bound L must be at least 2");
  CycleDeletion out;
  std::vector<char> removed(h.num_edges(), 0);
  // Shortest cycles first. Deleting edges never creates cycles, so once a
  // length is clean it stays clean, and within one length the scan resumes
  // at the least vertex of the last hit.
  for (std::size_t t = 2; t <= L; ++t) {
    Vertex start = 0;
    while (true) {
      std::optional<Cycle> hit;
      CycleFilter filter{.max_length = t, .min_length = t, .max_span = L, .first_start = start,
                         .max_nodes = node_budget, .removed = &removed};
      try {
        for_each_cycle(h, filter, [&](const Cycle& c) {
          hit = c;
          return false;
        });
      } catch (const BudgetExceeded&) {
        throw BudgetExceeded("short-cycle deletion ran out of budget after deleting " +
                             std::to_string(out.deleted.size()) + " edges (length " + std::to_string(t) +
                             ", scanning from vertex " + h.name(start) + ")");
      }
      if (!hit) break;
      // Edges are stored sorted, so the largest id is the lexicographically last edge.
      const EdgeId last = *std::max_element(hit->edges.begin(), hit->edges.end());
      removed[last] = 1;
      out.deleted.push_back(h.edge_names(last));
      start = hit->vertices.front();
    }
  }
  std::vector<Edge> rest;
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    if (!removed[e]) rest.push_back(h.edge(e));
  }
  out.graph = Hypergraph(h.r(), h.names(), std::move(rest));
  return out;
}

bool in_v0(std::span<const std::uint32_t> tuple, const SphereSample& sample) {
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    for (std::size_t j = i + 1; j < tuple.size(); ++j) {
      if (dist(sample.point(tuple[i]), sample.point(tuple[j])) > std::sqrt(2.0)) return false;
    }
  }
  return true;
}

TupleHypergraph restrict_v0(const Hypergraph& h, int ell, const std::vector<std::uint32_t>& tuples,
                            const SphereSample& sample) {
  if (tuples.size() != h.num_vertices() * static_cast<std::size_t>(ell)) {
    throw InputError("restrict_v0 needs a tuple for every vertex");
  }
  TupleHypergraph out;
  out.ell = ell;
  VertexSet keep;
  for (Vertex v = 0; v < h.num_vertices(); ++v) {
    std::span<const std::uint32_t> t(tuples.data() + static_cast<std::size_t>(v) * static_cast<std::size_t>(ell),
                                     static_cast<std::size_t>(ell));
    if (in_v0(t, sample)) {
      keep.push_back(v);
      out.tuples.insert(out.tuples.end(), t.begin(), t.end());
    }
  }
  out.graph = induced(h, keep);
  return out;
}

TupleHypergraph build_h0(const SphereSample& sample, int r, double theta, const H0Options& options,
                         PipelineStats* stats) {
  PipelineStats local;
  PipelineStats& s = stats ? *stats : local;
  const TupleHypergraph hp = build_h_prime(sample, r, theta, options.budget);
  s.h_prime_vertices = hp.graph.num_vertices();
  s.h_prime_edges = hp.graph.num_edges();

  if (hp.graph.num_edges() * static_cast<std::size_t>(std::pow(options.blowup, r)) > options.budget.max_edges) {
    throw BudgetExceeded("blowup would exceed " + std::to_string(options.budget.max_edges) + " edges");
  }
  const Blowup blown = blowup(hp.graph, options.blowup);
  s.blown_up_edges = blown.graph.num_edges();
  const Hypergraph thin = sparsen(blown.graph, options.sparsen_p, derive_seed(options.seed, "sparsen"));
  s.sparsened_edges = thin.num_edges();
  const CycleDeletion cleaned = delete_short_cycles(thin, options.L, options.budget.cycle_nodes);
  s.deleted_edges = cleaned.deleted.size();

  std::vector<std::uint32_t> tuples;
  tuples.reserve(blown.origin.size() * static_cast<std::size_t>(hp.ell));
  for (Vertex origin : blown.origin) {
    const auto t = hp.tuple(origin);
    tuples.insert(tuples.end(), t.begin(), t.end());
  }
  TupleHypergraph h0 = restrict_v0(cleaned.graph, hp.ell, tuples, sample);
  std::size_t v0 = 0;
  for (Vertex v = 0; v < hp.graph.num_vertices(); ++v) v0 += in_v0(hp.tuple(v), sample);
  s.v0_tuples = v0;
  s.h0_vertices = h0.graph.num_vertices();
  s.h0_edges = h0.graph.num_edges();
  return h0;
}

std::string LayeredHypergraph::layer_label(Vertex v) const {
  const Layer l = layer.at(v);
  if (l == 0) return "A";
  if (l == params.r) return "D";
  return "C" + std::to_string(l);
}

VertexSet LayeredHypergraph::layer_vertices(Layer l) const {
  VertexSet out;
  for (Vertex v = 0; v < layer.size(); ++v) {
    if (layer[v] == l) out.push_back(v);
  }
  return out;
}

LayeredHypergraph build_g(const std::optional<Hypergraph>& forbidden, ConstructionParams params) {
  if (forbidden) {
    params.r = forbidden->r();
    params.L = forbidden->num_vertices();
    params.f = static_cast<int>(std::max<std::size_t>(1, forbidden->num_edges()));
  }
  const int r = params.r;
  if (r < 3) throw InputError("the construction needs r >= 3");
  if (params.n == 0 || params.n % static_cast<std::size_t>(r) != 0) {
    throw InputError("n = " + std::to_string(params.n) + " must be a positive multiple of r = " + std::to_string(r));
  }
  if (params.L == 0) params.L = 2 * static_cast<std::size_t>(r);
  if (params.f == 0) params.f = 1;
  if (params.L < 2) params.L = 2;

  LayeredHypergraph g;
  g.params = params;
  if (params.mode == Mode::strict) {
    const double beta = choose_beta(params.epsilon, params.d, params.beta_samples, derive_seed(params.seed, "beta"));
    g.geo = choose_theta(params.f, beta);
    g.params.beta = g.geo.beta;
    g.params.theta = g.geo.theta;
  } else {
    if (!(params.beta > 0.0 && params.beta < std::sqrt(2.0))) {
      throw InputError("relaxed mode needs 0 < beta < sqrt(2)");
    }
    if (!(params.theta > 0.0)) throw InputError("relaxed mode needs theta > 0");
    g.geo.beta = params.beta;
    g.geo.theta = params.theta;
    g.geo.f = params.f;
    g.geo.theta_budget = theta_budget(params.f, params.theta);
    g.geo.cap_diameter = cap_diameter(params.beta);
  }
  g.geo.epsilon = params.epsilon;

  g.a_points = sample_points(params.points, params.d, derive_seed(params.seed, "a-points"));
  H0Options h0_options{params.blowup, params.sparsen_p, params.L, params.seed, params.budget};
  const TupleHypergraph h0 = build_h0(g.a_points, r, g.params.theta, h0_options, &g.stats);
  g.ell = h0.ell;

  const std::size_t part = params.n / static_cast<std::size_t>(r);
  g.c_points = sample_points(part * static_cast<std::size_t>(r - 1), params.d, derive_seed(params.seed, "c-points"));

  std::vector<std::string> names;
  const std::size_t a_count = h0.graph.num_vertices();
  for (Vertex v = 0; v < a_count; ++v) {
    names.push_back("A/" + h0.graph.name(v));
    g.layer.push_back(0);
    const auto t = h0.tuple(v);
    g.geometry.emplace_back(t.begin(), t.end());
  }
  auto c_vertex = [&](int i, std::size_t t) {
    return static_cast<Vertex>(a_count + static_cast<std::size_t>(i - 1) * part + t);
  };
  for (int i = 1; i < r; ++i) {
    for (std::size_t t = 0; t < part; ++t) {
      names.push_back("C" + std::to_string(i) + "/" + std::to_string(t));
      g.layer.push_back(i);
      g.geometry.push_back({static_cast<std::uint32_t>(static_cast<std::size_t>(i - 1) * part + t)});
    }
  }
  const Vertex d_first = static_cast<Vertex>(a_count + static_cast<std::size_t>(r - 1) * part);
  for (std::size_t t = 0; t < part; ++t) {
    names.push_back("D/" + std::to_string(t));
    g.layer.push_back(r);
    g.geometry.emplace_back();
  }

  std::vector<Edge> edges = h0.graph.edges();
  // One vertex from each C_i plus one from D, all combinations; the same
  // odometer also drives the A x C_1 x ... x C_{r-1} products below.
  auto for_each_product = [&](const std::vector<std::vector<Vertex>>& choices, const Edge& prefix) {
    if (std::any_of(choices.begin(), choices.end(), [](const auto& c) { return c.empty(); })) return;
    std::vector<std::size_t> pick(choices.size(), 0);
    while (true) {
      Edge e = prefix;
      for (std::size_t i = 0; i < choices.size(); ++i) e.push_back(choices[i][pick[i]]);
      edges.push_back(std::move(e));
      std::size_t i = 0;
      while (i < choices.size() && ++pick[i] == choices[i].size()) pick[i++] = 0;
      if (i == choices.size()) break;
    }
  };
  {
    std::vector<std::vector<Vertex>> choices;
    for (int i = 1; i < r; ++i) {
      choices.emplace_back();
      for (std::size_t t = 0; t < part; ++t) choices.back().push_back(c_vertex(i, t));
    }
    choices.emplace_back();
    for (std::size_t t = 0; t < part; ++t) choices.back().push_back(static_cast<Vertex>(d_first + t));
    for_each_product(choices, {});
  }
  const double reach = std::sqrt(2.0) - g.params.beta;
  for (Vertex w = 0; w < a_count; ++w) {
    std::vector<std::vector<Vertex>> choices;
    for (int i = 1; i < r; ++i) {
      choices.emplace_back();
      for (std::size_t t = 0; t < part; ++t) {
        const auto c = g.c_points.point(static_cast<std::size_t>(i - 1) * part + t);
        const bool close = std::all_of(g.geometry[w].begin(), g.geometry[w].end(),
                                       [&](std::uint32_t p) { return dist(g.a_points.point(p), c) < reach; });
        if (close) choices.back().push_back(c_vertex(i, t));
      }
    }
    for_each_product(choices, {w});
  }
  g.graph = Hypergraph(r, std::move(names), std::move(edges));
  return g;
}

namespace {

Json sample_to_json(const SphereSample& s) {
  Json j;
  j["d"] = s.d;
  j["seed"] = s.seed;
  j["coords"] = s.coords;
  return j;
}

SphereSample sample_from_json(const Json& j) {
  SphereSample s;
  s.d = j.at("d").get<int>();
  s.seed = j.at("seed").get<std::uint64_t>();
  s.coords = j.at("coords").get<std::vector<double>>();
  return s;
}

}  // namespace

Json layered_to_json(const LayeredHypergraph& g) {
  Json j = to_json(g.graph);
  Json layers = Json::object();
  for (Vertex v = 0; v < g.graph.num_vertices(); ++v) layers[g.graph.name(v)] = g.layer_label(v);
  j["layers"] = std::move(layers);

  Json geometry;
  geometry["ell"] = g.ell;
  geometry["a_points"] = sample_to_json(g.a_points);
  geometry["c_points"] = sample_to_json(g.c_points);
  Json coords = Json::object();
  for (Vertex v = 0; v < g.graph.num_vertices(); ++v) {
    if (!g.geometry[v].empty()) coords[g.graph.name(v)] = g.geometry[v];
  }
  geometry["vertices"] = std::move(coords);
  j["geometry"] = std::move(geometry);

  const auto& p = g.params;
  Json params;
  params["r"] = p.r;
  params["n"] = p.n;
  params["k"] = p.k;
  params["epsilon"] = p.epsilon;
  params["seed"] = p.seed;
  params["mode"] = p.mode == Mode::strict ? "strict" : "relaxed";
  params["points"] = p.points;
  params["d"] = p.d;
  params["blowup"] = p.blowup;
  params["sparsen_p"] = p.sparsen_p;
  params["L"] = p.L;
  params["f"] = p.f;
  params["beta"] = p.beta;
  params["theta"] = p.theta;
  params["beta_samples"] = p.beta_samples;
  params["theta_budget"] = g.geo.theta_budget;
  params["cap_diameter"] = g.geo.cap_diameter;
  j["params"] = std::move(params);

  Json stats;
  stats["h_prime_vertices"] = g.stats.h_prime_vertices;
  stats["h_prime_edges"] = g.stats.h_prime_edges;
  stats["blown_up_edges"] = g.stats.blown_up_edges;
  stats["sparsened_edges"] = g.stats.sparsened_edges;
  stats["deleted_edges"] = g.stats.deleted_edges;
  stats["v0_tuples"] = g.stats.v0_tuples;
  stats["h0_vertices"] = g.stats.h0_vertices;
  stats["h0_edges"] = g.stats.h0_edges;
  j["stats"] = std::move(stats);
  return j;
}

LayeredHypergraph layered_from_json(const Json& j) {
  LayeredHypergraph g;
  g.graph = hypergraph_from_json(j);
  try {
    const Json& p = j.at("params");
    auto& q = g.params;
    q.r = p.at("r").get<int>();
    q.n = p.at("n").get<std::size_t>();
    q.k = p.at("k").get<int>();
    q.epsilon = p.at("epsilon").get<double>();
    q.seed = p.at("seed").get<std::uint64_t>();
    q.mode = p.at("mode").get<std::string>() == "strict" ? Mode::strict : Mode::relaxed;
    q.points = p.at("points").get<std::size_t>();
    q.d = p.at("d").get<int>();
    q.blowup = p.at("blowup").get<std::size_t>();
    q.sparsen_p = p.at("sparsen_p").get<double>();
    q.L = p.at("L").get<std::size_t>();
    q.f = p.at("f").get<int>();
    q.beta = p.at("beta").get<double>();
    q.theta = p.at("theta").get<double>();
    q.beta_samples = p.at("beta_samples").get<std::size_t>();
    g.geo.epsilon = q.epsilon;
    g.geo.beta = q.beta;
    g.geo.theta = q.theta;
    g.geo.f = q.f;
    g.geo.theta_budget = p.at("theta_budget").get<double>();
    g.geo.cap_diameter = p.at("cap_diameter").get<double>();

    if (g.graph.r() != q.r) throw InputError("params.r disagrees with the hypergraph's r");
    const Json& layers = j.at("layers");
    g.layer.assign(g.graph.num_vertices(), -1);
    for (Vertex v = 0; v < g.graph.num_vertices(); ++v) {
      const std::string label = layers.at(g.graph.name(v)).get<std::string>();
      if (label == "A") g.layer[v] = 0;
      else if (label == "D") g.layer[v] = q.r;
      else if (label.size() > 1 && label[0] == 'C') g.layer[v] = std::stoi(label.substr(1));
      else throw InputError("unknown layer label '" + label + "'");
    }
    const Json& geometry = j.at("geometry");
    g.ell = geometry.at("ell").get<int>();
    g.a_points = sample_from_json(geometry.at("a_points"));
    g.c_points = sample_from_json(geometry.at("c_points"));
    const Json& coords = geometry.at("vertices");
    g.geometry.assign(g.graph.num_vertices(), {});
    for (Vertex v = 0; v < g.graph.num_vertices(); ++v) {
      if (coords.contains(g.graph.name(v))) {
        g.geometry[v] = coords.at(g.graph.name(v)).get<std::vector<std::uint32_t>>();
      }
    }
    const Json& stats = j.at("stats");
    g.stats.h_prime_vertices = stats.at("h_prime_vertices").get<std::size_t>();
    g.stats.h_prime_edges = stats.at("h_prime_edges").get<std::size_t>();
    g.stats.blown_up_edges = stats.at("blown_up_edges").get<std::size_t>();
    g.stats.sparsened_edges = stats.at("sparsened_edges").get<std::size_t>();
    g.stats.deleted_edges = stats.at("deleted_edges").get<std::size_t>();
    g.stats.v0_tuples = stats.at("v0_tuples").get<std::size_t>();
    g.stats.h0_vertices = stats.at("h0_vertices").get<std::size_t>();
    g.stats.h0_edges = stats.at("h0_edges").get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("layered hypergraph JSON: ") + e.what());
  }
  return g;
}

namespace {

VertexSet grow_subset(const Hypergraph& h, const VertexSet& pool, std::size_t size, std::mt19937_64& rng) {
  std::vector<char> allowed(h.num_vertices(), 0), chosen(h.num_vertices(), 0);
  for (Vertex v : pool) allowed[v] = 1;
  VertexSet out;
  auto take = [&](Vertex v) {
    if (allowed[v] && !chosen[v] && out.size() < size) {
      chosen[v] = 1;
      out.push_back(v);
    }
  };
  while (out.size() < size) {
    take(pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)]);
    // Follow random edges out of the current set so subsets are dense.
    for (std::size_t step = 0; step < 4 * size && out.size() < size; ++step) {
      const Vertex v = out[std::uniform_int_distribution<std::size_t>(0, out.size() - 1)(rng)];
      const auto& inc = h.incident(v);
      if (inc.empty()) continue;
      const Edge& e = h.edge(inc[std::uniform_int_distribution<std::size_t>(0, inc.size() - 1)(rng)]);
      for (Vertex u : e) take(u);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

ConstructionReport verify_construction(const LayeredHypergraph& g, std::uint64_t alpha_budget,
                                       std::size_t forest_samples) {
  ConstructionReport rep;
  const int r = g.params.r;
  const std::size_t part = g.params.n / static_cast<std::size_t>(r);
  rep.transversal_degree = std::pow(static_cast<double>(part), r - 1);
  rep.eq2_reference = std::pow(static_cast<double>(g.params.n) / (r * std::ldexp(1.0, g.ell)), r - 1);
  const auto exact_degree = static_cast<std::size_t>(std::llround(rep.transversal_degree));

  rep.sizes_ok = true;
  rep.d_degrees_exact = true;
  rep.c_degrees_ok = true;
  for (Layer l = 0; l <= r; ++l) {
    LayerStats s;
    const VertexSet members = g.layer_vertices(l);
    s.label = l == 0 ? "A" : (l == r ? "D" : "C" + std::to_string(l));
    s.count = members.size();
    std::size_t total = 0;
    s.min_degree = members.empty() ? 0 : degree(g.graph, members.front());
    for (Vertex v : members) {
      const std::size_t deg = degree(g.graph, v);
      total += deg;
      s.min_degree = std::min(s.min_degree, deg);
      if (l == r && deg != exact_degree) rep.d_degrees_exact = false;
      if (l > 0 && l < r && deg < exact_degree) rep.c_degrees_ok = false;
    }
    s.mean_degree = members.empty() ? 0.0 : static_cast<double>(total) / static_cast<double>(members.size());
    if (l > 0 && s.count != part) rep.sizes_ok = false;
    rep.layers.push_back(s);
  }

  for (const Edge& e : g.graph.edges()) {
    std::vector<int> per_layer(static_cast<std::size_t>(r + 1), 0);
    for (Vertex v : e) ++per_layer[static_cast<std::size_t>(g.layer[v])];
    const bool one_per_c = std::all_of(per_layer.begin() + 1, per_layer.begin() + r, [](int c) { return c == 1; });
    if (per_layer[0] == r) ++rep.edges_inside_a;
    else if (per_layer[0] == 0 && one_per_c && per_layer[static_cast<std::size_t>(r)] == 1) ++rep.edges_c_d;
    else if (per_layer[0] == 1 && one_per_c && per_layer[static_cast<std::size_t>(r)] == 0) ++rep.edges_a_c;
    else ++rep.edges_other;
  }
  rep.edge_types_ok = rep.edges_other == 0;

  const VertexSet a = g.layer_vertices(0);
  const Hypergraph ga = induced(g.graph, a);
  rep.a_edgeless = ga.num_edges() == 0;
  if (!a.empty()) {
    rep.a_min_degree_ratio = static_cast<double>(rep.layers[0].min_degree) / rep.eq2_reference;
    const IndependenceResult alpha = independence_number(ga, alpha_budget);
    rep.a_alpha = alpha.value;
    rep.a_alpha_exact = alpha.status == SearchStatus::complete;
    rep.a_independence_ratio = static_cast<double>(alpha.value) / static_cast<double>(a.size());

    std::mt19937_64 rng(derive_seed(g.params.seed, "forest-samples"));
    VertexSet pool(a.size());
    std::iota(pool.begin(), pool.end(), Vertex{0});
    const std::size_t size = std::min(g.params.L, a.size());
    rep.forest_samples = forest_samples;
    for (std::size_t s = 0; s < forest_samples; ++s) {
      if (!is_hyperforest(induced(ga, grow_subset(ga, pool, size, rng)))) ++rep.forest_failures;
    }
  }
  rep.theta_budget_ok = g.geo.budget_ok();
  rep.cap_diameter_ok = g.geo.diameter_ok();
  return rep;
}

std::string report_summary_csv(const LayeredHypergraph& g, const ConstructionReport& rep) {
  std::ostringstream out;
  out.precision(17);
  out << "key,value\n";
  out << "seed," << g.params.seed << "\n";
  out << "mode," << (g.params.mode == Mode::strict ? "strict" : "relaxed") << "\n";
  out << "r," << g.params.r << "\n";
  out << "n," << g.params.n << "\n";
  out << "k," << g.params.k << "\n";
  out << "epsilon," << g.params.epsilon << "\n";
  out << "beta," << g.params.beta << "\n";
  out << "theta," << g.params.theta << "\n";
  out << "L," << g.params.L << "\n";
  out << "f," << g.params.f << "\n";
  out << "vertices," << g.graph.num_vertices() << "\n";
  out << "edges," << g.graph.num_edges() << "\n";
  for (const auto& l : rep.layers) {
    out << "layer_" << l.label << "_count," << l.count << "\n";
    out << "layer_" << l.label << "_min_degree," << l.min_degree << "\n";
    out << "layer_" << l.label << "_mean_degree," << l.mean_degree << "\n";
  }
  out << "edges_inside_a," << rep.edges_inside_a << "\n";
  out << "edges_c_d," << rep.edges_c_d << "\n";
  out << "edges_a_c," << rep.edges_a_c << "\n";
  out << "edges_other," << rep.edges_other << "\n";
  out << "transversal_degree," << rep.transversal_degree << "\n";
  out << "eq2_reference," << rep.eq2_reference << "\n";
  out << "a_min_degree_ratio," << rep.a_min_degree_ratio << "\n";
  out << "a_alpha," << rep.a_alpha << "\n";
  out << "a_alpha_exact," << rep.a_alpha_exact << "\n";
  out << "a_independence_ratio," << rep.a_independence_ratio << "\n";
  out << "forest_samples," << rep.forest_samples << "\n";
  out << "forest_failures," << rep.forest_failures << "\n";
  out << "a_edgeless," << rep.a_edgeless << "\n";
  out << "sizes_ok," << rep.sizes_ok << "\n";
  out << "edge_types_ok," << rep.edge_types_ok << "\n";
  out << "d_degrees_exact," << rep.d_degrees_exact << "\n";
  out << "c_degrees_ok," << rep.c_degrees_ok << "\n";
  out << "theta_budget_ok," << rep.theta_budget_ok << "\n";
  out << "cap_diameter_ok," << rep.cap_diameter_ok << "\n";
  out << "h_prime_edges," << g.stats.h_prime_edges << "\n";
  out << "deleted_edges," << g.stats.deleted_edges << "\n";
  out << "v0_tuples," << g.stats.v0_tuples << "\n";
  return out.str();
}

std::string degree_csv(const LayeredHypergraph& g) {
  std::ostringstream out;
  out << "vertex,layer,degree\n";
  for (Vertex v = 0; v < g.graph.num_vertices(); ++v) {
    out << g.graph.name(v) << "," << g.layer_label(v) << "," << degree(g.graph, v) << "\n";
  }
  return out.str();
}

}  // namespace hyperthresh
