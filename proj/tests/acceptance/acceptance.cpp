// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "generators.hpp"
#include "hyperthresh/bundle.hpp"
#include "hyperthresh/construct.hpp"
#include "hyperthresh/recognize.hpp"
#include "hyperthresh/spheregeo.hpp"
#include "oracles.hpp"

namespace ht = hyperthresh;
using namespace hyperthresh::testing;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

int failures = 0;

void criterion(int id, const std::string& title, double limit_seconds, const std::function<void(Verdict&)>& body) {
  Verdict v;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(v);
  } catch (const std::exception& e) {
    v.require(false, std::string("exception: ") + e.what());
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_seconds > 0 && seconds >= limit_seconds) {
    v.require(false, "runtime " + std::to_string(seconds) + " s over the " + std::to_string(limit_seconds) + " s limit");
  }
  failures += !v.pass;
  std::printf("%s  %2d  %-44s %8.2f s  %s\n", v.pass ? "PASS" : "FAIL", id, title.c_str(), seconds,
              v.detail.str().c_str());
  std::fflush(stdout);
}

double chord(std::span<const double> p, std::span<const double> q) {
  double dot = 0;
  for (std::size_t i = 0; i < p.size(); ++i) dot += p[i] * q[i];
  return std::sqrt(std::max(0.0, 2.0 - 2.0 * dot));
}

bool edges_meet_outside(const ht::Edge& a, const ht::Edge& b, const ht::PartitionWitness& w) {
  for (ht::Vertex u : a) {
    if (w.part_of[u] != 0 && contains(b, u)) return true;
  }
  return false;
}

ht::FiberBundle complete_fiber_bundle(const ht::Hypergraph& base, std::size_t fiber_size) {
  ht::FiberBundle b;
  b.base = base;
  for (std::size_t i = 0; i < fiber_size; ++i) b.fiber_names.push_back("f" + std::to_string(i));
  b.fiber_r = 2;
  std::vector<ht::Edge> all;
  for (ht::Vertex i = 0; i < fiber_size; ++i) {
    for (ht::Vertex j = i + 1; j < fiber_size; ++j) all.push_back({i, j});
  }
  b.fibers.assign(base.num_vertices(), all);
  return b;
}

/// 8 vertices grown from a random edge through edges touching the current
/// set, topped up at random when growth stalls.
ht::VertexSet grown_subset(Rng& rng, const ht::Hypergraph& h, std::size_t size) {
  std::set<ht::Vertex> s;
  if (h.num_edges() > 0) {
    const auto& e = h.edge(static_cast<ht::EdgeId>(uniform(rng, 0, h.num_edges() - 1)));
    s.insert(e.begin(), e.end());
  }
  for (int attempts = 0; s.size() < size && attempts < 64; ++attempts) {
    const ht::Vertex anchor = *std::next(s.begin(), static_cast<long>(uniform(rng, 0, s.size() - 1)));
    const auto& inc = h.incident(anchor);
    if (inc.empty()) break;
    const auto& e = h.edge(inc[uniform(rng, 0, inc.size() - 1)]);
    for (ht::Vertex u : e) {
      if (s.size() < size) s.insert(u);
    }
  }
  while (s.size() < size) s.insert(static_cast<ht::Vertex>(uniform(rng, 0, h.num_vertices() - 1)));
  return {s.begin(), s.end()};
}

/// Adds x b c and y b c' for x, y in different edges of one V_1 tree, so the
/// two new cross-edges meet at b outside V_1. Returns nullopt when the shape
/// is unavailable.
std::optional<ht::Hypergraph> plant_strong_violation(Rng& rng, const ht::Hypergraph& f, const ht::PartitionWitness& w) {
  const auto v2 = w.part(1), v3 = w.part(2);
  if (v2.empty() || v3.size() < 2) return std::nullopt;
  std::vector<std::pair<ht::Vertex, ht::Vertex>> candidates;
  const auto v1 = w.part(0);
  const auto forest = ht::induced(f, v1);
  const auto labels = brute_component_labels(forest.num_vertices(), forest.edges());
  for (std::size_t i = 0; i < v1.size(); ++i) {
    for (std::size_t j = i + 1; j < v1.size(); ++j) {
      if (labels[i] != labels[j]) continue;
      const bool shared = std::any_of(forest.edges().begin(), forest.edges().end(), [&](const ht::Edge& e) {
        return contains(e, static_cast<ht::Vertex>(i)) && contains(e, static_cast<ht::Vertex>(j));
      });
      if (!shared) candidates.emplace_back(v1[i], v1[j]);
    }
  }
  if (candidates.empty()) return std::nullopt;
  const auto [x, y] = candidates[uniform(rng, 0, candidates.size() - 1)];
  const ht::Vertex b = v2[uniform(rng, 0, v2.size() - 1)];
  const std::size_t k = uniform(rng, 0, v3.size() - 1);
  const ht::Vertex c1 = v3[k], c2 = v3[(k + 1) % v3.size()];
  std::set<ht::Edge> edges(f.edges().begin(), f.edges().end());
  for (ht::Edge e : {ht::Edge{x, b, c1}, ht::Edge{y, b, c2}}) {
    std::sort(e.begin(), e.end());
    edges.insert(e);
  }
  return ht::Hypergraph::numbered(3, f.num_vertices(), {edges.begin(), edges.end()});
}

}  // namespace

int main() {
  std::printf("acceptance suite: 13 criteria\n");

  criterion(1, "F-star is unifoliate but not strong", 5.0, [](Verdict& v) {
    const auto f = fstar();
    const auto c = ht::classify(f);
    v.require(c.cls == ht::Classification::Class::unifoliate_only, "class " + ht::to_string(c.cls));
    v.require(c.strong_violation.has_value(), "no strong-violation certificate");
    if (!c.strong_violation || !c.witness) return;
    const auto& s = *c.strong_violation;
    const auto& w = *c.witness;
    const std::set<std::string> forest_triangle{"a1", "a2", "a3"};
    v.require(forest_triangle.count(f.name(s.x)) && forest_triangle.count(f.name(s.y)) && s.x != s.y,
              "pair " + f.name(s.x) + "," + f.name(s.y));
    v.require(!s.path.empty(), "empty path");
    if (s.path.empty()) return;
    v.require(contains(f.edge(s.path.front()), s.x) && contains(f.edge(s.path.back()), s.y), "path endpoints");
    for (std::size_t i = 0; i < s.path.size(); ++i) {
      const auto& e = f.edge(s.path[i]);
      const bool cross = std::any_of(e.begin(), e.end(), [&](ht::Vertex u) { return w.part_of[u] != 0; });
      v.require(cross, "path uses a forest edge");
      if (i > 0) v.require(edges_meet_outside(f.edge(s.path[i - 1]), e, w), "consecutive edges meet only in V_1");
    }
    v.detail << "certificate " << f.name(s.x) << " ~ " << f.name(s.y) << " via " << s.path.size() << " cross-edges";
  });

  criterion(2, "recognizers match partition oracles", 600.0, [](Verdict& v) {
    Rng rng(2002);
    std::size_t unif = 0, strong = 0;
    const int instances = 600;
    for (int i = 0; i < instances; ++i) {
      const auto f = random_hypergraph(rng, 3, uniform(rng, 3, 6), uniform(rng, 0, 5));
      const bool want_u = brute_first_partition(f, [&](const auto& p) { return brute_unifoliate_witness(f, p); })
                              .has_value();
      const bool want_s = brute_first_partition(f, [&](const auto& p) {
                            return brute_unifoliate_witness(f, p) && brute_strong_witness(f, p);
                          }).has_value();
      const auto got_u = ht::is_unifoliate(f);
      const auto got_s = ht::is_strong_unifoliate(f);
      v.require(!got_u.exhausted() && !got_s.exhausted(), "budget exhausted on instance " + std::to_string(i));
      v.require(got_u.found() == want_u, "is_unifoliate disagrees on instance " + std::to_string(i));
      v.require(got_s.found() == want_s, "is_strong_unifoliate disagrees on instance " + std::to_string(i));
      unif += want_u;
      strong += want_s;
    }
    v.detail << instances << " instances, " << unif << " unifoliate, " << strong << " strong";
  });

  criterion(3, "path search matches shadow components", 0, [](Verdict& v) {
    Rng rng(3003);
    std::size_t checked = 0, strong = 0;
    while (checked < 400) {
      auto [f, w] = random_witnessed(rng, 3, uniform(rng, 4, 9), 9, 5);
      if (checked % 2 == 1) {
        auto planted = plant_strong_violation(rng, f, w);
        if (!planted) continue;
        f = std::move(*planted);
      }
      if (!ht::check_unifoliate_witness(f, w).ok) continue;
      const bool by_path = ht::check_strong_witness(f, w).ok;
      v.require(by_path == ht::strong_by_shadow_components(f, w), "disagreement on instance " + std::to_string(checked));
      v.require(by_path == brute_strong_witness(f, w.part_of), "oracle disagreement on instance " + std::to_string(checked));
      strong += by_path;
      ++checked;
    }
    v.detail << checked << " witnessed instances, " << strong << " strong";
  });

  criterion(4, "near-or-far holds on satisfying triples", 120.0, [](Verdict& v) {
    std::size_t total = 0;
    for (int d : {3, 5, 8}) {
      std::mt19937_64 rng(ht::derive_seed(4004, "d" + std::to_string(d)));
      std::uniform_real_distribution<double> scale(1e-6, 0.1);
      std::size_t eligible = 0, bad = 0;
      while (eligible < 100'000) {
        double a = scale(rng);
        if (!(a < 0.1)) continue;
        const auto t = ht::near_or_far_trial(d, a, rng);
        const double xy = chord(t.x, t.y), yz = chord(t.y, t.z), xz = chord(t.x, t.z);
        const auto near_or_far = [&](double rho) { return rho < a || rho > 2.0 - a; };
        if (!near_or_far(xy) || !near_or_far(yz)) continue;
        ++eligible;
        const double band = 4.0 * std::sqrt(a);
        bad += !(xz < band + 1e-9 || xz > 2.0 - band - 1e-9);
      }
      v.require(bad == 0, std::to_string(bad) + " failures at d=" + std::to_string(d));
      total += eligible;
    }
    v.detail << total << " hypothesis-satisfying triples over d = 3, 5, 8";
  });

  criterion(5, "cap measure against the closed form", 0, [](Verdict& v) {
    const double hemi = ht::cap_measure(3, std::sqrt(2.0), 1'000'000, 5005);
    v.require(std::abs(hemi - 0.5) <= 0.01, "hemisphere estimate " + std::to_string(hemi));
    double worst = 0;
    for (int i = 1; i <= 10; ++i) {
      const double radius = 0.19 * i;
      const auto est = ht::cap_estimate(3, radius, 200'000, ht::derive_seed(5005, "r" + std::to_string(i)));
      const double exact = exact_cap_measure(3, radius);
      const double z = est.std_error > 0 ? std::abs(est.mean - exact) / est.std_error : 0.0;
      worst = std::max(worst, z);
      v.require(std::abs(est.mean - exact) <= 3.0 * est.std_error + 1e-12, "radius " + std::to_string(radius));
    }
    v.detail << "hemisphere " << hemi << ", worst deviation " << worst << " SE over 10 radii";
  });

  criterion(6, "construction degrees at r = 3, n = 30", 60.0, [](Verdict& v) {
    ht::ConstructionParams p;
    p.r = 3;
    p.n = 30;
    p.seed = 6006;
    const auto g = ht::build_g(std::nullopt, p);
    std::size_t d_count = 0, c_count = 0, c_min = SIZE_MAX;
    for (ht::Vertex u = 0; u < g.graph.num_vertices(); ++u) {
      const std::size_t deg = degree_by_scan(g.graph, u);
      if (g.layer[u] == p.r) {
        ++d_count;
        v.require(deg == 100, "D vertex " + g.graph.name(u) + " has degree " + std::to_string(deg));
      } else if (g.layer[u] >= 1) {
        ++c_count;
        c_min = std::min(c_min, deg);
        v.require(deg >= 100, "C vertex " + g.graph.name(u) + " has degree " + std::to_string(deg));
      }
    }
    v.require(d_count == 10 && c_count == 20, "layer sizes");
    v.detail << d_count << " D vertices of degree 100, C minimum degree " << c_min;
  });

  criterion(7, "short-cycle deletion leaves 8-sets forests", 0, [](Verdict& v) {
    const auto sample = ht::sample_points(12, 3, 7007);
    const auto hp = ht::build_h_prime(sample, 3, 0.5);
    const auto blown = ht::blowup(hp.graph, 2);
    const double p = std::min(1.0, 1800.0 / static_cast<double>(std::max<std::size_t>(1, blown.graph.num_edges())));
    const auto sparse = ht::sparsen(blown.graph, p, 7007);
    v.require(sparse.num_edges() <= 2000, "sparsened H' has " + std::to_string(sparse.num_edges()) + " edges");
    v.require(sparse.num_edges() >= 500, "sparsened H' too small to be meaningful");
    const auto cleaned = ht::delete_short_cycles(sparse, 8);
    Rng rng(7007);
    std::size_t bad_after = 0, bad_before = 0, nonempty = 0;
    for (int i = 0; i < 10'000; ++i) {
      const auto s = grown_subset(rng, cleaned.graph, 8);
      const auto sub = ht::induced(cleaned.graph, s);
      nonempty += sub.num_edges() > 0;
      bad_after += !brute_linear_hyperforest(sub);
      bad_before += !brute_linear_hyperforest(ht::induced(sparse, grown_subset(rng, sparse, 8)));
    }
    v.require(bad_after == 0, std::to_string(bad_after) + " sampled 8-sets are not linear hyperforests");
    v.detail << hp.graph.num_edges() << " H' edges, " << sparse.num_edges() << " after blowup and sparsening, "
             << cleaned.deleted.size() << " deleted; " << nonempty << " of 10000 samples carry edges; "
             << bad_before << " samples failed before deletion";
  });

  criterion(8, "degeneracy colorings are proper with d+1 colors", 0, [](Verdict& v) {
    Rng rng(8008);
    std::size_t colored = 0, max_used = 0;
    while (colored < 1000) {
      const std::size_t n = uniform(rng, 3, 12);
      const auto h = random_dense(rng, 3, n, 0.05 + 0.05 * static_cast<double>(uniform(rng, 0, 12)));
      const std::size_t d = uniform(rng, 0, 6);
      const auto cert = ht::is_d_degenerate(h, d);
      if (!cert) continue;
      const auto c = ht::degeneracy_color(h, *cert);
      bool proper = c.is_complete();
      for (const auto& e : h.edges()) {
        proper = proper && std::any_of(e.begin() + 1, e.end(), [&](ht::Vertex u) { return c.color[u] != c.color[e[0]]; });
      }
      v.require(proper, "improper coloring on instance " + std::to_string(colored));
      v.require(c.num_colors() <= d + 1, "too many colors on instance " + std::to_string(colored));
      max_used = std::max<std::size_t>(max_used, c.num_colors());
      ++colored;
    }
    v.detail << colored << " certified instances, up to " << max_used << " colors";
  });

  criterion(9, "forests embed into non-degenerate hosts", 0, [](Verdict& v) {
    Rng rng(9009);
    std::size_t embedded = 0, edges = 0;
    for (int attempt = 0; attempt < 20'000 && embedded < 300; ++attempt) {
      const std::size_t n = uniform(rng, 5, 9);
      const auto h = random_dense(rng, 3, n, 0.5 + 0.05 * static_cast<double>(uniform(rng, 0, 10)));
      // Best of a few draws, so forests with edges dominate.
      const std::size_t size = uniform(rng, 1, std::min<std::size_t>(n - 1, 7));
      auto t = random_linear_hyperforest(rng, 3, size);
      for (int k = 0; k < 4; ++k) {
        auto other = random_linear_hyperforest(rng, 3, size);
        if (other.num_edges() > t.num_edges()) t = std::move(other);
      }
      if (brute_degenerate(h, t.num_vertices())) continue;
      const auto e = ht::embed_linear_hyperforest(h, t);
      bool ok = e.map.size() == t.num_vertices() && std::set<ht::Vertex>(e.map.begin(), e.map.end()).size() == e.map.size();
      for (const auto& te : t.edges()) {
        ht::Edge image;
        for (ht::Vertex u : te) image.push_back(e.map[u]);
        std::sort(image.begin(), image.end());
        ok = ok && h.has_edge(image);
      }
      v.require(ok, "unverified embedding on instance " + std::to_string(embedded));
      edges += t.num_edges();
      ++embedded;
    }
    v.require(embedded >= 200, "only " + std::to_string(embedded) + " eligible instances");
    v.detail << embedded << " instances, " << edges << " forest edges embedded";
  });

  criterion(10, "copy search matches injection enumeration", 0, [](Verdict& v) {
    Rng rng(10010);
    std::size_t found = 0;
    const int pairs = 400;
    for (int i = 0; i < pairs; ++i) {
      const auto h = random_hypergraph(rng, 3, uniform(rng, 3, 7), uniform(rng, 0, 16));
      const auto f = random_hypergraph(rng, 3, uniform(rng, 3, 6), uniform(rng, 0, 4));
      const auto got = ht::contains_copy(h, f);
      const bool want = brute_copy(h, f).has_value();
      v.require(!got.exhausted() && got.found() == want, "disagreement on pair " + std::to_string(i));
      if (got.found()) v.require(ht::verify_embedding(h, f, *got.value), "bad embedding on pair " + std::to_string(i));
      found += want;
    }
    v.detail << pairs << " pairs, " << found << " with a copy";
  });

  criterion(11, "complete-fiber dim equals matching number", 0, [](Verdict& v) {
    Rng rng(11011);
    std::size_t yes = 0;
    const int bases = 150;
    for (int i = 0; i < bases; ++i) {
      const auto base = random_hypergraph(rng, 3, uniform(rng, 3, 10), uniform(rng, 0, 7));
      const std::size_t t = uniform(rng, 1, 3);
      const auto got = ht::dim_at_least(complete_fiber_bundle(base, 4), ht::KSpec{2, 2}, t);
      const bool want = brute_matching_number(base) >= t;
      v.require(!got.exhausted() && got.found() == want, "disagreement on base " + std::to_string(i));
      yes += want;
    }
    v.detail << bases << " bases, " << yes << " with the matching";
  });

  criterion(12, "color-or-embed is sound", 0, [](Verdict& v) {
    Rng rng(12012);
    std::size_t done = 0, embeddings = 0, colorings = 0, bounded = 0, certified_free = 0;
    for (int attempt = 0; attempt < 5000 && done < 80; ++attempt) {
      auto [g, w] = random_witnessed(rng, 3, uniform(rng, 3, 6));
      if (!ht::check_unifoliate_witness(g, w).ok || !ht::check_strong_witness(g, w).ok) continue;
      const auto h = random_dense(rng, 3, uniform(rng, 4, 8), 0.15 + 0.07 * static_cast<double>(uniform(rng, 0, 10)));
      ht::ColorOrEmbedOptions opt;
      opt.part_size_cap = 1;
      const auto res = ht::color_or_embed(h, g, w, opt);
      const bool free = !brute_copy(h, g).has_value();
      certified_free += free && !ht::contains_copy(h, g).found();
      v.require(res.embedding.has_value() != res.coloring.has_value(), "needs exactly one outcome");
      if (res.embedding) {
        v.require(!free, "embedding into a G-free host");
        v.require(ht::verify_embedding(h, g, *res.embedding), "embedding fails verification");
        ++embeddings;
      } else if (res.coloring) {
        v.require(res.coloring->is_complete() && res.coloring->is_proper(h), "improper coloring");
        if (res.tree_vertices >= 2) {
          const auto tree = ht::induced(g, w.part(0));
          const std::size_t chi = brute_chromatic(ht::t_bundle(h, tree).base);
          v.require(res.colors <= (res.tree_vertices + 1) * chi, "color bound exceeded");
          ++bounded;
        }
        ++colorings;
      }
      if (free) v.require(res.coloring.has_value(), "G-free host was not colored");
      ++done;
    }
    v.require(done >= 50, "only " + std::to_string(done) + " instances");
    v.detail << done << " instances: " << embeddings << " embeddings, " << colorings << " colorings (" << bounded
             << " checked against (|V(T)|+1) chi(B)), " << certified_free << " certified G-free";
  });

  criterion(13, "built G avoids K4 (spot check)", 0, [](Verdict& v) {
    const auto f = k4();
    v.require(ht::classify(f).cls == ht::Classification::Class::not_unifoliate, "K4 not certified NotUnifoliate");
    std::size_t relaxed_copies = 0, max_a = 0;
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
      ht::ConstructionParams p;
      p.r = 3;
      p.n = 45;
      p.seed = seed;
      const auto g = ht::build_g(f, p);
      const std::size_t a = g.layer_vertices(0).size();
      max_a = std::max(max_a, a);
      v.require(a <= 200, "|A| = " + std::to_string(a));
      const auto copy = ht::contains_copy(g.graph, f);
      v.require(!copy.exhausted(), "copy search exhausted");
      if (copy.found()) {
        ++relaxed_copies;
        std::ostringstream where;
        for (ht::Vertex u : copy.value->map) where << g.graph.name(u) << ' ';
        std::printf("      relaxed seed %llu: K4 copy at %s(reported, not a failure)\n",
                    static_cast<unsigned long long>(seed), where.str().c_str());
      }
    }
    ht::ConstructionParams strict;
    strict.r = 3;
    strict.n = 45;
    strict.seed = 13;
    strict.mode = ht::Mode::strict;
    std::string strict_note;
    try {
      const auto g = ht::build_g(f, strict);
      const auto copy = ht::contains_copy(g.graph, f);
      v.require(!copy.exhausted() && !copy.found(), "strict construction contains K4");
      strict_note = "strict build (theta " + std::to_string(g.params.theta) + ") K4-free";
    } catch (const ht::InfeasibleParameters& e) {
      strict_note = std::string("strict build infeasible: ") + e.what();
    }
    v.detail << "6 relaxed builds with |A| <= " << max_a << ", " << relaxed_copies << " with a K4 copy; " << strict_note
             << "; relaxed mode carries no freeness guarantee";
  });

  std::printf("%d of 13 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
