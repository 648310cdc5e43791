#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "fixtures.hpp"
#include "generators.hpp"
#include "hyperthresh/cycles.hpp"
#include "hyperthresh/hypergraph.hpp"
#include "hyperthresh/io.hpp"
#include "oracles.hpp"

namespace ht = hyperthresh;
using namespace hyperthresh::testing;

namespace {

std::set<CycleKey> as_keys(const std::vector<ht::Cycle>& cycles) {
  std::set<CycleKey> out;
  for (const auto& c : cycles) out.insert(normal_form(c.vertices, c.edges));
  return out;
}

ht::Hypergraph two_edges(const ht::Edge& a, const ht::Edge& b, std::size_t n) {
  return ht::Hypergraph::numbered(3, n, {a, b});
}

}  // namespace

TEST(Hypergraph, RejectsMalformedEdges) {
  EXPECT_THROW(ht::Hypergraph::numbered(3, 4, {{0, 1}}), ht::InputError);
  EXPECT_THROW(ht::Hypergraph::numbered(3, 4, {{0, 1, 1}}), ht::InputError);
  EXPECT_THROW(ht::Hypergraph::numbered(3, 4, {{0, 1, 7}}), ht::InputError);
  EXPECT_THROW(ht::Hypergraph::numbered(3, 4, {{0, 1, 2}, {2, 1, 0}}), ht::InputError);
  EXPECT_THROW(ht::Hypergraph::from_names(3, {"a", "a", "b"}, {}), ht::InputError);
  EXPECT_THROW(ht::Hypergraph::from_names(3, {"a", "b", "c"}, {{"a", "b", "z"}}), ht::InputError);
}

TEST(Hypergraph, EdgeOrderDoesNotMatter) {
  auto a = ht::Hypergraph::numbered(3, 5, {{2, 3, 4}, {0, 1, 2}});
  auto b = ht::Hypergraph::numbered(3, 5, {{0, 2, 1}, {4, 3, 2}});
  EXPECT_EQ(a, b);
}

TEST(Degree, StarExample) {
  const auto f = fstar();
  EXPECT_EQ(ht::degree(f, "a1"), 2u);
  EXPECT_EQ(ht::min_degree(f), 1u);
  EXPECT_EQ(ht::degree(f, "a3"), 1u);
}

TEST(Degree, UnknownVertexIsNamed) {
  const auto f = fstar();
  try {
    (void)ht::degree(f, "zz");
    FAIL();
  } catch (const ht::InputError& e) {
    EXPECT_NE(std::string(e.what()).find("zz"), std::string::npos);
  }
}

TEST(Degree, EdgelessAndSingleEdge) {
  EXPECT_EQ(ht::degree(edgeless(3, 5), ht::Vertex{2}), 0u);
  EXPECT_EQ(ht::min_degree(single_edge(4)), 1u);
  EXPECT_THROW(ht::min_degree(edgeless(3, 0)), ht::InputError);
}

TEST(Degree, MatchesScanOnRandomInputs) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = uniform(rng, 3, 8);
    const auto h = random_hypergraph(rng, 3, n, uniform(rng, 0, 10));
    std::size_t low = SIZE_MAX;
    for (ht::Vertex v = 0; v < n; ++v) {
      EXPECT_EQ(ht::degree(h, v), degree_by_scan(h, v));
      low = std::min(low, degree_by_scan(h, v));
    }
    EXPECT_EQ(ht::min_degree(h), low);
  }
}

TEST(Induced, StarExample) {
  const auto f = fstar();
  const auto sub = ht::induced(f, ht::resolve(f, {"a1", "a2", "a3", "a4"}));
  ASSERT_EQ(sub.num_edges(), 1u);
  EXPECT_EQ(sub.edge_names(0), (std::vector<std::string>{"a1", "a2", "a3"}));
  EXPECT_EQ(ht::induced(f, {}).num_vertices(), 0u);
  EXPECT_THROW(ht::induced(f, {0, 99}), ht::InputError);
}

TEST(Induced, MatchesFilterOnRandomInputs) {
  Rng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = uniform(rng, 3, 8);
    const auto h = random_hypergraph(rng, 3, n, uniform(rng, 0, 12));
    ht::VertexSet x;
    for (ht::Vertex v = 0; v < n; ++v) {
      if (coin(rng, 0.6)) x.push_back(v);
    }
    const auto sub = ht::induced(h, x);
    std::set<std::vector<std::string>> expected, got;
    for (ht::EdgeId e = 0; e < h.num_edges(); ++e) {
      const auto& edge = h.edge(e);
      if (std::all_of(edge.begin(), edge.end(), [&](ht::Vertex v) { return std::binary_search(x.begin(), x.end(), v); })) {
        expected.insert(h.edge_names(e));
      }
    }
    for (ht::EdgeId e = 0; e < sub.num_edges(); ++e) got.insert(sub.edge_names(e));
    EXPECT_EQ(got, expected);
    EXPECT_EQ(sub.num_vertices(), x.size());
  }
}

TEST(Components, Examples) {
  EXPECT_EQ(ht::components(fstar()).size(), 1u);
  EXPECT_EQ(ht::components(edgeless(3, 4)).size(), 4u);
  EXPECT_EQ(ht::components(two_edges({0, 1, 2}, {3, 4, 5}, 6)).size(), 2u);
}

TEST(Components, MatchesMergeOracle) {
  Rng rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = uniform(rng, 3, 9);
    const auto h = random_hypergraph(rng, 3, n, uniform(rng, 0, 4));
    const auto label = brute_component_labels(n, h.edges());
    EXPECT_EQ(ht::components(h).size(), std::set<ht::Vertex>(label.begin(), label.end()).size());
    for (const auto& comp : ht::components(h)) {
      for (ht::Vertex v : comp) EXPECT_EQ(label[v], label[comp.front()]);
    }
  }
}

TEST(Cycles, TwoCycleFromSharedPair) {
  const auto h = two_edges({0, 1, 2}, {1, 2, 3}, 4);
  const auto cycles = ht::enumerate_cycles(h, 4);
  const ht::Cycle expected = ht::canonical({{1, 2}, {0, 1}});
  EXPECT_NE(std::find(cycles.begin(), cycles.end(), expected), cycles.end());
  EXPECT_TRUE(ht::enumerate_cycles(single_edge(3), 5).empty());
}

TEST(Cycles, StarFiveCycle) {
  const auto f = fstar();
  const auto v = [&](const char* name) { return f.index_of(name); };
  const auto e = [&](std::vector<std::string> names) {
    std::vector<ht::Vertex> idx;
    for (const auto& n : names) idx.push_back(f.index_of(n));
    std::sort(idx.begin(), idx.end());
    return *f.edge_id(idx);
  };
  const ht::Cycle five{{v("a1"), v("a2"), v("b2"), v("a4"), v("b1")},
                       {e({"a1", "a2", "a3"}), e({"a2", "b2", "c2"}), e({"a4", "b2", "c1"}), e({"a4", "b1", "c2"}),
                        e({"a1", "b1", "c1"})}};
  ASSERT_TRUE(ht::is_cycle(f, five));
  const auto cycles = ht::enumerate_cycles(f, 5);
  EXPECT_NE(std::find(cycles.begin(), cycles.end(), ht::canonical(five)), cycles.end());
  EXPECT_EQ(as_keys(cycles), brute_cycles(f, 5));
}

TEST(Cycles, CanonicalFormIsStable) {
  Rng rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    const auto h = random_hypergraph(rng, 3, uniform(rng, 4, 6), uniform(rng, 2, 5));
    for (const auto& c : ht::enumerate_cycles(h, 4)) {
      EXPECT_TRUE(ht::is_cycle(h, c));
      EXPECT_EQ(ht::canonical(c), c);
      ht::Cycle rotated = c;
      std::rotate(rotated.vertices.begin(), rotated.vertices.begin() + 1, rotated.vertices.end());
      std::rotate(rotated.edges.begin(), rotated.edges.begin() + 1, rotated.edges.end());
      EXPECT_EQ(ht::canonical(rotated), c);
    }
  }
}

TEST(Cycles, AgreeWithSequenceOracle) {
  Rng rng(15);
  for (int trial = 0; trial < 500; ++trial) {
    const auto h = random_hypergraph(rng, 3, uniform(rng, 3, 6), uniform(rng, 0, 5));
    const std::size_t max_t = std::max<std::size_t>(2, h.num_edges());
    EXPECT_EQ(as_keys(ht::enumerate_cycles(h, max_t)), brute_cycles(h, max_t)) << ht::dump(ht::to_json(h));
  }
}

TEST(Cycles, SpanFilterMatchesUnionSize) {
  Rng rng(16);
  for (int trial = 0; trial < 100; ++trial) {
    const auto h = random_hypergraph(rng, 3, uniform(rng, 4, 7), uniform(rng, 2, 6));
    ht::CycleFilter filter;
    filter.max_length = h.num_edges();
    filter.max_span = 5;
    if (filter.max_length < 2) continue;
    std::size_t via_filter = 0;
    ht::for_each_cycle(h, filter, [&](const ht::Cycle& c) {
      EXPECT_LE(ht::cycle_span(h, c).size(), 5u);
      ++via_filter;
      return true;
    });
    std::size_t direct = 0;
    for (const auto& c : ht::enumerate_cycles(h, filter.max_length)) direct += ht::cycle_span(h, c).size() <= 5;
    EXPECT_EQ(via_filter, direct);
  }
}

TEST(Linear, Examples) {
  EXPECT_TRUE(ht::is_linear(two_edges({0, 1, 2}, {2, 3, 4}, 5)));
  EXPECT_FALSE(ht::is_linear(two_edges({0, 1, 2}, {1, 2, 3}, 4)));
  EXPECT_TRUE(ht::is_linear(fstar()));
}

TEST(Linear, EquivalentToNoTwoCycles) {
  Rng rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const auto h = random_hypergraph(rng, 3, uniform(rng, 3, 7), uniform(rng, 0, 6));
    EXPECT_EQ(ht::is_linear(h), ht::enumerate_cycles(h, 2).empty());
    EXPECT_EQ(ht::is_linear(h), brute_linear(h));
  }
}

TEST(Hyperforest, Examples) {
  EXPECT_TRUE(ht::is_hyperforest(single_edge(3)));
  EXPECT_TRUE(ht::is_hypertree(single_edge(3)));
  EXPECT_FALSE(ht::is_hyperforest(two_edges({0, 1, 2}, {1, 2, 3}, 4)));
  EXPECT_FALSE(ht::is_hyperforest(fstar()));
  EXPECT_TRUE(ht::is_hyperforest(two_edges({0, 1, 2}, {3, 4, 5}, 6)));
  EXPECT_FALSE(ht::is_hypertree(two_edges({0, 1, 2}, {3, 4, 5}, 6)));
}

TEST(Hyperforest, AgreesWithCycleOracleAndTreeImpliesConnected) {
  Rng rng(18);
  for (int trial = 0; trial < 300; ++trial) {
    const auto h = random_hypergraph(rng, 3, uniform(rng, 3, 7), uniform(rng, 0, 5));
    EXPECT_EQ(ht::is_hyperforest(h), brute_cycles(h, std::max<std::size_t>(2, h.num_edges())).empty());
    if (ht::is_hypertree(h)) {
      EXPECT_TRUE(ht::is_hyperforest(h));
      EXPECT_EQ(ht::components(h).size(), 1u);
    }
  }
}

TEST(Independence, Predicates) {
  const auto f = fstar();
  EXPECT_TRUE(ht::is_independent(f, ht::resolve(f, {"b1", "b2", "c1", "c2"})));
  EXPECT_FALSE(ht::is_strong_independent(f, ht::resolve(f, {"b1", "c1"})));
  for (ht::Vertex v = 0; v < f.num_vertices(); ++v) EXPECT_TRUE(ht::is_strong_independent(f, {v}));
  EXPECT_THROW(ht::is_independent(f, {42}), ht::InputError);
}

TEST(Independence, StrongImpliesIndependent) {
  Rng rng(19);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = uniform(rng, 3, 8);
    const auto h = random_hypergraph(rng, 3, n, uniform(rng, 0, 10));
    ht::VertexSet x;
    for (ht::Vertex v = 0; v < n; ++v) {
      if (coin(rng, 0.5)) x.push_back(v);
    }
    if (ht::is_strong_independent(h, x)) {
      EXPECT_TRUE(ht::is_independent(h, x));
    }
  }
}

TEST(Independence, NumberExamples) {
  EXPECT_EQ(ht::independence_number(k4()).value, 2u);
  EXPECT_EQ(ht::independence_number(edgeless(3, 6)).value, 6u);
  const auto f = fstar();
  const auto res = ht::independence_number(f);
  EXPECT_EQ(res.value, brute_independence(f));
  EXPECT_EQ(res.value, 5u);
  EXPECT_TRUE(ht::is_independent(f, res.certificate));
  EXPECT_EQ(res.certificate.size(), res.value);
}

TEST(Independence, MatchesSubsetOracleAndIsMonotone) {
  Rng rng(20);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = uniform(rng, 3, 10);
    const auto h = random_hypergraph(rng, 3, n, uniform(rng, 0, 20));
    const auto res = ht::independence_number(h);
    ASSERT_EQ(res.status, ht::SearchStatus::complete);
    EXPECT_EQ(res.value, brute_independence(h));
    EXPECT_TRUE(ht::is_independent(h, res.certificate));
    ht::VertexSet x;
    for (ht::Vertex v = 0; v < n; ++v) {
      if (coin(rng, 0.5)) x.push_back(v);
    }
    EXPECT_LE(ht::independence_number(ht::induced(h, x)).value, res.value);
  }
}

TEST(Independence, BudgetReportsLowerBound) {
  const auto h = complete(3, 12);
  const auto res = ht::independence_number(h, 3);
  EXPECT_EQ(res.status, ht::SearchStatus::budget_exhausted);
  EXPECT_LE(res.value, 2u);
  EXPECT_TRUE(ht::is_independent(h, res.certificate));
}

TEST(GreedyColor, Examples) {
  const auto e = edgeless(3, 4);
  std::vector<ht::Vertex> order{3, 1, 0, 2};
  const auto c0 = ht::greedy_color(e, order);
  EXPECT_TRUE(std::all_of(c0.color.begin(), c0.color.end(), [](std::uint32_t c) { return c == 1; }));

  const auto s = single_edge(3);
  const auto c1 = ht::greedy_color(s, {2, 0, 1});
  EXPECT_EQ(c1.color[2], 1u);
  EXPECT_EQ(c1.color[0], 1u);
  EXPECT_EQ(c1.color[1], 2u);

  const auto c2 = ht::greedy_color(k4(), {0, 1, 2, 3});
  EXPECT_TRUE(c2.is_proper(k4()));
  EXPECT_LE(c2.num_colors(), 3u);

  EXPECT_THROW(ht::greedy_color(k4(), {0, 1, 1, 3}), ht::InputError);
  EXPECT_THROW(ht::greedy_color(k4(), {0, 1, 2}), ht::InputError);
}

TEST(GreedyColor, ProperForEveryOrder) {
  Rng rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = uniform(rng, 3, 9);
    const auto h = random_hypergraph(rng, 3, n, uniform(rng, 0, 25));
    std::vector<ht::Vertex> order(n);
    std::iota(order.begin(), order.end(), ht::Vertex{0});
    std::shuffle(order.begin(), order.end(), rng);
    const auto c = ht::greedy_color(h, order);
    EXPECT_TRUE(c.is_complete());
    EXPECT_TRUE(c.is_proper(h));
  }
}

TEST(Chromatic, Examples) {
  EXPECT_EQ(ht::chromatic_number(edgeless(3, 4), 5).value, 1u);
  const auto k = ht::chromatic_number(k4(), 5);
  EXPECT_EQ(k.kind, ht::ChromaticResult::Kind::exact);
  EXPECT_EQ(k.value, 2u);
  EXPECT_TRUE(k.coloring.is_proper(k4()));
  EXPECT_EQ(ht::chromatic_number(fstar(), 5).value, 2u);
}

TEST(Chromatic, ExceedsLimit) {
  const auto h = complete(3, 5);  // needs 3 colors
  const auto res = ht::chromatic_number(h, 2);
  EXPECT_EQ(res.kind, ht::ChromaticResult::Kind::exceeds_limit);
}

TEST(Chromatic, MatchesAssignmentOracle) {
  Rng rng(22);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = uniform(rng, 1, 7);
    const auto h = n >= 3 ? random_hypergraph(rng, 3, n, uniform(rng, 0, 30)) : edgeless(3, n);
    const auto res = ht::chromatic_number(h, 8);
    ASSERT_EQ(res.kind, ht::ChromaticResult::Kind::exact);
    EXPECT_EQ(res.value, brute_chromatic(h));
    EXPECT_TRUE(res.coloring.is_proper(h));
    EXPECT_EQ(res.value == 1, h.num_edges() == 0);
  }
}

TEST(Json, RoundTripIsByteStable) {
  Rng rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const auto h = random_hypergraph(rng, 3, uniform(rng, 3, 8), uniform(rng, 0, 10));
    const auto text = ht::dump(ht::to_json(h));
    const auto back = ht::hypergraph_from_json(ht::Json::parse(text));
    EXPECT_EQ(back, h);
    EXPECT_EQ(ht::dump(ht::to_json(back)), text);
  }
}

TEST(Json, RejectsBadInput) {
  EXPECT_THROW(ht::hypergraph_from_json(ht::Json::parse(R"({"r":1,"vertices":["a"],"edges":[["a"]]})")),
               ht::InputError);
  EXPECT_THROW(ht::hypergraph_from_json(ht::Json::parse(R"({"vertices":[],"edges":[]})")), ht::InputError);
  EXPECT_THROW(
      ht::hypergraph_from_json(ht::Json::parse(R"({"r":2,"vertices":["a","b"],"edges":[["a","b"],["b","a"]]})")),
      ht::InputError);
  EXPECT_THROW(ht::hypergraph_from_json(ht::Json::parse(R"({"r":2,"vertices":["a","b"],"edges":[["a","c"]]})")),
               ht::InputError);
}

TEST(Json, ColoringRoundTrip) {
  const auto f = fstar();
  const auto res = ht::chromatic_number(f, 4);
  const auto back = ht::coloring_from_json(f, ht::coloring_to_json(f, res.coloring));
  EXPECT_EQ(back.color, res.coloring.color);
}
