#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace mustpath;
using namespace fixtures;

namespace {

using LabelPairs = std::set<std::pair<std::string, std::string>>;

LabelPairs labelled(const Graph& g, const std::set<std::pair<VertexId, VertexId>>& pairs) {
  LabelPairs out;
  for (auto [a, b] : pairs) out.insert(std::minmax(g.name(a), g.name(b)));
  return out;
}

std::pair<EdgeId, EdgeId> cut(const Graph& g, const char* a, const char* b, const char* c, const char* d) {
  return std::minmax(e(g, a, b), e(g, c, d));
}

struct DebugChecks {
  DebugChecks() { debug_checks_flag() = true; }
  ~DebugChecks() { debug_checks_flag() = false; }
};

}  // namespace

TEST(Epe, ThetaGraphHasOneBondGroup) {
  Graph g = load("theta");
  EpeResult r = epe(g, v(g, "s"), v(g, "t"));
  ASSERT_EQ(r.report.groups.size(), 1u);
  EXPECT_EQ(r.tree->component(r.report.groups[0].component).kind, ComponentKind::P);
  ASSERT_EQ(r.report.groups[0].edges.size(), 3u);
  for (const ExclusionEdge& ed : r.report.groups[0].edges) EXPECT_EQ(ed.size, 1u);
  EXPECT_EQ(r.report.total_pairs, 3u);
  EXPECT_EQ(labelled(g, expand_explicit(r)), (LabelPairs{{"w1", "w2"}, {"w1", "w3"}, {"w2", "w3"}}));
}

TEST(Epe, FourCycleExcludesItsTwoArcs) {
  Graph g = load("c4");
  EpeResult r = epe(g, v(g, "s"), v(g, "t"));
  ASSERT_EQ(r.report.groups.size(), 1u);
  EXPECT_EQ(r.report.groups[0].edges.size(), 2u);
  EXPECT_EQ(labelled(g, expand_explicit(r)), (LabelPairs{{"a", "b"}}));
}

TEST(Epe, FigureTwoExcludesTheNegativeQuery) {
  Graph g = load("figure2");
  EpeResult r = epe(g, v(g, "w4"), v(g, "x"));
  auto pairs = labelled(g, expand_explicit(r));
  EXPECT_TRUE(pairs.count({"u1", "w2"}));
  EXPECT_FALSE(pairs.count({"u1", "u6"}));
  EXPECT_EQ(expand_explicit(r), excluded_pairs(g, v(g, "w4"), v(g, "x")));
}

TEST(Epe, TriconnectedGraphExcludesNothing) {
  Graph g = load("k4");
  EpeResult r = epe(g, v(g, "a"), v(g, "b"));
  EXPECT_TRUE(r.report.groups.empty());
  EXPECT_EQ(r.report.total_pairs, 0u);
  EXPECT_TRUE(expand_explicit(r).empty());
}

TEST(Epe, SingleEdgeHasNoTree) {
  Graph g = make_graph(2, {{0, 1}});
  EpeResult r = epe(g, 0, 1);
  EXPECT_FALSE(r.tree);
  EXPECT_TRUE(expand_explicit(r).empty());
}

TEST(Epe, RejectsInputsWithoutBiconnectedAugmentation) {
  Graph g = make_graph(4, {{0, 1}, {1, 2}, {2, 3}});
  EXPECT_THROW(epe(g, 0, 2), InputError);
  EXPECT_THROW(epe(g, 1, 1), InputError);
  EXPECT_NO_THROW(epe(g, 0, 3));
}

TEST(Epe, EmptyReportExpandsToNothing) {
  SpqrTree t = SpqrTree::build(load("c5"));
  EXPECT_TRUE(expand_explicit(t, ExclusionReport{}).empty());
}

TEST(Epe, AgreesWithOracleOnRandomGraphs) {
  std::mt19937_64 rng(103);
  DebugChecks debug;
  int checked = 0;
  for (int i = 0; i < 300; ++i) {
    auto [n, m] = random_shape(rng, 3, 9);
    Graph g = oracle::random_graph(5500 + i, oracle::GraphClass::Connected, n, m);
    auto st = biconnecting_pair(rng, g);
    if (!st) continue;
    ++checked;
    EpeResult r = epe(g, st->first, st->second);
    auto got = expand_explicit(r);
    EXPECT_EQ(got, excluded_pairs(g, st->first, st->second));
    EXPECT_GE(r.report.total_pairs, got.size());
  }
  EXPECT_GT(checked, 150);
}

TEST(FindCuts, CompleteGraphMinusAnEdge) {
  Graph k4 = load("k4");
  Graph g = remove_edge(k4, e(k4, "a", "b"));
  CutSequence cuts = find_2_edge_cuts(g, v(g, "a"), v(g, "b"));
  EXPECT_EQ(cuts, (CutSequence{cut(g, "a", "c", "a", "d"), cut(g, "b", "c", "b", "d")}));
}

TEST(FindCuts, PrismMinusRung) {
  Graph prism = load("prism");
  Graph g = remove_edge(prism, e(prism, "a1", "b1"));
  CutSequence cuts = find_2_edge_cuts(g, v(g, "a1"), v(g, "b1"));
  // The rung pair and the two stars around the terminals.
  EXPECT_EQ(cuts, (CutSequence{cut(g, "a1", "a2", "a1", "a3"), cut(g, "a2", "b2", "a3", "b3"),
                               cut(g, "b1", "b2", "b1", "b3")}));
  EXPECT_EQ(std::set<oracle::EdgePair>(cuts.begin(), cuts.end()), oracle_2_edge_cuts(g, v(g, "a1"), v(g, "b1")));
}

TEST(FindCuts, CompleteGraphOnFiveMinusAnEdge) {
  Graph k5 = make_graph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}});
  Graph g = remove_edge(k5, 0);
  EXPECT_TRUE(find_2_edge_cuts(g, 0, 1).empty());
  EXPECT_TRUE(oracle_2_edge_cuts(g, 0, 1).empty());
}

TEST(FindCuts, DebugChecksRejectNonTriconnectedInput) {
  DebugChecks debug;
  Graph g = load("c5");
  EXPECT_THROW(find_2_edge_cuts(g, v(g, "a"), v(g, "c")), InputError);
}

TEST(FindCuts, AgreesWithOracleOnRandomGraphs) {
  std::mt19937_64 rng(107);
  for (int i = 0; i < 200; ++i) {
    std::size_t n = 4 + rng() % 7;
    Graph g = oracle::random_graph(5900 + i, oracle::GraphClass::Triconnected, n, n + rng() % (2 * n));
    const Edge st = g.edges()[rng() % g.edge_count()];
    Graph minus = remove_edge(g, st.id);
    CutSequence cuts = find_2_edge_cuts(minus, st.u, st.v);
    EXPECT_EQ(std::set<oracle::EdgePair>(cuts.begin(), cuts.end()), oracle_2_edge_cuts(minus, st.u, st.v));
    EXPECT_TRUE(nested_by_reachability(minus, st.u, cuts));
    std::set<EdgeId> used;
    for (auto [a, b] : cuts) {
      EXPECT_TRUE(used.insert(a).second);
      EXPECT_TRUE(used.insert(b).second);
    }
  }
}
