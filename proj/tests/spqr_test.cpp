#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace mustpath;
using namespace fixtures;

namespace {

std::string describe(const SpqrTree& t, ComponentId c) {
  const Graph& g = t.graph();
  auto vs = names(g, t.component(c).vertices);
  std::sort(vs.begin(), vs.end());
  std::string out(1, kind_letter(t.component(c).kind));
  for (const auto& s : vs) out += " " + s;
  return out;
}

ComponentId find_component(const SpqrTree& t, const std::string& text) {
  for (ComponentId c = 0; c < t.size(); ++c)
    if (describe(t, c) == text) return c;
  throw std::runtime_error("no component " + text);
}

std::uint32_t slot_between(const SpqrTree& t, ComponentId c, ComponentId toward) {
  const auto& edges = t.component(c).edges;
  for (std::uint32_t i = 0; i < edges.size(); ++i)
    if (edges[i].is_virtual() && edges[i].twin_component == toward) return i;
  throw std::runtime_error("components not adjacent");
}

std::vector<std::string> edge_names(const Graph& g) {
  std::vector<std::string> out;
  for (const Edge& ed : g.edges()) {
    auto a = g.name(ed.u), b = g.name(ed.v);
    if (b < a) std::swap(a, b);
    out.push_back(a + "-" + b);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Graph> random_biconnected(std::uint64_t seed, int count, std::size_t lo, std::size_t hi) {
  std::mt19937_64 rng(seed);
  std::vector<Graph> out;
  for (int i = 0; i < count; ++i) {
    auto [n, m] = random_shape(rng, lo, hi);
    out.push_back(oracle::random_graph(seed * 1000 + i, oracle::GraphClass::Biconnected, n, std::max(m, n)));
  }
  return out;
}

}  // namespace

TEST(Spqr, FigureTwoComponents) {
  Graph g = load("figure2");
  SpqrTree t = SpqrTree::build(g);
  std::vector<std::string> got;
  for (ComponentId c = 0; c < t.size(); ++c) got.push_back(describe(t, c));
  std::sort(got.begin(), got.end());
  std::vector<std::string> want = {"P t x",          "P u2 u5",          "R u1 u2 u4 u5", "S t u1 u2 u3 x",
                                   "S t w1 w2 w3 x", "S t w4 x",         "S u2 u5 u6"};
  std::sort(want.begin(), want.end());
  EXPECT_EQ(got, want);
  EXPECT_EQ(t.structural_edges().size(), 6u);
  EXPECT_FALSE(spqr_defect(t));
}

TEST(Spqr, FigureTwoRepresentatives) {
  Graph g = load("figure2");
  SpqrTree t = SpqrTree::build(g);
  ComponentId r = find_component(t, "R u1 u2 u4 u5");
  Representative u6 = t.representative(r, V(g, "u6"));
  ASSERT_TRUE(u6.is_virtual());
  const SkeletonEdge& e1 = t.component(r).edges[u6.edge];
  EXPECT_EQ(std::minmax(e1.u, e1.v), std::minmax(v(g, "u2"), v(g, "u5")));
  EXPECT_EQ(e1.twin_component, find_component(t, "P u2 u5"));
  Representative w4x = t.representative(r, E(g, "w4", "x"));
  ASSERT_TRUE(w4x.is_virtual());
  const SkeletonEdge& e2 = t.component(r).edges[w4x.edge];
  EXPECT_EQ(std::minmax(e2.u, e2.v), std::minmax(v(g, "u1"), v(g, "u2")));
  Representative u4 = t.representative(r, V(g, "u4"));
  EXPECT_TRUE(u4.is_vertex());
  EXPECT_EQ(u4.element, V(g, "u4"));
  Representative real = t.representative(r, E(g, "u1", "u4"));
  EXPECT_EQ(real.kind, Representative::Kind::Real);
}

TEST(Spqr, FigureTwoCentralComponents) {
  Graph g = load("figure2");
  SpqrTree t = SpqrTree::build(g);
  EXPECT_EQ(t.central_component(E(g, "w4", "x"), V(g, "u1"), V(g, "u6")), find_component(t, "R u1 u2 u4 u5"));
  EXPECT_EQ(t.central_component(E(g, "w4", "x"), V(g, "u1"), V(g, "w2")), find_component(t, "P t x"));
}

TEST(Spqr, CentralComponentOfACycle) {
  Graph g = make_graph(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}});
  SpqrTree t = SpqrTree::build(g);
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t.central_component(ElementRef::vertex(0), ElementRef::vertex(2), ElementRef::vertex(4)), 0u);
}

TEST(Spqr, FigureTwoSplitSubgraphs) {
  Graph g = load("figure2");
  SpqrTree t = SpqrTree::build(g);
  ComponentId p = find_component(t, "P t x");
  Graph hang = t.split_subgraph(p, slot_between(t, p, find_component(t, "S t w4 x")));
  EXPECT_EQ(edge_names(hang), (std::vector<std::string>{"t-w4", "w4-x"}));
  ComponentId r = find_component(t, "R u1 u2 u4 u5");
  Graph tail = t.split_subgraph(r, slot_between(t, r, find_component(t, "P u2 u5")));
  auto vs = names(g, tail.vertices());
  std::sort(vs.begin(), vs.end());
  EXPECT_EQ(vs, (std::vector<std::string>{"u2", "u5", "u6"}));
  EXPECT_THROW(t.split_subgraph(r, t.edge_home(e(g, "u1", "u4")).second), InputError);
}

TEST(Spqr, FigureTwoPathsThroughSplits) {
  Graph g = load("figure2");
  SpqrTree t = SpqrTree::build(g);
  ComponentId r = find_component(t, "R u1 u2 u4 u5");
  std::uint32_t down = t.representative(r, E(g, "w4", "x")).edge;
  Path p = t.path_through_in_split(r, down, E(g, "w4", "x"));
  if (p.front() != v(g, "u1")) p = p.reversed();
  EXPECT_EQ(names(g, p.vertices), (std::vector<std::string>{"u1", "x", "w4", "t", "u3", "u2"}));
  std::uint32_t side = t.representative(r, V(g, "u6")).edge;
  Path q = t.path_through_in_split(r, side, V(g, "u6"));
  if (q.front() != v(g, "u2")) q = q.reversed();
  EXPECT_EQ(names(g, q.vertices), (std::vector<std::string>{"u2", "u6", "u5"}));
}

TEST(Spqr, PathThroughThePoleEdge) {
  Graph g = load("figure2");
  SpqrTree t = SpqrTree::build(g);
  ComponentId r = find_component(t, "R u1 u2 u4 u5");
  std::uint32_t k = slot_between(t, r, find_component(t, "P u2 u5"));
  Path p = t.path_through_in_split(r, k, E(g, "u2", "u5"));
  EXPECT_EQ(p.edges, std::vector<EdgeId>{e(g, "u2", "u5")});
  EXPECT_THROW(t.path_through_in_split(r, k, V(g, "u2")), InputError);
  EXPECT_THROW(t.path_through_in_split(r, k, V(g, "u1")), InputError);
}

TEST(Spqr, CycleIsOnePolygon) {
  SpqrTree t = SpqrTree::build(load("c5"));
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t.component(0).kind, ComponentKind::S);
}

TEST(Spqr, CompleteGraphIsOneRigid) {
  SpqrTree t = SpqrTree::build(load("k4"));
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t.component(0).kind, ComponentKind::R);
}

TEST(Spqr, TriangleIsAPolygon) {
  SpqrTree t = SpqrTree::build(load("triangle"));
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t.component(0).kind, ComponentKind::S);
}

TEST(Spqr, RejectsNonBiconnectedInput) {
  EXPECT_THROW(SpqrTree::build(make_graph(3, {{0, 1}, {1, 2}})), InputError);
  EXPECT_THROW(SpqrTree::build(make_graph(2, {{0, 1}})), InputError);
}

TEST(SpqrInvariants, StructureOnRandomGraphs) {
  for (const Graph& g : random_biconnected(7, 400, 3, 9)) {
    SpqrTree t = SpqrTree::build(g);
    auto defect = spqr_defect(t);
    EXPECT_FALSE(defect) << *defect;
    EXPECT_EQ(tree_two_cuts(t), oracle::separation_pairs(g));
    EXPECT_EQ(spqr_signature(t), spqr_signature(SpqrTree::build(g, SplitOrder::Descending)));
    for (const StructuralEdge& s : t.structural_edges())
      EXPECT_EQ(t.split_subgraph(s.a, s.a_edge).edge_count() + t.split_subgraph(s.b, s.b_edge).edge_count(),
                g.edge_count());
  }
}

TEST(SpqrInvariants, StructureOnEarGraphs) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    Graph g = random_ear_graph(seed, 12 + seed % 50, seed % 4 + 1);
    SpqrTree t = SpqrTree::build(g);
    auto defect = spqr_defect(t);
    EXPECT_FALSE(defect) << *defect;
    EXPECT_EQ(tree_two_cuts(t), oracle::separation_pairs(g));
    EXPECT_EQ(spqr_signature(t), spqr_signature(SpqrTree::build(g, SplitOrder::Descending)));
  }
}

TEST(SpqrInvariants, RepresentativesMatchSplitMembership) {
  for (const Graph& g : random_biconnected(11, 150, 4, 9)) {
    SpqrTree t = SpqrTree::build(g);
    for (ComponentId c = 0; c < t.size(); ++c) {
      const Component& comp = t.component(c);
      for (std::uint32_t k = 0; k < comp.edges.size(); ++k) {
        const SkeletonEdge& se = comp.edges[k];
        if (!se.is_virtual()) continue;
        Graph sub = t.split_subgraph(c, k);
        auto here = Representative::virtual_edge(c, k);
        for (ElementRef x : elements(g)) {
          bool inside = sub.has_element(x) && !(x.is_vertex() && se.touches(x.id()));
          EXPECT_EQ(t.representative(c, x) == here, inside);
        }
      }
    }
  }
}

TEST(SpqrInvariants, CentralComponentSeparatesRepresentatives) {
  std::mt19937_64 rng(13);
  for (const Graph& g : random_biconnected(13, 150, 4, 9)) {
    SpqrTree t = SpqrTree::build(g);
    auto pool = elements(g);
    for (int q = 0; q < 10; ++q) {
      auto [a, b, c] = random_triple(rng, pool);
      ComponentId cc = t.central_component(a, b, c);
      auto ra = t.representative(cc, a), rb = t.representative(cc, b), rc = t.representative(cc, c);
      EXPECT_FALSE(ra == rb || ra == rc || rb == rc);
    }
  }
}
