#include <gtest/gtest.h>

#include <map>

#include "fixtures.hpp"

using namespace mustpath;
using namespace fixtures;

namespace {

/// Random triconnected ladder: rails between must-edges e1 and e2, terminals
/// s=0 and t=1 joined by the third must-edge, extra vertices and chords.
struct LadderInstance {
  Graph g;
  detail::Ladder ladder;
  EdgeId e1, e2, e3;
};

std::optional<LadderInstance> random_ladder(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto pick = [&](int k) { return static_cast<int>(rng() % k); };
  const int a = 2 + pick(6), b = 2 + pick(6), extra = pick(3);
  const int n = 2 + a + b + extra;
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  std::vector<std::pair<VertexId, VertexId>> pairs;
  auto link = [&](int x, int y) {
    if (x == y || adj[x][y]) return;
    adj[x][y] = adj[y][x] = 1;
    pairs.push_back({static_cast<VertexId>(x), static_cast<VertexId>(y)});
  };
  auto left = [&](int i) { return 2 + i; };
  auto right = [&](int i) { return 2 + a + i; };
  for (int k = 0; k + 1 < a; ++k) link(left(k), left(k + 1));
  for (int k = 0; k + 1 < b; ++k) link(right(k), right(k + 1));
  link(left(0), right(0));
  link(left(a - 1), right(b - 1));
  link(0, 1);
  // Layered: s on the low half of the left rail, t on the low half of the
  // right rail, rungs only on the high halves, extra vertices on one rail.
  const int mode = pick(3);
  const bool mixed = mode == 1, layered = mode == 2;
  const int rails = a + b;
  if (layered) {
    for (int k = 0, c = 1 + pick(3); k < c; ++k) link(0, left(pick((a + 1) / 2)));
    for (int k = 0, c = 1 + pick(3); k < c; ++k) link(1, right(pick((b + 1) / 2)));
    for (int k = 0, c = 1 + pick(2); k < c; ++k) link(left(a / 2 + pick(a - a / 2)), right(b / 2 + pick(b - b / 2)));
    for (int k = 0, c = pick(2 * rails); k < c; ++k) {
      if (pick(2)) link(left(pick(a)), left(pick(a)));
      else link(right(pick(b)), right(pick(b)));
    }
    for (int x = 0; x < extra; ++x) {
      const bool on_left = pick(2);
      for (int k = 0, c = 2 + pick(3); k < c; ++k)
        link(2 + rails + x, on_left ? left(pick(a)) : right(pick(b)));
    }
  } else {
    for (int k = 0, c = 1 + pick(3); k < c; ++k) link(0, mixed && pick(2) ? right(pick(b)) : left(pick(a)));
    for (int k = 0, c = 1 + pick(3); k < c; ++k) link(1, mixed && pick(2) ? left(pick(a)) : right(pick(b)));
    for (int x = 0; x < extra; ++x)
      for (int k = 0, c = 2 + pick(3); k < c; ++k) link(2 + rails + x, 2 + pick(rails + x));
    for (int k = 0, c = pick(2 * rails); k < c; ++k) link(2 + pick(rails), 2 + pick(rails));
  }

  LadderInstance out{make_graph(n, pairs), {0, 1, {}, {}}, 0, 0, 0};
  const Graph& g = out.g;
  if (!is_k_connected(g, 3)) return std::nullopt;
  out.e1 = *g.find_edge(left(0), right(0));
  out.e2 = *g.find_edge(left(a - 1), right(b - 1));
  out.e3 = *g.find_edge(0, 1);
  std::vector<Edge> keep;
  for (const Edge& ed : g.edges())
    if (ed.id != out.e1 && ed.id != out.e2 && ed.id != out.e3) keep.push_back(ed);
  if (!is_connected(Graph(g.label_table(), g.vertex_mask(), keep))) return std::nullopt;
  for (int k = 0; k < a; ++k) out.ladder.left.push_back(left(k));
  for (int k = 0; k < b; ++k) out.ladder.right.push_back(right(k));
  return out;
}

}  // namespace

TEST(ConstructCycle, FigureTwoCycle) {
  Graph g = load("figure2");
  auto w = construct_cycle(g, E(g, "w4", "x"), V(g, "u1"), V(g, "u6"));
  ASSERT_TRUE(w);
  EXPECT_EQ(rotated(g, w->cycle, "u1", "x"),
            (std::vector<std::string>{"u1", "x", "w4", "t", "u3", "u2", "u6", "u5"}));
  std::size_t expanded = std::count_if(w->segments.begin(), w->segments.end(),
                                       [](const WitnessSegment& s) { return s.expanded; });
  EXPECT_EQ(expanded, 2u);
  EXPECT_EQ(w->segments.back().last, w->cycle.vertices.size());
}

TEST(ConstructCycle, NegativeQueriesReturnNothing) {
  Graph g = load("figure2");
  EXPECT_FALSE(construct_cycle(g, E(g, "w4", "x"), V(g, "u1"), V(g, "w2")));
  EXPECT_FALSE(construct_cycle(g, E(g, "u2", "u4"), V(g, "w4"), V(g, "u6")));
}

TEST(ConstructCycle, CycleGraphIsItsOwnWitness) {
  Graph g = load("c5");
  auto w = construct_cycle(g, V(g, "a"), V(g, "c"), V(g, "d"));
  ASSERT_TRUE(w);
  EXPECT_EQ(rotated(g, w->cycle, "a", "b"), (std::vector<std::string>{"a", "b", "c", "d", "e"}));
}

TEST(ConstructPath, FigureTwoPath) {
  Graph g = load("figure2");
  auto w = construct_path(g, v(g, "w4"), v(g, "x"), v(g, "u1"), v(g, "u6"));
  ASSERT_TRUE(w);
  EXPECT_EQ(names(g, w->path.vertices),
            (std::vector<std::string>{"w4", "t", "u3", "u2", "u6", "u5", "u1", "x"}));
  EXPECT_FALSE(construct_path(g, v(g, "w4"), v(g, "x"), v(g, "u1"), v(g, "w2")));
}

TEST(ConstructPath, FourCycleCannotUseBothArcs) {
  Graph g = load("c4");
  EXPECT_FALSE(construct_path(g, v(g, "s"), v(g, "t"), v(g, "a"), v(g, "b")));
}

TEST(ConstructPath, CompleteGraphGivesAHamiltonianPath) {
  Graph g = load("k4");
  auto w = construct_path(g, v(g, "a"), v(g, "b"), v(g, "c"), v(g, "d"));
  ASSERT_TRUE(w);
  EXPECT_EQ(w->path.vertices.size(), 4u);
  EXPECT_EQ(w->path.front(), v(g, "a"));
  EXPECT_EQ(w->path.back(), v(g, "b"));
  for (EdgeId id : w->path.edges) EXPECT_TRUE(g.has_edge(id));
}

TEST(SkeletonCycle, BondUsesTheTwoRepresentedSlots) {
  Graph g = load("figure2");
  SpqrTree t = SpqrTree::build(g);
  ComponentId p = t.central_component(E(g, "w4", "x"), V(g, "x"), V(g, "w2"));
  ASSERT_EQ(t.component(p).kind, ComponentKind::P);
  Representative r1 = t.representative(p, E(g, "w4", "x")), r2 = t.representative(p, V(g, "x")),
                 r3 = t.representative(p, V(g, "w2"));
  auto steps = skeleton_cycle(t, p, r1, r2, r3);
  ASSERT_EQ(steps.size(), 2u);
  std::set<std::uint32_t> slots{steps[0].slot, steps[1].slot};
  EXPECT_EQ(slots, (std::set<std::uint32_t>{r1.edge, r3.edge}));
  EXPECT_EQ(steps[0].to, steps[1].from);
}

TEST(SkeletonCycle, PolygonIsTheWholeSkeleton) {
  Graph g = load("figure2");
  SpqrTree t = SpqrTree::build(g);
  ComponentId s = t.vertex_home(v(g, "w2"));
  ASSERT_EQ(t.component(s).kind, ComponentKind::S);
  auto steps = skeleton_cycle(t, s, t.representative(s, V(g, "w1")), t.representative(s, V(g, "w2")),
                              t.representative(s, V(g, "u6")));
  EXPECT_EQ(steps.size(), t.component(s).edges.size());
}

TEST(TriCycle, CompleteGraphTwoEdges) {
  Graph g = load("k4");
  ElementRef elems[] = {E(g, "a", "b"), E(g, "c", "d"), V(g, "a")};
  Cycle c = tri_cycle_upto_two_edges(g, elems);
  EXPECT_EQ(c.vertices.size(), 4u);
  EXPECT_FALSE(cycle_defect(g, c, elems));
}

TEST(TriCycle, PrismTwoRungsAndAVertex) {
  Graph g = load("prism");
  ElementRef elems[] = {E(g, "a1", "b1"), E(g, "a2", "b2"), V(g, "a3")};
  Cycle c = tri_cycle_upto_two_edges(g, elems);
  EXPECT_FALSE(cycle_defect(g, c, elems));
}

TEST(TriCycle, CompleteGraphOnFiveThreeVertices) {
  Graph g = make_graph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}});
  ElementRef elems[] = {ElementRef::vertex(0), ElementRef::vertex(2), ElementRef::vertex(4)};
  EXPECT_FALSE(cycle_defect(g, tri_cycle_upto_two_edges(g, elems), elems));
}

TEST(TriCycle, ThreeEdgeExamples) {
  Graph g = load("k4");
  ThreeEdgeCase taken;
  auto tri = tri_cycle_three_edges(g, e(g, "a", "b"), e(g, "b", "c"), e(g, "a", "c"), &taken);
  ASSERT_TRUE(tri);
  EXPECT_EQ(taken, ThreeEdgeCase::Triangle);
  EXPECT_EQ(tri->vertices.size(), 3u);
  auto chain = tri_cycle_three_edges(g, e(g, "a", "b"), e(g, "b", "c"), e(g, "c", "d"), &taken);
  ASSERT_TRUE(chain);
  EXPECT_EQ(taken, ThreeEdgeCase::Chain);
  EXPECT_EQ(rotated(g, *chain, "a", "b"), (std::vector<std::string>{"a", "b", "c", "d"}));
  EXPECT_FALSE(tri_cycle_three_edges(g, e(g, "a", "b"), e(g, "a", "c"), e(g, "a", "d")));
  Graph p = load("prism");
  EXPECT_FALSE(tri_cycle_three_edges(p, e(p, "a1", "b1"), e(p, "a2", "b2"), e(p, "a3", "b3")));
  EXPECT_THROW(tri_cycle_three_edges(g, 0, 0, 1), InputError);
}

TEST(TriCycle, ThreeEdgesAgreeWithOracle) {
  std::mt19937_64 rng(83);
  std::map<std::string, int> seen;
  for (int i = 0; i < 300; ++i) {
    std::size_t n = 4 + rng() % 7;
    Graph g = oracle::random_graph(4300 + i, oracle::GraphClass::Triconnected, n, n + rng() % (2 * n));
    std::vector<EdgeId> ids;
    for (const Edge& ed : g.edges()) ids.push_back(ed.id);
    for (int q = 0; q < 8; ++q) {
      std::shuffle(ids.begin(), ids.end(), rng);
      ThreeEdgeCase taken;
      auto c = tri_cycle_three_edges(g, ids[0], ids[1], ids[2], &taken);
      ElementRef need[] = {ElementRef::edge(ids[0]), ElementRef::edge(ids[1]), ElementRef::edge(ids[2])};
      ASSERT_EQ(c.has_value(), oracle_cep(g, need[0], need[1], need[2]));
      if (!c) continue;
      EXPECT_FALSE(cycle_defect(g, *c, need));
      ++seen[case_name(taken)];
    }
  }
  EXPECT_GT(seen.size(), 3u);
}

TEST(TriCycle, LadderCasesAllProduceValidCycles) {
  std::map<std::string, int> seen;
  int tried = 0;
  for (std::uint64_t seed = 0; seed < 4000; ++seed) {
    auto inst = random_ladder(seed);
    if (!inst) continue;
    ++tried;
    ThreeEdgeCase taken;
    detail::LadderSolver solver(inst->g);
    auto walk = solver.solve(inst->ladder, taken);
    Cycle c = cycle_from_walk(inst->g, walk);
    ElementRef need[] = {ElementRef::edge(inst->e1), ElementRef::edge(inst->e2), ElementRef::edge(inst->e3)};
    auto d = cycle_defect(inst->g, c, need);
    ASSERT_FALSE(d) << "seed " << seed << ": " << *d;
    ++seen[case_name(taken)];
  }
  EXPECT_GT(tried, 100);
  for (const char* name : {"ConnectorsBothSides", "ConnectorsOneSide", "BridgeUnderSource", "BridgeUnderTarget",
                           "BypassStraight", "BypassCrossed"})
    EXPECT_GT(seen[name], 0) << name;
}

TEST(SplicePath, JoinsThroughTheLongArc) {
  std::mt19937_64 rng(89);
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 4000 && checked < 200; ++seed) {
    auto inst = random_ladder(seed);
    if (!inst) continue;
    const auto& L = inst->ladder;
    std::vector<VertexId> ring = L.left;
    ring.insert(ring.end(), L.right.rbegin(), L.right.rend());
    Cycle cyc = cycle_from_walk(inst->g, ring);
    // s and t attach directly to distinct vertices of one rail.
    std::optional<std::pair<VertexId, VertexId>> ends;
    for (const auto* rail : {&L.left, &L.right}) {
      auto on_rail = [&](VertexId w) { return std::find(rail->begin(), rail->end(), w) != rail->end(); };
      std::vector<std::pair<VertexId, VertexId>> options;
      for (auto [p, i1] : inst->g.incident(L.s))
        for (auto [q, i2] : inst->g.incident(L.t))
          if (p != q && on_rail(p) && on_rail(q)) options.push_back({p, q});
      if (!options.empty()) {
        ends = options[rng() % options.size()];
        break;
      }
    }
    if (!ends) continue;
    Path from_s = path_from_walk(inst->g, {L.s, ends->first});
    Path from_t = path_from_walk(inst->g, {L.t, ends->second});
    Path p = splice_path(inst->g, cyc, inst->e1, inst->e2, from_s, from_t);
    ElementRef need[] = {ElementRef::edge(inst->e1), ElementRef::edge(inst->e2), ElementRef::vertex(L.s),
                         ElementRef::vertex(L.t)};
    EXPECT_FALSE(path_defect(inst->g, p, need));
    EXPECT_EQ(p.front(), L.s);
    EXPECT_EQ(p.back(), L.t);
    ++checked;
  }
  EXPECT_GT(checked, 50);
}

TEST(WitnessProperties, CyclesMatchDecisionsOnRandomGraphs) {
  std::mt19937_64 rng(97);
  for (int i = 0; i < 300; ++i) {
    auto [n, m] = random_shape(rng, 4, 9);
    Graph g = oracle::random_graph(4700 + i, oracle::GraphClass::Connected, n, m);
    Engine engine(g);
    auto pool = elements(g);
    for (int q = 0; q < 10; ++q) {
      auto [a, b, c] = random_triple(rng, pool);
      bool yes = engine.cep(a, b, c).answer;
      auto w = construct_cycle(engine, a, b, c);
      ASSERT_EQ(w.has_value(), yes);
      if (!w) continue;
      ElementRef need[] = {a, b, c};
      EXPECT_FALSE(cycle_defect(g, w->cycle, need));
    }
  }
}

TEST(WitnessProperties, PathsMatchDecisionsOnRandomGraphs) {
  std::mt19937_64 rng(101);
  for (int i = 0; i < 300; ++i) {
    auto [n, m] = random_shape(rng, 4, 9);
    Graph g = oracle::random_graph(5100 + i, oracle::GraphClass::Connected, n, m);
    auto vs = g.vertices();
    std::shuffle(vs.begin(), vs.end(), rng);
    auto w = construct_path(g, vs[0], vs[1], vs[2], vs[3]);
    ASSERT_EQ(w.has_value(), oracle_pep(g, vs[0], vs[1], vs[2], vs[3]));
    if (!w) continue;
    ElementRef need[] = {ElementRef::vertex(vs[2]), ElementRef::vertex(vs[3])};
    EXPECT_FALSE(path_defect(g, w->path, need));
    EXPECT_EQ(w->path.front(), vs[0]);
    EXPECT_EQ(w->path.back(), vs[1]);
  }
}
