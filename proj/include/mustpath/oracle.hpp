#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string_view>
#include <vector>

#include "connectivity.hpp"
#include "flow.hpp"
#include "graph.hpp"

namespace mustpath {

/// Brute-force ground truth for small graphs.
namespace oracle {

inline constexpr std::size_t kDefaultBound = 12;

namespace detail {

inline void check_bound(const Graph& g, std::size_t bound, const char* what) {
  if (g.vertex_count() > bound) throw InputError(std::string(what) + ": graph exceeds the oracle bound");
  if (g.vertex_bound() > 64) throw InputError(std::string(what) + ": vertex ids exceed 64");
}

/// Exhaustive search for a simple path meeting vertex and edge requirements.
class PathSearch {
 public:
  PathSearch(const Graph& g, std::uint64_t need_vertices, std::vector<EdgeId> need_edges)
      : g_(g), need_v_(need_vertices), need_e_(std::move(need_edges)) {}

  /// Simple paths from `from` to `to`, never using edge `banned`.
  bool path_exists(VertexId from, VertexId to, EdgeId banned, int extra_edges) {
    to_ = to;
    banned_ = banned;
    extra_ = extra_edges;
    return dfs(from, std::uint64_t{1} << from, 0);
  }

 private:
  bool dfs(VertexId v, std::uint64_t mask, int edges_hit) {
    if (v == to_) return (mask & need_v_) == need_v_ && edges_hit + extra_ == static_cast<int>(need_e_.size());
    for (auto [w, e] : g_.incident(v)) {
      if (e == banned_ || (mask >> w & 1)) continue;
      int hit = edges_hit + static_cast<int>(std::count(need_e_.begin(), need_e_.end(), e));
      if (dfs(w, mask | std::uint64_t{1} << w, hit)) return true;
    }
    return false;
  }

  const Graph& g_;
  std::uint64_t need_v_;
  std::vector<EdgeId> need_e_;
  VertexId to_ = kNoVertex;
  EdgeId banned_ = kNoEdge;
  int extra_ = 0;
};

}  // namespace detail

/// Whether some simple cycle contains all three elements.
inline bool cep(const Graph& g, ElementRef x1, ElementRef x2, ElementRef x3, std::size_t bound = kDefaultBound) {
  detail::check_bound(g, bound, "oracle_cep");
  std::uint64_t need_v = 0;
  std::vector<EdgeId> need_e;
  for (ElementRef x : {x1, x2, x3}) {
    if (!g.has_element(x)) throw InputError("oracle_cep: unknown element");
    if (x.is_vertex()) need_v |= std::uint64_t{1} << x.id();
    else need_e.push_back(x.id());
  }
  if (x1 == x2 || x1 == x3 || x2 == x3) throw InputError("oracle_cep: elements are not distinct");
  detail::PathSearch search(g, need_v, need_e);
  if (!need_e.empty()) {
    // A cycle through edge (a,b) is a simple b-a path avoiding the edge.
    const Edge& e = g.edge(need_e.front());
    return search.path_exists(e.v, e.u, e.id, 1);
  }
  // A cycle through vertex a leaves along some edge (a,w) and returns to a.
  const VertexId a = x1.id();
  for (auto [w, e] : g.incident(a))
    if (search.path_exists(w, a, e, 0)) return true;
  return false;
}

/// Whether some simple s-t path visits w1 and w2.
inline bool pep(const Graph& g, VertexId s, VertexId t, VertexId w1, VertexId w2, std::size_t bound = kDefaultBound) {
  detail::check_bound(g, bound, "oracle_pep");
  for (VertexId v : {s, t, w1, w2})
    if (!g.has_vertex(v)) throw InputError("oracle_pep: unknown vertex");
  detail::PathSearch search(g, std::uint64_t{1} << w1 | std::uint64_t{1} << w2, {});
  return search.path_exists(s, t, kNoEdge, 0);
}

using EdgePair = std::pair<EdgeId, EdgeId>;

inline bool separates(const Graph& g, VertexId s, VertexId t, std::span<const EdgeId> removed) {
  std::vector<char> seen(g.vertex_bound(), 0);
  std::vector<VertexId> todo{s};
  seen[s] = 1;
  while (!todo.empty()) {
    VertexId x = todo.back();
    todo.pop_back();
    for (auto [y, e] : g.incident(x)) {
      if (seen[y] || std::find(removed.begin(), removed.end(), e) != removed.end()) continue;
      seen[y] = 1;
      todo.push_back(y);
    }
  }
  return !seen[t];
}

/// Every inclusion-minimal pair of edges separating s from t.
inline std::set<EdgePair> two_edge_cuts(const Graph& g, VertexId s, VertexId t, std::size_t edge_bound = 64) {
  if (g.edge_count() > edge_bound) throw InputError("oracle_2_edge_cuts: graph exceeds the oracle bound");
  if (!g.has_vertex(s) || !g.has_vertex(t) || s == t) throw InputError("oracle_2_edge_cuts: bad terminals");
  std::set<EdgePair> out;
  std::vector<EdgeId> ids;
  for (const Edge& e : g.edges()) ids.push_back(e.id);
  std::vector<char> bridge(g.edge_bound(), 0);
  for (EdgeId e : ids) bridge[e] = separates(g, s, t, std::span<const EdgeId>(&e, 1));
  for (std::size_t i = 0; i < ids.size(); ++i)
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      if (bridge[ids[i]] || bridge[ids[j]]) continue;
      EdgeId pair[] = {ids[i], ids[j]};
      if (separates(g, s, t, pair)) out.insert({ids[i], ids[j]});
    }
  return out;
}

/// Vertex pairs whose removal disconnects g.
inline std::set<std::pair<VertexId, VertexId>> separation_pairs(const Graph& g) {
  std::set<std::pair<VertexId, VertexId>> out;
  auto vs = g.vertices();
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      std::vector<VertexId> rest;
      for (VertexId v : vs)
        if (v != vs[i] && v != vs[j]) rest.push_back(v);
      if (rest.empty()) continue;
      if (!is_connected(induced_subgraph(g, rest))) out.insert({vs[i], vs[j]});
    }
  return out;
}

/// Triconnectivity by deleting every vertex pair.
inline bool triconnected(const Graph& g) {
  const std::size_t n = g.vertex_count();
  if (n < 3) return false;
  if (n == 3) return g.edge_count() == 3;
  if (!is_biconnected(g)) return false;
  return separation_pairs(g).empty();
}

enum class GraphClass { Connected, Biconnected, Triconnected };

inline GraphClass parse_class(std::string_view s) {
  if (s == "connected") return GraphClass::Connected;
  if (s == "biconnected") return GraphClass::Biconnected;
  if (s == "triconnected") return GraphClass::Triconnected;
  throw InputError("unknown graph class");
}

inline bool in_class(const Graph& g, GraphClass c) {
  switch (c) {
    case GraphClass::Connected: return is_connected(g);
    case GraphClass::Biconnected: return is_biconnected(g);
    case GraphClass::Triconnected: return is_k_connected(g, 3);
  }
  return false;
}

/// Seeded random graph on n vertices with about m edges: a random spanning
/// tree, random extra edges, then random edges until the class holds.
inline Graph random_graph(std::uint64_t seed, GraphClass cls, std::size_t n, std::size_t m) {
  if (n < 2) throw InputError("random_graph: n < 2");
  if (cls == GraphClass::Triconnected && n < 4) throw InputError("random_graph: triconnected needs n >= 4");
  std::mt19937_64 rng(seed);
  auto pick = [&](std::size_t hi) { return static_cast<std::size_t>(rng() % hi); };
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  std::vector<std::pair<VertexId, VertexId>> pairs;
  auto link = [&](std::size_t a, std::size_t b) {
    if (a == b || adj[a][b]) return false;
    adj[a][b] = adj[b][a] = 1;
    pairs.push_back({static_cast<VertexId>(a), static_cast<VertexId>(b)});
    return true;
  };
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  for (std::size_t i = 1; i < n; ++i) link(order[i], order[pick(i)]);
  const std::size_t full = n * (n - 1) / 2;
  m = std::min(m, full);
  while (pairs.size() < m) link(pick(n), pick(n));
  Graph g = make_graph(n, pairs);
  while (!in_class(g, cls)) {
    while (!link(pick(n), pick(n))) {
    }
    g = make_graph(n, pairs);
  }
  return g;
}

/// FNV-1a over the vertex count and edge list.
inline std::uint64_t fingerprint(const Graph& g) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](std::uint64_t x) {
    for (int i = 0; i < 8; ++i) {
      h ^= (x >> (8 * i)) & 0xff;
      h *= 1099511628211ull;
    }
  };
  mix(g.vertex_count());
  for (const Edge& e : g.edges()) {
    mix(e.id);
    mix(e.u);
    mix(e.v);
  }
  return h;
}

}  // namespace oracle

inline bool oracle_cep(const Graph& g, ElementRef x1, ElementRef x2, ElementRef x3) {
  return oracle::cep(g, x1, x2, x3);
}

inline bool oracle_pep(const Graph& g, VertexId s, VertexId t, VertexId w1, VertexId w2) {
  return oracle::pep(g, s, t, w1, w2);
}

inline std::set<oracle::EdgePair> oracle_2_edge_cuts(const Graph& g, VertexId s, VertexId t) {
  return oracle::two_edge_cuts(g, s, t);
}

}  // namespace mustpath
