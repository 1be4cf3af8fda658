#pragma once

#include <algorithm>
#include <optional>
#include <queue>
#include <vector>

#include "connectivity.hpp"
#include "graph.hpp"

namespace mustpath {

enum class FlowMode { VertexSplit, EdgeCapacity };

/// Unit-capacity flow network derived from a Graph.
///
/// Vertex-split mode: vertex v becomes in(v)=2v and out(v)=2v+1 joined by an
/// internal arc; each edge (u,v) becomes out(u)->in(v) and out(v)->in(u).
/// Edge-capacity mode: node v is v itself and each edge is a pair of
/// anti-parallel unit arcs that serve as each other's residual.
class FlowNetwork {
 public:
  struct Arc {
    std::uint32_t to;
    std::uint32_t rev;
    int cap;
    int flow;
    ElementRef origin;
  };

  FlowMode mode() const { return mode_; }
  std::uint32_t source() const { return source_; }
  std::uint32_t sink() const { return sink_; }
  std::size_t node_count() const { return out_.size(); }
  const std::vector<Arc>& arcs() const { return arcs_; }
  std::span<const std::uint32_t> out_arcs(std::uint32_t node) const { return out_[node]; }
  int value() const { return value_; }

  static std::uint32_t in_node(VertexId v) { return 2 * v; }
  static std::uint32_t out_node(VertexId v) { return 2 * v + 1; }

  /// Vertex-split network with a super source feeding every vertex of
  /// `side_a` and a super sink fed by every vertex of `side_b`. A singleton
  /// side may be shared by up to `k` paths.
  static FlowNetwork vertex_split(const Graph& g, std::span<const VertexId> side_a,
                                  std::span<const VertexId> side_b, int k) {
    FlowNetwork n;
    n.mode_ = FlowMode::VertexSplit;
    const auto nv = static_cast<std::uint32_t>(g.vertex_bound());
    n.out_.assign(2 * nv + 2, {});
    n.source_ = 2 * nv;
    n.sink_ = 2 * nv + 1;
    auto internal_cap = [&](VertexId v) {
      bool single_a = side_a.size() == 1 && side_a[0] == v;
      bool single_b = side_b.size() == 1 && side_b[0] == v;
      return (single_a || single_b) ? std::max(k, 1) : 1;
    };
    for (VertexId v : g.vertices())
      n.add_arc(in_node(v), out_node(v), internal_cap(v), ElementRef::vertex(v));
    // Edge arcs carry one unit: a direct edge between two terminals is a
    // single path, however much the terminals could carry.
    for (const Edge& e : g.edges()) {
      n.add_arc(out_node(e.u), in_node(e.v), 1, ElementRef::edge(e.id));
      n.add_arc(out_node(e.v), in_node(e.u), 1, ElementRef::edge(e.id));
    }
    for (VertexId a : side_a)
      n.add_arc(n.source_, in_node(a), side_a.size() == 1 ? k : 1, ElementRef::vertex(a));
    for (VertexId b : side_b)
      n.add_arc(out_node(b), n.sink_, side_b.size() == 1 ? k : 1, ElementRef::vertex(b));
    return n;
  }

  static FlowNetwork vertex_split(const Graph& g, VertexId s, VertexId t, int k) {
    VertexId a[] = {s};
    VertexId b[] = {t};
    return vertex_split(g, a, b, k);
  }

  static FlowNetwork edge_capacity(const Graph& g, VertexId s, VertexId t) {
    FlowNetwork n;
    n.mode_ = FlowMode::EdgeCapacity;
    n.out_.assign(g.vertex_bound(), {});
    n.source_ = s;
    n.sink_ = t;
    for (const Edge& e : g.edges()) {
      auto i = static_cast<std::uint32_t>(n.arcs_.size());
      n.arcs_.push_back({e.v, i + 1, 1, 0, ElementRef::edge(e.id)});
      n.arcs_.push_back({e.u, i, 1, 0, ElementRef::edge(e.id)});
      n.out_[e.u].push_back(i);
      n.out_[e.v].push_back(i + 1);
    }
    return n;
  }

  int residual(std::uint32_t arc) const { return arcs_[arc].cap - arcs_[arc].flow; }

  /// One BFS labeling pass; pushes one unit along a shortest augmenting path.
  bool augment() {
    std::vector<std::uint32_t> via(out_.size(), kUnseen);
    std::queue<std::uint32_t> q;
    q.push(source_);
    via[source_] = kRoot;
    while (!q.empty() && via[sink_] == kUnseen) {
      std::uint32_t x = q.front();
      q.pop();
      for (std::uint32_t a : out_[x]) {
        std::uint32_t y = arcs_[a].to;
        if (via[y] != kUnseen || residual(a) <= 0) continue;
        via[y] = a;
        q.push(y);
      }
    }
    if (via[sink_] == kUnseen) return false;
    for (std::uint32_t y = sink_; y != source_;) {
      std::uint32_t a = via[y];
      arcs_[a].flow += 1;
      arcs_[arcs_[a].rev].flow -= 1;
      y = arcs_[arcs_[a].rev].to;
    }
    ++value_;
    return true;
  }

 private:
  static constexpr std::uint32_t kUnseen = ~std::uint32_t{0};
  static constexpr std::uint32_t kRoot = kUnseen - 1;

  void add_arc(std::uint32_t from, std::uint32_t to, int cap, ElementRef origin) {
    auto i = static_cast<std::uint32_t>(arcs_.size());
    arcs_.push_back({to, i + 1, cap, 0, origin});
    arcs_.push_back({from, i, 0, 0, origin});
    out_[from].push_back(i);
    out_[to].push_back(i + 1);
  }

  FlowMode mode_ = FlowMode::VertexSplit;
  std::vector<Arc> arcs_;
  std::vector<std::vector<std::uint32_t>> out_;
  std::uint32_t source_ = 0;
  std::uint32_t sink_ = 0;
  int value_ = 0;
};

/// Augments until the flow reaches `limit` or no augmenting path remains.
inline std::size_t max_flow(FlowNetwork& n, std::size_t limit) {
  while (static_cast<std::size_t>(n.value()) < limit && n.augment()) {
  }
  return static_cast<std::size_t>(n.value());
}

/// k internally disjoint paths from side_a to side_b whose inner vertices
/// avoid both sides, or nothing if fewer than k exist.
inline std::optional<std::vector<Path>> vertex_disjoint_paths(const Graph& g,
                                                              std::span<const VertexId> side_a,
                                                              std::span<const VertexId> side_b,
                                                              std::size_t k) {
  if (k < 1) throw InputError("vertex_disjoint_paths: k < 1");
  if (side_a.empty() || side_b.empty()) throw InputError("vertex_disjoint_paths: empty side");
  for (VertexId v : side_a)
    if (!g.has_vertex(v)) throw InputError("vertex_disjoint_paths: unknown vertex");
  for (VertexId v : side_b)
    if (!g.has_vertex(v)) throw InputError("vertex_disjoint_paths: unknown vertex");

  auto net = FlowNetwork::vertex_split(g, side_a, side_b, static_cast<int>(k));
  if (max_flow(net, k) < k) return std::nullopt;

  std::vector<char> in_a(g.vertex_bound(), 0), in_b(g.vertex_bound(), 0);
  for (VertexId v : side_a) in_a[v] = 1;
  for (VertexId v : side_b) in_b[v] = 1;

  // Peel unit paths off the flow, consuming arcs as we go.
  std::vector<int> left(net.arcs().size());
  for (std::size_t a = 0; a < left.size(); ++a) left[a] = std::max(net.arcs()[a].flow, 0);
  std::vector<Path> paths;
  for (std::size_t p = 0; p < k; ++p) {
    std::vector<VertexId> walk;
    std::uint32_t node = net.source();
    std::size_t guard = 0;
    while (node != net.sink()) {
      if (++guard > 4 * net.arcs().size() + 8) throw InternalError("flow decomposition did not terminate");
      std::uint32_t next = ~std::uint32_t{0};
      for (std::uint32_t a : net.out_arcs(node))
        if (left[a] > 0) {
          --left[a];
          next = net.arcs()[a].to;
          break;
        }
      if (next == ~std::uint32_t{0}) throw InternalError("flow decomposition stuck");
      if (next < net.source() && next % 2 == 0) {
        VertexId v = next / 2;
        // A unit may wander through a flow cycle; cut the loop out.
        auto it = std::find(walk.begin(), walk.end(), v);
        if (it != walk.end()) walk.erase(it + 1, walk.end());
        else walk.push_back(v);
      }
      node = next;
    }
    // Trim to the last side_a vertex before the first side_b vertex.
    std::size_t j = 0;
    while (!in_b[walk[j]]) ++j;
    std::size_t i = j;
    while (!in_a[walk[i]]) --i;
    paths.push_back(path_from_walk(g, std::vector<VertexId>(walk.begin() + i, walk.begin() + j + 1)));
  }
  return paths;
}

inline std::optional<std::vector<Path>> vertex_disjoint_paths(const Graph& g, VertexId s, VertexId t,
                                                              std::size_t k) {
  VertexId a[] = {s};
  VertexId b[] = {t};
  return vertex_disjoint_paths(g, a, b, k);
}

/// Number of internally disjoint s-t paths, capped at `limit`.
inline std::size_t local_connectivity(const Graph& g, VertexId s, VertexId t, std::size_t limit) {
  auto net = FlowNetwork::vertex_split(g, s, t, static_cast<int>(limit));
  return max_flow(net, limit);
}

inline bool is_complete(const Graph& g) {
  std::size_t n = g.vertex_count();
  return g.edge_count() == n * (n - 1) / 2;
}

/// k-connectivity for k in {2,3}; complete graphs on k vertices count.
inline bool is_k_connected(const Graph& g, int k) {
  if (k != 2 && k != 3) throw InputError("is_k_connected: k must be 2 or 3");
  const std::size_t n = g.vertex_count();
  if (n < static_cast<std::size_t>(k)) return false;
  if (is_complete(g)) return true;
  if (k == 2) return is_biconnected(g);
  if (n < 4) return false;

  // A separating set of size <= 2 either avoids the min-degree vertex v (then
  // it splits v from some non-neighbor) or contains it (then it splits two
  // non-adjacent neighbors of v).
  auto vs = g.vertices();
  VertexId v = *std::min_element(vs.begin(), vs.end(),
                                 [&](VertexId a, VertexId b) { return g.degree(a) < g.degree(b); });
  if (g.degree(v) < 3) return false;
  std::vector<char> near(g.vertex_bound(), 0);
  near[v] = 1;
  for (auto [w, e] : g.incident(v)) near[w] = 1;
  for (VertexId u : vs)
    if (!near[u] && local_connectivity(g, v, u, 3) < 3) return false;
  auto inc = g.incident(v);
  for (std::size_t i = 0; i < inc.size(); ++i)
    for (std::size_t j = i + 1; j < inc.size(); ++j) {
      VertexId a = inc[i].neighbor, b = inc[j].neighbor;
      if (!g.find_edge(a, b) && local_connectivity(g, a, b, 3) < 3) return false;
    }
  return true;
}

}  // namespace mustpath
