#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mustpath {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

inline constexpr VertexId kNoVertex = ~VertexId{0};
inline constexpr EdgeId kNoEdge = ~EdgeId{0};

/// Bad user input: unknown ids, malformed files, violated preconditions.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A library invariant was broken. Always a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void ensure(bool ok, const char* what) {
  if (!ok) throw InternalError(what);
}

/// Expensive invariant checks; on when MUSTPATH_DEBUG=1 or set explicitly.
inline bool& debug_checks_flag() {
  static bool on = [] {
    const char* v = std::getenv("MUSTPATH_DEBUG");
    return v && std::string_view(v) == "1";
  }();
  return on;
}

inline bool debug_checks() { return debug_checks_flag(); }

struct Edge {
  EdgeId id = kNoEdge;
  VertexId u = kNoVertex;
  VertexId v = kNoVertex;

  VertexId other(VertexId w) const { return w == u ? v : u; }
  bool touches(VertexId w) const { return u == w || v == w; }
};

struct Incidence {
  VertexId neighbor;
  EdgeId edge;
};

/// A vertex or an edge of a graph.
class ElementRef {
 public:
  enum class Kind : std::uint8_t { Vertex, Edge };

  static ElementRef vertex(VertexId v) { return ElementRef(Kind::Vertex, v); }
  static ElementRef edge(EdgeId e) { return ElementRef(Kind::Edge, e); }

  Kind kind() const { return kind_; }
  bool is_vertex() const { return kind_ == Kind::Vertex; }
  bool is_edge() const { return kind_ == Kind::Edge; }
  std::uint32_t id() const { return id_; }

  friend bool operator==(const ElementRef&, const ElementRef&) = default;
  friend auto operator<=>(const ElementRef&, const ElementRef&) = default;

 private:
  ElementRef(Kind k, std::uint32_t id) : kind_(k), id_(id) {}
  Kind kind_;
  std::uint32_t id_;
};

/// Undirected simple graph over a fixed id universe.
///
/// Derived graphs (subgraphs, G plus an edge) share the label table and keep
/// every vertex and edge id of their parent, so ids can be compared across
/// them freely. Vertices outside the subgraph are simply absent.
class Graph {
 public:
  Graph() : labels_(std::make_shared<std::vector<std::string>>()) {}

  /// All vertices 0..labels.size()-1 present.
  Graph(std::vector<std::string> labels, std::vector<Edge> edges)
      : labels_(std::make_shared<std::vector<std::string>>(std::move(labels))),
        present_(labels_->size(), 1) {
    assemble(std::move(edges));
  }

  /// Subgraph constructor: shares `labels`, only vertices flagged in `present`.
  Graph(std::shared_ptr<const std::vector<std::string>> labels, std::vector<char> present,
        std::vector<Edge> edges)
      : labels_(std::move(labels)), present_(std::move(present)) {
    if (present_.size() != labels_->size()) throw InputError("vertex mask size mismatch");
    assemble(std::move(edges));
  }

  std::size_t vertex_bound() const { return present_.size(); }
  std::size_t edge_bound() const { return edge_slot_.size(); }
  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t edge_count() const { return edges_.size(); }

  bool has_vertex(VertexId v) const { return v < present_.size() && present_[v]; }
  bool has_edge(EdgeId e) const { return e < edge_slot_.size() && edge_slot_[e] != kNoEdge; }
  bool has_element(ElementRef x) const {
    return x.is_vertex() ? has_vertex(x.id()) : has_edge(x.id());
  }

  const Edge& edge(EdgeId e) const {
    if (!has_edge(e)) throw InputError("unknown edge id " + std::to_string(e));
    return edges_[edge_slot_[e]];
  }

  /// Edges in ascending id order.
  std::span<const Edge> edges() const { return edges_; }

  /// Incidences of v in ascending neighbor order.
  std::span<const Incidence> incident(VertexId v) const {
    if (!has_vertex(v)) return {};
    return {adjacency_.data() + offset_[v], adjacency_.data() + offset_[v + 1]};
  }

  std::size_t degree(VertexId v) const { return incident(v).size(); }

  std::optional<EdgeId> find_edge(VertexId u, VertexId v) const {
    auto inc = incident(u);
    auto it = std::lower_bound(inc.begin(), inc.end(), v,
                               [](const Incidence& a, VertexId w) { return a.neighbor < w; });
    if (it != inc.end() && it->neighbor == v) return it->edge;
    return std::nullopt;
  }

  std::vector<VertexId> vertices() const {
    std::vector<VertexId> out;
    out.reserve(vertex_count_);
    for (VertexId v = 0; v < present_.size(); ++v)
      if (present_[v]) out.push_back(v);
    return out;
  }

  const std::vector<char>& vertex_mask() const { return present_; }

  const std::string& label(VertexId v) const { return (*labels_).at(v); }
  std::string name(VertexId v) const {
    const auto& l = label(v);
    return l.empty() ? std::to_string(v) : l;
  }
  std::shared_ptr<const std::vector<std::string>> label_table() const { return labels_; }

  std::optional<VertexId> find_vertex(std::string_view label) const {
    for (VertexId v = 0; v < labels_->size(); ++v)
      if (present_[v] && (*labels_)[v] == label) return v;
    return std::nullopt;
  }

  std::string element_name(ElementRef x) const {
    if (x.is_vertex()) return name(x.id());
    const Edge& e = edge(x.id());
    return "(" + name(e.u) + "," + name(e.v) + ")";
  }

 private:
  void assemble(std::vector<Edge> edges) {
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) { return a.id < b.id; });
    EdgeId bound = edges.empty() ? 0 : edges.back().id + 1;
    edge_slot_.assign(bound, kNoEdge);
    std::vector<std::uint32_t> deg(present_.size() + 1, 0);
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const Edge& e = edges[i];
      if (e.u == e.v) throw InputError("self-loop on vertex " + std::to_string(e.u));
      if (!has_vertex(e.u) || !has_vertex(e.v)) throw InputError("edge endpoint not in graph");
      if (edge_slot_[e.id] != kNoEdge) throw InputError("duplicate edge id");
      edge_slot_[e.id] = static_cast<EdgeId>(i);
      ++deg[e.u];
      ++deg[e.v];
    }
    offset_.assign(present_.size() + 1, 0);
    for (std::size_t v = 0; v < present_.size(); ++v) offset_[v + 1] = offset_[v] + deg[v];
    adjacency_.resize(offset_.back());
    std::vector<std::uint32_t> fill(offset_.begin(), offset_.end() - 1);
    for (const Edge& e : edges) {
      adjacency_[fill[e.u]++] = {e.v, e.id};
      adjacency_[fill[e.v]++] = {e.u, e.id};
    }
    for (std::size_t v = 0; v < present_.size(); ++v) {
      auto b = adjacency_.begin() + offset_[v];
      auto en = adjacency_.begin() + offset_[v + 1];
      std::sort(b, en, [](const Incidence& a, const Incidence& c) { return a.neighbor < c.neighbor; });
      for (auto it = b; it != en && it + 1 != en; ++it)
        if (it->neighbor == (it + 1)->neighbor) throw InputError("parallel edges are not allowed");
    }
    vertex_count_ = static_cast<std::size_t>(std::count(present_.begin(), present_.end(), 1));
    edges_ = std::move(edges);
  }

  std::shared_ptr<const std::vector<std::string>> labels_;
  std::vector<char> present_;
  std::vector<Edge> edges_;
  std::vector<EdgeId> edge_slot_;
  std::vector<std::uint32_t> offset_{0};
  std::vector<Incidence> adjacency_;
  std::size_t vertex_count_ = 0;
};

/// Unlabeled graph on vertices 0..n-1; edge ids follow the order of `pairs`.
inline Graph make_graph(std::size_t n, const std::vector<std::pair<VertexId, VertexId>>& pairs) {
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = std::to_string(i);
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (auto [u, v] : pairs) edges.push_back({static_cast<EdgeId>(edges.size()), u, v});
  return Graph(std::move(labels), std::move(edges));
}

inline Graph edge_subgraph(const Graph& g, std::span<const EdgeId> ids) {
  std::vector<char> present(g.vertex_bound(), 0);
  std::vector<Edge> edges;
  edges.reserve(ids.size());
  for (EdgeId id : ids) {
    const Edge& e = g.edge(id);
    present[e.u] = present[e.v] = 1;
    edges.push_back(e);
  }
  return Graph(g.label_table(), std::move(present), std::move(edges));
}

inline Graph induced_subgraph(const Graph& g, std::span<const VertexId> vs) {
  if (vs.empty()) throw InputError("induced_subgraph: empty vertex set");
  std::vector<char> present(g.vertex_bound(), 0);
  for (VertexId v : vs) {
    if (!g.has_vertex(v)) throw InputError("induced_subgraph: vertex not in graph");
    present[v] = 1;
  }
  std::vector<Edge> edges;
  for (const Edge& e : g.edges())
    if (present[e.u] && present[e.v]) edges.push_back(e);
  return Graph(g.label_table(), std::move(present), std::move(edges));
}

struct AddEdgeResult {
  Graph graph;
  EdgeId edge;
  bool already_present;
};

/// G plus (u,v). A new edge gets id edge_bound() of the input.
inline AddEdgeResult add_edge(const Graph& g, VertexId u, VertexId v) {
  if (u == v) throw InputError("add_edge: endpoints coincide");
  if (!g.has_vertex(u) || !g.has_vertex(v)) throw InputError("add_edge: unknown vertex");
  if (auto e = g.find_edge(u, v)) return {g, *e, true};
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  auto id = static_cast<EdgeId>(g.edge_bound());
  edges.push_back({id, u, v});
  return {Graph(g.label_table(), g.vertex_mask(), std::move(edges)), id, false};
}

inline Graph remove_edge(const Graph& g, EdgeId id) {
  g.edge(id);
  std::vector<Edge> edges;
  edges.reserve(g.edge_count());
  for (const Edge& e : g.edges())
    if (e.id != id) edges.push_back(e);
  return Graph(g.label_table(), g.vertex_mask(), std::move(edges));
}

struct Path {
  std::vector<VertexId> vertices;
  std::vector<EdgeId> edges;  // edges[i] joins vertices[i] and vertices[i+1]

  VertexId front() const { return vertices.front(); }
  VertexId back() const { return vertices.back(); }

  Path reversed() const {
    return {{vertices.rbegin(), vertices.rend()}, {edges.rbegin(), edges.rend()}};
  }

  bool contains(ElementRef x) const {
    if (x.is_vertex()) return std::find(vertices.begin(), vertices.end(), x.id()) != vertices.end();
    return std::find(edges.begin(), edges.end(), x.id()) != edges.end();
  }
};

/// vertices[0..k-1]; edges[i] joins vertices[i] and vertices[(i+1) % k].
struct Cycle {
  std::vector<VertexId> vertices;
  std::vector<EdgeId> edges;

  bool contains(ElementRef x) const {
    if (x.is_vertex()) return std::find(vertices.begin(), vertices.end(), x.id()) != vertices.end();
    return std::find(edges.begin(), edges.end(), x.id()) != edges.end();
  }
};

/// Builds a path from a vertex walk; consecutive vertices must be adjacent in g.
inline Path path_from_walk(const Graph& g, std::vector<VertexId> walk) {
  Path p;
  p.vertices = std::move(walk);
  for (std::size_t i = 0; i + 1 < p.vertices.size(); ++i) {
    auto e = g.find_edge(p.vertices[i], p.vertices[i + 1]);
    if (!e) throw InternalError("walk uses a non-edge");
    p.edges.push_back(*e);
  }
  return p;
}

inline Cycle cycle_from_walk(const Graph& g, std::vector<VertexId> walk) {
  Cycle c;
  c.vertices = std::move(walk);
  for (std::size_t i = 0; i < c.vertices.size(); ++i) {
    auto e = g.find_edge(c.vertices[i], c.vertices[(i + 1) % c.vertices.size()]);
    if (!e) throw InternalError("walk uses a non-edge");
    c.edges.push_back(*e);
  }
  return c;
}

namespace detail {

inline std::optional<std::string> check_steps(const Graph& g, const std::vector<VertexId>& vs,
                                              const std::vector<EdgeId>& es, bool closed) {
  std::vector<char> seen(g.vertex_bound(), 0);
  for (VertexId v : vs) {
    if (!g.has_vertex(v)) return "unknown vertex " + std::to_string(v);
    if (seen[v]) return "repeated vertex " + g.name(v);
    seen[v] = 1;
  }
  std::size_t steps = closed ? vs.size() : vs.size() - 1;
  if (es.size() != steps) return std::string("edge count does not match vertex count");
  for (std::size_t i = 0; i < steps; ++i) {
    if (!g.has_edge(es[i])) return "unknown edge " + std::to_string(es[i]);
    const Edge& e = g.edge(es[i]);
    VertexId a = vs[i], b = vs[(i + 1) % vs.size()];
    if (!(e.touches(a) && e.other(a) == b)) return "edge " + std::to_string(es[i]) + " not incident";
  }
  return std::nullopt;
}

inline std::optional<std::string> check_contains(const Graph& g, std::span<const ElementRef> required,
                                                 auto const& walk) {
  for (ElementRef x : required)
    if (!walk.contains(x)) return "missing element " + g.element_name(x);
  return std::nullopt;
}

}  // namespace detail

/// Structural validator. Returns a description of the first defect, or nothing.
inline std::optional<std::string> path_defect(const Graph& g, const Path& p,
                                              std::span<const ElementRef> required = {}) {
  if (p.vertices.empty()) return std::string("empty path");
  if (auto d = detail::check_steps(g, p.vertices, p.edges, false)) return d;
  return detail::check_contains(g, required, p);
}

inline std::optional<std::string> cycle_defect(const Graph& g, const Cycle& c,
                                               std::span<const ElementRef> required = {}) {
  if (c.vertices.size() < 3) return std::string("cycle shorter than 3");
  if (auto d = detail::check_steps(g, c.vertices, c.edges, true)) return d;
  return detail::check_contains(g, required, c);
}

}  // namespace mustpath
