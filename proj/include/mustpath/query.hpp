#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "connectivity.hpp"
#include "spqr.hpp"

namespace mustpath {

enum class CepReason {
  VertexRepresentative,
  SNode,
  PNodeAllEdges,
  CommonEndpoint,
  ThreeEdgeCut,
  RNodeClear,
  NotSameBlock,
};

inline const char* reason_name(CepReason r) {
  switch (r) {
    case CepReason::VertexRepresentative: return "VertexRepresentative";
    case CepReason::SNode: return "SNode";
    case CepReason::PNodeAllEdges: return "PNodeAllEdges";
    case CepReason::CommonEndpoint: return "CommonEndpoint";
    case CepReason::ThreeEdgeCut: return "ThreeEdgeCut";
    case CepReason::RNodeClear: return "RNodeClear";
    case CepReason::NotSameBlock: return "NotSameBlock";
  }
  return "?";
}

struct CentralInfo {
  std::size_t block;
  ComponentId component;
  ComponentKind kind;
};

struct CepVerdict {
  bool answer = false;
  CepReason reason = CepReason::NotSameBlock;
  std::optional<CentralInfo> central;
};

inline bool shares_common_endpoint(const Component& c, std::uint32_t e1, std::uint32_t e2, std::uint32_t e3) {
  const SkeletonEdge& a = c.edges.at(e1);
  const SkeletonEdge& b = c.edges.at(e2);
  const SkeletonEdge& d = c.edges.at(e3);
  for (VertexId v : {a.u, a.v})
    if (b.touches(v) && d.touches(v)) return true;
  return false;
}

/// Whether deleting the three skeleton edges disconnects an R skeleton.
inline bool is_three_edge_cut(const Component& c, std::uint32_t e1, std::uint32_t e2, std::uint32_t e3) {
  if (c.kind != ComponentKind::R) throw InputError("is_three_edge_cut: component is not rigid");
  if (e1 == e2 || e1 == e3 || e2 == e3) throw InputError("is_three_edge_cut: edges not distinct");
  const std::size_t n = c.vertices.size();
  auto index = [&](VertexId v) {
    return static_cast<std::size_t>(std::lower_bound(c.vertices.begin(), c.vertices.end(), v) - c.vertices.begin());
  };
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::uint32_t i = 0; i < c.edges.size(); ++i) {
    if (i == e1 || i == e2 || i == e3) continue;
    std::size_t a = index(c.edges[i].u), b = index(c.edges[i].v);
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<char> seen(n, 0);
  std::vector<std::size_t> todo{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!todo.empty()) {
    std::size_t x = todo.back();
    todo.pop_back();
    for (std::size_t y : adj[x])
      if (!seen[y]) {
        seen[y] = 1;
        ++reached;
        todo.push_back(y);
      }
  }
  return reached < n;
}

/// Theorem-4.4 style decision inside one decomposition.
inline CepVerdict decide_in_tree(const SpqrTree& t, ElementRef x1, ElementRef x2, ElementRef x3,
                                 std::size_t block = 0) {
  ComponentId c = t.central_component(x1, x2, x3);
  const Component& comp = t.component(c);
  CepVerdict v;
  v.central = CentralInfo{block, c, comp.kind};
  Representative r[] = {t.representative(c, x1), t.representative(c, x2), t.representative(c, x3)};
  if (r[0].is_vertex() || r[1].is_vertex() || r[2].is_vertex()) {
    v.answer = true;
    v.reason = CepReason::VertexRepresentative;
  } else if (comp.kind == ComponentKind::S) {
    v.answer = true;
    v.reason = CepReason::SNode;
  } else if (comp.kind == ComponentKind::P) {
    v.answer = false;
    v.reason = CepReason::PNodeAllEdges;
  } else if (shares_common_endpoint(comp, r[0].edge, r[1].edge, r[2].edge)) {
    v.answer = false;
    v.reason = CepReason::CommonEndpoint;
  } else if (is_three_edge_cut(comp, r[0].edge, r[1].edge, r[2].edge)) {
    v.answer = false;
    v.reason = CepReason::ThreeEdgeCut;
  } else {
    v.answer = true;
    v.reason = CepReason::RNodeClear;
  }
  return v;
}

/// Query engine over one graph. Decompositions are built per block on first
/// use and cached.
class Engine {
 public:
  explicit Engine(Graph g) : graph_(std::move(g)) {
    if (!is_connected(graph_)) throw InputError("graph is disconnected");
    blocks_ = find_blocks(graph_);
  }

  const Graph& graph() const { return graph_; }
  const BlockTree& blocks() const { return blocks_; }

  void check_elements(ElementRef x1, ElementRef x2, ElementRef x3) const {
    for (ElementRef x : {x1, x2, x3})
      if (!graph_.has_element(x)) throw InputError("element id out of range");
    if (x1 == x2 || x1 == x3 || x2 == x3) throw InputError("elements are not distinct");
  }

  /// Block holding all three elements, if it is a proper biconnected block.
  std::optional<std::size_t> block_of(ElementRef x1, ElementRef x2, ElementRef x3) const {
    ElementRef xs[] = {x1, x2, x3};
    auto b = blocks_.common_block(xs);
    if (!b || blocks_.blocks[*b].trivial) return std::nullopt;
    return b;
  }

  const SpqrTree& tree(std::size_t block) const {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find(block);
    if (it == cache_.end())
      it = cache_.emplace(block, std::make_shared<const SpqrTree>(SpqrTree::build(blocks_.subgraph(graph_, block))))
               .first;
    return *it->second;
  }

  CepVerdict cep(ElementRef x1, ElementRef x2, ElementRef x3) const {
    check_elements(x1, x2, x3);
    auto b = block_of(x1, x2, x3);
    if (!b) return {};
    return decide_in_tree(tree(*b), x1, x2, x3, *b);
  }

 private:
  Graph graph_;
  BlockTree blocks_;
  mutable std::mutex mutex_;
  mutable std::map<std::size_t, std::shared_ptr<const SpqrTree>> cache_;
};

inline CepVerdict cep_decide(const Graph& g, ElementRef x1, ElementRef x2, ElementRef x3) {
  return Engine(g).cep(x1, x2, x3);
}

inline void check_pep_vertices(const Graph& g, VertexId s, VertexId t, VertexId w1, VertexId w2) {
  for (VertexId v : {s, t, w1, w2})
    if (!g.has_vertex(v)) throw InputError("vertex id out of range");
  VertexId vs[] = {s, t, w1, w2};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (vs[i] == vs[j]) throw InputError("s, t, w1, w2 must be distinct");
}

/// Path existence through the cycle question on g plus (s,t).
inline CepVerdict pep_decide(const Graph& g, VertexId s, VertexId t, VertexId w1, VertexId w2) {
  check_pep_vertices(g, s, t, w1, w2);
  auto plus = add_edge(g, s, t);
  return cep_decide(plus.graph, ElementRef::edge(plus.edge), ElementRef::vertex(w1), ElementRef::vertex(w2));
}

}  // namespace mustpath
