#pragma once

#include <algorithm>
#include <iterator>
#include <optional>
#include <queue>
#include <vector>

#include "graph.hpp"

namespace mustpath {

struct BiconnectedScan {
  std::vector<std::vector<EdgeId>> blocks;  // edge sets, in discovery order
  std::vector<char> articulation;           // indexed by vertex id
  std::size_t components = 0;
};

/// Iterative Hopcroft-Tarjan lowpoint scan over the whole graph.
inline BiconnectedScan scan_biconnected(const Graph& g) {
  const std::size_t n = g.vertex_bound();
  BiconnectedScan out;
  out.articulation.assign(n, 0);
  std::vector<std::uint32_t> disc(n, 0), low(n, 0);
  std::uint32_t clock = 0;
  struct Frame {
    VertexId v;
    EdgeId via;
    std::size_t next;
    std::uint32_t children;
  };
  std::vector<Frame> stack;
  std::vector<EdgeId> edge_stack;

  for (VertexId root : g.vertices()) {
    if (disc[root]) continue;
    ++out.components;
    disc[root] = low[root] = ++clock;
    stack.push_back({root, kNoEdge, 0, 0});
    while (!stack.empty()) {
      Frame& f = stack.back();
      auto inc = g.incident(f.v);
      if (f.next < inc.size()) {
        Incidence i = inc[f.next++];
        if (i.edge == f.via) continue;
        if (!disc[i.neighbor]) {
          edge_stack.push_back(i.edge);
          ++f.children;
          disc[i.neighbor] = low[i.neighbor] = ++clock;
          stack.push_back({i.neighbor, i.edge, 0, 0});
        } else if (disc[i.neighbor] < disc[f.v]) {
          edge_stack.push_back(i.edge);
          low[f.v] = std::min(low[f.v], disc[i.neighbor]);
        }
        continue;
      }
      Frame done = f;
      stack.pop_back();
      if (stack.empty()) {
        if (done.children > 1) out.articulation[done.v] = 1;
        continue;
      }
      Frame& parent = stack.back();
      low[parent.v] = std::min(low[parent.v], low[done.v]);
      if (low[done.v] >= disc[parent.v]) {
        if (stack.size() > 1) out.articulation[parent.v] = 1;
        std::vector<EdgeId> block;
        while (true) {
          EdgeId e = edge_stack.back();
          edge_stack.pop_back();
          block.push_back(e);
          if (e == done.via) break;
        }
        out.blocks.push_back(std::move(block));
      }
    }
  }
  return out;
}

inline bool is_connected(const Graph& g) {
  auto vs = g.vertices();
  if (vs.empty()) return true;
  std::vector<char> seen(g.vertex_bound(), 0);
  std::vector<VertexId> todo{vs.front()};
  seen[vs.front()] = 1;
  std::size_t reached = 1;
  while (!todo.empty()) {
    VertexId v = todo.back();
    todo.pop_back();
    for (auto [w, e] : g.incident(v))
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        todo.push_back(w);
      }
  }
  return reached == g.vertex_count();
}

/// Connected, at least two vertices, no articulation vertex (K2 counts).
inline bool is_biconnected(const Graph& g) {
  if (g.vertex_count() < 2) return false;
  auto scan = scan_biconnected(g);
  if (scan.components != 1) return false;
  return std::none_of(scan.articulation.begin(), scan.articulation.end(), [](char c) { return c; });
}

struct Block {
  std::size_t id = 0;
  std::vector<VertexId> vertices;  // ascending
  std::vector<EdgeId> edges;       // ascending
  bool trivial = false;            // a single bridge edge
};

struct BlockTree {
  std::vector<Block> blocks;  // ordered by smallest contained edge id
  std::vector<VertexId> articulation_vertices;
  std::vector<std::vector<std::size_t>> blocks_of;  // vertex id -> blocks containing it
  std::vector<std::size_t> block_of_edge;           // edge id -> block

  bool is_articulation(VertexId v) const { return v < blocks_of.size() && blocks_of[v].size() >= 2; }

  Graph subgraph(const Graph& g, std::size_t b) const { return edge_subgraph(g, blocks.at(b).edges); }

  /// Block holding every given element, if any.
  std::optional<std::size_t> common_block(std::span<const ElementRef> elems) const {
    std::optional<std::vector<std::size_t>> candidates;
    for (ElementRef x : elems) {
      std::vector<std::size_t> mine;
      if (x.is_edge())
        mine = {block_of_edge.at(x.id())};
      else
        mine = blocks_of.at(x.id());
      if (!candidates) {
        candidates = std::move(mine);
        continue;
      }
      std::vector<std::size_t> keep;
      std::set_intersection(candidates->begin(), candidates->end(), mine.begin(), mine.end(),
                            std::back_inserter(keep));
      candidates = std::move(keep);
    }
    if (!candidates || candidates->empty()) return std::nullopt;
    return candidates->front();
  }
};

inline BlockTree find_blocks(const Graph& g) {
  auto scan = scan_biconnected(g);
  if (scan.components > 1) throw InputError("find_blocks: graph is disconnected");
  BlockTree t;
  for (auto& es : scan.blocks) std::sort(es.begin(), es.end());
  std::sort(scan.blocks.begin(), scan.blocks.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  t.blocks_of.assign(g.vertex_bound(), {});
  t.block_of_edge.assign(g.edge_bound(), static_cast<std::size_t>(-1));
  for (std::size_t b = 0; b < scan.blocks.size(); ++b) {
    Block blk;
    blk.id = b;
    blk.edges = std::move(scan.blocks[b]);
    for (EdgeId e : blk.edges) {
      t.block_of_edge[e] = b;
      blk.vertices.push_back(g.edge(e).u);
      blk.vertices.push_back(g.edge(e).v);
    }
    std::sort(blk.vertices.begin(), blk.vertices.end());
    blk.vertices.erase(std::unique(blk.vertices.begin(), blk.vertices.end()), blk.vertices.end());
    for (VertexId v : blk.vertices) t.blocks_of[v].push_back(b);
    blk.trivial = blk.edges.size() == 1;
    t.blocks.push_back(std::move(blk));
  }
  for (VertexId v = 0; v < t.blocks_of.size(); ++v)
    if (t.blocks_of[v].size() >= 2) t.articulation_vertices.push_back(v);
  return t;
}

inline std::optional<Graph> reduce_to_common_block(const Graph& g, VertexId s, VertexId t) {
  if (s == t) throw InputError("reduce_to_common_block: s = t");
  BlockTree bt = find_blocks(g);
  ElementRef ends[] = {ElementRef::vertex(s), ElementRef::vertex(t)};
  auto b = bt.common_block(ends);
  if (!b) return std::nullopt;
  return bt.subgraph(g, *b);
}

/// Returns g when its blocks form a chain with s and t strictly inside the two
/// end blocks, i.e. exactly when g plus (s,t) is biconnected.
inline std::optional<Graph> pep_chain_reduction(const Graph& g, VertexId s, VertexId t) {
  if (s == t) throw InputError("pep_chain_reduction: s = t");
  BlockTree bt = find_blocks(g);
  const std::size_t nb = bt.blocks.size();
  if (nb == 1) return g;
  if (bt.is_articulation(s) || bt.is_articulation(t)) return std::nullopt;
  std::vector<std::size_t> cut_count(nb, 0);
  for (VertexId a : bt.articulation_vertices) {
    if (bt.blocks_of[a].size() != 2) return std::nullopt;
    for (std::size_t b : bt.blocks_of[a]) ++cut_count[b];
  }
  std::size_t bs = bt.blocks_of.at(s).front();
  std::size_t btt = bt.blocks_of.at(t).front();
  if (bs == btt) return std::nullopt;
  for (std::size_t b = 0; b < nb; ++b) {
    std::size_t want = (b == bs || b == btt) ? 1 : 2;
    if (cut_count[b] != want) return std::nullopt;
  }
  return g;
}

}  // namespace mustpath
