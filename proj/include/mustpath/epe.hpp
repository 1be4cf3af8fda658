#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "connectivity.hpp"
#include "flow.hpp"
#include "spqr.hpp"

namespace mustpath {

/// Ordered 2-edge cuts between s' and t', nearest to s' first. Each pair is
/// stored with the smaller edge id first.
using CutSequence = std::vector<std::pair<EdgeId, EdgeId>>;

/// All 2-edge s'-t' cuts of c_minus, where c_minus plus (s',t') is
/// triconnected. Empty when three edge-disjoint s'-t' paths exist.
inline CutSequence find_2_edge_cuts(const Graph& c_minus, VertexId s_prime, VertexId t_prime) {
  if (!c_minus.has_vertex(s_prime) || !c_minus.has_vertex(t_prime) || s_prime == t_prime)
    throw InputError("find_2_edge_cuts: bad terminals");
  if (debug_checks()) {
    auto plus = add_edge(c_minus, s_prime, t_prime);
    if (!is_k_connected(plus.graph, 3)) throw InputError("find_2_edge_cuts: graph plus (s',t') is not triconnected");
  }
  auto net = FlowNetwork::edge_capacity(c_minus, s_prime, t_prime);
  if (max_flow(net, 2) < 2) throw InputError("find_2_edge_cuts: fewer than two edge-disjoint paths");
  if (net.augment()) return {};

  const auto& arcs = net.arcs();
  std::vector<char> labeled(c_minus.vertex_bound(), 0);
  std::vector<VertexId> queue{s_prime};
  labeled[s_prime] = 1;
  std::vector<std::uint32_t> frontier;  // saturated arcs leaving the labeled set
  CutSequence cuts;
  std::size_t head = 0;
  while (true) {
    while (head < queue.size()) {
      VertexId x = queue[head++];
      for (std::uint32_t a : net.out_arcs(x)) {
        VertexId y = arcs[a].to;
        if (labeled[y]) continue;
        if (net.residual(a) > 0) {
          labeled[y] = 1;
          queue.push_back(y);
        } else {
          frontier.push_back(a);
        }
      }
    }
    if (labeled[t_prime]) break;
    std::vector<std::uint32_t> crossing;
    for (std::uint32_t a : frontier)
      if (!labeled[arcs[a].to]) crossing.push_back(a);
    frontier.clear();
    if (crossing.size() != 2) throw InternalError("find_2_edge_cuts: frontier is not a 2-edge cut");
    EdgeId e1 = arcs[crossing[0]].origin.id(), e2 = arcs[crossing[1]].origin.id();
    cuts.push_back(std::minmax(e1, e2));
    for (std::uint32_t a : crossing) {
      VertexId y = arcs[a].to;
      if (!labeled[y]) {
        labeled[y] = 1;
        queue.push_back(y);
      }
    }
  }
  return cuts;
}

struct ExclusionEdge {
  std::uint32_t slot;  // virtual skeleton slot of the group's component
  std::size_t size;    // vertices of its split subgraph, poles excluded
  friend bool operator==(const ExclusionEdge&, const ExclusionEdge&) = default;
};

/// Every cross pair between the vertex sets of two distinct listed edges is
/// an excluded pair.
struct ExclusionGroup {
  ComponentId component;
  std::vector<ExclusionEdge> edges;
  friend bool operator==(const ExclusionGroup&, const ExclusionGroup&) = default;
};

struct ExclusionReport {
  std::vector<ExclusionGroup> groups;
  std::uint64_t total_pairs = 0;
};

struct EpeResult {
  Graph plus;                  // g with (s,t) added
  EdgeId st_edge = kNoEdge;
  std::optional<SpqrTree> tree;  // absent when g plus (s,t) has fewer than three edges
  ExclusionReport report;
};

/// Exclusion groups from a decomposition, traversed from the component where
/// edge st is real.
inline ExclusionReport epe(const SpqrTree& t, EdgeId st) {
  const auto [root, root_slot] = t.edge_home(st);
  const std::size_t nc = t.size();
  // Rooted layout: parent slot in each component, preorder.
  std::vector<std::uint32_t> in_slot(nc, kNoSlot);
  std::vector<ComponentId> order{root};
  std::vector<char> seen(nc, 0);
  seen[root] = 1;
  in_slot[root] = root_slot;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Component& c = t.component(order[i]);
    for (std::uint32_t k = 0; k < c.edges.size(); ++k) {
      const SkeletonEdge& se = c.edges[k];
      if (!se.is_virtual() || seen[se.twin_component]) continue;
      seen[se.twin_component] = 1;
      in_slot[se.twin_component] = se.twin_edge;
      order.push_back(se.twin_component);
    }
  }
  // Inner vertex counts: a vertex is counted at the component nearest the root.
  std::vector<char> placed(t.graph().vertex_bound(), 0);
  std::vector<std::size_t> below(nc, 0);
  for (ComponentId c : order)
    for (VertexId v : t.component(c).vertices)
      if (!placed[v]) {
        placed[v] = 1;
        ++below[c];
      }
  for (std::size_t i = order.size(); i-- > 1;) {
    ComponentId c = order[i];
    const SkeletonEdge& up = t.component(c).edges[in_slot[c]];
    below[up.twin_component] += below[c];
  }
  auto size_of = [&](ComponentId c, std::uint32_t slot) { return below[t.component(c).edges[slot].twin_component]; };

  ExclusionReport rep;
  auto emit = [&](ComponentId c, std::vector<std::uint32_t> slots) {
    ExclusionGroup grp{c, {}};
    for (std::uint32_t k : slots) grp.edges.push_back({k, size_of(c, k)});
    for (std::size_t i = 0; i < grp.edges.size(); ++i)
      for (std::size_t j = i + 1; j < grp.edges.size(); ++j)
        rep.total_pairs += static_cast<std::uint64_t>(grp.edges[i].size) * grp.edges[j].size;
    rep.groups.push_back(std::move(grp));
  };

  for (ComponentId cid : order) {
    const Component& c = t.component(cid);
    const std::uint32_t in = in_slot[cid];
    if (debug_checks() && cid != root) {
      auto r = t.representative(cid, ElementRef::edge(st));
      if (!(r == Representative::virtual_edge(cid, in))) throw InternalError("epe: incoming slot is not the st representative");
    }
    const VertexId sp = c.edges[in].u, tp = c.edges[in].v;
    std::vector<std::uint32_t> down;
    for (std::uint32_t k = 0; k < c.edges.size(); ++k)
      if (k != in && c.edges[k].is_virtual()) down.push_back(k);
    if (c.kind == ComponentKind::P) {
      if (down.size() >= 2) emit(cid, down);
    } else if (c.kind == ComponentKind::R) {
      for (VertexId u : {sp, tp}) {
        std::vector<std::uint32_t> at;
        for (std::uint32_t k : down)
          if (c.edges[k].touches(u)) at.push_back(k);
        if (at.size() >= 2) emit(cid, at);
      }
      if (down.size() >= 2) {
        Graph minus = remove_edge(t.skeleton_graph(cid), in);
        for (auto [a, b] : find_2_edge_cuts(minus, sp, tp)) {
          const SkeletonEdge& ea = c.edges[a];
          const SkeletonEdge& eb = c.edges[b];
          if (!ea.is_virtual() || !eb.is_virtual()) continue;
          if ((ea.touches(sp) && eb.touches(sp)) || (ea.touches(tp) && eb.touches(tp))) continue;
          emit(cid, {a, b});
        }
      }
    }
  }
  return rep;
}

/// Exclusion pairs for s-t paths in g; g plus (s,t) must be biconnected.
inline EpeResult epe(const Graph& g, VertexId s, VertexId t) {
  if (!g.has_vertex(s) || !g.has_vertex(t)) throw InputError("vertex id out of range");
  if (s == t) throw InputError("s and t must differ");
  auto plus = add_edge(g, s, t);
  if (!is_biconnected(plus.graph)) throw InputError("g plus (s,t) is not biconnected");
  EpeResult out{plus.graph, plus.edge, std::nullopt, {}};
  if (plus.graph.edge_count() < 3) return out;
  out.tree = SpqrTree::build(plus.graph);
  out.report = epe(*out.tree, plus.edge);
  return out;
}

/// Deduplicated cross pairs (smaller id first) of every group.
inline std::set<std::pair<VertexId, VertexId>> expand_explicit(const SpqrTree& t, const ExclusionReport& rep) {
  std::set<std::pair<VertexId, VertexId>> out;
  for (const ExclusionGroup& grp : rep.groups) {
    std::vector<std::vector<VertexId>> sets;
    for (const ExclusionEdge& e : grp.edges) sets.push_back(t.split_inner_vertices(grp.component, e.slot));
    for (std::size_t i = 0; i < sets.size(); ++i)
      for (std::size_t j = i + 1; j < sets.size(); ++j)
        for (VertexId a : sets[i])
          for (VertexId b : sets[j]) out.insert(std::minmax(a, b));
  }
  return out;
}

inline std::set<std::pair<VertexId, VertexId>> expand_explicit(const EpeResult& r) {
  if (!r.tree) return {};
  return expand_explicit(*r.tree, r.report);
}

}  // namespace mustpath
