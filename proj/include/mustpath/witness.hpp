#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <vector>

#include "flow.hpp"
#include "query.hpp"
#include "spqr.hpp"

namespace mustpath {

/// Which construction produced a cycle through three edges of a
/// triconnected graph.
enum class ThreeEdgeCase {
  Triangle,           // the edges close a triangle
  Chain,              // consecutive edges forming a path of length three
  SharedVertex,       // two edges share a vertex, the third is disjoint
  CrossSplice,        // disjoint paths pair the first edge with t and the second with s
  DetourSplice,       // an s-t detour avoiding the ladder, hooked onto one rail
  ConnectorsBothSides,  // s and t each reach both rails; they meet on one
  ConnectorsOneSide,    // they meet on a rail only one of them fully covers
  BridgeUnderSource,  // a rung leaves the s rail below its top attachment
  BridgeUnderTarget,  // a rung leaves the t rail below its top attachment
  BypassStraight,     // all rungs high; bypass paths pair top with top
  BypassCrossed,      // all rungs high; bypass paths pair top with rung foot
};

inline const char* case_name(ThreeEdgeCase c) {
  switch (c) {
    case ThreeEdgeCase::Triangle: return "Triangle";
    case ThreeEdgeCase::Chain: return "Chain";
    case ThreeEdgeCase::SharedVertex: return "SharedVertex";
    case ThreeEdgeCase::CrossSplice: return "CrossSplice";
    case ThreeEdgeCase::DetourSplice: return "DetourSplice";
    case ThreeEdgeCase::ConnectorsBothSides: return "ConnectorsBothSides";
    case ThreeEdgeCase::ConnectorsOneSide: return "ConnectorsOneSide";
    case ThreeEdgeCase::BridgeUnderSource: return "BridgeUnderSource";
    case ThreeEdgeCase::BridgeUnderTarget: return "BridgeUnderTarget";
    case ThreeEdgeCase::BypassStraight: return "BypassStraight";
    case ThreeEdgeCase::BypassCrossed: return "BypassCrossed";
  }
  return "?";
}

/// Counters for rare construction paths.
struct WitnessStats {
  std::size_t bypass_widenings = 0;
};

inline WitnessStats& witness_stats() {
  static thread_local WitnessStats stats;
  return stats;
}

namespace detail {

/// side[i..j] inclusive, walking down when j < i.
inline std::vector<VertexId> run(const std::vector<VertexId>& side, std::size_t i, std::size_t j) {
  std::vector<VertexId> out;
  if (i <= j)
    for (std::size_t k = i; k <= j; ++k) out.push_back(side[k]);
  else
    for (std::size_t k = i + 1; k-- > j;) out.push_back(side[k]);
  return out;
}

inline void extend(std::vector<VertexId>& walk, const std::vector<VertexId>& more, std::size_t skip = 0) {
  if (skip < more.size()) walk.insert(walk.end(), more.begin() + static_cast<std::ptrdiff_t>(skip), more.end());
}

inline std::vector<VertexId> reversed(std::vector<VertexId> v) {
  std::reverse(v.begin(), v.end());
  return v;
}

inline void check_cycle(const Graph& g, const Cycle& c, std::span<const ElementRef> need, const char* where) {
  if (auto d = cycle_defect(g, c, need)) throw InternalError(std::string(where) + ": " + *d);
}

/// BFS from `from` through vertices flagged in `allowed` until a neighbor
/// equals `target`. Returns the walk from..target, or empty.
inline std::vector<VertexId> walk_within(const Graph& g, VertexId from, VertexId target,
                                         const std::vector<char>& allowed) {
  std::vector<VertexId> prev(g.vertex_bound(), kNoVertex);
  std::vector<VertexId> queue{from};
  prev[from] = from;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    VertexId x = queue[i];
    for (auto [y, e] : g.incident(x)) {
      if (y == target) {
        std::vector<VertexId> walk{target};
        for (VertexId z = x;; z = prev[z]) {
          walk.push_back(z);
          if (z == from) break;
        }
        std::reverse(walk.begin(), walk.end());
        return walk;
      }
      if (prev[y] != kNoVertex || !allowed[y]) continue;
      prev[y] = x;
      queue.push_back(y);
    }
  }
  return {};
}

/// Replaces the forward arc L[i] -> L[j] by `detour` (which runs L[i]..L[j]).
inline std::vector<VertexId> splice_arc(const std::vector<VertexId>& cyc, std::size_t i, std::size_t j,
                                        const std::vector<VertexId>& detour) {
  const std::size_t n = cyc.size();
  std::vector<VertexId> walk;
  for (std::size_t k = j;; k = (k + 1) % n) {
    walk.push_back(cyc[k]);
    if (k == i) break;
  }
  // walk ends at cyc[i]; detour goes cyc[i] .. cyc[j], and cyc[j] opens the walk.
  walk.insert(walk.end(), detour.begin() + 1, detour.end() - 1);
  return walk;
}

inline Cycle base_cycle(const Graph& h, ElementRef a, ElementRef b) {
  std::vector<VertexId> walk;
  auto fail = [] { return InternalError("tri_cycle_upto_two_edges: graph is not triconnected"); };
  if (a.is_edge() && b.is_edge()) {
    const Edge& ea = h.edge(a.id());
    const Edge& eb = h.edge(b.id());
    VertexId sa[] = {ea.u, ea.v};
    VertexId sb[] = {eb.u, eb.v};
    auto ps = vertex_disjoint_paths(h, sa, sb, 2);
    if (!ps) throw fail();
    walk = (*ps)[0].vertices;
    extend(walk, reversed((*ps)[1].vertices));
  } else if (a.is_edge() || b.is_edge()) {
    const Edge& e = h.edge(a.is_edge() ? a.id() : b.id());
    VertexId w = a.is_edge() ? b.id() : a.id();
    if (e.touches(w)) {
      auto ps = vertex_disjoint_paths(h, e.u, e.v, 2);
      if (!ps) throw fail();
      const Path& longer = (*ps)[0].vertices.size() > 2 ? (*ps)[0] : (*ps)[1];
      walk = longer.vertices;
    } else {
      VertexId sw[] = {w};
      VertexId se[] = {e.u, e.v};
      auto ps = vertex_disjoint_paths(h, sw, se, 2);
      if (!ps) throw fail();
      walk = reversed((*ps)[0].vertices);
      extend(walk, (*ps)[1].vertices, 1);
    }
  } else {
    auto ps = vertex_disjoint_paths(h, a.id(), b.id(), 2);
    if (!ps) throw fail();
    walk = (*ps)[0].vertices;
    auto back = reversed((*ps)[1].vertices);
    walk.insert(walk.end(), back.begin() + 1, back.end() - 1);
  }
  return cycle_from_walk(h, std::move(walk));
}

/// Routes vertex w into cycle L through a 3-fan, splicing the detour over an
/// arc free of the marked elements.
inline Cycle insert_vertex(const Graph& h, const Cycle& L, VertexId w, std::span<const ElementRef> marked) {
  auto ps = vertex_disjoint_paths(h, std::span<const VertexId>(&w, 1), L.vertices, 3);
  if (!ps) throw InternalError("tri_cycle_upto_two_edges: no 3-fan onto the cycle");
  const std::size_t n = L.vertices.size();
  std::vector<std::pair<std::size_t, std::size_t>> ends;  // (position on L, path index)
  for (std::size_t i = 0; i < 3; ++i) {
    auto pos = static_cast<std::size_t>(std::find(L.vertices.begin(), L.vertices.end(), (*ps)[i].back()) -
                                        L.vertices.begin());
    ends.push_back({pos, i});
  }
  std::sort(ends.begin(), ends.end());
  for (std::size_t k = 0; k < 3; ++k) {
    auto [pi, a] = ends[k];
    auto [pj, b] = ends[(k + 1) % 3];
    bool free = true;
    for (std::size_t x = pi; free && x != pj; x = (x + 1) % n) {
      if (std::find(marked.begin(), marked.end(), ElementRef::edge(L.edges[x])) != marked.end()) free = false;
      if (x != pi && std::find(marked.begin(), marked.end(), ElementRef::vertex(L.vertices[x])) != marked.end())
        free = false;
    }
    if (!free) continue;
    std::vector<VertexId> detour = reversed((*ps)[a].vertices);
    extend(detour, (*ps)[b].vertices, 1);
    return cycle_from_walk(h, splice_arc(L.vertices, pi, pj, detour));
  }
  throw InternalError("tri_cycle_upto_two_edges: every arc carries a marked element");
}

}  // namespace detail

/// Cycle through three elements, at most two of them edges, of a
/// triconnected graph: a cycle through the first two, then a fan splice.
inline Cycle tri_cycle_upto_two_edges(const Graph& h, std::span<const ElementRef> elems) {
  if (elems.size() != 3) throw InputError("tri_cycle_upto_two_edges: need three elements");
  std::vector<ElementRef> order;
  for (ElementRef x : elems) {
    if (!h.has_element(x)) throw InputError("tri_cycle_upto_two_edges: unknown element");
    if (x.is_edge()) order.push_back(x);
  }
  if (order.size() > 2) throw InputError("tri_cycle_upto_two_edges: more than two edges");
  for (ElementRef x : elems)
    if (x.is_vertex()) order.push_back(x);
  Cycle c = detail::base_cycle(h, order[0], order[1]);
  if (!c.contains(order[2])) {
    ElementRef marked[] = {order[0], order[1]};
    c = detail::insert_vertex(h, c, order[2].id(), marked);
  }
  detail::check_cycle(h, c, elems, "tri_cycle_upto_two_edges");
  return c;
}

/// Joins s to t through a cycle L: from_s runs s..p and from_t runs t..q
/// with p, q on L and nothing else shared. Walks L from p to q the long way,
/// i.e. the way that passes both must-edges.
inline Path splice_path(const Graph& g, const Cycle& L, EdgeId e1, EdgeId e2, const Path& from_s,
                        const Path& from_t) {
  const std::size_t n = L.vertices.size();
  auto at = [&](VertexId v) {
    auto it = std::find(L.vertices.begin(), L.vertices.end(), v);
    if (it == L.vertices.end()) throw InputError("splice_path: attachment not on the cycle");
    return static_cast<std::size_t>(it - L.vertices.begin());
  };
  const std::size_t p = at(from_s.back()), q = at(from_t.back());
  if (p == q) throw InputError("splice_path: attachments coincide");
  for (int dir : {1, -1}) {
    std::vector<VertexId> arc;
    bool has1 = false, has2 = false;
    for (std::size_t k = p;;) {
      arc.push_back(L.vertices[k]);
      if (k == q) break;
      std::size_t next = dir > 0 ? (k + 1) % n : (k + n - 1) % n;
      EdgeId used = dir > 0 ? L.edges[k] : L.edges[next];
      has1 |= used == e1;
      has2 |= used == e2;
      k = next;
    }
    if (!(has1 && has2)) continue;
    std::vector<VertexId> walk = from_s.vertices;
    detail::extend(walk, arc, 1);
    detail::extend(walk, from_t.reversed().vertices, 1);
    Path out = path_from_walk(g, std::move(walk));
    ElementRef need[] = {ElementRef::edge(e1), ElementRef::edge(e2)};
    if (auto d = path_defect(g, out, need)) throw InternalError("splice_path: " + *d);
    return out;
  }
  throw InputError("splice_path: attachments lie on different sides of the must-edges");
}

namespace detail {

/// Two disjoint rails between the must-edges: left runs u..v and right runs
/// u'..v', with (u,u') and (v,v') the must-edges; s and t lie off the rails.
struct Ladder {
  VertexId s, t;
  std::vector<VertexId> left, right;
};

class LadderSolver {
 public:
  explicit LadderSolver(const Graph& h) : h_(h) {}

  std::vector<VertexId> solve(Ladder L, ThreeEdgeCase& taken, int flips = 0) {
    if (flips > 8) throw InternalError("ladder: symmetry normalization did not settle");
    prepare(L);

    // Connectors meeting on one rail at distinct feet.
    for (int side = 0; side < 2; ++side) {
      const auto& es = ext_s_[side];
      const auto& et = ext_t_[side];
      if (es.empty() || et.empty()) continue;
      std::optional<std::pair<std::size_t, std::size_t>> pick;
      for (std::size_t a : es) {
        for (std::size_t b : et)
          if (a != b) {
            pick = {a, b};
            break;
          }
        if (pick) break;
      }
      if (!pick) continue;
      const auto& rail = side == 0 ? L.left : L.right;
      bool both = !ext_s_[0].empty() && !ext_s_[1].empty() && !ext_t_[0].empty() && !ext_t_[1].empty();
      taken = both ? ThreeEdgeCase::ConnectorsBothSides : ThreeEdgeCase::ConnectorsOneSide;
      Path ps = path_from_walk(h_, connector(L.s, rail[pick->first], region_s_));
      Path pt = path_from_walk(h_, connector(L.t, rail[pick->second], region_t_));
      Cycle ring = ring_of(L);
      EdgeId e1 = *h_.find_edge(L.left.front(), L.right.front());
      EdgeId e2 = *h_.find_edge(L.left.back(), L.right.back());
      return splice_path(h_, ring, e1, e2, ps, pt).vertices;
    }

    // From here on s reaches exactly one rail and t exactly the other.
    if (ext_s_[0].empty()) {
      std::swap(L.left, L.right);
      return solve(std::move(L), taken, flips + 1);
    }
    if (!ext_s_[1].empty() || !ext_t_[0].empty() || ext_t_[1].empty())
      throw InternalError("ladder: connector layout contradicts triconnectivity");

    const std::size_t sN = ext_s_[0].back(), sS = ext_s_[0].front();
    const std::size_t tN = ext_t_[1].back(), tS = ext_t_[1].front();
    auto rungs = find_rungs(L);
    if (rungs.empty()) throw InternalError("ladder: no rung, the must-edges form an edge cut");

    for (const Rung& r : rungs)
      if (r.l < sN && r.r > tS) {
        taken = ThreeEdgeCase::BridgeUnderSource;
        std::vector<VertexId> w = connector(L.s, L.left[sN], region_s_);
        extend(w, run(L.left, sN, L.left.size() - 1), 1);
        extend(w, run(L.right, L.right.size() - 1, r.r));
        extend(w, rung_walk(L, r, false), 1);
        extend(w, run(L.left, r.l, 0), 1);
        extend(w, run(L.right, 0, tS));
        extend(w, reversed(connector(L.t, L.right[tS], region_t_)), 1);
        return w;
      }
    for (const Rung& r : rungs)
      if (r.l > sS && r.r < tN) {
        taken = ThreeEdgeCase::BridgeUnderTarget;
        std::vector<VertexId> w = connector(L.s, L.left[sS], region_s_);
        extend(w, run(L.left, sS, 0), 1);
        extend(w, run(L.right, 0, r.r));
        extend(w, rung_walk(L, r, false), 1);
        extend(w, run(L.left, r.l, L.left.size() - 1), 1);
        extend(w, run(L.right, L.right.size() - 1, tN));
        extend(w, reversed(connector(L.t, L.right[tN], region_t_)), 1);
        return w;
      }

    // Every rung is high (both feet at or above the top attachments) or low.
    bool any_high = std::any_of(rungs.begin(), rungs.end(), [&](const Rung& r) { return r.l >= sN && r.r >= tN; });
    if (!any_high) {
      std::reverse(L.left.begin(), L.left.end());
      std::reverse(L.right.begin(), L.right.end());
      return solve(std::move(L), taken, flips + 1);
    }
    const Rung* lowest_left = nullptr;
    const Rung* lowest_right = nullptr;
    for (const Rung& r : rungs) {
      if (!(r.l >= sN && r.r >= tN)) continue;
      if (!lowest_left || r.l < lowest_left->l) lowest_left = &r;
      if (!lowest_right || r.r < lowest_right->r) lowest_right = &r;
    }
    auto span = bypass_span(L, 0, sN, lowest_left->l);
    if (!span) {
      if (!bypass_span(L, 1, tN, lowest_right->r))
        throw InternalError("ladder: neither rail has the bypasses required by triconnectivity");
      std::swap(L.left, L.right);
      std::swap(L.s, L.t);
      auto w = solve(std::move(L), taken, flips + 1);
      return reversed(std::move(w));
    }
    return bypass_walk(L, *lowest_left, sN, tS, *span, taken);
  }

 private:
  struct Rung {
    std::size_t l, r;
    std::size_t part;  // index into parts_, or npos for a direct edge
  };
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  struct Span {
    std::size_t lo, hi;
    std::vector<char> members;  // vertices of the bypass graph
  };

  void prepare(const Ladder& L) {
    const std::size_t n = h_.vertex_bound();
    pos_[0].assign(n, npos);
    pos_[1].assign(n, npos);
    for (std::size_t i = 0; i < L.left.size(); ++i) pos_[0][L.left[i]] = i;
    for (std::size_t i = 0; i < L.right.size(); ++i) pos_[1][L.right[i]] = i;
    auto on_ladder = [&](VertexId v) { return pos_[0][v] != npos || pos_[1][v] != npos; };
    auto region = [&](VertexId from, VertexId avoid) {
      std::vector<char> r(n, 0);
      std::vector<VertexId> todo{from};
      r[from] = 1;
      while (!todo.empty()) {
        VertexId x = todo.back();
        todo.pop_back();
        for (auto [y, e] : h_.incident(x))
          if (!r[y] && y != avoid && !on_ladder(y)) {
            r[y] = 1;
            todo.push_back(y);
          }
      }
      return r;
    };
    region_s_ = region(L.s, L.t);
    region_t_ = region(L.t, L.s);
    for (std::size_t v = 0; v < n; ++v)
      if (region_s_[v] && region_t_[v]) throw InternalError("ladder: s and t connect off the ladder");
    for (int side = 0; side < 2; ++side) {
      ext_s_[side].clear();
      ext_t_[side].clear();
      const auto& rail = side == 0 ? L.left : L.right;
      for (std::size_t i = 0; i < rail.size(); ++i)
        for (auto [y, e] : h_.incident(rail[i])) {
          if (region_s_[y] && (ext_s_[side].empty() || ext_s_[side].back() != i)) ext_s_[side].push_back(i);
          if (region_t_[y] && (ext_t_[side].empty() || ext_t_[side].back() != i)) ext_t_[side].push_back(i);
        }
    }
    // Remaining off-ladder vertices split into parts attached only to rails.
    part_of_.assign(n, npos);
    parts_.clear();
    for (VertexId v : h_.vertices()) {
      if (on_ladder(v) || region_s_[v] || region_t_[v] || part_of_[v] != npos) continue;
      Part p;
      std::vector<VertexId> todo{v};
      part_of_[v] = parts_.size();
      while (!todo.empty()) {
        VertexId x = todo.back();
        todo.pop_back();
        p.vertices.push_back(x);
        for (auto [y, e] : h_.incident(x)) {
          if (pos_[0][y] != npos) p.feet[0].push_back(pos_[0][y]);
          else if (pos_[1][y] != npos) p.feet[1].push_back(pos_[1][y]);
          else if (part_of_[y] == npos) {
            part_of_[y] = parts_.size();
            todo.push_back(y);
          }
        }
      }
      for (auto& f : p.feet) {
        std::sort(f.begin(), f.end());
        f.erase(std::unique(f.begin(), f.end()), f.end());
      }
      parts_.push_back(std::move(p));
    }
  }

  Cycle ring_of(const Ladder& L) const {
    std::vector<VertexId> walk = L.left;
    extend(walk, reversed(L.right));
    return cycle_from_walk(h_, std::move(walk));
  }

  /// s..foot through the region of s.
  std::vector<VertexId> connector(VertexId from, VertexId foot, const std::vector<char>& region) const {
    auto w = walk_within(h_, from, foot, region);
    if (w.empty()) throw InternalError("ladder: connector not found");
    return w;
  }

  std::vector<Rung> find_rungs(const Ladder& L) const {
    std::vector<Rung> out;
    const VertexId u = L.left.front(), u2 = L.right.front(), v = L.left.back(), v2 = L.right.back();
    for (std::size_t i = 0; i < L.left.size(); ++i)
      for (auto [y, e] : h_.incident(L.left[i])) {
        if (pos_[1][y] == npos) continue;
        if ((L.left[i] == u && y == u2) || (L.left[i] == v && y == v2)) continue;
        out.push_back({i, pos_[1][y], npos});
      }
    for (std::size_t p = 0; p < parts_.size(); ++p)
      for (std::size_t l : parts_[p].feet[0])
        for (std::size_t r : parts_[p].feet[1]) out.push_back({l, r, p});
    return out;
  }

  /// Rung walk from its left foot to its right foot (or reversed).
  std::vector<VertexId> rung_walk(const Ladder& L, const Rung& r, bool left_to_right) const {
    std::vector<VertexId> w;
    if (r.part == npos) {
      w = {L.left[r.l], L.right[r.r]};
    } else {
      std::vector<char> allowed(h_.vertex_bound(), 0);
      for (VertexId x : parts_[r.part].vertices) allowed[x] = 1;
      w = walk_within(h_, L.left[r.l], L.right[r.r], allowed);
      if (w.empty()) throw InternalError("ladder: rung not realizable");
    }
    if (!left_to_right) std::reverse(w.begin(), w.end());
    return w;
  }

  /// Bypasses of rail `side` covering every position in [from, to]: returns
  /// the extent of the bypass graph when coverage holds.
  std::optional<Span> bypass_span(const Ladder& L, int side, std::size_t from, std::size_t to) const {
    struct Arch {
      std::size_t lo, hi, part;
    };
    const auto& rail = side == 0 ? L.left : L.right;
    std::vector<Arch> arches;
    for (std::size_t i = 0; i < rail.size(); ++i)
      for (auto [y, e] : h_.incident(rail[i])) {
        std::size_t j = pos_[side][y];
        if (j != npos && j > i + 1) arches.push_back({i, j, npos});
      }
    for (std::size_t p = 0; p < parts_.size(); ++p) {
      const auto& f = parts_[p].feet;
      if (!f[1 - side].empty() || f[side].size() < 2) continue;
      arches.push_back({f[side].front(), f[side].back(), p});
    }
    auto covers = [&](const Arch& a, std::size_t lo, std::size_t hi) {
      return std::max(a.lo + 1, lo) <= std::min(a.hi - 1, hi) && a.hi >= 1;
    };
    std::vector<char> chosen(arches.size(), 0);
    for (std::size_t k = 0; k < arches.size(); ++k) chosen[k] = covers(arches[k], from, to);
    for (std::size_t z = from; z <= to; ++z) {
      bool hit = false;
      for (std::size_t k = 0; k < arches.size() && !hit; ++k) hit = chosen[k] && arches[k].lo < z && z < arches[k].hi;
      if (!hit) return std::nullopt;
    }
    for (int round = 0;; ++round) {
      Span sp{npos, 0, std::vector<char>(h_.vertex_bound(), 0)};
      for (std::size_t k = 0; k < arches.size(); ++k)
        if (chosen[k]) {
          sp.lo = std::min(sp.lo, arches[k].lo);
          sp.hi = std::max(sp.hi, arches[k].hi);
        }
      for (std::size_t i = sp.lo; i <= sp.hi; ++i) sp.members[rail[i]] = 1;
      for (std::size_t k = 0; k < arches.size(); ++k)
        if (chosen[k] && arches[k].part != npos)
          for (VertexId x : parts_[arches[k].part].vertices) sp.members[x] = 1;
      std::vector<VertexId> vs;
      for (VertexId x = 0; x < sp.members.size(); ++x)
        if (sp.members[x]) vs.push_back(x);
      if (is_biconnected(induced_subgraph(h_, vs))) return sp;
      // Widen: take every bypass overlapping the current extent.
      bool grew = false;
      for (std::size_t k = 0; k < arches.size(); ++k)
        if (!chosen[k] && arches[k].hi > sp.lo && arches[k].lo < sp.hi) chosen[k] = grew = true;
      ++witness_stats().bypass_widenings;
      if (!grew) throw InternalError("ladder: bypass graph is not 2-connected");
    }
  }

  std::vector<VertexId> bypass_walk(const Ladder& L, const Rung& rung, std::size_t sN, std::size_t tS,
                                    const Span& span, ThreeEdgeCase& taken) const {
    std::vector<VertexId> vs;
    for (VertexId x = 0; x < span.members.size(); ++x)
      if (span.members[x]) vs.push_back(x);
    Graph gbp = induced_subgraph(h_, vs);
    const VertexId top = L.left[span.hi], bottom = L.left[span.lo];
    const VertexId foot = L.left[rung.l], attach = L.left[sN];
    VertexId a_side[] = {top, foot};
    VertexId b_side[] = {attach, bottom};
    std::optional<std::vector<Path>> ps;
    if (foot == attach) {
      VertexId a1[] = {top};
      VertexId b1[] = {bottom};
      auto one = vertex_disjoint_paths(induced_subgraph(h_, without(vs, attach)), a1, b1, 1);
      if (!one) throw InternalError("ladder: bypass graph lacks a top-bottom path");
      ps = std::vector<Path>{Path{{attach}, {}}, (*one)[0]};
    } else {
      ps = vertex_disjoint_paths(gbp, a_side, b_side, 2);
    }
    if (!ps) throw InternalError("ladder: bypass graph lacks two disjoint paths");
    const Path* from_attach = nullptr;
    const Path* other = nullptr;
    for (const Path& p : *ps) {
      if (p.front() == attach || p.back() == attach) from_attach = &p;
      else other = &p;
    }
    if (!from_attach || !other) throw InternalError("ladder: bypass paths miss the attachment");
    auto oriented = [](const Path& p, VertexId start) {
      return p.front() == start ? p.vertices : reversed(p.vertices);
    };
    std::vector<VertexId> w = connector(L.s, attach, region_s_);
    bool straight = from_attach->front() == top || from_attach->back() == top;
    if (straight) {
      taken = ThreeEdgeCase::BypassStraight;
      extend(w, oriented(*from_attach, attach), 1);                     // .. top
      extend(w, run(L.left, span.hi, L.left.size() - 1), 1);             // .. v
      extend(w, run(L.right, L.right.size() - 1, rung.r));               // v' .. rung foot
      extend(w, rung_walk(L, rung, false), 1);                           // .. left foot
      extend(w, oriented(*other, foot), 1);                              // .. bottom
    } else {
      taken = ThreeEdgeCase::BypassCrossed;
      extend(w, oriented(*from_attach, attach), 1);                     // .. left foot
      extend(w, rung_walk(L, rung, true), 1);                            // .. right foot
      extend(w, run(L.right, rung.r, L.right.size() - 1), 1);            // .. v'
      extend(w, run(L.left, L.left.size() - 1, span.hi));                // v .. top
      extend(w, oriented(*other, top), 1);                               // .. bottom
    }
    extend(w, run(L.left, span.lo, 0), 1);                               // .. u
    extend(w, run(L.right, 0, tS));                                      // u' .. t foot
    extend(w, reversed(connector(L.t, L.right[tS], region_t_)), 1);      // .. t
    return w;
  }

  static std::vector<VertexId> without(std::vector<VertexId> vs, VertexId x) {
    vs.erase(std::remove(vs.begin(), vs.end(), x), vs.end());
    return vs;
  }

  struct Part {
    std::vector<VertexId> vertices;
    std::array<std::vector<std::size_t>, 2> feet;
  };

  const Graph& h_;
  std::array<std::vector<std::size_t>, 2> pos_;
  std::vector<char> region_s_, region_t_;
  std::array<std::vector<std::size_t>, 2> ext_s_, ext_t_;
  std::vector<std::size_t> part_of_;
  std::vector<Part> parts_;
};

}  // namespace detail

/// Cycle through three distinct edges of a triconnected graph, or nothing
/// when they share an endpoint or form an edge cut.
inline std::optional<Cycle> tri_cycle_three_edges(const Graph& h, EdgeId e1, EdgeId e2, EdgeId e3,
                                                  ThreeEdgeCase* taken = nullptr) {
  if (e1 == e2 || e1 == e3 || e2 == e3) throw InputError("tri_cycle_three_edges: edges not distinct");
  const Edge E[3] = {h.edge(e1), h.edge(e2), h.edge(e3)};
  ElementRef need[] = {ElementRef::edge(e1), ElementRef::edge(e2), ElementRef::edge(e3)};
  ThreeEdgeCase local;
  ThreeEdgeCase& state = taken ? *taken : local;

  for (VertexId x : {E[0].u, E[0].v})
    if (E[1].touches(x) && E[2].touches(x)) return std::nullopt;
  {
    std::vector<EdgeId> rest;
    for (const Edge& e : h.edges())
      if (e.id != e1 && e.id != e2 && e.id != e3) rest.push_back(e.id);
    std::vector<char> present = h.vertex_mask();
    std::vector<Edge> kept;
    for (EdgeId id : rest) kept.push_back(h.edge(id));
    if (!is_connected(Graph(h.label_table(), present, std::move(kept)))) return std::nullopt;
  }

  auto shares = [&](int i, int j) {
    return E[j].touches(E[i].u) || E[j].touches(E[i].v);
  };
  auto common = [&](int i, int j) { return E[j].touches(E[i].u) ? E[i].u : E[i].v; };
  const int pairs = shares(0, 1) + shares(0, 2) + shares(1, 2);
  std::vector<VertexId> walk;

  if (pairs == 3) {
    state = ThreeEdgeCase::Triangle;
    VertexId a = common(0, 1), b = common(1, 2), c = common(0, 2);
    walk = {a, b, c};
  } else if (pairs == 2) {
    state = ThreeEdgeCase::Chain;
    int mid = !shares(0, 1) ? 2 : !shares(0, 2) ? 1 : 0;
    int x = (mid + 1) % 3, y = (mid + 2) % 3;
    VertexId v2 = common(x, mid), v3 = common(y, mid);
    VertexId v1 = E[x].other(v2), v4 = E[y].other(v3);
    std::vector<char> allowed = h.vertex_mask();
    allowed[v2] = allowed[v3] = 0;
    auto back = detail::walk_within(h, v4, v1, allowed);
    if (back.empty()) throw InternalError("tri_cycle_three_edges: graph is not triconnected");
    walk = {v1, v2, v3};
    walk.insert(walk.end(), back.begin(), back.end() - 1);
  } else if (pairs == 1) {
    state = ThreeEdgeCase::SharedVertex;
    int a = shares(0, 1) ? 0 : shares(0, 2) ? 0 : 1;
    int b = shares(0, 1) ? 1 : shares(0, 2) ? 2 : 2;
    int c = 3 - a - b;
    VertexId mid = common(a, b);
    VertexId ends[] = {E[a].other(mid), E[b].other(mid)};
    VertexId far[] = {E[c].u, E[c].v};
    auto vs = h.vertices();
    vs.erase(std::remove(vs.begin(), vs.end(), mid), vs.end());
    Graph rest = induced_subgraph(h, vs);
    auto ps = vertex_disjoint_paths(rest, far, ends, 2);
    if (!ps) throw InternalError("tri_cycle_three_edges: graph is not triconnected");
    const Path& pa = (*ps)[0];
    const Path& pb = (*ps)[1];
    walk = {pa.back(), mid};
    detail::extend(walk, detail::reversed(pb.vertices));
    walk.insert(walk.end(), pa.vertices.begin(), pa.vertices.end() - 1);
  } else {
    VertexId s = E[2].u, t = E[2].v;
    VertexId u = E[0].u, u2 = E[0].v, v = E[1].u, v2 = E[1].v;
    VertexId A[] = {s, u, u2};
    VertexId B[] = {t, v, v2};
    auto ps = vertex_disjoint_paths(h, A, B, 3);
    if (!ps) throw InternalError("tri_cycle_three_edges: graph is not triconnected");
    auto starting = [&](VertexId x) -> const Path& {
      for (const Path& p : *ps)
        if (p.front() == x) return p;
      throw InternalError("tri_cycle_three_edges: missing Menger path");
    };
    const Path& from_s = starting(s);
    if (from_s.back() != t) {
      state = ThreeEdgeCase::CrossSplice;
      if (from_s.back() == v2) std::swap(v, v2);
      const Path& into_t = starting(u).back() == t ? starting(u) : starting(u2);
      if (into_t.front() == u2) std::swap(u, u2);
      const Path& third = starting(u2);
      walk = from_s.vertices;                                 // s .. v
      detail::extend(walk, detail::reversed(third.vertices));  // v' .. u'
      detail::extend(walk, into_t.vertices);                  // u .. t
    } else {
      if (starting(u).back() != v) std::swap(v, v2);
      detail::Ladder L{s, t, starting(u).vertices, starting(u2).vertices};
      std::vector<char> allowed = h.vertex_mask();
      for (VertexId x : L.left) allowed[x] = 0;
      for (VertexId x : L.right) allowed[x] = 0;
      std::vector<VertexId> detour = from_s.vertices;
      if (detour.size() < 3) {
        allowed[t] = 0;
        detour.clear();
        std::vector<VertexId> prev(h.vertex_bound(), kNoVertex);
        std::vector<VertexId> q{s};
        prev[s] = s;
        for (std::size_t i = 0; i < q.size() && detour.empty(); ++i)
          for (auto [y, e] : h.incident(q[i])) {
            if (y == t && q[i] != s) {
              detour = {t};
              for (VertexId z = q[i];; z = prev[z]) {
                detour.push_back(z);
                if (z == s) break;
              }
              std::reverse(detour.begin(), detour.end());
              break;
            }
            if (y == t || prev[y] != kNoVertex || !allowed[y]) continue;
            prev[y] = q[i];
            q.push_back(y);
          }
      }
      if (!detour.empty()) {
        state = ThreeEdgeCase::DetourSplice;
        std::vector<VertexId> ring = L.left;
        detail::extend(ring, detail::reversed(L.right));
        Cycle ringc = cycle_from_walk(h, ring);
        auto fan = vertex_disjoint_paths(h, detour, ring, 3);
        if (!fan) throw InternalError("tri_cycle_three_edges: graph is not triconnected");
        std::vector<char> on_left(h.vertex_bound(), 0);
        for (VertexId x : L.left) on_left[x] = 1;
        auto along = [&](VertexId x) {
          return static_cast<std::size_t>(std::find(detour.begin(), detour.end(), x) - detour.begin());
        };
        const Path* p1 = nullptr;
        const Path* p2 = nullptr;
        for (int i = 0; i < 3 && !p1; ++i)
          for (int j = i + 1; j < 3 && !p1; ++j)
            if (on_left[(*fan)[i].back()] == on_left[(*fan)[j].back()]) {
              p1 = &(*fan)[i];
              p2 = &(*fan)[j];
            }
        if (along(p1->front()) > along(p2->front())) std::swap(p1, p2);
        std::vector<VertexId> ws(detour.begin(), detour.begin() + static_cast<std::ptrdiff_t>(along(p1->front())) + 1);
        detail::extend(ws, p1->vertices, 1);
        std::vector<VertexId> wt(detour.rbegin(), detour.rend() - static_cast<std::ptrdiff_t>(along(p2->front())));
        detail::extend(wt, p2->vertices, 1);
        walk = splice_path(h, ringc, e1, e2, path_from_walk(h, ws), path_from_walk(h, wt)).vertices;
      } else {
        detail::LadderSolver solver(h);
        walk = solver.solve(std::move(L), state);
      }
    }
    if (walk.front() != s) std::reverse(walk.begin(), walk.end());
  }

  Cycle c = cycle_from_walk(h, std::move(walk));
  detail::check_cycle(h, c, need, case_name(state));
  return c;
}

/// One step of a skeleton cycle: slot traversed from `from` to `to`.
struct SkeletonStep {
  std::uint32_t slot;
  VertexId from;
  VertexId to;
};

/// Cycle in the skeleton of c through the three representatives.
inline std::vector<SkeletonStep> skeleton_cycle(const SpqrTree& t, ComponentId c, const Representative& r1,
                                                const Representative& r2, const Representative& r3) {
  const Component& comp = t.component(c);
  const Representative* reps[] = {&r1, &r2, &r3};
  std::vector<SkeletonStep> steps;
  if (comp.kind == ComponentKind::S) {
    auto [order, slots] = t.polygon_order(c);
    for (std::size_t i = 0; i < order.size(); ++i) steps.push_back({slots[i], order[i], order[(i + 1) % order.size()]});
    return steps;
  }
  std::vector<std::uint32_t> edge_slots;
  for (auto* r : reps)
    if (r->is_skeleton_edge()) edge_slots.push_back(r->edge);
  if (comp.kind == ComponentKind::P) {
    if (edge_slots.size() > 2) throw InputError("skeleton_cycle: bond with three edge representatives");
    for (std::uint32_t i = 0; edge_slots.size() < 2; ++i)
      if (std::find(edge_slots.begin(), edge_slots.end(), i) == edge_slots.end()) edge_slots.push_back(i);
    VertexId a = comp.vertices[0], b = comp.vertices[1];
    return {{edge_slots[0], a, b}, {edge_slots[1], b, a}};
  }
  Graph sk = t.skeleton_graph(c);
  std::optional<Cycle> cyc;
  if (edge_slots.size() == 3) {
    cyc = tri_cycle_three_edges(sk, edge_slots[0], edge_slots[1], edge_slots[2]);
    if (!cyc) throw InputError("skeleton_cycle: called on a negative instance");
  } else {
    std::vector<ElementRef> elems;
    for (auto* r : reps) elems.push_back(r->is_vertex() ? r->element : ElementRef::edge(r->edge));
    cyc = tri_cycle_upto_two_edges(sk, elems);
  }
  const std::size_t n = cyc->vertices.size();
  for (std::size_t i = 0; i < n; ++i) steps.push_back({cyc->edges[i], cyc->vertices[i], cyc->vertices[(i + 1) % n]});
  return steps;
}

struct WitnessSegment {
  ComponentId component;
  std::uint32_t slot;       // skeleton slot of the central component
  std::size_t first, last;  // vertex positions in the cycle covered by this slot
  bool expanded;            // virtual slot replaced by a path of its split subgraph
};

struct WitnessCycle {
  Cycle cycle;
  std::size_t block = 0;
  ComponentId central = kNoComponent;
  std::vector<WitnessSegment> segments;
};

struct WitnessPath {
  Path path;
  WitnessCycle closed;  // the cycle in g plus (s,t) the path was cut from
};

inline std::optional<WitnessCycle> construct_cycle(const Engine& engine, ElementRef x1, ElementRef x2, ElementRef x3) {
  CepVerdict verdict = engine.cep(x1, x2, x3);
  if (!verdict.answer) return std::nullopt;
  const SpqrTree& t = engine.tree(verdict.central->block);
  const ComponentId c = verdict.central->component;
  const Component& comp = t.component(c);
  const ElementRef xs[] = {x1, x2, x3};
  Representative reps[] = {t.representative(c, x1), t.representative(c, x2), t.representative(c, x3)};

  WitnessCycle out;
  out.block = verdict.central->block;
  out.central = c;
  for (const SkeletonStep& st : skeleton_cycle(t, c, reps[0], reps[1], reps[2])) {
    const SkeletonEdge& se = comp.edges[st.slot];
    WitnessSegment seg{c, st.slot, out.cycle.vertices.size(), 0, se.is_virtual()};
    Path piece;
    if (!se.is_virtual()) {
      piece = Path{{st.from, st.to}, {se.real}};
    } else {
      std::optional<ElementRef> through;
      for (int i = 0; i < 3; ++i)
        if (reps[i] == Representative::virtual_edge(c, st.slot)) through = xs[i];
      piece = through ? t.path_through_in_split(c, st.slot, *through) : t.path_in_split(c, st.slot);
      if (piece.front() != st.from) piece = piece.reversed();
    }
    out.cycle.vertices.insert(out.cycle.vertices.end(), piece.vertices.begin(), piece.vertices.end() - 1);
    out.cycle.edges.insert(out.cycle.edges.end(), piece.edges.begin(), piece.edges.end());
    seg.last = out.cycle.vertices.size();
    out.segments.push_back(seg);
  }
  detail::check_cycle(engine.graph(), out.cycle, xs, "construct_cycle");
  return out;
}

inline std::optional<WitnessCycle> construct_cycle(const Graph& g, ElementRef x1, ElementRef x2, ElementRef x3) {
  return construct_cycle(Engine(g), x1, x2, x3);
}

/// Simple s-t path through w1 and w2: a cycle through (s,t), w1, w2 in g plus
/// (s,t), opened at (s,t).
inline std::optional<WitnessPath> construct_path(const Graph& g, VertexId s, VertexId t, VertexId w1, VertexId w2) {
  check_pep_vertices(g, s, t, w1, w2);
  auto plus = add_edge(g, s, t);
  Engine engine(plus.graph);
  auto cyc = construct_cycle(engine, ElementRef::edge(plus.edge), ElementRef::vertex(w1), ElementRef::vertex(w2));
  if (!cyc) return std::nullopt;
  const auto& cv = cyc->cycle.vertices;
  const auto& ce = cyc->cycle.edges;
  const std::size_t n = cv.size();
  const auto i = static_cast<std::size_t>(std::find(ce.begin(), ce.end(), plus.edge) - ce.begin());
  WitnessPath out;
  for (std::size_t k = 1; k <= n; ++k) out.path.vertices.push_back(cv[(i + k) % n]);
  for (std::size_t k = 1; k < n; ++k) out.path.edges.push_back(ce[(i + k) % n]);
  if (out.path.front() != s) out.path = out.path.reversed();
  ElementRef need[] = {ElementRef::vertex(s), ElementRef::vertex(t), ElementRef::vertex(w1), ElementRef::vertex(w2)};
  if (auto d = path_defect(g, out.path, need)) throw InternalError("construct_path: " + *d);
  if (out.path.front() != s || out.path.back() != t) throw InternalError("construct_path: wrong endpoints");
  out.closed = std::move(*cyc);
  return out;
}

}  // namespace mustpath
