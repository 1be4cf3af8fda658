#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "connectivity.hpp"
#include "flow.hpp"
#include "graph.hpp"
#include "io.hpp"

namespace mustpath {

enum class ComponentKind : std::uint8_t { S, P, R };

inline char kind_letter(ComponentKind k) {
  switch (k) {
    case ComponentKind::S: return 'S';
    case ComponentKind::P: return 'P';
    case ComponentKind::R: return 'R';
  }
  return '?';
}

using ComponentId = std::uint32_t;
inline constexpr ComponentId kNoComponent = ~ComponentId{0};
inline constexpr std::uint32_t kNoSlot = ~std::uint32_t{0};

struct SkeletonEdge {
  VertexId u = kNoVertex;
  VertexId v = kNoVertex;
  EdgeId real = kNoEdge;  // kNoEdge marks a virtual edge
  ComponentId twin_component = kNoComponent;
  std::uint32_t twin_edge = kNoSlot;

  bool is_virtual() const { return real == kNoEdge; }
  bool touches(VertexId w) const { return u == w || v == w; }
  VertexId other(VertexId w) const { return w == u ? v : u; }
};

struct Component {
  ComponentKind kind = ComponentKind::R;
  std::vector<VertexId> vertices;  // ascending
  std::vector<SkeletonEdge> edges;

  bool has_vertex(VertexId v) const { return std::binary_search(vertices.begin(), vertices.end(), v); }
  std::size_t virtual_count() const {
    return static_cast<std::size_t>(
        std::count_if(edges.begin(), edges.end(), [](const SkeletonEdge& e) { return e.is_virtual(); }));
  }
};

struct StructuralEdge {
  ComponentId a;
  std::uint32_t a_edge;
  ComponentId b;
  std::uint32_t b_edge;
};

/// r_C(x): either x itself (real in C) or a virtual edge of C.
struct Representative {
  enum class Kind : std::uint8_t { Real, Virtual };
  Kind kind = Kind::Real;
  ElementRef element = ElementRef::vertex(0);  // meaningful when Real
  ComponentId component = kNoComponent;
  std::uint32_t edge = kNoSlot;  // skeleton slot; also set for real edges

  static Representative real(ElementRef x, ComponentId c, std::uint32_t slot = kNoSlot) {
    return {Kind::Real, x, c, slot};
  }
  static Representative virtual_edge(ComponentId c, std::uint32_t slot) {
    return {Kind::Virtual, ElementRef::vertex(0), c, slot};
  }

  bool is_vertex() const { return kind == Kind::Real && element.is_vertex(); }
  bool is_virtual() const { return kind == Kind::Virtual; }
  /// Real edges and virtual edges both occupy a skeleton slot.
  bool is_skeleton_edge() const { return !is_vertex(); }

  friend bool operator==(const Representative& a, const Representative& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == Kind::Real) return a.element == b.element;
    return a.component == b.component && a.edge == b.edge;
  }
};

/// Order in which candidate 2-cuts are tried during construction.
enum class SplitOrder { Ascending, Descending };

namespace detail {

struct PieceEdge {
  VertexId u;
  VertexId v;
  EdgeId real;         // kNoEdge when virtual
  std::uint32_t virt;  // virtual id when real == kNoEdge
};

struct RawComponent {
  ComponentKind kind;
  std::vector<PieceEdge> edges;
};

/// Splits a biconnected graph along 2-cuts and multiple edges until every
/// piece is a cycle, a bond or triconnected, then merges adjacent cycles and
/// adjacent bonds. Pieces are processed from an explicit worklist.
class SpqrBuilder {
 public:
  SpqrBuilder(std::size_t vertex_bound, SplitOrder order)
      : order_(order), local_(vertex_bound, kUnset), clean_(vertex_bound, 0) {}

  std::vector<RawComponent> run(std::vector<PieceEdge> whole) {
    std::vector<Piece> work;
    work.push_back({reduce(std::move(whole)), {}});
    while (!work.empty()) {
      auto piece = std::move(work.back());
      work.pop_back();
      process(std::move(piece), work);
    }
    return merge();
  }

  std::uint32_t virtual_count() const { return next_virtual_; }

 private:
  static constexpr std::uint32_t kUnset = ~std::uint32_t{0};

  // A piece plus the vertices already known to lie in no 2-cut of it. The
  // knowledge carries over to pieces split off from it, not to siblings.
  struct Piece {
    std::vector<PieceEdge> edges;
    std::vector<VertexId> clean;
  };

  void load(const std::vector<PieceEdge>& piece) {
    verts_.clear();
    for (const auto& e : piece) {
      verts_.push_back(e.u);
      verts_.push_back(e.v);
    }
    std::sort(verts_.begin(), verts_.end());
    verts_.erase(std::unique(verts_.begin(), verts_.end()), verts_.end());
    for (std::uint32_t i = 0; i < verts_.size(); ++i) local_[verts_[i]] = i;
    const std::size_t n = verts_.size();
    off_.assign(n + 1, 0);
    for (const auto& e : piece) {
      ++off_[local_[e.u] + 1];
      ++off_[local_[e.v] + 1];
    }
    for (std::size_t i = 0; i < n; ++i) off_[i + 1] += off_[i];
    adj_.resize(off_.back());
    fill_.assign(off_.begin(), off_.end() - 1);
    for (const auto& e : piece) {
      std::uint32_t a = local_[e.u], b = local_[e.v];
      adj_[fill_[a]++] = b;
      adj_[fill_[b]++] = a;
    }
    alive_.assign(n, 1);
    disc_.assign(n, 0);
    low_.assign(n, 0);
    comp_.assign(n, kUnset);
  }

  void unload() {
    for (VertexId v : verts_) {
      local_[v] = kUnset;
      clean_[v] = 0;
    }
  }

  /// Splits off triangles at degree-two vertices and bonds at multiple
  /// edges until neither remains, and returns what is left.
  std::vector<PieceEdge> reduce(std::vector<PieceEdge> pool) {
    std::vector<char> alive(pool.size(), 1);
    std::size_t alive_count = pool.size();
    std::vector<std::vector<std::uint32_t>> inc(local_.size());
    std::vector<std::uint32_t> degree(local_.size(), 0);
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> between;
    auto key = [](VertexId a, VertexId b) {
      auto [x, y] = std::minmax(a, b);
      return std::uint64_t{x} << 32 | y;
    };
    std::vector<VertexId> thin;
    std::vector<std::uint64_t> thick;
    auto add = [&](PieceEdge e) {
      auto id = static_cast<std::uint32_t>(pool.size());
      pool.push_back(e);
      alive.push_back(1);
      ++alive_count;
      for (VertexId x : {e.u, e.v}) inc[x].push_back(id), ++degree[x];
      auto& same = between[key(e.u, e.v)];
      same.push_back(id);
      if (same.size() == 2) thick.push_back(key(e.u, e.v));
    };
    auto kill = [&](std::uint32_t id) {
      alive[id] = 0;
      --alive_count;
      for (VertexId x : {pool[id].u, pool[id].v})
        if (--degree[x] == 2) thin.push_back(x);
    };
    {
      auto initial = std::move(pool);
      pool.clear();
      alive.clear();
      alive_count = 0;
      for (const auto& e : initial) add(e);
    }
    for (VertexId x = 0; x < degree.size(); ++x)
      if (degree[x] == 2) thin.push_back(x);
    while (!thin.empty() || !thick.empty()) {
      if (!thick.empty()) {
        std::uint64_t k = thick.back();
        thick.pop_back();
        auto& same = between[k];
        std::erase_if(same, [&](std::uint32_t id) { return !alive[id]; });
        if (same.size() < 2 || same.size() == alive_count) continue;
        auto ids = std::move(same);
        same.clear();
        std::vector<PieceEdge> bond;
        for (std::uint32_t id : ids) bond.push_back(pool[id]), kill(id);
        const std::uint32_t vid = fresh_virtual();
        bond.push_back({bond[0].u, bond[0].v, kNoEdge, vid});
        add({bond[0].u, bond[0].v, kNoEdge, vid});
        emit(ComponentKind::P, std::move(bond));
        continue;
      }
      VertexId x = thin.back();
      thin.pop_back();
      if (degree[x] != 2 || alive_count <= 3) continue;
      std::erase_if(inc[x], [&](std::uint32_t id) { return !alive[id]; });
      const PieceEdge e1 = pool[inc[x][0]], e2 = pool[inc[x][1]];
      const VertexId y = e1.u == x ? e1.v : e1.u, z = e2.u == x ? e2.v : e2.u;
      if (y == z) continue;  // a multiple edge, handled as a bond
      kill(inc[x][0]);
      kill(inc[x][1]);
      inc[x].clear();
      const std::uint32_t vid = fresh_virtual();
      emit(ComponentKind::S, {e1, e2, {y, z, kNoEdge, vid}});
      add({y, z, kNoEdge, vid});
    }
    std::vector<PieceEdge> rest;
    for (std::uint32_t id = 0; id < pool.size(); ++id)
      if (alive[id]) rest.push_back(pool[id]);
    return rest;
  }

  /// Articulation vertices of the subgraph induced by alive_ (local ids).
  void articulations(std::vector<std::uint32_t>& cuts) {
    cuts.clear();
    const std::size_t n = verts_.size();
    std::fill(disc_.begin(), disc_.end(), 0);
    std::uint32_t clock = 0;
    frames_.clear();
    for (std::uint32_t root = 0; root < n; ++root) {
      if (!alive_[root] || disc_[root]) continue;
      disc_[root] = low_[root] = ++clock;
      frames_.push_back({root, kUnset, off_[root], 0});
      while (!frames_.empty()) {
        auto& f = frames_.back();
        if (f.next < off_[f.v + 1]) {
          std::uint32_t w = adj_[f.next++];
          if (!alive_[w] || w == f.parent) continue;
          if (!disc_[w]) {
            ++f.children;
            disc_[w] = low_[w] = ++clock;
            frames_.push_back({w, f.v, off_[w], 0});
          } else {
            low_[f.v] = std::min(low_[f.v], disc_[w]);
          }
          continue;
        }
        auto done = f;
        frames_.pop_back();
        if (frames_.empty()) {
          if (done.children > 1) cuts.push_back(done.v);
          continue;
        }
        auto& parent = frames_.back();
        low_[parent.v] = std::min(low_[parent.v], low_[done.v]);
        if (frames_.size() > 1 && low_[done.v] >= disc_[parent.v]) cuts.push_back(parent.v);
      }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  }

  /// Labels comp_ with the components of the piece minus {a,b}.
  std::uint32_t split_components(std::uint32_t a, std::uint32_t b) {
    std::fill(comp_.begin(), comp_.end(), kUnset);
    std::uint32_t count = 0;
    for (std::uint32_t r = 0; r < verts_.size(); ++r) {
      if (r == a || r == b || comp_[r] != kUnset) continue;
      comp_[r] = count;
      stack_.assign(1, r);
      while (!stack_.empty()) {
        std::uint32_t x = stack_.back();
        stack_.pop_back();
        for (std::uint32_t i = off_[x]; i < off_[x + 1]; ++i) {
          std::uint32_t y = adj_[i];
          if (y == a || y == b || comp_[y] != kUnset) continue;
          comp_[y] = count;
          stack_.push_back(y);
        }
      }
      ++count;
    }
    return count;
  }

  /// Some pair of local vertices joined by two or more edges.
  std::optional<std::pair<std::uint32_t, std::uint32_t>> multiple_edge() {
    const auto n = static_cast<std::uint32_t>(verts_.size());
    fill_.assign(n, kUnset);
    for (std::uint32_t x = 0; x < n; ++x)
      for (std::uint32_t i = off_[x]; i < off_[x + 1]; ++i) {
        std::uint32_t y = adj_[i];
        if (fill_[y] == x) return std::pair{x, y};
        fill_[y] = x;
      }
    return std::nullopt;
  }

  std::uint32_t fresh_virtual() { return next_virtual_++; }

  void process(Piece item, std::vector<Piece>& work) {
    std::vector<PieceEdge> piece = std::move(item.edges);
    load(piece);
    for (VertexId v : item.clean) clean_[v] = 1;
    const auto n = static_cast<std::uint32_t>(verts_.size());
    if (n == 2) {
      emit(ComponentKind::P, std::move(piece));
      unload();
      return;
    }
    bool cycle = piece.size() == n;
    for (std::uint32_t i = 0; cycle && i < n; ++i) cycle = off_[i + 1] - off_[i] == 2;
    if (cycle) {
      emit(ComponentKind::S, std::move(piece));
      unload();
      return;
    }
    if (auto pair = multiple_edge()) {
      split_bond(piece, pair->first, pair->second, work);
      unload();
      return;
    }

    std::vector<std::uint32_t> cuts;
    for (std::uint32_t i = 0; i < n; ++i) {
      const std::uint32_t a = order_ == SplitOrder::Ascending ? i : n - 1 - i;
      if (clean_[verts_[a]]) continue;
      alive_[a] = 0;
      articulations(cuts);
      alive_[a] = 1;
      if (cuts.empty()) {
        // No 2-cut through a here, hence none in any piece split off from here.
        clean_[verts_[a]] = 1;
        continue;
      }
      split(piece, a, order_ == SplitOrder::Ascending ? cuts.front() : cuts.back(), work);
      unload();
      return;
    }
    if (n < 4) throw InternalError("spqr: piece without 2-cut is too small");
    emit(ComponentKind::R, std::move(piece));
    unload();
  }

  void push_child(std::vector<PieceEdge> edges, std::vector<Piece>& work) {
    Piece child{std::move(edges), {}};
    for (const auto& e : child.edges)
      for (VertexId x : {e.u, e.v})
        if (clean_[x]) child.clean.push_back(x);
    std::sort(child.clean.begin(), child.clean.end());
    child.clean.erase(std::unique(child.clean.begin(), child.clean.end()), child.clean.end());
    work.push_back(std::move(child));
  }

  /// Moves the edges between a and b into a bond.
  void split_bond(const std::vector<PieceEdge>& piece, std::uint32_t a, std::uint32_t b, std::vector<Piece>& work) {
    const VertexId ga = verts_[a], gb = verts_[b];
    const std::uint32_t vid = fresh_virtual();
    std::vector<PieceEdge> bond, rest;
    for (const auto& e : piece) {
      bool pole = (e.u == ga && e.v == gb) || (e.u == gb && e.v == ga);
      (pole ? bond : rest).push_back(e);
    }
    bond.push_back({ga, gb, kNoEdge, vid});
    rest.push_back({ga, gb, kNoEdge, vid});
    emit(ComponentKind::P, std::move(bond));
    push_child(std::move(rest), work);
  }

  /// Splits off the first component of the piece minus {a,b}.
  void split(const std::vector<PieceEdge>& piece, std::uint32_t a, std::uint32_t b, std::vector<Piece>& work) {
    split_components(a, b);
    const VertexId ga = verts_[a], gb = verts_[b];
    const std::uint32_t vid = fresh_virtual();
    std::vector<PieceEdge> first, rest;
    for (const auto& e : piece) {
      std::uint32_t x = local_[e.u], y = local_[e.v];
      bool xp = x == a || x == b, yp = y == a || y == b;
      bool in_first = !(xp && yp) && (xp ? comp_[y] : comp_[x]) == 0;
      (in_first ? first : rest).push_back(e);
    }
    first.push_back({ga, gb, kNoEdge, vid});
    rest.push_back({ga, gb, kNoEdge, vid});
    push_child(std::move(rest), work);
    push_child(std::move(first), work);
  }

  /// Joins cycles sharing a virtual edge, and bonds sharing one, then
  /// renumbers the surviving virtual edges densely.
  std::vector<RawComponent> merge() {
    const std::size_t k = out_.size();
    std::vector<std::array<std::uint32_t, 2>> holder(next_virtual_, {kUnset, kUnset});
    for (std::uint32_t c = 0; c < k; ++c)
      for (const auto& e : out_[c].edges)
        if (e.real == kNoEdge) holder[e.virt][holder[e.virt][0] == kUnset ? 0 : 1] = c;
    std::vector<std::uint32_t> up(k);
    for (std::uint32_t c = 0; c < k; ++c) up[c] = c;
    auto find = [&](std::uint32_t c) {
      while (up[c] != c) c = up[c] = up[up[c]];
      return c;
    };
    std::vector<char> inner(next_virtual_, 0);
    for (std::uint32_t vid = 0; vid < next_virtual_; ++vid) {
      auto [x, y] = holder[vid];
      if (x == kUnset || y == kUnset) throw InternalError("spqr: virtual edge without twin");
      if (out_[x].kind == out_[y].kind && out_[x].kind != ComponentKind::R) {
        inner[vid] = 1;
        up[find(x)] = find(y);
      }
    }
    std::vector<std::uint32_t> slot(k, kUnset), renumber(next_virtual_, kUnset);
    std::vector<RawComponent> merged;
    std::uint32_t fresh = 0;
    for (std::uint32_t c = 0; c < k; ++c) {
      std::uint32_t r = find(c);
      if (slot[r] == kUnset) {
        slot[r] = static_cast<std::uint32_t>(merged.size());
        merged.push_back({out_[c].kind, {}});
      }
      auto& dst = merged[slot[r]].edges;
      for (auto e : out_[c].edges) {
        if (e.real == kNoEdge) {
          if (inner[e.virt]) continue;
          if (renumber[e.virt] == kUnset) renumber[e.virt] = fresh++;
          e.virt = renumber[e.virt];
        }
        dst.push_back(e);
      }
    }
    next_virtual_ = fresh;
    return merged;
  }

  void emit(ComponentKind kind, std::vector<PieceEdge> edges) { out_.push_back({kind, std::move(edges)}); }

  SplitOrder order_;
  std::vector<std::uint32_t> local_;
  std::vector<char> clean_;
  std::vector<VertexId> verts_;
  std::vector<std::uint32_t> off_, adj_, disc_, low_, comp_, stack_, fill_;
  std::vector<char> alive_;
  struct Frame {
    std::uint32_t v, parent, next, children;
  };
  std::vector<Frame> frames_;
  std::vector<RawComponent> out_;
  std::uint32_t next_virtual_ = 0;
};

}  // namespace detail

class SpqrTree {
 public:
  /// Decomposes a biconnected graph with at least three edges.
  static SpqrTree build(const Graph& g, SplitOrder order = SplitOrder::Ascending) {
    if (g.edge_count() < 3) throw InputError("build_spqr: graph has fewer than three edges");
    if (!is_biconnected(g)) throw InputError("build_spqr: graph is not biconnected");
    std::vector<detail::PieceEdge> whole;
    whole.reserve(g.edge_count());
    for (const Edge& e : g.edges()) whole.push_back({e.u, e.v, e.id, 0});
    detail::SpqrBuilder builder(g.vertex_bound(), order);
    auto raw = builder.run(std::move(whole));
    SpqrTree t;
    t.graph_ = std::make_shared<const Graph>(g);
    t.assemble(std::move(raw), builder.virtual_count());
    return t;
  }

  const Graph& graph() const { return *graph_; }
  std::size_t size() const { return components_.size(); }
  const std::vector<Component>& components() const { return components_; }
  const Component& component(ComponentId c) const { return components_.at(c); }
  const std::vector<StructuralEdge>& structural_edges() const { return structural_; }

  /// Component and skeleton slot holding real edge e.
  std::pair<ComponentId, std::uint32_t> edge_home(EdgeId e) const {
    if (e >= edge_home_.size() || edge_home_[e].first == kNoComponent)
      throw InputError("edge not in decomposed graph");
    return edge_home_[e];
  }

  std::span<const ComponentId> components_of(VertexId v) const {
    if (v >= vertex_components_.size()) return {};
    return vertex_components_[v];
  }

  /// Preferred component for a vertex: rigid first, then bond, then polygon.
  ComponentId vertex_home(VertexId v) const {
    if (v >= vertex_home_.size() || vertex_home_[v] == kNoComponent)
      throw InputError("vertex not in decomposed graph");
    return vertex_home_[v];
  }

  ComponentId home(ElementRef x) const { return x.is_edge() ? edge_home(x.id()).first : vertex_home(x.id()); }

  ComponentId parent(ComponentId c) const { return parent_[c]; }
  std::uint32_t depth(ComponentId c) const { return depth_[c]; }

  /// Skeleton slot of c whose twin leads toward component d (d != c).
  std::uint32_t slot_toward(ComponentId c, ComponentId d) const {
    if (c == d) throw InternalError("slot_toward: same component");
    if (is_ancestor(c, d)) {
      while (parent_[d] != c) d = parent_[d];
      return down_slot_[d];
    }
    return up_slot_[c];
  }

  Representative representative(ComponentId c, ElementRef x) const {
    const Component& comp = component(c);
    if (x.is_vertex()) {
      if (comp.has_vertex(x.id())) return Representative::real(x, c);
      return Representative::virtual_edge(c, slot_toward(c, vertex_home(x.id())));
    }
    auto [h, slot] = edge_home(x.id());
    if (h == c) return Representative::real(x, c, slot);
    return Representative::virtual_edge(c, slot_toward(c, h));
  }

  ComponentId lca(ComponentId a, ComponentId b) const {
    while (depth_[a] > depth_[b]) a = parent_[a];
    while (depth_[b] > depth_[a]) b = parent_[b];
    while (a != b) {
      a = parent_[a];
      b = parent_[b];
    }
    return a;
  }

  /// A component where the three elements have pairwise distinct
  /// representatives: a shared home if two homes coincide, else the median of
  /// the three homes (which is one of them when it lies between the others).
  ComponentId central_component(ElementRef x1, ElementRef x2, ElementRef x3) const {
    if (x1 == x2 || x1 == x3 || x2 == x3) throw InputError("central_component: elements not distinct");
    ComponentId c1 = home(x1), c2 = home(x2), c3 = home(x3);
    ComponentId c;
    if (c1 == c2 || c1 == c3)
      c = c1;
    else if (c2 == c3)
      c = c2;
    else {
      ComponentId m[] = {lca(c1, c2), lca(c2, c3), lca(c1, c3)};
      c = *std::max_element(m, m + 3, [&](ComponentId a, ComponentId b) { return depth_[a] < depth_[b]; });
    }
    auto r1 = representative(c, x1), r2 = representative(c, x2), r3 = representative(c, x3);
    if (r1 == r2 || r1 == r3 || r2 == r3) throw InternalError("central_component: representatives collide");
    return c;
  }

  /// Components of B(C,e): the subtree reached through virtual slot e of c.
  std::vector<ComponentId> split_components(ComponentId c, std::uint32_t e) const {
    const SkeletonEdge& se = component(c).edges.at(e);
    if (!se.is_virtual()) throw InputError("split_subgraph: skeleton edge is real");
    std::vector<ComponentId> out{se.twin_component};
    std::vector<char> seen(components_.size(), 0);
    seen[c] = seen[se.twin_component] = 1;
    for (std::size_t i = 0; i < out.size(); ++i)
      for (const SkeletonEdge& x : components_[out[i]].edges)
        if (x.is_virtual() && !seen[x.twin_component]) {
          seen[x.twin_component] = 1;
          out.push_back(x.twin_component);
        }
    return out;
  }

  /// Vertices of G(C,e) other than the endpoints of e, ascending.
  std::vector<VertexId> split_inner_vertices(ComponentId c, std::uint32_t e) const {
    const SkeletonEdge& se = component(c).edges.at(e);
    std::vector<VertexId> vs;
    for (ComponentId d : split_components(c, e))
      for (VertexId v : components_[d].vertices)
        if (v != se.u && v != se.v) vs.push_back(v);
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
  }

  /// G(C,e) as a subgraph of the decomposed graph.
  Graph split_subgraph(ComponentId c, std::uint32_t e) const {
    std::vector<EdgeId> ids;
    for (ComponentId d : split_components(c, e))
      for (const SkeletonEdge& x : components_[d].edges)
        if (!x.is_virtual()) ids.push_back(x.real);
    std::sort(ids.begin(), ids.end());
    return edge_subgraph(*graph_, ids);
  }

  /// Simple path from u to v of slot e inside G(C,e) passing through x.
  Path path_through_in_split(ComponentId c, std::uint32_t e, ElementRef x) const {
    const SkeletonEdge& se = component(c).edges.at(e);
    const VertexId a = se.u, b = se.v;
    Graph sub = split_subgraph(c, e);
    if (!sub.has_element(x)) throw InputError("path_through_in_split: element outside the split subgraph");
    if (x.is_vertex() && (x.id() == a || x.id() == b))
      throw InputError("path_through_in_split: element is an endpoint of the virtual edge");
    VertexId poles[] = {a, b};
    std::vector<VertexId> walk;
    if (x.is_edge()) {
      const Edge& xe = sub.edge(x.id());
      if ((xe.u == a && xe.v == b) || (xe.u == b && xe.v == a)) {
        walk = {a, b};
      } else {
        VertexId ends[] = {xe.u, xe.v};
        auto paths = vertex_disjoint_paths(sub, ends, poles, 2);
        if (!paths) throw InternalError("path_through_in_split: split subgraph lacks two disjoint paths");
        const Path& p1 = (*paths)[0];
        const Path& p2 = (*paths)[1];
        walk.assign(p1.vertices.rbegin(), p1.vertices.rend());
        walk.insert(walk.end(), p2.vertices.begin(), p2.vertices.end());
      }
    } else {
      VertexId w[] = {x.id()};
      auto paths = vertex_disjoint_paths(sub, w, poles, 2);
      if (!paths) throw InternalError("path_through_in_split: split subgraph lacks two disjoint paths");
      const Path& p1 = (*paths)[0];
      const Path& p2 = (*paths)[1];
      walk.assign(p1.vertices.rbegin(), p1.vertices.rend());
      walk.insert(walk.end(), p2.vertices.begin() + 1, p2.vertices.end());
    }
    if (walk.front() != a) std::reverse(walk.begin(), walk.end());
    Path p = path_from_walk(sub, std::move(walk));
    ElementRef need[] = {x};
    if (auto d = path_defect(sub, p, need)) throw InternalError("path_through_in_split: " + *d);
    if (p.front() != a || p.back() != b) throw InternalError("path_through_in_split: wrong endpoints");
    return p;
  }

  /// Any simple path from u to v of slot e inside G(C,e).
  Path path_in_split(ComponentId c, std::uint32_t e) const {
    const SkeletonEdge& se = component(c).edges.at(e);
    Graph sub = split_subgraph(c, e);
    std::vector<VertexId> from(graph_->vertex_bound(), kNoVertex);
    std::vector<VertexId> queue{se.u};
    from[se.u] = se.u;
    for (std::size_t i = 0; i < queue.size() && from[se.v] == kNoVertex; ++i)
      for (auto [w, id] : sub.incident(queue[i])) {
        if (from[w] != kNoVertex) continue;
        from[w] = queue[i];
        queue.push_back(w);
      }
    if (from[se.v] == kNoVertex) throw InternalError("path_in_split: poles disconnected");
    std::vector<VertexId> walk;
    for (VertexId x = se.v; x != se.u; x = from[x]) walk.push_back(x);
    walk.push_back(se.u);
    std::reverse(walk.begin(), walk.end());
    return path_from_walk(sub, std::move(walk));
  }

  /// Skeleton as a simple graph whose edge ids are skeleton slots.
  /// Not defined for bonds.
  Graph skeleton_graph(ComponentId c) const {
    const Component& comp = component(c);
    if (comp.kind == ComponentKind::P) throw InputError("skeleton_graph: bonds are multigraphs");
    std::vector<char> present(graph_->vertex_bound(), 0);
    for (VertexId v : comp.vertices) present[v] = 1;
    std::vector<Edge> edges;
    for (std::uint32_t i = 0; i < comp.edges.size(); ++i) edges.push_back({i, comp.edges[i].u, comp.edges[i].v});
    return Graph(graph_->label_table(), std::move(present), std::move(edges));
  }

  /// Cyclic vertex order of an S skeleton together with the slot used for
  /// each step (slot[i] joins order[i] and order[i+1]).
  std::pair<std::vector<VertexId>, std::vector<std::uint32_t>> polygon_order(ComponentId c) const {
    const Component& comp = component(c);
    if (comp.kind != ComponentKind::S) throw InputError("polygon_order: not an S component");
    std::map<VertexId, std::vector<std::uint32_t>> at;
    for (std::uint32_t i = 0; i < comp.edges.size(); ++i) {
      at[comp.edges[i].u].push_back(i);
      at[comp.edges[i].v].push_back(i);
    }
    std::vector<VertexId> order{comp.vertices.front()};
    std::vector<std::uint32_t> slots;
    std::uint32_t prev = kNoSlot;
    while (slots.size() < comp.edges.size()) {
      const auto& two = at[order.back()];
      std::uint32_t next = two[0] == prev ? two[1] : two[0];
      slots.push_back(next);
      prev = next;
      VertexId w = comp.edges[next].other(order.back());
      if (slots.size() < comp.edges.size()) order.push_back(w);
    }
    return {order, slots};
  }

 private:
  bool is_ancestor(ComponentId a, ComponentId d) const { return tin_[a] <= tin_[d] && tout_[d] <= tout_[a]; }

  void assemble(std::vector<detail::RawComponent> raw, std::uint32_t virtual_count) {
    // Canonical order: by vertex set, then kind, then real edge ids.
    std::vector<Component> comps(raw.size());
    std::vector<std::vector<EdgeId>> reals(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
      comps[i].kind = raw[i].kind;
      for (const auto& e : raw[i].edges) {
        comps[i].vertices.push_back(e.u);
        comps[i].vertices.push_back(e.v);
        if (e.real != kNoEdge) reals[i].push_back(e.real);
      }
      auto& vs = comps[i].vertices;
      std::sort(vs.begin(), vs.end());
      vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
      std::sort(reals[i].begin(), reals[i].end());
    }
    std::vector<std::size_t> perm(raw.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
      return std::tie(comps[a].vertices, comps[a].kind, reals[a]) <
             std::tie(comps[b].vertices, comps[b].kind, reals[b]);
    });

    std::vector<std::pair<ComponentId, std::uint32_t>> holders(2 * virtual_count, {kNoComponent, kNoSlot});
    std::vector<std::uint8_t> held(virtual_count, 0);
    components_.resize(raw.size());
    edge_home_.assign(graph_->edge_bound(), {kNoComponent, kNoSlot});
    for (ComponentId c = 0; c < perm.size(); ++c) {
      const std::size_t src = perm[c];
      Component comp;
      comp.kind = comps[src].kind;
      comp.vertices = std::move(comps[src].vertices);
      auto edges = raw[src].edges;
      // Stable skeleton slot order: real edges by id, then virtual edges.
      std::stable_sort(edges.begin(), edges.end(), [](const auto& x, const auto& y) {
        bool xv = x.real == kNoEdge, yv = y.real == kNoEdge;
        if (xv != yv) return !xv;
        return xv ? false : x.real < y.real;
      });
      for (const auto& e : edges) {
        auto slot = static_cast<std::uint32_t>(comp.edges.size());
        SkeletonEdge se;
        se.u = std::min(e.u, e.v);
        se.v = std::max(e.u, e.v);
        se.real = e.real;
        if (e.real == kNoEdge) {
          if (held[e.virt] >= 2) throw InternalError("spqr: virtual edge held three times");
          holders[2 * e.virt + held[e.virt]++] = {c, slot};
        } else {
          edge_home_[e.real] = {c, slot};
        }
        comp.edges.push_back(se);
      }
      components_[c] = std::move(comp);
    }
    for (std::uint32_t vid = 0; vid < virtual_count; ++vid) {
      if (held[vid] != 2) throw InternalError("spqr: virtual edge without twin");
      auto [ca, sa] = holders[2 * vid];
      auto [cb, sb] = holders[2 * vid + 1];
      components_[ca].edges[sa].twin_component = cb;
      components_[ca].edges[sa].twin_edge = sb;
      components_[cb].edges[sb].twin_component = ca;
      components_[cb].edges[sb].twin_edge = sa;
      if (ca < cb) structural_.push_back({ca, sa, cb, sb});
      else structural_.push_back({cb, sb, ca, sa});
    }
    std::sort(structural_.begin(), structural_.end(), [](const auto& x, const auto& y) {
      return std::tie(x.a, x.a_edge) < std::tie(y.a, y.a_edge);
    });

    vertex_components_.assign(graph_->vertex_bound(), {});
    vertex_home_.assign(graph_->vertex_bound(), kNoComponent);
    for (ComponentId c = 0; c < components_.size(); ++c)
      for (VertexId v : components_[c].vertices) {
        vertex_components_[v].push_back(c);
        ComponentId& h = vertex_home_[v];
        auto rank = [](ComponentKind k) { return k == ComponentKind::R ? 0 : k == ComponentKind::P ? 1 : 2; };
        if (h == kNoComponent || rank(components_[c].kind) < rank(components_[h].kind)) h = c;
      }
    root();
  }

  void root() {
    const std::size_t n = components_.size();
    parent_.assign(n, kNoComponent);
    up_slot_.assign(n, kNoSlot);
    down_slot_.assign(n, kNoSlot);
    depth_.assign(n, 0);
    tin_.assign(n, 0);
    tout_.assign(n, 0);
    std::uint32_t clock = 0;
    std::vector<std::pair<ComponentId, std::uint32_t>> stack{{0, 0}};
    tin_[0] = clock++;
    std::vector<char> seen(n, 0);
    seen[0] = 1;
    while (!stack.empty()) {
      auto& [c, next] = stack.back();
      const auto& edges = components_[c].edges;
      if (next < edges.size()) {
        std::uint32_t slot = next++;
        const SkeletonEdge& e = edges[slot];
        if (!e.is_virtual() || seen[e.twin_component]) continue;
        ComponentId d = e.twin_component;
        seen[d] = 1;
        parent_[d] = c;
        down_slot_[d] = slot;
        up_slot_[d] = e.twin_edge;
        depth_[d] = depth_[c] + 1;
        tin_[d] = clock++;
        stack.push_back({d, 0});
        continue;
      }
      tout_[c] = clock++;
      stack.pop_back();
    }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end())
      throw InternalError("spqr: structural edges do not connect the components");
  }

  std::shared_ptr<const Graph> graph_;
  std::vector<Component> components_;
  std::vector<StructuralEdge> structural_;
  std::vector<std::pair<ComponentId, std::uint32_t>> edge_home_;
  std::vector<std::vector<ComponentId>> vertex_components_;
  std::vector<ComponentId> vertex_home_;
  std::vector<ComponentId> parent_;
  std::vector<std::uint32_t> up_slot_, down_slot_, depth_, tin_, tout_;
};

inline SpqrTree build_spqr(const Graph& g) { return SpqrTree::build(g); }

inline Representative representative(const SpqrTree& t, ComponentId c, ElementRef x) {
  return t.representative(c, x);
}

inline ComponentId central_component(const SpqrTree& t, ElementRef x1, ElementRef x2, ElementRef x3) {
  return t.central_component(x1, x2, x3);
}

inline Graph split_subgraph(const SpqrTree& t, ComponentId c, std::uint32_t e) { return t.split_subgraph(c, e); }

inline Path path_through_in_split(const SpqrTree& t, ComponentId c, std::uint32_t e, ElementRef x) {
  return t.path_through_in_split(c, e, x);
}

/// Checks every structural invariant of the decomposition. Returns the first
/// violation found, or nothing.
inline std::optional<std::string> spqr_defect(const SpqrTree& t) {
  const Graph& g = t.graph();
  const auto& comps = t.components();
  std::vector<EdgeId> seen_real;
  for (ComponentId c = 0; c < comps.size(); ++c) {
    const Component& comp = comps[c];
    std::string tag = std::string(1, kind_letter(comp.kind)) + "#" + std::to_string(c);
    for (std::uint32_t i = 0; i < comp.edges.size(); ++i) {
      const SkeletonEdge& e = comp.edges[i];
      if (!comp.has_vertex(e.u) || !comp.has_vertex(e.v)) return tag + ": edge endpoint outside skeleton";
      if (e.is_virtual()) {
        if (e.twin_component >= comps.size()) return tag + ": dangling virtual edge";
        const SkeletonEdge& tw = comps[e.twin_component].edges.at(e.twin_edge);
        if (tw.twin_component != c || tw.twin_edge != i || tw.u != e.u || tw.v != e.v)
          return tag + ": twin mismatch";
        const Component& other = comps[e.twin_component];
        if (other.kind == comp.kind && comp.kind != ComponentKind::R) return tag + ": adjacent components of equal kind";
      } else {
        const Edge& ge = g.edge(e.real);
        if (std::minmax(ge.u, ge.v) != std::minmax(e.u, e.v)) return tag + ": real edge endpoints differ";
        seen_real.push_back(e.real);
      }
    }
    switch (comp.kind) {
      case ComponentKind::S: {
        if (comp.vertices.size() < 3 || comp.edges.size() != comp.vertices.size()) return tag + ": not a polygon";
        Graph sk = t.skeleton_graph(c);
        for (VertexId v : comp.vertices)
          if (sk.degree(v) != 2) return tag + ": polygon vertex degree != 2";
        if (!is_connected(sk)) return tag + ": polygon disconnected";
        break;
      }
      case ComponentKind::P: {
        if (comp.vertices.size() != 2 || comp.edges.size() < 3) return tag + ": not a bond";
        auto reals = std::count_if(comp.edges.begin(), comp.edges.end(), [](auto& e) { return !e.is_virtual(); });
        if (reals > 1) return tag + ": bond with several real edges";
        break;
      }
      case ComponentKind::R: {
        if (comp.vertices.size() < 4) return tag + ": rigid component too small";
        Graph sk = t.skeleton_graph(c);
        if (!is_k_connected(sk, 3)) return tag + ": rigid component not triconnected";
        break;
      }
    }
  }
  if (t.structural_edges().size() + 1 != comps.size()) return std::string("structural edges do not form a tree");
  std::sort(seen_real.begin(), seen_real.end());
  std::vector<EdgeId> all;
  for (const Edge& e : g.edges()) all.push_back(e.id);
  if (seen_real != all) return std::string("real edges do not reconstruct the graph");
  return std::nullopt;
}

/// Separation pairs modelled by the tree: bond poles, poles of structural
/// edges between non-bonds, and non-adjacent polygon vertex pairs.
inline std::set<std::pair<VertexId, VertexId>> tree_two_cuts(const SpqrTree& t) {
  std::set<std::pair<VertexId, VertexId>> out;
  const auto& comps = t.components();
  for (const Component& c : comps) {
    if (c.kind == ComponentKind::P) out.insert({c.vertices[0], c.vertices[1]});
    if (c.kind == ComponentKind::S) {
      for (std::size_t i = 0; i < c.vertices.size(); ++i)
        for (std::size_t j = i + 1; j < c.vertices.size(); ++j) {
          VertexId a = c.vertices[i], b = c.vertices[j];
          bool adjacent = std::any_of(c.edges.begin(), c.edges.end(), [&](const SkeletonEdge& e) {
            return (e.u == a && e.v == b) || (e.u == b && e.v == a);
          });
          if (!adjacent) out.insert({a, b});
        }
    }
  }
  for (const StructuralEdge& s : t.structural_edges()) {
    if (comps[s.a].kind == ComponentKind::P || comps[s.b].kind == ComponentKind::P) continue;
    const SkeletonEdge& e = comps[s.a].edges[s.a_edge];
    out.insert(std::minmax(e.u, e.v));
  }
  return out;
}

/// Sorted structural fingerprint, independent of component numbering and
/// virtual-edge naming: each component as (kind, vertices, real edges,
/// sorted neighbor descriptions).
inline std::vector<std::string> spqr_signature(const SpqrTree& t) {
  auto describe = [&](ComponentId c) {
    const Component& comp = t.component(c);
    std::ostringstream os;
    os << kind_letter(comp.kind) << "[";
    for (VertexId v : comp.vertices) os << v << ",";
    os << "|";
    std::vector<EdgeId> reals;
    for (const auto& e : comp.edges)
      if (!e.is_virtual()) reals.push_back(e.real);
    std::sort(reals.begin(), reals.end());
    for (EdgeId e : reals) os << e << ",";
    os << "]";
    return os.str();
  };
  std::vector<std::string> out;
  for (ComponentId c = 0; c < t.size(); ++c) {
    std::vector<std::string> nbrs;
    for (const auto& e : t.component(c).edges)
      if (e.is_virtual())
        nbrs.push_back(describe(e.twin_component) + "@" + std::to_string(e.u) + "-" + std::to_string(e.v));
    std::sort(nbrs.begin(), nbrs.end());
    std::string s = describe(c) + "{";
    for (auto& n : nbrs) s += n + ";";
    out.push_back(s + "}");
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Components as clusters, virtual edges dashed, structural edges bold.
inline std::string to_dot(const SpqrTree& t) {
  const Graph& g = t.graph();
  std::ostringstream os;
  os << "graph SPQR {\n  compound=true;\n";
  auto node = [](ComponentId c, VertexId v) { return "\"c" + std::to_string(c) + "_" + std::to_string(v) + "\""; };
  for (ComponentId c = 0; c < t.size(); ++c) {
    const Component& comp = t.component(c);
    os << "  subgraph cluster_" << c << " {\n";
    std::string title = std::string(1, kind_letter(comp.kind)) + "(";
    for (std::size_t i = 0; i < comp.vertices.size(); ++i) title += (i ? "," : "") + g.name(comp.vertices[i]);
    os << "    label=" << dot_quote(title + ")") << ";\n";
    for (VertexId v : comp.vertices) os << "    " << node(c, v) << " [label=" << dot_quote(g.name(v)) << "];\n";
    for (const SkeletonEdge& e : comp.edges) {
      os << "    " << node(c, e.u) << " -- " << node(c, e.v);
      if (e.is_virtual()) os << " [style=dashed]";
      os << ";\n";
    }
    os << "  }\n";
  }
  for (const StructuralEdge& s : t.structural_edges()) {
    const SkeletonEdge& e = t.component(s.a).edges[s.a_edge];
    os << "  " << node(s.a, e.u) << " -- " << node(s.b, e.u) << " [style=bold, ltail=cluster_" << s.a
       << ", lhead=cluster_" << s.b << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace mustpath
