#pragma once

#include <array>
#include <fstream>
#include <optional>
#include <set>
#include <random>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "mustpath/mustpath.hpp"

namespace fixtures {

using namespace mustpath;

inline Graph load(const std::string& name) {
  std::ifstream in(std::string(MUSTPATH_DATA_DIR) + "/" + name + ".txt");
  if (!in) throw std::runtime_error("missing data file " + name);
  std::stringstream text;
  text << in.rdbuf();
  return parse_edge_list(text.str());
}

inline VertexId v(const Graph& g, const std::string& label) {
  auto id = g.find_vertex(label);
  if (!id) throw std::runtime_error("no vertex " + label);
  return *id;
}

inline EdgeId e(const Graph& g, const std::string& a, const std::string& b) {
  auto id = g.find_edge(v(g, a), v(g, b));
  if (!id) throw std::runtime_error("no edge " + a + "-" + b);
  return *id;
}

inline ElementRef V(const Graph& g, const std::string& label) { return ElementRef::vertex(v(g, label)); }
inline ElementRef E(const Graph& g, const std::string& a, const std::string& b) {
  return ElementRef::edge(e(g, a, b));
}

inline std::vector<std::string> names(const Graph& g, const std::vector<VertexId>& vs) {
  std::vector<std::string> out;
  for (VertexId x : vs) out.push_back(g.name(x));
  return out;
}

/// Cycle vertex labels rotated to start at `first`, oriented toward `second`.
inline std::vector<std::string> rotated(const Graph& g, const Cycle& c, const std::string& first,
                                        const std::string& second) {
  auto n = names(g, c.vertices);
  auto it = std::find(n.begin(), n.end(), first);
  if (it == n.end()) return n;
  std::rotate(n.begin(), it, n.end());
  if (n.size() > 1 && n[1] != second) std::reverse(n.begin() + 1, n.end());
  return n;
}

/// Every element of g: vertices first, then edges.
inline std::vector<ElementRef> elements(const Graph& g) {
  std::vector<ElementRef> out;
  for (VertexId x : g.vertices()) out.push_back(ElementRef::vertex(x));
  for (const Edge& ed : g.edges()) out.push_back(ElementRef::edge(ed.id));
  return out;
}

/// Random connected graph size parameters: n in [lo, hi], m between a
/// spanning tree and the complete graph.
inline std::pair<std::size_t, std::size_t> random_shape(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  std::size_t n = lo + rng() % (hi - lo + 1);
  std::size_t full = n * (n - 1) / 2;
  std::size_t m = n - 1 + rng() % (full - (n - 1) + 1);
  return {n, m};
}

/// Distinct triple of elements drawn uniformly.
inline std::array<ElementRef, 3> random_triple(std::mt19937_64& rng, const std::vector<ElementRef>& pool) {
  while (true) {
    ElementRef a = pool[rng() % pool.size()], b = pool[rng() % pool.size()], c = pool[rng() % pool.size()];
    if (a != b && a != c && b != c) return {a, b, c};
  }
}

/// s-t pair for which g plus (s,t) is biconnected, if one is found.
inline std::optional<std::pair<VertexId, VertexId>> biconnecting_pair(std::mt19937_64& rng, const Graph& g) {
  const std::size_t n = g.vertex_count();
  for (int tries = 0; tries < 16; ++tries) {
    VertexId s = static_cast<VertexId>(rng() % n), t = static_cast<VertexId>(rng() % n);
    if (s != t && is_biconnected(add_edge(g, s, t).graph)) return std::pair{s, t};
  }
  return std::nullopt;
}

/// Random biconnected graph with m edges built from ears: a 4-cycle, then
/// paths of 0..max_ear new vertices between two existing vertices.
inline Graph random_ear_graph(std::uint64_t seed, std::size_t m, std::size_t max_ear) {
  std::mt19937_64 rng(seed);
  std::vector<std::pair<VertexId, VertexId>> edges;
  std::unordered_set<std::uint64_t> have;
  auto link = [&](VertexId a, VertexId b) {
    auto [x, y] = std::minmax(a, b);
    if (!have.insert(std::uint64_t{x} << 32 | y).second) return false;
    edges.push_back({a, b});
    return true;
  };
  for (VertexId i = 0; i < 4; ++i) link(i, (i + 1) % 4);
  VertexId n = 4;
  while (edges.size() < m) {
    VertexId a = static_cast<VertexId>(rng() % n), b = static_cast<VertexId>(rng() % n);
    std::size_t len = rng() % (max_ear + 1);
    if (a == b) continue;
    if (len == 0) {
      link(a, b);
      continue;
    }
    VertexId prev = a;
    for (std::size_t k = 0; k < len; ++k, ++n) link(prev, n), prev = n;
    link(prev, b);
  }
  return make_graph(n, edges);
}

/// Brute-force exclusion set: vertex pairs no simple s-t path visits together.
inline std::set<std::pair<VertexId, VertexId>> excluded_pairs(const Graph& g, VertexId s, VertexId t) {
  std::set<std::pair<VertexId, VertexId>> out;
  auto vs = g.vertices();
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      VertexId a = vs[i], b = vs[j];
      if (a == s || a == t || b == s || b == t) continue;
      if (!oracle_pep(g, s, t, a, b)) out.insert({a, b});
    }
  return out;
}

/// Whether the s' sides of successive cuts (vertices reachable from s'
/// after deleting the cut) form a strictly increasing chain of sets.
inline bool nested_by_reachability(const Graph& g, VertexId s, const CutSequence& cuts) {
  std::vector<std::vector<char>> sides;
  for (auto [a, b] : cuts) {
    std::vector<char> seen(g.vertex_bound(), 0);
    std::vector<VertexId> todo{s};
    seen[s] = 1;
    while (!todo.empty()) {
      VertexId x = todo.back();
      todo.pop_back();
      for (auto [y, id] : g.incident(x))
        if (!seen[y] && id != a && id != b) {
          seen[y] = 1;
          todo.push_back(y);
        }
    }
    sides.push_back(std::move(seen));
  }
  for (std::size_t i = 1; i < sides.size(); ++i) {
    bool grew = false;
    for (std::size_t x = 0; x < sides[i].size(); ++x) {
      if (sides[i - 1][x] && !sides[i][x]) return false;
      grew |= sides[i][x] && !sides[i - 1][x];
    }
    if (!grew) return false;
  }
  return true;
}

}  // namespace fixtures
