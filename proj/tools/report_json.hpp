#pragma once

#include <json.hpp>

#include "mustpath/mustpath.hpp"

namespace mustpath::report {

using Json = nlohmann::ordered_json;

inline Json labels(const Graph& g, const std::vector<VertexId>& vs) {
  Json out = Json::array();
  for (VertexId v : vs) out.push_back(g.name(v));
  return out;
}

inline Json verdict(const CepVerdict& v) {
  Json out;
  out["answer"] = v.answer;
  out["reason"] = reason_name(v.reason);
  if (v.central) {
    out["central"] = {{"block", v.central->block},
                      {"component", v.central->component},
                      {"kind", std::string(1, kind_letter(v.central->kind))}};
  }
  return out;
}

inline Json spqr(const SpqrTree& t) {
  const Graph& g = t.graph();
  Json comps = Json::array();
  for (ComponentId c = 0; c < t.size(); ++c) {
    const Component& comp = t.component(c);
    Json edges = Json::array();
    for (std::uint32_t k = 0; k < comp.edges.size(); ++k) {
      const SkeletonEdge& e = comp.edges[k];
      Json je = {{"slot", k}, {"u", g.name(e.u)}, {"v", g.name(e.v)}};
      if (e.is_virtual()) {
        je["virtual"] = true;
        je["twin"] = {{"component", e.twin_component}, {"slot", e.twin_edge}};
      } else {
        je["virtual"] = false;
        je["edge"] = e.real;
      }
      edges.push_back(std::move(je));
    }
    comps.push_back({{"id", c},
                     {"kind", std::string(1, kind_letter(comp.kind))},
                     {"vertices", labels(g, comp.vertices)},
                     {"edges", std::move(edges)}});
  }
  Json tree = Json::array();
  for (const StructuralEdge& s : t.structural_edges()) tree.push_back({s.a, s.b});
  return {{"components", std::move(comps)}, {"tree_edges", std::move(tree)}};
}

inline Json exclusion(const EpeResult& r, bool with_pairs) {
  Json groups = Json::array();
  for (const ExclusionGroup& grp : r.report.groups) {
    Json edges = Json::array();
    for (const ExclusionEdge& e : grp.edges) edges.push_back({{"id", e.slot}, {"size", e.size}});
    groups.push_back({{"component", grp.component}, {"edges", std::move(edges)}});
  }
  Json out = {{"groups", std::move(groups)}, {"total_pairs", r.report.total_pairs}};
  if (with_pairs) {
    Json pairs = Json::array();
    for (auto [a, b] : expand_explicit(r)) {
      std::string la = r.plus.name(a), lb = r.plus.name(b);
      if (lb < la) std::swap(la, lb);
      pairs.push_back({la, lb});
    }
    std::sort(pairs.begin(), pairs.end());
    out["explicit"] = std::move(pairs);
  }
  return out;
}

}  // namespace mustpath::report
