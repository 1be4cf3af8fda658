#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "report_json.hpp"

using namespace mustpath;
using report::Json;

namespace {

constexpr int kInputError = 2;
constexpr int kInternalError = 3;

Graph load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::stringstream text;
  text << in.rdbuf();
  std::vector<std::string> warnings;
  Graph g = parse_edge_list(text.str(), &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  return g;
}

VertexId vertex(const Graph& g, const std::string& label) {
  auto v = g.find_vertex(label);
  if (!v) throw InputError("unknown vertex label '" + label + "'");
  return *v;
}

/// v:LABEL or e:LABEL-LABEL.
ElementRef element(const Graph& g, const std::string& text) {
  if (text.size() > 2 && text.compare(0, 2, "v:") == 0) return ElementRef::vertex(vertex(g, text.substr(2)));
  if (text.size() > 2 && text.compare(0, 2, "e:") == 0) {
    auto body = text.substr(2);
    auto dash = body.find('-');
    if (dash == std::string::npos) throw InputError("edge element needs U-V: '" + text + "'");
    VertexId u = vertex(g, body.substr(0, dash)), v = vertex(g, body.substr(dash + 1));
    auto e = g.find_edge(u, v);
    if (!e) throw InputError("no edge " + body);
    return ElementRef::edge(*e);
  }
  throw InputError("element must be v:LABEL or e:U-V, got '" + text + "'");
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

void write_file(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Must-include path and cycle queries on undirected graphs"};
  app.require_subcommand(1);
  std::string graph_file;

  auto* pep = app.add_subcommand("pep", "simple s-t path through two vertices");
  std::string source, target;
  std::vector<std::string> via;
  bool witness = false;
  pep->add_option("--graph", graph_file, "edge list file")->required();
  pep->add_option("--source", source)->required();
  pep->add_option("--target", target)->required();
  pep->add_option("--via", via, "two labels, comma separated")->required()->delimiter(',')->expected(2);
  pep->add_flag("--witness", witness, "print a path when one exists");

  auto* cep = app.add_subcommand("cep", "simple cycle through three elements");
  std::vector<std::string> elements;
  cep->add_option("--graph", graph_file)->required();
  cep->add_option("--elements", elements, "v:LABEL or e:U-V, comma separated")
      ->required()
      ->delimiter(',')
      ->expected(3);
  cep->add_flag("--witness", witness, "print a cycle when one exists");

  auto* epe_cmd = app.add_subcommand("epe", "vertex pairs no simple s-t path can visit together");
  bool with_pairs = false;
  epe_cmd->add_option("--graph", graph_file)->required();
  epe_cmd->add_option("--source", source)->required();
  epe_cmd->add_option("--target", target)->required();
  epe_cmd->add_flag("--explicit", with_pairs, "list every excluded pair");

  auto* spqr_cmd = app.add_subcommand("spqr", "SPQR tree of a biconnected graph");
  std::string dot_out, json_out;
  spqr_cmd->add_option("--graph", graph_file)->required();
  spqr_cmd->add_option("--dot", dot_out, "Graphviz output file, - for stdout");
  spqr_cmd->add_option("--json", json_out, "JSON output file, - for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    Graph g = load(graph_file);
    if (pep->parsed()) {
      VertexId s = vertex(g, source), t = vertex(g, target);
      VertexId w1 = vertex(g, via[0]), w2 = vertex(g, via[1]);
      CepVerdict v = pep_decide(g, s, t, w1, w2);
      Json out = report::verdict(v);
      if (witness && v.answer) out["witness"] = report::labels(g, construct_path(g, s, t, w1, w2)->path.vertices);
      std::cerr << (v.answer ? "path exists" : "no such path") << " (" << reason_name(v.reason) << ")\n";
      emit(out);
    } else if (cep->parsed()) {
      ElementRef x[] = {element(g, elements[0]), element(g, elements[1]), element(g, elements[2])};
      Engine engine(g);
      CepVerdict v = engine.cep(x[0], x[1], x[2]);
      Json out = report::verdict(v);
      if (witness && v.answer) out["witness"] = report::labels(g, construct_cycle(engine, x[0], x[1], x[2])->cycle.vertices);
      std::cerr << (v.answer ? "cycle exists" : "no such cycle") << " (" << reason_name(v.reason) << ")\n";
      emit(out);
    } else if (epe_cmd->parsed()) {
      auto r = epe(g, vertex(g, source), vertex(g, target));
      std::cerr << r.report.groups.size() << " groups, " << r.report.total_pairs << " pairs\n";
      emit(report::exclusion(r, with_pairs));
    } else if (spqr_cmd->parsed()) {
      if (!is_biconnected(g)) throw InputError("graph is not biconnected");
      SpqrTree t = SpqrTree::build(g);
      if (debug_checks())
        if (auto d = spqr_defect(t)) throw InternalError("spqr: " + *d);
      std::cerr << t.size() << " components\n";
      if (!dot_out.empty()) write_file(dot_out, to_dot(t));
      if (!json_out.empty() || dot_out.empty()) write_file(json_out.empty() ? "-" : json_out, report::spqr(t).dump(2) + "\n");
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
  return 0;
}
