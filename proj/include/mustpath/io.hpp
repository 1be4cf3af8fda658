#pragma once

#include <cctype>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "graph.hpp"

namespace mustpath {

class ParseError : public InputError {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : InputError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

inline bool is_label_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '\'';
}

/// Reads `u v` lines. Blank lines and lines starting with '#' are skipped.
/// Duplicate edges are dropped and reported through `warnings`.
inline Graph parse_edge_list(std::string_view text, std::vector<std::string>* warnings = nullptr) {
  std::vector<std::string> labels;
  std::map<std::string, VertexId, std::less<>> ids;
  std::vector<Edge> edges;
  std::map<std::pair<VertexId, VertexId>, std::size_t> seen;

  auto intern = [&](const std::string& label) {
    auto [it, fresh] = ids.emplace(label, static_cast<VertexId>(labels.size()));
    if (fresh) labels.push_back(label);
    return it->second;
  };

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    std::vector<std::pair<std::size_t, std::string>> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
      if (std::isspace(static_cast<unsigned char>(line[i]))) {
        ++i;
        continue;
      }
      if (tokens.empty() && line[i] == '#') break;
      std::size_t start = i;
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) {
        if (!is_label_char(line[i])) throw ParseError(line_no, i + 1, "malformed vertex label");
        ++i;
      }
      tokens.emplace_back(start + 1, std::string(line.substr(start, i - start)));
    }
    if (tokens.empty()) continue;
    if (tokens.size() != 2) {
      std::size_t col = tokens.size() > 2 ? tokens[2].first : line.size() + 1;
      throw ParseError(line_no, col, "expected exactly two vertex labels");
    }
    if (tokens[0].second == tokens[1].second) throw ParseError(line_no, tokens[1].first, "self-loop");
    VertexId u = intern(tokens[0].second);
    VertexId v = intern(tokens[1].second);
    auto key = std::minmax(u, v);
    if (auto it = seen.find(key); it != seen.end()) {
      if (warnings)
        warnings->push_back("line " + std::to_string(line_no) + ": duplicate edge " + tokens[0].second +
                            " " + tokens[1].second + " ignored (first on line " +
                            std::to_string(it->second) + ")");
      continue;
    }
    seen.emplace(key, line_no);
    edges.push_back({static_cast<EdgeId>(edges.size()), u, v});
  }
  if (edges.empty()) throw ParseError(line_no, 1, "empty input: no edges");
  return Graph(std::move(labels), std::move(edges));
}

inline std::string to_edge_list(const Graph& g) {
  std::string out;
  for (const Edge& e : g.edges()) out += g.name(e.u) + " " + g.name(e.v) + "\n";
  return out;
}

inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

inline std::string to_dot(const Graph& g) {
  std::ostringstream os;
  os << "graph G {\n";
  for (VertexId v : g.vertices()) os << "  " << dot_quote(g.name(v)) << ";\n";
  for (const Edge& e : g.edges())
    os << "  " << dot_quote(g.name(e.u)) << " -- " << dot_quote(g.name(e.v)) << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace mustpath
