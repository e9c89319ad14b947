#include "atn/graph_io.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace atn {

std::string to_edge_list(const SignedMultigraph& g) {
  std::ostringstream out;
  out << "n " << g.vertex_count() << '\n';
  for (const Edge& e : g.edges()) {
    out << e.u << ' ' << e.v;
    if (e.tag == EdgeTag::Sum) out << " sum";
    out << '\n';
  }
  return out.str();
}

SignedMultigraph parse_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int n = -1;
  std::vector<Edge> edges;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    auto fail = [&](const std::string& what) {
      throw std::invalid_argument("edge list line " + std::to_string(line_no) + ": " + what);
    };
    if (n < 0) {
      std::string key;
      if (!(fields >> key >> n) || key != "n" || n < 0) fail("expected header 'n <count>'");
      continue;
    }
    int u = 0;
    int v = 0;
    if (!(fields >> u >> v)) fail("expected 'u v [sum|diff]'");
    std::string tag;
    EdgeTag t = EdgeTag::Diff;
    if (fields >> tag) {
      if (tag == "sum") t = EdgeTag::Sum;
      else if (tag != "diff") fail("unknown edge tag '" + tag + "'");
    }
    if (u == v) fail("self-loop");
    edges.push_back({std::min(u, v), std::max(u, v), t});
  }
  if (n < 0) throw std::invalid_argument("edge list: missing header 'n <count>'");
  return {n, std::move(edges)};
}

nlohmann::json to_json(const SignedMultigraph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.u, e.v, e.tag == EdgeTag::Sum ? "sum" : "diff"});
  return {{"n", g.vertex_count()}, {"edges", std::move(edges)}};
}

SignedMultigraph graph_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("edges")) {
    throw std::invalid_argument("graph JSON needs fields 'n' and 'edges'");
  }
  const int n = j.at("n").get<int>();
  std::vector<Edge> edges;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() < 2 || e.size() > 3) {
      throw std::invalid_argument("graph JSON edge must be [u, v] or [u, v, tag]");
    }
    EdgeTag t = EdgeTag::Diff;
    if (e.size() == 3) {
      const auto tag = e[2].get<std::string>();
      if (tag == "sum") t = EdgeTag::Sum;
      else if (tag != "diff") throw std::invalid_argument("unknown edge tag '" + tag + "'");
    }
    edges.push_back({e[0].get<int>(), e[1].get<int>(), t});
  }
  return {n, std::move(edges)};
}

std::string to_dot(const SignedMultigraph& g) {
  std::ostringstream out;
  out << "graph G {\n";
  for (int v = 1; v <= g.vertex_count(); ++v) out << "  " << v << ";\n";
  for (const Edge& e : g.edges()) {
    out << "  " << e.u << " -- " << e.v;
    if (e.tag == EdgeTag::Sum) out << " [style=dashed]";
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

SignedMultigraph parse_graph(std::string_view text) {
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    return graph_from_json(nlohmann::json::parse(text));
  }
  return parse_edge_list(text);
}

SignedMultigraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open graph file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_graph(buffer.str());
}

std::string graph_digest(const SignedMultigraph& g) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : to_edge_list(g)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

nlohmann::json to_json(const ExponentVector& xi) { return xi.values(); }

ExponentVector exponent_from_json(const nlohmann::json& j) {
  return ExponentVector(j.get<std::vector<int>>());
}

}  // namespace atn
