#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "twl/graph.hpp"
#include "twl/sequence.hpp"
#include "twl/treewidth.hpp"
#include "twl/wall.hpp"

namespace twl::io {

class parse_error : public invalid_input {
public:
  parse_error(int line, const std::string& what)
      : invalid_input("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

namespace detail {

// Reads the next non-blank line that does not start with 'c'. Returns false at EOF.
inline bool next_line(std::istream& in, std::string& line, int& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == 'c') continue;
    return true;
  }
  return false;
}

inline std::vector<long long> numbers(const std::string& s, int lineno) {
  std::istringstream ss(s);
  std::vector<long long> out;
  std::string tok;
  while (ss >> tok) {
    try {
      std::size_t used = 0;
      long long v = std::stoll(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw parse_error(lineno, "expected an integer, got '" + tok + "'");
    }
  }
  return out;
}

inline std::string strip_tag(const std::string& line, const std::string& tag, int lineno) {
  std::istringstream ss(line);
  std::string word;
  std::string rest;
  std::istringstream tags(tag);
  std::string want;
  while (tags >> want) {
    if (!(ss >> word) || word != want) throw parse_error(lineno, "expected '" + tag + "'");
  }
  std::getline(ss, rest);
  return rest;
}

inline int line_of_offset(const std::string& text, std::size_t offset) {
  int line = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

inline std::string slurp(std::istream& in) {
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline nlohmann::json parse_json(const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw parse_error(line_of_offset(text, e.byte == 0 ? 0 : e.byte - 1), "malformed JSON");
  }
}

inline int line_of_key(const std::string& text, const std::string& key) {
  auto pos = text.find("\"" + key + "\"");
  return pos == std::string::npos ? 1 : line_of_offset(text, pos);
}

}  // namespace detail

// DIMACS-like graph text: `p edge <n> <m>` then m lines `e <u> <v>`, 1-indexed. Lines
// starting with `c` are comments.
inline Graph read_graph(std::istream& in) {
  std::string line;
  int lineno = 0;
  if (!detail::next_line(in, line, lineno)) throw parse_error(lineno + 1, "missing 'p edge' header");
  auto hdr = detail::numbers(detail::strip_tag(line, "p edge", lineno), lineno);
  if (hdr.size() != 2 || hdr[0] < 0 || hdr[1] < 0) throw parse_error(lineno, "header must be 'p edge <n> <m>'");
  const long long n = hdr[0], m = hdr[1];
  if (n > 10'000'000) throw parse_error(lineno, "vertex count too large");
  Graph g(static_cast<int>(n));
  long long seen = 0;
  while (detail::next_line(in, line, lineno)) {
    auto nums = detail::numbers(detail::strip_tag(line, "e", lineno), lineno);
    if (nums.size() != 2) throw parse_error(lineno, "edge line must be 'e <u> <v>'");
    for (long long v : nums)
      if (v < 1 || v > n) throw parse_error(lineno, "vertex " + std::to_string(v) + " out of range 1.." + std::to_string(n));
    auto u = static_cast<vertex_t>(nums[0] - 1), v = static_cast<vertex_t>(nums[1] - 1);
    if (u == v) throw parse_error(lineno, "self-loop at vertex " + std::to_string(nums[0]));
    if (g.has_edge(u, v)) throw parse_error(lineno, "duplicate edge " + std::to_string(nums[0]) + " " + std::to_string(nums[1]));
    g.add_edge(u, v);
    ++seen;
  }
  if (seen != m)
    throw parse_error(lineno, "header declares " + std::to_string(m) + " edges, found " + std::to_string(seen));
  return g;
}

inline Graph read_graph(const std::string& text) {
  std::istringstream in(text);
  return read_graph(in);
}

inline void write_graph(std::ostream& out, const Graph& g, const std::vector<std::string>& comments = {}) {
  for (const auto& c : comments) out << "c " << c << '\n';
  out << "p edge " << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (auto [u, v] : g.edges()) out << "e " << u + 1 << ' ' << v + 1 << '\n';
}

inline std::string graph_text(const Graph& g) {
  std::ostringstream out;
  write_graph(out, g);
  return out.str();
}

inline void write_dot(std::ostream& out, const Trigraph& t) {
  out << "graph G {\n";
  for (int v : t.vertices()) out << "  " << v << ";\n";
  for (auto [u, v] : t.black_edges()) out << "  " << u << " -- " << v << ";\n";
  for (auto [u, v] : t.red_edges()) out << "  " << u << " -- " << v << " [color=red];\n";
  out << "}\n";
}

// One line per part, space separated 1-indexed vertices. Part ids follow line order from 0.
inline VertexPartition read_partition(std::istream& in, int n) {
  std::string line;
  int lineno = 0;
  std::vector<std::vector<vertex_t>> parts;
  std::vector<int> owner(static_cast<std::size_t>(n), 0);
  while (detail::next_line(in, line, lineno)) {
    std::vector<vertex_t> part;
    for (long long v : detail::numbers(line, lineno)) {
      if (v < 1 || v > n) throw parse_error(lineno, "vertex " + std::to_string(v) + " out of range 1.." + std::to_string(n));
      if (owner[v - 1]) throw parse_error(lineno, "vertex " + std::to_string(v) + " already in line " + std::to_string(owner[v - 1]));
      owner[v - 1] = lineno;
      part.push_back(static_cast<vertex_t>(v - 1));
    }
    parts.push_back(std::move(part));
  }
  for (int v = 0; v < n; ++v)
    if (!owner[v]) throw parse_error(lineno, "vertex " + std::to_string(v + 1) + " is in no part");
  try {
    return VertexPartition(parts);
  } catch (const invalid_input& e) {
    throw parse_error(lineno, e.what());
  }
}

inline void write_partition(std::ostream& out, const VertexPartition& p) {
  for (const auto& part : p.parts()) {
    for (std::size_t i = 0; i < part.vertices.size(); ++i) out << (i ? " " : "") << part.vertices[i] + 1;
    out << '\n';
  }
}

inline nlohmann::json to_json(const ContractionSequence& s) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& st : s.steps) steps.push_back({{"u", st.u}, {"v", st.v}});
  return {{"n", s.n}, {"steps", steps}};
}

inline ContractionSequence read_sequence(std::istream& in) {
  std::string text = detail::slurp(in);
  auto j = detail::parse_json(text);
  if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer())
    throw parse_error(detail::line_of_key(text, "n"), "sequence needs an integer field \"n\"");
  if (!j.contains("steps") || !j["steps"].is_array())
    throw parse_error(detail::line_of_key(text, "steps"), "sequence needs an array field \"steps\"");
  int n = j["n"].get<int>();
  std::vector<edge_t> pairs;
  int base = detail::line_of_key(text, "steps");
  for (std::size_t i = 0; i < j["steps"].size(); ++i) {
    const auto& st = j["steps"][i];
    if (!st.is_object() || !st.contains("u") || !st.contains("v") || !st["u"].is_number_integer() ||
        !st["v"].is_number_integer()) {
      // Best effort: the i-th "u" after the steps key.
      std::size_t pos = text.find("\"steps\"");
      for (std::size_t k = 0; k <= i && pos != std::string::npos; ++k) pos = text.find('{', pos + 1);
      throw parse_error(pos == std::string::npos ? base : detail::line_of_offset(text, pos),
                        "step " + std::to_string(i + 1) + " needs integer fields \"u\" and \"v\"");
    }
    pairs.emplace_back(st["u"].get<int>(), st["v"].get<int>());
  }
  return ContractionSequence::from_pairs(n, pairs);
}

inline nlohmann::json to_json(const WidthReport& w) { return {{"trace", w.trace}, {"width", w.width}}; }

// PACE: `s td <#bags> <width+1> <n>`, `b <id> <v...>`, then `<id> <id>` tree edges, all 1-indexed.
inline void write_td(std::ostream& out, const TreeDecomposition& td, int n) {
  out << "s td " << td.bags.size() << ' ' << td.width() + 1 << ' ' << n << '\n';
  for (std::size_t i = 0; i < td.bags.size(); ++i) {
    out << "b " << i + 1;
    for (vertex_t v : td.bags[i]) out << ' ' << v + 1;
    out << '\n';
  }
  for (auto [a, b] : td.tree_edges) out << a + 1 << ' ' << b + 1 << '\n';
}

inline TreeDecomposition read_td(std::istream& in, int* n_out = nullptr) {
  std::string line;
  int lineno = 0;
  if (!detail::next_line(in, line, lineno)) throw parse_error(lineno + 1, "missing 's td' header");
  auto hdr = detail::numbers(detail::strip_tag(line, "s td", lineno), lineno);
  if (hdr.size() != 3 || hdr[0] < 0 || hdr[1] < 0 || hdr[2] < 0)
    throw parse_error(lineno, "header must be 's td <bags> <width+1> <n>'");
  const long long nb = hdr[0], n = hdr[2];
  if (n_out) *n_out = static_cast<int>(n);
  TreeDecomposition td;
  td.bags.resize(static_cast<std::size_t>(nb));
  std::vector<char> bag_seen(static_cast<std::size_t>(nb), 0);
  long long max_bag = 0;
  while (detail::next_line(in, line, lineno)) {
    auto first = line.find_first_not_of(" \t");
    if (line[first] == 'b') {
      auto nums = detail::numbers(detail::strip_tag(line, "b", lineno), lineno);
      if (nums.empty() || nums[0] < 1 || nums[0] > nb) throw parse_error(lineno, "bag id out of range");
      if (bag_seen[nums[0] - 1]) throw parse_error(lineno, "bag " + std::to_string(nums[0]) + " listed twice");
      bag_seen[nums[0] - 1] = 1;
      auto& bag = td.bags[nums[0] - 1];
      for (std::size_t i = 1; i < nums.size(); ++i) {
        if (nums[i] < 1 || nums[i] > n) throw parse_error(lineno, "vertex " + std::to_string(nums[i]) + " out of range");
        bag.push_back(static_cast<vertex_t>(nums[i] - 1));
      }
      std::sort(bag.begin(), bag.end());
      if (std::adjacent_find(bag.begin(), bag.end()) != bag.end()) throw parse_error(lineno, "repeated vertex in bag");
      max_bag = std::max<long long>(max_bag, static_cast<long long>(bag.size()));
    } else {
      auto nums = detail::numbers(line, lineno);
      if (nums.size() != 2) throw parse_error(lineno, "tree edge line must be '<id> <id>'");
      for (long long b : nums)
        if (b < 1 || b > nb) throw parse_error(lineno, "bag id " + std::to_string(b) + " out of range");
      td.tree_edges.emplace_back(static_cast<int>(nums[0] - 1), static_cast<int>(nums[1] - 1));
    }
  }
  for (long long i = 0; i < nb; ++i)
    if (!bag_seen[i]) throw parse_error(lineno, "bag " + std::to_string(i + 1) + " is never listed");
  if (max_bag != hdr[1] && !(nb == 0 && hdr[1] == 0))
    throw parse_error(1, "header declares width+1 = " + std::to_string(hdr[1]) + ", largest bag has " +
                             std::to_string(max_bag));
  return td;
}

inline nlohmann::json to_json(const MeshEmbedding& me) { return {{"N", me.N}, {"cols", me.cols}, {"rows", me.rows}}; }

inline MeshEmbedding read_mesh(std::istream& in) {
  std::string text = detail::slurp(in);
  auto j = detail::parse_json(text);
  MeshEmbedding me;
  for (const char* key : {"N", "rows", "cols"})
    if (!j.is_object() || !j.contains(key)) throw parse_error(1, std::string("mesh needs a field \"") + key + "\"");
  try {
    me.N = j["N"].get<int>();
    me.rows = j["rows"].get<std::vector<std::vector<vertex_t>>>();
    me.cols = j["cols"].get<std::vector<std::vector<vertex_t>>>();
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(1, std::string("mesh field has the wrong type: ") + e.what());
  }
  me.compute_branching();
  return me;
}

}  // namespace twl::io
