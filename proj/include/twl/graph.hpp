#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace twl {

using vertex_t = int;
using edge_t = std::pair<vertex_t, vertex_t>;

class invalid_input : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Finite simple undirected graph on vertices 0..n-1.
class Graph {
public:
  Graph() = default;

  explicit Graph(int n) : adj_(static_cast<std::size_t>(check_count(n))) {}

  Graph(int n, const std::vector<edge_t>& edges) : Graph(n) {
    for (auto [u, v] : edges) add_edge(u, v);
  }

  int num_vertices() const { return static_cast<int>(adj_.size()); }
  int num_edges() const { return m_; }

  bool valid(vertex_t v) const { return v >= 0 && v < num_vertices(); }

  void add_edge(vertex_t u, vertex_t v) {
    if (!valid(u) || !valid(v))
      throw invalid_input("edge endpoint out of range: " + std::to_string(u) + " " + std::to_string(v));
    if (u == v) throw invalid_input("loop at vertex " + std::to_string(u));
    auto& nu = adj_[u];
    auto it = std::lower_bound(nu.begin(), nu.end(), v);
    if (it != nu.end() && *it == v)
      throw invalid_input("duplicate edge " + std::to_string(u) + " " + std::to_string(v));
    nu.insert(it, v);
    auto& nv = adj_[v];
    nv.insert(std::lower_bound(nv.begin(), nv.end(), u), u);
    ++m_;
  }

  bool has_edge(vertex_t u, vertex_t v) const {
    if (!valid(u) || !valid(v)) return false;
    const auto& nu = adj_[u];
    return std::binary_search(nu.begin(), nu.end(), v);
  }

  const std::vector<vertex_t>& neighbors(vertex_t v) const { return adj_.at(v); }
  int degree(vertex_t v) const { return static_cast<int>(adj_.at(v).size()); }

  int max_degree() const {
    int d = 0;
    for (const auto& a : adj_) d = std::max(d, static_cast<int>(a.size()));
    return d;
  }

  // Edges with u < v, in lexicographic order.
  std::vector<edge_t> edges() const {
    std::vector<edge_t> out;
    out.reserve(m_);
    for (vertex_t u = 0; u < num_vertices(); ++u)
      for (vertex_t v : adj_[u])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  // Induced subgraph on `keep` (relabelled to 0..|keep|-1 in the given order).
  Graph induced(const std::vector<vertex_t>& keep) const {
    std::vector<int> pos(adj_.size(), -1);
    for (std::size_t i = 0; i < keep.size(); ++i) pos.at(keep[i]) = static_cast<int>(i);
    Graph h(static_cast<int>(keep.size()));
    for (std::size_t i = 0; i < keep.size(); ++i)
      for (vertex_t w : adj_[keep[i]])
        if (pos[w] > static_cast<int>(i)) h.add_edge(static_cast<int>(i), pos[w]);
    return h;
  }

  // Graph with vertex v renamed to perm[v].
  Graph relabeled(const std::vector<vertex_t>& perm) const {
    Graph h(num_vertices());
    for (auto [u, v] : edges()) h.add_edge(perm.at(u), perm.at(v));
    return h;
  }

  // Bit v of mask u set iff uv is an edge. Only for n <= 64.
  std::vector<std::uint64_t> adjacency_masks() const {
    if (num_vertices() > 64) throw invalid_input("adjacency masks need n <= 64");
    std::vector<std::uint64_t> m(adj_.size(), 0);
    for (vertex_t u = 0; u < num_vertices(); ++u)
      for (vertex_t v : adj_[u]) m[u] |= std::uint64_t{1} << v;
    return m;
  }

  friend bool operator==(const Graph& a, const Graph& b) { return a.adj_ == b.adj_; }

private:
  static int check_count(int n) {
    if (n < 0) throw invalid_input("negative vertex count");
    return n;
  }

  std::vector<std::vector<vertex_t>> adj_;
  int m_ = 0;
};

enum class Color { black, red };

// Graph with black and red edges. Vertices carry external ids (labels); a plain graph
// embeds with labels 0..n-1. Contraction reuses the smaller storage slot and names the
// product with the next fresh label.
class Trigraph {
public:
  Trigraph() = default;

  explicit Trigraph(int n) {
    if (n < 0) throw invalid_input("negative vertex count");
    std::vector<vertex_t> labels(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) labels[i] = i;
    init(labels);
  }

  explicit Trigraph(const std::vector<vertex_t>& labels) { init(labels); }

  explicit Trigraph(const Graph& g) : Trigraph(g.num_vertices()) {
    for (auto [u, v] : g.edges()) add_edge(u, v, Color::black);
  }

  int num_vertices() const { return alive_count_; }
  bool contains(vertex_t v) const { return slot(v) >= 0; }

  // Live vertex labels in increasing order.
  std::vector<vertex_t> vertices() const {
    std::vector<vertex_t> out;
    out.reserve(alive_count_);
    for (std::size_t s = 0; s < label_.size(); ++s)
      if (alive_[s]) out.push_back(label_[s]);
    std::sort(out.begin(), out.end());
    return out;
  }

  // Smallest label never used so far.
  vertex_t next_label() const { return next_label_; }

  void add_edge(vertex_t u, vertex_t v, Color c) {
    int su = require(u), sv = require(v);
    if (u == v) throw invalid_input("loop at vertex " + std::to_string(u));
    if (black_[su].count(v) || red_[su].count(v))
      throw invalid_input("duplicate edge " + std::to_string(u) + " " + std::to_string(v));
    auto& tab = c == Color::black ? black_ : red_;
    tab[su].insert(v);
    tab[sv].insert(u);
  }

  std::optional<Color> edge_color(vertex_t u, vertex_t v) const {
    int su = require(u);
    if (black_[su].count(v)) return Color::black;
    if (red_[su].count(v)) return Color::red;
    return std::nullopt;
  }

  bool adjacent(vertex_t u, vertex_t v) const { return edge_color(u, v).has_value(); }

  const std::set<vertex_t>& black_neighbors(vertex_t v) const { return black_[require(v)]; }
  const std::set<vertex_t>& red_neighbors(vertex_t v) const { return red_[require(v)]; }

  std::set<vertex_t> neighbors(vertex_t v) const {
    int s = require(v);
    std::set<vertex_t> out = black_[s];
    out.insert(red_[s].begin(), red_[s].end());
    return out;
  }

  int red_degree(vertex_t v) const { return static_cast<int>(red_[require(v)].size()); }

  int max_red_degree() const {
    int d = 0;
    for (std::size_t s = 0; s < label_.size(); ++s)
      if (alive_[s]) d = std::max(d, static_cast<int>(red_[s].size()));
    return d;
  }

  std::vector<edge_t> black_edges() const { return collect(black_); }
  std::vector<edge_t> red_edges() const { return collect(red_); }

  // In-place contraction of x1,x2; returns the label of the product vertex.
  vertex_t contract_in_place(vertex_t x1, vertex_t x2, std::optional<vertex_t> product = std::nullopt) {
    if (x1 == x2) throw invalid_input("cannot contract a vertex with itself: " + std::to_string(x1));
    int s1 = require(x1), s2 = require(x2);
    vertex_t x0 = product.value_or(next_label_);
    if (x0 < next_label_ && x0 != x1 && x0 != x2 && contains(x0))
      throw invalid_input("product label already in use: " + std::to_string(x0));

    std::set<vertex_t> n1 = neighbors(x1), n2 = neighbors(x2);
    std::set<vertex_t> all = n1;
    all.insert(n2.begin(), n2.end());
    all.erase(x1);
    all.erase(x2);
    std::set<vertex_t> red = red_[s1];
    red.insert(red_[s2].begin(), red_[s2].end());
    for (vertex_t w : all)
      if (!n1.count(w) || !n2.count(w)) red.insert(w);
    red.erase(x1);
    red.erase(x2);

    for (vertex_t w : all) {
      int sw = slot(w);
      black_[sw].erase(x1);
      black_[sw].erase(x2);
      red_[sw].erase(x1);
      red_[sw].erase(x2);
    }

    int keep = std::min(s1, s2), drop = std::max(s1, s2);
    alive_[drop] = 0;
    black_[drop].clear();
    red_[drop].clear();
    slot_of_[label_[drop]] = -1;
    slot_of_[label_[keep]] = -1;

    label_[keep] = x0;
    if (static_cast<std::size_t>(x0) >= slot_of_.size()) slot_of_.resize(x0 + 1, -1);
    slot_of_[x0] = keep;
    next_label_ = std::max(next_label_, x0 + 1);
    --alive_count_;

    black_[keep].clear();
    red_[keep].clear();
    for (vertex_t w : all) {
      int sw = slot(w);
      if (red.count(w)) {
        red_[keep].insert(w);
        red_[sw].insert(x0);
      } else {
        black_[keep].insert(w);
        black_[sw].insert(x0);
      }
    }
    return x0;
  }

  // Same labels, same colored edges.
  friend bool operator==(const Trigraph& a, const Trigraph& b) {
    return a.vertices() == b.vertices() && a.black_edges() == b.black_edges() &&
           a.red_edges() == b.red_edges();
  }

private:
  void init(const std::vector<vertex_t>& labels) {
    label_ = labels;
    alive_.assign(labels.size(), 1);
    black_.assign(labels.size(), {});
    red_.assign(labels.size(), {});
    alive_count_ = static_cast<int>(labels.size());
    vertex_t mx = -1;
    for (vertex_t l : labels) {
      if (l < 0) throw invalid_input("negative vertex label");
      mx = std::max(mx, l);
    }
    slot_of_.assign(static_cast<std::size_t>(mx + 1), -1);
    for (std::size_t s = 0; s < labels.size(); ++s) {
      if (slot_of_[labels[s]] != -1) throw invalid_input("duplicate vertex label " + std::to_string(labels[s]));
      slot_of_[labels[s]] = static_cast<int>(s);
    }
    next_label_ = mx + 1;
  }

  int slot(vertex_t v) const {
    if (v < 0 || static_cast<std::size_t>(v) >= slot_of_.size()) return -1;
    return slot_of_[v];
  }

  int require(vertex_t v) const {
    int s = slot(v);
    if (s < 0) throw invalid_input("no such vertex: " + std::to_string(v));
    return s;
  }

  std::vector<edge_t> collect(const std::vector<std::set<vertex_t>>& tab) const {
    std::vector<edge_t> out;
    for (std::size_t s = 0; s < label_.size(); ++s) {
      if (!alive_[s]) continue;
      for (vertex_t w : tab[s])
        if (label_[s] < w) out.emplace_back(label_[s], w);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<vertex_t> label_;
  std::vector<char> alive_;
  std::vector<std::set<vertex_t>> black_, red_;
  std::vector<int> slot_of_;
  int alive_count_ = 0;
  vertex_t next_label_ = 0;
};

// Pure contraction: N(x0) = (N(x1) u N(x2)) \ {x1,x2}, red(x0) additionally takes
// N(x1) xor N(x2).
inline Trigraph contract(const Trigraph& t, vertex_t x1, vertex_t x2) {
  Trigraph out = t;
  out.contract_in_place(x1, x2);
  return out;
}

inline int red_degree(const Trigraph& t, vertex_t v) { return t.red_degree(v); }
inline int max_red_degree(const Trigraph& t) { return t.max_red_degree(); }

inline bool are_twins(const Graph& g, vertex_t x, vertex_t y) {
  if (!g.valid(x) || !g.valid(y)) throw invalid_input("invalid vertex id");
  if (x == y) throw invalid_input("twin test needs two distinct vertices");
  std::vector<vertex_t> nx, ny;
  for (vertex_t w : g.neighbors(x))
    if (w != y) nx.push_back(w);
  for (vertex_t w : g.neighbors(y))
    if (w != x) ny.push_back(w);
  return nx == ny;
}

// Partition of 0..n-1 into nonempty parts, each with a stable id.
class VertexPartition {
public:
  struct Part {
    int id;
    std::vector<vertex_t> vertices;  // sorted
  };

  VertexPartition() = default;

  // Parts get ids 0..k-1 in the given order.
  VertexPartition(int n, const std::vector<std::vector<vertex_t>>& parts) {
    std::vector<Part> ps;
    for (std::size_t i = 0; i < parts.size(); ++i) ps.push_back({static_cast<int>(i), parts[i]});
    init(n, std::move(ps));
  }

  VertexPartition(int n, std::vector<Part> parts) { init(n, std::move(parts)); }

  // n is the total number of listed vertices.
  explicit VertexPartition(const std::vector<std::vector<vertex_t>>& parts)
      : VertexPartition(count(parts), parts) {}

  static VertexPartition singletons(int n) {
    std::vector<Part> ps;
    for (int v = 0; v < n; ++v) ps.push_back({v, {v}});
    return VertexPartition(n, std::move(ps));
  }

  static VertexPartition whole(int n, int id = 0) {
    std::vector<vertex_t> all(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) all[v] = v;
    return VertexPartition(n, std::vector<Part>{{id, all}});
  }

  int num_vertices() const { return n_; }
  int size() const { return static_cast<int>(parts_.size()); }
  const std::vector<Part>& parts() const { return parts_; }

  bool has_part(int id) const { return index_.count(id) > 0; }

  const Part& part(int id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw invalid_input("unknown part id " + std::to_string(id));
    return parts_[it->second];
  }

  int part_of(vertex_t v) const { return owner_.at(v); }

  std::vector<int> ids() const {
    std::vector<int> out;
    for (const auto& p : parts_) out.push_back(p.id);
    return out;
  }

  // Replaces part `id` by two parts. `a` and `b` must partition it.
  VertexPartition split(int id, const Part& a, const Part& b) const {
    const Part& old = part(id);
    std::vector<vertex_t> both = a.vertices;
    both.insert(both.end(), b.vertices.begin(), b.vertices.end());
    std::sort(both.begin(), both.end());
    if (a.vertices.empty() || b.vertices.empty() || both != old.vertices)
      throw invalid_input("split does not divide part " + std::to_string(id) + " into two nonempty halves");
    std::vector<Part> ps;
    for (const auto& p : parts_)
      if (p.id != id) ps.push_back(p);
    ps.push_back(a);
    ps.push_back(b);
    return VertexPartition(n_, std::move(ps));
  }

  // Merges two parts under a new id.
  VertexPartition merge(int a, int b, int new_id) const {
    if (a == b) throw invalid_input("cannot merge a part with itself");
    const Part& pa = part(a);
    const Part& pb = part(b);
    Part m{new_id, pa.vertices};
    m.vertices.insert(m.vertices.end(), pb.vertices.begin(), pb.vertices.end());
    std::vector<Part> ps;
    for (const auto& p : parts_)
      if (p.id != a && p.id != b) ps.push_back(p);
    ps.push_back(std::move(m));
    return VertexPartition(n_, std::move(ps));
  }

  // Order-independent encoding: parts as sorted vertex lists, the lists sorted.
  std::vector<std::vector<vertex_t>> canonical() const {
    std::vector<std::vector<vertex_t>> out;
    for (const auto& p : parts_) out.push_back(p.vertices);
    std::sort(out.begin(), out.end());
    return out;
  }

  friend bool operator==(const VertexPartition& a, const VertexPartition& b) {
    if (a.n_ != b.n_ || a.parts_.size() != b.parts_.size()) return false;
    for (std::size_t i = 0; i < a.parts_.size(); ++i)
      if (a.parts_[i].id != b.parts_[i].id || a.parts_[i].vertices != b.parts_[i].vertices) return false;
    return true;
  }

private:
  static int count(const std::vector<std::vector<vertex_t>>& parts) {
    std::size_t n = 0;
    for (const auto& p : parts) n += p.size();
    return static_cast<int>(n);
  }

  void init(int n, std::vector<Part> parts) {
    if (n < 0) throw invalid_input("negative vertex count");
    n_ = n;
    owner_.assign(static_cast<std::size_t>(n), -1);
    for (auto& p : parts) {
      if (p.vertices.empty()) throw invalid_input("empty part " + std::to_string(p.id));
      std::sort(p.vertices.begin(), p.vertices.end());
      if (index_.count(p.id)) throw invalid_input("duplicate part id " + std::to_string(p.id));
      for (vertex_t v : p.vertices) {
        if (v < 0 || v >= n) throw invalid_input("vertex out of range in partition: " + std::to_string(v));
        if (owner_[v] != -1) throw invalid_input("vertex in two parts: " + std::to_string(v));
        owner_[v] = p.id;
      }
      index_[p.id] = -1;
    }
    for (int v = 0; v < n; ++v)
      if (owner_[v] == -1) throw invalid_input("vertex not covered by partition: " + std::to_string(v));
    std::sort(parts.begin(), parts.end(), [](const Part& a, const Part& b) { return a.id < b.id; });
    parts_ = std::move(parts);
    for (std::size_t i = 0; i < parts_.size(); ++i) index_[parts_[i].id] = static_cast<int>(i);
  }

  int n_ = 0;
  std::vector<Part> parts_;  // sorted by id
  std::map<int, int> index_;
  std::vector<int> owner_;
};

// Quotient trigraph of a partitioned graph; its vertex labels are the part ids.
struct PartitionedTrigraph {
  VertexPartition partition;
  Trigraph quotient;

  int part_size(int id) const { return static_cast<int>(partition.part(id).vertices.size()); }
};

// Crossing-edge count between every pair of parts that has one.
inline std::map<std::pair<int, int>, long long> crossing_counts(const Graph& g, const VertexPartition& p) {
  std::map<std::pair<int, int>, long long> cross;
  for (auto [u, v] : g.edges()) {
    int a = p.part_of(u), b = p.part_of(v);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    ++cross[{a, b}];
  }
  return cross;
}

inline PartitionedTrigraph quotient(const Graph& g, const VertexPartition& p) {
  if (p.num_vertices() != g.num_vertices())
    throw invalid_input("partition covers " + std::to_string(p.num_vertices()) + " vertices, graph has " +
                        std::to_string(g.num_vertices()));
  Trigraph q(p.ids());
  for (const auto& [pair, count] : crossing_counts(g, p)) {
    long long full = static_cast<long long>(p.part(pair.first).vertices.size()) *
                     static_cast<long long>(p.part(pair.second).vertices.size());
    q.add_edge(pair.first, pair.second, count == full ? Color::black : Color::red);
  }
  return {p, std::move(q)};
}

}  // namespace twl
