#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "twl/graph.hpp"

namespace twl {

// Vertex ids of an N x N wall: path i (0-based) has vertices at[i][0..N-1]. For a
// subdivided wall, `subdivided` maps each wall edge (smaller id, larger id) to the interior
// vertices of its path, listed from the smaller id.
struct WallLabeling {
  int N = 0;
  std::vector<std::vector<vertex_t>> at;
  std::map<edge_t, std::vector<vertex_t>> subdivided;

  // Wall vertices a,b adjacent in the wall; returns the g-path a..b.
  std::vector<vertex_t> expand(vertex_t a, vertex_t b) const {
    std::vector<vertex_t> path{a};
    auto it = subdivided.find({std::min(a, b), std::max(a, b)});
    if (it != subdivided.end()) {
      if (a < b)
        path.insert(path.end(), it->second.begin(), it->second.end());
      else
        path.insert(path.end(), it->second.rbegin(), it->second.rend());
    }
    path.push_back(b);
    return path;
  }
};

struct Wall {
  Graph graph;
  WallLabeling labels;
};

// Rung between rows i and i+1 at column j iff i and j have the same parity (0-based).
inline bool wall_rung(int i, int j, int N) { return i + 1 < N && (i % 2) == (j % 2); }

// Wall edges as pairs of grid positions ((i,j),(i',j')).
inline std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> wall_edge_positions(int N) {
  std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> out;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j + 1 < N; ++j) out.push_back({{i, j}, {i, j + 1}});
  for (int i = 0; i + 1 < N; ++i)
    for (int j = 0; j < N; ++j)
      if (wall_rung(i, j, N)) out.push_back({{i, j}, {i + 1, j}});
  return out;
}

// N paths of N vertices each plus the parity rungs; vertex (i,j) gets id i*N+j.
inline Wall gen_wall(int N) {
  if (N < 1) throw invalid_input("wall size must be positive");
  Wall w{Graph(N * N), {N, {}, {}}};
  w.labels.at.assign(N, std::vector<vertex_t>(N));
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) w.labels.at[i][j] = i * N + j;
  for (auto [p, q] : wall_edge_positions(N))
    w.graph.add_edge(w.labels.at[p.first][p.second], w.labels.at[q.first][q.second]);
  return w;
}

// Replaces every edge uv by a path u - x - v; the new vertex of the k-th edge (in
// lexicographic order) is n + k.
inline Graph subdivide(const Graph& g, std::map<edge_t, vertex_t>* middle = nullptr) {
  auto es = g.edges();
  Graph h(g.num_vertices() + static_cast<int>(es.size()));
  for (std::size_t k = 0; k < es.size(); ++k) {
    vertex_t x = g.num_vertices() + static_cast<int>(k);
    h.add_edge(es[k].first, x);
    h.add_edge(x, es[k].second);
    if (middle) (*middle)[es[k]] = x;
  }
  return h;
}

inline Wall subdivide(const Wall& w) {
  std::map<edge_t, vertex_t> middle;
  Wall out{subdivide(w.graph, &middle), w.labels};
  std::map<edge_t, std::vector<vertex_t>> sub;
  for (auto [p, q] : wall_edge_positions(w.labels.N)) {
    vertex_t a = w.labels.at[p.first][p.second], b = w.labels.at[q.first][q.second];
    edge_t key{std::min(a, b), std::max(a, b)};
    auto old = w.labels.expand(key.first, key.second);
    std::vector<vertex_t> interior;
    for (std::size_t k = 0; k + 1 < old.size(); ++k) {
      if (k > 0) interior.push_back(old[k]);
      interior.push_back(middle.at({std::min(old[k], old[k + 1]), std::max(old[k], old[k + 1])}));
    }
    sub[key] = interior;
  }
  out.labels.subdivided = std::move(sub);
  return out;
}

// Checks that the labelling describes a (subdivided) wall inside g; empty string if so.
inline std::string check_wall_labeling(const Graph& g, const WallLabeling& wl) {
  const int N = wl.N;
  if (N < 1) return "wall size must be positive";
  if (static_cast<int>(wl.at.size()) != N) return "labelling has " + std::to_string(wl.at.size()) + " rows";
  std::set<vertex_t> used;
  for (int i = 0; i < N; ++i) {
    if (static_cast<int>(wl.at[i].size()) != N) return "row " + std::to_string(i) + " has wrong length";
    for (vertex_t v : wl.at[i]) {
      if (!g.valid(v)) return "vertex " + std::to_string(v) + " not in graph";
      if (!used.insert(v).second) return "vertex " + std::to_string(v) + " used twice";
    }
  }
  for (auto [p, q] : wall_edge_positions(N)) {
    auto path = wl.expand(wl.at[p.first][p.second], wl.at[q.first][q.second]);
    for (std::size_t k = 1; k + 1 < path.size(); ++k) {
      if (!g.valid(path[k])) return "subdivision vertex " + std::to_string(path[k]) + " not in graph";
      if (!used.insert(path[k]).second) return "subdivision vertex " + std::to_string(path[k]) + " used twice";
    }
    for (std::size_t k = 0; k + 1 < path.size(); ++k)
      if (!g.has_edge(path[k], path[k + 1]))
        return "missing edge " + std::to_string(path[k]) + "-" + std::to_string(path[k + 1]);
  }
  return {};
}

// An N x N cubic mesh: rows and columns are vertex paths in g.
struct MeshEmbedding {
  int N = 0;
  std::vector<std::vector<vertex_t>> rows;
  std::vector<std::vector<vertex_t>> cols;
  std::vector<vertex_t> branching;  // degree-3 vertices of rows u cols, sorted

  // Edges of the mesh subgraph H.
  std::set<edge_t> edges() const {
    std::set<edge_t> es;
    auto add = [&](const std::vector<vertex_t>& p) {
      for (std::size_t k = 0; k + 1 < p.size(); ++k) es.insert({std::min(p[k], p[k + 1]), std::max(p[k], p[k + 1])});
    };
    for (const auto& r : rows) add(r);
    for (const auto& c : cols) add(c);
    return es;
  }

  std::map<vertex_t, int> degrees() const {
    std::map<vertex_t, int> deg;
    for (auto [u, v] : edges()) {
      ++deg[u];
      ++deg[v];
    }
    return deg;
  }

  void compute_branching() {
    branching.clear();
    for (auto [v, d] : degrees())
      if (d == 3) branching.push_back(v);
  }
};

namespace detail {

inline std::string check_path(const Graph& g, const std::vector<vertex_t>& p, const std::string& name) {
  if (p.empty()) return name + " is empty";
  std::set<vertex_t> seen;
  for (vertex_t v : p) {
    if (!g.valid(v)) return name + " has invalid vertex " + std::to_string(v);
    if (!seen.insert(v).second) return name + " repeats vertex " + std::to_string(v);
  }
  for (std::size_t k = 0; k + 1 < p.size(); ++k)
    if (!g.has_edge(p[k], p[k + 1]))
      return name + " uses missing edge " + std::to_string(p[k]) + "-" + std::to_string(p[k + 1]);
  return {};
}

// Positions of `shared` in p must be consecutive; returns them in path order.
inline std::optional<std::vector<vertex_t>> contiguous(const std::vector<vertex_t>& p, const std::set<vertex_t>& shared) {
  std::vector<std::size_t> pos;
  for (std::size_t k = 0; k < p.size(); ++k)
    if (shared.count(p[k])) pos.push_back(k);
  if (pos.empty() || pos.back() - pos.front() + 1 != pos.size()) return std::nullopt;
  return std::vector<vertex_t>(p.begin() + static_cast<std::ptrdiff_t>(pos.front()),
                               p.begin() + static_cast<std::ptrdiff_t>(pos.back()) + 1);
}

}  // namespace detail

// Every cubic-mesh condition, checked literally. Empty string iff valid.
inline std::string verify_mesh(const Graph& g, const MeshEmbedding& me) {
  const int N = me.N;
  if (N < 1) return "mesh size must be positive";
  if (static_cast<int>(me.rows.size()) != N || static_cast<int>(me.cols.size()) != N)
    return "mesh needs exactly N rows and N columns";
  std::set<vertex_t> row_vs, col_vs;
  for (int i = 0; i < N; ++i) {
    if (auto e = detail::check_path(g, me.rows[i], "row " + std::to_string(i)); !e.empty()) return e;
    if (auto e = detail::check_path(g, me.cols[i], "column " + std::to_string(i)); !e.empty()) return e;
    for (vertex_t v : me.rows[i])
      if (!row_vs.insert(v).second) return "rows are not disjoint at vertex " + std::to_string(v);
    for (vertex_t v : me.cols[i])
      if (!col_vs.insert(v).second) return "columns are not disjoint at vertex " + std::to_string(v);
  }
  for (int i = 0; i < N; ++i) {
    for (vertex_t end : {me.rows[i].front(), me.rows[i].back()})
      if (col_vs.count(end)) return "row " + std::to_string(i) + " ends on a column";
    for (vertex_t end : {me.cols[i].front(), me.cols[i].back()})
      if (row_vs.count(end)) return "column " + std::to_string(i) + " ends on a row";
  }
  auto deg = me.degrees();
  for (auto [v, d] : deg)
    if (d > 3) return "vertex " + std::to_string(v) + " has mesh degree " + std::to_string(d);
  for (int i = 0; i < N; ++i) {
    std::set<vertex_t> rset(me.rows[i].begin(), me.rows[i].end());
    for (int j = 0; j < N; ++j) {
      std::set<vertex_t> shared;
      for (vertex_t v : me.cols[j])
        if (rset.count(v)) shared.insert(v);
      std::string where = "row " + std::to_string(i) + " and column " + std::to_string(j);
      if (shared.size() < 2) return where + " do not share a subpath of nonzero length";
      auto in_row = detail::contiguous(me.rows[i], shared);
      auto in_col = detail::contiguous(me.cols[j], shared);
      if (!in_row || !in_col) return where + " meet in more than one subpath";
      auto rev = *in_col;
      std::reverse(rev.begin(), rev.end());
      if (*in_row != *in_col && *in_row != rev) return where + " traverse their intersection differently";
    }
  }
  std::vector<vertex_t> branching;
  for (auto [v, d] : deg)
    if (d == 3) branching.push_back(v);
  if (!me.branching.empty() && me.branching != branching) return "branching vertex list does not match mesh degrees";
  if (static_cast<long long>(branching.size()) != 2LL * N * N)
    return "mesh has " + std::to_string(branching.size()) + " branching vertices, expected " + std::to_string(2 * N * N);
  return {};
}

// Row/column scheme inside the (2N+2) x (2N+2) wall: rows are wall paths 1,3,..,2N-1
// (0-based), column k zigzags down through wall columns 2k+1 and 2k+2.
inline MeshEmbedding wall_to_mesh(const Graph& g, const WallLabeling& wl, int N) {
  if (N < 1) throw invalid_input("mesh size must be positive");
  if (auto e = check_wall_labeling(g, wl); !e.empty()) throw invalid_input("invalid wall labelling: " + e);
  const int W = 2 * N + 2;
  if (wl.N < W)
    throw invalid_input("a " + std::to_string(N) + "x" + std::to_string(N) + " mesh needs a " + std::to_string(W) +
                        "x" + std::to_string(W) + " wall, got " + std::to_string(wl.N));
  auto append = [&](std::vector<vertex_t>& path, vertex_t next) {
    auto seg = wl.expand(path.back(), next);
    path.insert(path.end(), seg.begin() + 1, seg.end());
  };

  MeshEmbedding me;
  me.N = N;
  for (int k = 0; k < N; ++k) {
    int r = 2 * k + 1;
    std::vector<vertex_t> row{wl.at[r][0]};
    for (int j = 1; j < W; ++j) append(row, wl.at[r][j]);
    me.rows.push_back(std::move(row));
  }
  for (int k = 0; k < N; ++k) {
    int c = 2 * k + 1;
    auto rung_col = [&](int r) { return (r % 2) == (c % 2) ? c : c + 1; };
    std::vector<vertex_t> col{wl.at[0][rung_col(0)]};
    for (int r = 1; r < W; ++r) {
      append(col, wl.at[r][rung_col(r - 1)]);
      if (r + 1 < W) append(col, wl.at[r][rung_col(r)]);
    }
    me.cols.push_back(std::move(col));
  }
  me.compute_branching();
  if (auto e = verify_mesh(g, me); !e.empty()) throw invalid_input("constructed mesh is invalid: " + e);
  return me;
}

// r x c grid, vertex (i,j) = i*c + j.
inline Graph gen_grid(int r, int c) {
  if (r < 1 || c < 1) throw invalid_input("grid dimensions must be positive");
  Graph g(r * c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) {
      if (j + 1 < c) g.add_edge(i * c + j, i * c + j + 1);
      if (i + 1 < r) g.add_edge(i * c + j, (i + 1) * c + j);
    }
  return g;
}

}  // namespace twl
