#pragma once

#include <deque>
#include <optional>
#include <vector>

#include "twl/graph.hpp"

namespace twl {

struct DisjointPaths {
  int count = 0;
  // Each path has exactly one vertex in A (its first) and one in B (its last).
  std::vector<std::vector<vertex_t>> paths;
  // Separator read off the final residual network; |cut| == count.
  std::vector<vertex_t> cut;
};

namespace detail {

// Unit vertex capacities via splitting v into v_in = 2v and v_out = 2v+1.
class VertexFlow {
public:
  VertexFlow(const Graph& g, const std::vector<vertex_t>& a, const std::vector<vertex_t>& b,
             const std::vector<char>& allowed)
      : n_(g.num_vertices()), source_(2 * n_), sink_(2 * n_ + 1), head_(2 * n_ + 2, -1) {
    for (vertex_t v = 0; v < n_; ++v) {
      if (!allowed[v]) continue;
      add_arc(2 * v, 2 * v + 1, 1);
      for (vertex_t w : g.neighbors(v))
        if (allowed[w]) add_arc(2 * v + 1, 2 * w, big());
    }
    for (vertex_t v : a)
      if (allowed[v]) add_arc(source_, 2 * v, big());
    for (vertex_t v : b)
      if (allowed[v]) add_arc(2 * v + 1, sink_, big());
  }

  int run() {
    int flow = 0;
    while (augment()) ++flow;
    return flow;
  }

  // Paths traced along arcs carrying flow, as original vertices.
  std::vector<std::vector<vertex_t>> paths() const {
    std::vector<std::vector<vertex_t>> out;
    std::vector<int> used(arcs_.size(), 0);
    for (int e = head_[source_]; e != -1; e = arcs_[e].next) {
      if (e % 2 != 0 || arcs_[e ^ 1].cap == 0) continue;
      std::vector<vertex_t> path;
      int node = arcs_[e].to;  // some v_in
      while (node != sink_) {
        path.push_back(node / 2);
        int out_node = node + 1;
        int nxt = -1;
        for (int f = head_[out_node]; f != -1; f = arcs_[f].next) {
          if (f % 2 == 0 && arcs_[f ^ 1].cap > 0 && !used[f]) {
            used[f] = 1;
            nxt = arcs_[f].to;
            break;
          }
        }
        node = nxt;
      }
      out.push_back(std::move(path));
    }
    return out;
  }

  std::vector<vertex_t> cut() const {
    std::vector<char> seen = reachable();
    std::vector<vertex_t> out;
    for (vertex_t v = 0; v < n_; ++v)
      if (seen[2 * v] && !seen[2 * v + 1]) out.push_back(v);
    return out;
  }

private:
  struct Arc {
    int to, cap, next;
  };

  int big() const { return n_ + 1; }

  void add_arc(int from, int to, int cap) {
    arcs_.push_back({to, cap, head_[from]});
    head_[from] = static_cast<int>(arcs_.size()) - 1;
    arcs_.push_back({from, 0, head_[to]});
    head_[to] = static_cast<int>(arcs_.size()) - 1;
  }

  std::vector<char> reachable() const {
    std::vector<char> seen(head_.size(), 0);
    std::deque<int> q{source_};
    seen[source_] = 1;
    while (!q.empty()) {
      int x = q.front();
      q.pop_front();
      for (int e = head_[x]; e != -1; e = arcs_[e].next)
        if (arcs_[e].cap > 0 && !seen[arcs_[e].to]) {
          seen[arcs_[e].to] = 1;
          q.push_back(arcs_[e].to);
        }
    }
    return seen;
  }

  // Breadth-first augmenting path; arcs are scanned in insertion order (reversed by the
  // list), which keeps the result deterministic.
  bool augment() {
    std::vector<int> via(head_.size(), -1);
    std::vector<char> seen(head_.size(), 0);
    std::deque<int> q{source_};
    seen[source_] = 1;
    while (!q.empty() && !seen[sink_]) {
      int x = q.front();
      q.pop_front();
      for (int e = head_[x]; e != -1; e = arcs_[e].next) {
        int y = arcs_[e].to;
        if (arcs_[e].cap > 0 && !seen[y]) {
          seen[y] = 1;
          via[y] = e;
          q.push_back(y);
        }
      }
    }
    if (!seen[sink_]) return false;
    for (int y = sink_; y != source_;) {
      int e = via[y];
      arcs_[e].cap -= 1;
      arcs_[e ^ 1].cap += 1;
      y = arcs_[e ^ 1].to;
    }
    return true;
  }

  int n_, source_, sink_;
  std::vector<int> head_;
  std::vector<Arc> arcs_;
};

inline std::vector<char> membership(int n, const std::vector<vertex_t>& s) {
  std::vector<char> m(static_cast<std::size_t>(n), 0);
  for (vertex_t v : s) {
    if (v < 0 || v >= n) throw invalid_input("vertex out of range: " + std::to_string(v));
    m[v] = 1;
  }
  return m;
}

// Shortens a path to its segment from the last A-vertex before the first B-vertex.
inline std::vector<vertex_t> trim(const std::vector<vertex_t>& path, const std::vector<char>& in_a,
                                  const std::vector<char>& in_b) {
  std::size_t end = 0;
  while (end < path.size() && !in_b[path[end]]) ++end;
  std::size_t start = end;
  while (!in_a[path[start]]) --start;
  return {path.begin() + static_cast<std::ptrdiff_t>(start), path.begin() + static_cast<std::ptrdiff_t>(end) + 1};
}

}  // namespace detail

// Maximum number of vertex-disjoint A-B paths, optionally inside the subgraph induced by
// `within`. A vertex of A and B counts as a path of length zero.
inline DisjointPaths max_disjoint_paths(const Graph& g, const std::vector<vertex_t>& a,
                                        const std::vector<vertex_t>& b,
                                        const std::optional<std::vector<vertex_t>>& within = std::nullopt) {
  const int n = g.num_vertices();
  auto in_a = detail::membership(n, a);
  auto in_b = detail::membership(n, b);
  std::vector<char> allowed = within ? detail::membership(n, *within) : std::vector<char>(n, 1);
  detail::VertexFlow flow(g, a, b, allowed);
  DisjointPaths r;
  r.count = flow.run();
  for (const auto& p : flow.paths()) r.paths.push_back(detail::trim(p, in_a, in_b));
  r.cut = flow.cut();
  return r;
}

inline std::vector<vertex_t> min_vertex_cut(const Graph& g, const std::vector<vertex_t>& a,
                                            const std::vector<vertex_t>& b,
                                            const std::optional<std::vector<vertex_t>>& within = std::nullopt) {
  return max_disjoint_paths(g, a, b, within).cut;
}

// True iff no A-B path avoids `removed`.
inline bool separates(const Graph& g, const std::vector<vertex_t>& a, const std::vector<vertex_t>& b,
                      const std::vector<vertex_t>& removed) {
  const int n = g.num_vertices();
  auto gone = detail::membership(n, removed);
  auto in_b = detail::membership(n, b);
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::deque<vertex_t> q;
  for (vertex_t v : a)
    if (!gone[v] && !seen[v]) {
      seen[v] = 1;
      q.push_back(v);
    }
  while (!q.empty()) {
    vertex_t v = q.front();
    q.pop_front();
    if (in_b[v]) return false;
    for (vertex_t w : g.neighbors(v))
      if (!gone[w] && !seen[w]) {
        seen[w] = 1;
        q.push_back(w);
      }
  }
  return true;
}

}  // namespace twl
