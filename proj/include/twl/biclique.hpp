#pragma once

#include <algorithm>
#include <iterator>
#include <optional>
#include <set>
#include <vector>

#include "twl/graph.hpp"

namespace twl {

struct Biclique {
  std::vector<vertex_t> left, right;  // disjoint, every left-right pair is an edge
};

namespace detail {

inline std::vector<vertex_t> intersect(const std::vector<vertex_t>& a, const std::vector<vertex_t>& b) {
  std::vector<vertex_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Extends `left` by vertices larger than its last element while the common
// neighbourhood keeps at least t vertices.
inline bool grow_biclique(const Graph& g, int t, std::vector<vertex_t>& left, const std::vector<vertex_t>& common,
                          Biclique& out) {
  if (static_cast<int>(left.size()) == t) {
    out.left = left;
    out.right.assign(common.begin(), common.begin() + t);
    return true;
  }
  // Any further left vertex is adjacent to >= t vertices of `common`.
  std::set<vertex_t> cand;
  for (vertex_t c : common)
    for (vertex_t w : g.neighbors(c))
      if (w > left.back()) cand.insert(w);
  for (vertex_t w : cand) {
    if (g.degree(w) < t) continue;
    auto next = intersect(common, g.neighbors(w));
    if (static_cast<int>(next.size()) < t) continue;
    left.push_back(w);
    if (grow_biclique(g, t, left, next, out)) return true;
    left.pop_back();
  }
  return false;
}

}  // namespace detail

// Exact K_{t,t} subgraph search: left sides are enumerated in increasing order over
// vertices of degree >= t, pruned by the size of the common neighbourhood.
inline std::optional<Biclique> has_ktt(const Graph& g, int t) {
  if (t < 1) throw invalid_input("biclique size must be positive");
  Biclique out;
  for (vertex_t v = 0; v < g.num_vertices(); ++v) {
    if (g.degree(v) < t) continue;
    std::vector<vertex_t> left{v};
    if (detail::grow_biclique(g, t, left, g.neighbors(v), out)) return out;
  }
  return std::nullopt;
}

}  // namespace twl
