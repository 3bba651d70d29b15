#pragma once

#include <deque>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "twl/biclique.hpp"
#include "twl/graph.hpp"
#include "twl/sequence.hpp"
#include "twl/treewidth.hpp"

namespace twl::lab {

// Contraction sequence read off a tree decomposition rooted at bag 0. Each vertex is
// forgotten at the highest bag containing it; post-order, child accumulators merge first,
// then forgotten vertices are absorbed in increasing order.
inline ContractionSequence sequence_from_decomposition(const Graph& g, const TreeDecomposition& td) {
  const int n = g.num_vertices();
  if (n < 1) throw invalid_input("graph has no vertices");
  auto chk = verify_tree_decomposition(g, td);
  if (!chk.valid) throw invalid_input("invalid tree decomposition: " + chk.violation);
  const int b = static_cast<int>(td.bags.size());
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(b));
  for (auto [x, y] : td.tree_edges) {
    adj[x].push_back(y);
    adj[y].push_back(x);
  }
  std::vector<int> parent(static_cast<std::size_t>(b), -1), depth(static_cast<std::size_t>(b), -1), order;
  std::deque<int> bfs{0};
  depth[0] = 0;
  while (!bfs.empty()) {
    int x = bfs.front();
    bfs.pop_front();
    order.push_back(x);
    for (int y : adj[x])
      if (depth[y] < 0) {
        depth[y] = depth[x] + 1;
        parent[y] = x;
        bfs.push_back(y);
      }
  }
  std::vector<int> top(static_cast<std::size_t>(n), -1);
  for (int x = 0; x < b; ++x)
    for (vertex_t v : td.bags[x])
      if (top[v] < 0 || depth[x] < depth[top[v]]) top[v] = x;
  std::vector<std::vector<vertex_t>> forgotten(static_cast<std::size_t>(b));
  for (vertex_t v = 0; v < n; ++v) forgotten[top[v]].push_back(v);

  std::vector<edge_t> pairs;
  std::vector<std::optional<vertex_t>> acc(static_cast<std::size_t>(b));
  auto absorb = [&](std::optional<vertex_t>& a, vertex_t v) {
    if (!a) {
      a = v;
      return;
    }
    pairs.emplace_back(*a, v);
    a = ContractionSequence::product_id(n, static_cast<int>(pairs.size()) - 1);
  };
  // Reverse BFS order visits children before parents.
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int x = *it;
    for (int y : adj[x])
      if (y != parent[x] && acc[y]) absorb(acc[x], *acc[y]);
    for (vertex_t v : forgotten[x]) absorb(acc[x], v);
  }
  return ContractionSequence::from_pairs(n, pairs);
}

struct PipelineResult {
  enum class Status { sequence, tww_exceeds_2, not_applicable, width_bound_missed, gate_unknown };
  Status status = Status::gate_unknown;
  std::optional<ContractionSequence> certificate;
  int width = -1;
  long long bound = 0;  // 2^{k+2} - 1
  // Set on every TWW_EXCEEDS_2: the gate k is an explicit input, never the asymptotic threshold.
  bool conditional = false;
  std::optional<Biclique> biclique;
};

inline const char* to_string(PipelineResult::Status s) {
  switch (s) {
    case PipelineResult::Status::sequence: return "SEQUENCE";
    case PipelineResult::Status::tww_exceeds_2: return "TWW_EXCEEDS_2";
    case PipelineResult::Status::not_applicable: return "NOT_APPLICABLE";
    case PipelineResult::Status::width_bound_missed: return "WIDTH_BOUND_MISSED";
    case PipelineResult::Status::gate_unknown: return "GATE_UNKNOWN";
  }
  return "?";
}

inline long long width_bound(int k) {
  return k + 2 >= 62 ? std::numeric_limits<long long>::max() : (1LL << (k + 2)) - 1;
}

inline PipelineResult pipeline_certify(const Graph& g, int t, int k, long long budget = default_search_budget) {
  if (t < 1) throw invalid_input("t must be positive");
  if (k < 0) throw invalid_input("k must be non-negative");
  PipelineResult r;
  r.bound = width_bound(k);
  if (auto kt = has_ktt(g, t)) {
    r.status = PipelineResult::Status::not_applicable;
    r.biclique = kt;
    return r;
  }
  switch (treewidth_decide(g, k, budget)) {
    case Decision::unknown: r.status = PipelineResult::Status::gate_unknown; return r;
    case Decision::no:
      r.status = PipelineResult::Status::tww_exceeds_2;
      r.conditional = true;
      return r;
    case Decision::yes: break;
  }
  auto tw = treewidth_exact(g, budget);
  if (tw.upper > k) {
    r.status = PipelineResult::Status::gate_unknown;
    return r;
  }
  auto seq = sequence_from_decomposition(g, tw.decomposition);
  r.width = verify_width(g, seq).width;
  r.certificate = std::move(seq);
  r.status = r.width > r.bound ? PipelineResult::Status::width_bound_missed : PipelineResult::Status::sequence;
  return r;
}

}  // namespace twl::lab
