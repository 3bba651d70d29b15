#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "twl/graph.hpp"
#include "twl/solver.hpp"

namespace twl {

struct TreeDecomposition {
  std::vector<std::vector<vertex_t>> bags;  // node i -> sorted bag
  std::vector<edge_t> tree_edges;           // node pairs

  int width() const {
    std::size_t w = 0;
    for (const auto& b : bags) w = std::max(w, b.size());
    return static_cast<int>(w) - 1;
  }
};

struct TdCheck {
  bool valid = false;
  int width = -1;
  std::string violation;  // which condition failed and where
};

// The three tree-decomposition conditions plus the tree shape, checked literally.
inline TdCheck verify_tree_decomposition(const Graph& g, const TreeDecomposition& td) {
  TdCheck r;
  const int nodes = static_cast<int>(td.bags.size());
  const int n = g.num_vertices();
  if (nodes == 0) {
    r.violation = "decomposition has no nodes";
    return r;
  }
  std::vector<std::vector<int>> adj(nodes);
  for (auto [a, b] : td.tree_edges) {
    if (a < 0 || b < 0 || a >= nodes || b >= nodes || a == b) {
      r.violation = "tree edge " + std::to_string(a) + "-" + std::to_string(b) + " is invalid";
      return r;
    }
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  if (static_cast<int>(td.tree_edges.size()) != nodes - 1) {
    r.violation = "tree has " + std::to_string(td.tree_edges.size()) + " edges for " + std::to_string(nodes) + " nodes";
    return r;
  }
  {
    std::vector<char> seen(nodes, 0);
    std::deque<int> q{0};
    seen[0] = 1;
    int count = 1;
    while (!q.empty()) {
      int x = q.front();
      q.pop_front();
      for (int y : adj[x])
        if (!seen[y]) {
          seen[y] = 1;
          ++count;
          q.push_back(y);
        }
    }
    if (count != nodes) {
      r.violation = "decomposition tree is not connected";
      return r;
    }
  }
  std::vector<std::vector<int>> occurs(n);
  for (int i = 0; i < nodes; ++i)
    for (vertex_t v : td.bags[i]) {
      if (!g.valid(v)) {
        r.violation = "bag " + std::to_string(i) + " contains unknown vertex " + std::to_string(v);
        return r;
      }
      if (!occurs[v].empty() && occurs[v].back() == i) {
        r.violation = "bag " + std::to_string(i) + " lists vertex " + std::to_string(v) + " twice";
        return r;
      }
      occurs[v].push_back(i);
    }
  for (vertex_t v = 0; v < n; ++v)
    if (occurs[v].empty()) {
      r.violation = "condition 1: vertex " + std::to_string(v) + " is in no bag";
      return r;
    }
  for (auto [u, v] : g.edges()) {
    bool covered = false;
    for (int i : occurs[u])
      if (std::binary_search(occurs[v].begin(), occurs[v].end(), i)) covered = true;
    if (!covered) {
      r.violation = "condition 2: edge " + std::to_string(u) + "-" + std::to_string(v) + " is in no bag";
      return r;
    }
  }
  for (vertex_t v = 0; v < n; ++v) {
    std::vector<char> has(nodes, 0), seen(nodes, 0);
    for (int i : occurs[v]) has[i] = 1;
    std::deque<int> q{occurs[v].front()};
    seen[occurs[v].front()] = 1;
    std::size_t count = 1;
    while (!q.empty()) {
      int x = q.front();
      q.pop_front();
      for (int y : adj[x])
        if (has[y] && !seen[y]) {
          seen[y] = 1;
          ++count;
          q.push_back(y);
        }
    }
    if (count != occurs[v].size()) {
      r.violation = "condition 3: nodes containing vertex " + std::to_string(v) + " are not connected";
      return r;
    }
  }
  r.valid = true;
  r.width = td.width();
  return r;
}

// Bag of v = v plus its later neighbours in the fill-in graph; parent = earliest of those.
inline TreeDecomposition decomposition_from_ordering(const Graph& g, const std::vector<vertex_t>& order) {
  const int n = g.num_vertices();
  TreeDecomposition td;
  if (n == 0) {
    td.bags.push_back({});
    return td;
  }
  std::vector<int> pos(n, -1);
  for (int i = 0; i < n; ++i) pos.at(order.at(i)) = i;
  for (int v = 0; v < n; ++v)
    if (pos[v] < 0) throw invalid_input("elimination ordering is not a permutation");
  std::vector<std::set<vertex_t>> h(n);
  for (auto [u, v] : g.edges()) {
    h[u].insert(v);
    h[v].insert(u);
  }
  std::vector<int> roots;
  td.bags.resize(n);
  for (int i = 0; i < n; ++i) {
    vertex_t v = order[i];
    std::vector<vertex_t> later;
    for (vertex_t w : h[v])
      if (pos[w] > i) later.push_back(w);
    for (std::size_t a = 0; a < later.size(); ++a)
      for (std::size_t b = a + 1; b < later.size(); ++b) {
        h[later[a]].insert(later[b]);
        h[later[b]].insert(later[a]);
      }
    td.bags[i] = later;
    td.bags[i].push_back(v);
    std::sort(td.bags[i].begin(), td.bags[i].end());
    if (later.empty()) {
      roots.push_back(i);
    } else {
      int parent = n;
      for (vertex_t w : later) parent = std::min(parent, pos[w]);
      td.tree_edges.emplace_back(i, parent);
    }
  }
  for (std::size_t k = 0; k + 1 < roots.size(); ++k) td.tree_edges.emplace_back(roots[k], roots.back());
  return td;
}

namespace detail {

using mask_t = std::uint64_t;

// Vertices outside S u {v} reachable from v through S (its neighbourhood after eliminating S).
inline mask_t q_set(const std::vector<mask_t>& adj, mask_t s, int v) {
  mask_t inside = bit(v), frontier = bit(v), reach = 0;
  while (frontier) {
    int x = std::countr_zero(frontier);
    frontier &= frontier - 1;
    mask_t nb = adj[x];
    reach |= nb;
    mask_t more = nb & s & ~inside;
    inside |= more;
    frontier |= more;
  }
  return reach & ~s & ~bit(v);
}

inline mask_t full_mask(int n) { return n == 64 ? ~mask_t{0} : (bit(n) - 1); }

// Minor-min-width: contract a minimum-degree vertex into its smallest-degree neighbour.
inline int minor_min_width(std::vector<mask_t> adj, mask_t alive) {
  int lb = 0;
  while (std::popcount(alive) > 1) {
    int best = -1, best_deg = std::numeric_limits<int>::max();
    for (mask_t m = alive; m; m &= m - 1) {
      int v = std::countr_zero(m);
      int d = std::popcount(adj[v] & alive);
      if (d < best_deg) {
        best_deg = d;
        best = v;
      }
    }
    lb = std::max(lb, best_deg);
    mask_t nb = adj[best] & alive;
    if (nb) {
      int u = -1, u_deg = std::numeric_limits<int>::max();
      for (mask_t m = nb; m; m &= m - 1) {
        int w = std::countr_zero(m);
        int d = std::popcount(adj[w] & alive);
        if (d < u_deg) {
          u_deg = d;
          u = w;
        }
      }
      mask_t merged = (adj[u] | adj[best]) & ~bit(u) & ~bit(best);
      adj[u] = merged;
      for (mask_t m = merged; m; m &= m - 1) adj[std::countr_zero(m)] |= bit(u);
    }
    alive &= ~bit(best);
    for (mask_t m = alive; m; m &= m - 1) adj[std::countr_zero(m)] &= ~bit(best);
  }
  return lb;
}

// Min-fill elimination ordering (upper bound).
inline std::vector<vertex_t> min_fill_ordering(const Graph& g) {
  const int n = g.num_vertices();
  std::vector<std::set<vertex_t>> h(n);
  for (auto [u, v] : g.edges()) {
    h[u].insert(v);
    h[v].insert(u);
  }
  std::vector<char> done(n, 0);
  std::vector<vertex_t> order;
  for (int step = 0; step < n; ++step) {
    int best = -1;
    long long best_fill = std::numeric_limits<long long>::max();
    for (int v = 0; v < n; ++v) {
      if (done[v]) continue;
      long long fill = 0;
      for (auto a = h[v].begin(); a != h[v].end(); ++a)
        for (auto b = std::next(a); b != h[v].end(); ++b)
          if (!h[*a].count(*b)) ++fill;
      if (fill < best_fill) {
        best_fill = fill;
        best = v;
      }
    }
    std::vector<vertex_t> nb(h[best].begin(), h[best].end());
    for (std::size_t a = 0; a < nb.size(); ++a) {
      h[nb[a]].erase(best);
      for (std::size_t b = a + 1; b < nb.size(); ++b) {
        h[nb[a]].insert(nb[b]);
        h[nb[b]].insert(nb[a]);
      }
    }
    h[best].clear();
    done[best] = 1;
    order.push_back(best);
  }
  return order;
}

inline int ordering_width(const Graph& g, const std::vector<vertex_t>& order) {
  return decomposition_from_ordering(g, order).width();
}

// TW(S) = min over v in S of max(TW(S - v), |Q(S - v, v)|), over all subsets.
inline std::pair<int, std::vector<vertex_t>> subset_dp(const Graph& g) {
  const int n = g.num_vertices();
  if (n > 24) throw invalid_input("subset dynamic programme limited to 24 vertices");
  auto adj = g.adjacency_masks();
  const std::size_t count = std::size_t{1} << n;
  std::vector<std::int8_t> tw(count, 0);
  std::vector<std::int8_t> last(count, -1);
  tw[0] = -1;
  for (std::size_t s = 1; s < count; ++s) {
    int best = std::numeric_limits<int>::max(), arg = -1;
    for (mask_t m = s; m; m &= m - 1) {
      int v = std::countr_zero(m);
      mask_t rest = s & ~bit(v);
      int val = std::max<int>(tw[rest], std::popcount(q_set(adj, rest, v)));
      if (val < best) {
        best = val;
        arg = v;
      }
    }
    tw[s] = static_cast<std::int8_t>(best);
    last[s] = static_cast<std::int8_t>(arg);
  }
  std::vector<vertex_t> order;
  for (mask_t s = count - 1; s; s &= ~bit(last[s])) order.push_back(last[s]);
  std::reverse(order.begin(), order.end());
  return {n == 0 ? -1 : tw[count - 1], order};
}

// Decides tw <= k by depth-first search over eliminated sets, with simplicial and
// almost-simplicial forced moves and a minor-min-width cut-off.
class EliminationSearch {
public:
  EliminationSearch(const Graph& g, int k, long long budget)
      : n_(g.num_vertices()), k_(k), budget_(budget), adj_(g.adjacency_masks()) {}

  bool run(mask_t s, std::vector<vertex_t>& order) {
    mask_t rest = full_mask(n_) & ~s;
    if (std::popcount(rest) <= k_ + 1) {
      for (mask_t m = rest; m; m &= m - 1) order.push_back(std::countr_zero(m));
      return true;
    }
    if (failed_.count(s)) return false;
    if (expanded_ >= budget_) {
      out_of_budget_ = true;
      return false;
    }
    ++expanded_;

    std::vector<mask_t> nb(n_, 0);
    for (mask_t m = rest; m; m &= m - 1) {
      int v = std::countr_zero(m);
      nb[v] = q_set(adj_, s, v);
    }
    if (minor_min_width(nb, rest) > k_) {
      failed_.insert(s);
      return false;
    }

    std::vector<std::pair<int, int>> moves;
    for (mask_t m = rest; m; m &= m - 1) {
      int v = std::countr_zero(m);
      int d = std::popcount(nb[v]);
      if (d > k_) continue;
      if (almost_simplicial(nb, v)) {
        moves.assign(1, {d, v});
        break;
      }
      moves.emplace_back(d, v);
    }
    std::sort(moves.begin(), moves.end());
    for (auto [d, v] : moves) {
      order.push_back(v);
      if (run(s | bit(v), order)) return true;
      order.pop_back();
      if (out_of_budget_) return false;
    }
    failed_.insert(s);
    return false;
  }

  bool out_of_budget() const { return out_of_budget_; }
  long long expanded() const { return expanded_; }

private:
  // All neighbours but at most one form a clique (covers simplicial vertices).
  static bool almost_simplicial(const std::vector<mask_t>& nb, int v) {
    mask_t n = nb[v];
    auto clique = [&](mask_t c) {
      for (mask_t m = c; m; m &= m - 1) {
        int x = std::countr_zero(m);
        if ((c & ~bit(x) & ~nb[x]) != 0) return false;
      }
      return true;
    };
    if (clique(n)) return true;
    for (mask_t m = n; m; m &= m - 1)
      if (clique(n & ~bit(std::countr_zero(m)))) return true;
    return false;
  }

  int n_, k_;
  long long budget_;
  long long expanded_ = 0;
  bool out_of_budget_ = false;
  std::vector<mask_t> adj_;
  std::unordered_set<mask_t> failed_;
};

}  // namespace detail

inline constexpr int subset_dp_limit = 18;

struct TreewidthResult {
  enum class Status { exact, unknown } status = Status::unknown;
  int value = -1;  // exact value, or best upper bound when unknown
  int lower = -1;
  int upper = -1;
  TreeDecomposition decomposition;  // width == upper
  long long expanded = 0;
};

enum class TreewidthMethod { automatic, subset_dp, branch_and_bound };

inline TreewidthResult treewidth_exact(const Graph& g, long long budget = default_search_budget,
                                       TreewidthMethod method = TreewidthMethod::automatic) {
  const int n = g.num_vertices();
  if (n > 64) throw invalid_input("exact tree-width supports at most 64 vertices, got " + std::to_string(n));
  TreewidthResult r;
  if (method == TreewidthMethod::subset_dp || (method == TreewidthMethod::automatic && n <= subset_dp_limit)) {
    auto [w, order] = detail::subset_dp(g);
    r.status = TreewidthResult::Status::exact;
    r.value = r.lower = r.upper = w;
    r.decomposition = decomposition_from_ordering(g, order);
    return r;
  }
  auto adj = g.adjacency_masks();
  r.lower = detail::minor_min_width(adj, detail::full_mask(n));
  auto heuristic = detail::min_fill_ordering(g);
  r.decomposition = decomposition_from_ordering(g, heuristic);
  r.upper = r.decomposition.width();
  for (int k = r.lower; k < r.upper; ++k) {
    detail::EliminationSearch search(g, k, budget - r.expanded);
    std::vector<vertex_t> order;
    bool ok = search.run(0, order);
    r.expanded += search.expanded();
    if (ok) {
      r.upper = k;
      r.decomposition = decomposition_from_ordering(g, order);
      break;
    }
    if (search.out_of_budget()) {
      r.value = r.upper;
      return r;
    }
    r.lower = k + 1;
  }
  r.status = TreewidthResult::Status::exact;
  r.value = r.lower = r.upper;
  return r;
}

inline Decision treewidth_decide(const Graph& g, int k, long long budget = default_search_budget) {
  if (k < 0) return g.num_vertices() == 0 ? Decision::yes : Decision::no;
  const int n = g.num_vertices();
  if (n <= subset_dp_limit) return detail::subset_dp(g).first <= k ? Decision::yes : Decision::no;
  if (n > 64) throw invalid_input("exact tree-width supports at most 64 vertices, got " + std::to_string(n));
  if (detail::ordering_width(g, detail::min_fill_ordering(g)) <= k) return Decision::yes;
  detail::EliminationSearch search(g, k, budget);
  std::vector<vertex_t> order;
  if (search.run(0, order)) return Decision::yes;
  return search.out_of_budget() ? Decision::unknown : Decision::no;
}

}  // namespace twl
