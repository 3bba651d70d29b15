#pragma once
// Independent reference implementations for tests. Nothing here calls the library's
// solvers; graphs are plain adjacency matrices.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <unordered_set>
#include <vector>

#include "twl/graph.hpp"

namespace oracle {

using Matrix = std::vector<std::vector<int>>;

inline Matrix matrix(const twl::Graph& g) {
  int n = g.num_vertices();
  Matrix a(n, std::vector<int>(n, 0));
  for (auto [u, v] : g.edges()) a[u][v] = a[v][u] = 1;
  return a;
}

inline twl::Graph graph(const Matrix& a) {
  int n = static_cast<int>(a.size());
  twl::Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (a[u][v]) g.add_edge(u, v);
  return g;
}

// Trigraph as a colour matrix: 0 none, 1 black, 2 red.
struct Tri {
  int n = 0;
  Matrix c;
  std::vector<char> alive;

  explicit Tri(const Matrix& a) : n(static_cast<int>(a.size())), c(a), alive(a.size(), 1) {}

  // b disappears into a
  void merge(int a, int b) {
    for (int w = 0; w < n; ++w) {
      if (!alive[w] || w == a || w == b) continue;
      int x = c[a][w], y = c[b][w];
      int z = (x == 0 && y == 0) ? 0 : (x == 1 && y == 1) ? 1 : 2;
      c[a][w] = c[w][a] = z;
      c[b][w] = c[w][b] = 0;
    }
    c[a][b] = c[b][a] = 0;
    alive[b] = 0;
  }

  int red_degree(int v) const {
    int d = 0;
    for (int w = 0; w < n; ++w) d += alive[w] && c[v][w] == 2;
    return d;
  }

  int max_red() const {
    int m = 0;
    for (int v = 0; v < n; ++v)
      if (alive[v]) m = std::max(m, red_degree(v));
    return m;
  }

  int count() const { return static_cast<int>(std::count(alive.begin(), alive.end(), 1)); }
};

inline int tww_rec(const Tri& t, int best) {
  if (t.count() <= 1) return 0;
  for (int a = 0; a < t.n; ++a) {
    if (!t.alive[a]) continue;
    for (int b = a + 1; b < t.n; ++b) {
      if (!t.alive[b]) continue;
      Tri s = t;
      s.merge(a, b);
      int m = s.max_red();
      if (m >= best) continue;
      best = std::min(best, std::max(m, tww_rec(s, best)));
    }
  }
  return best;
}

// Exact twin-width by exhaustive branch and bound over all contraction orders, no memo.
inline int brute_twinwidth(const Matrix& a) {
  if (a.size() <= 1) return 0;
  return tww_rec(Tri(a), static_cast<int>(a.size()));
}

// Replays a sequence given as (u, v) pairs over external ids; product of step i is n+i.
// Returns the per-step max red degree, or an empty vector when a step is illegal.
inline std::vector<int> replay(const Matrix& a, const std::vector<std::pair<int, int>>& steps) {
  int n = static_cast<int>(a.size());
  Tri t(a);
  std::map<int, int> slot;
  for (int v = 0; v < n; ++v) slot[v] = v;
  std::vector<int> trace;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    auto [u, v] = steps[i];
    if (u == v || !slot.count(u) || !slot.count(v)) return {};
    int su = slot[u], sv = slot[v];
    t.merge(su, sv);
    slot.erase(u);
    slot.erase(v);
    slot[n + static_cast<int>(i)] = su;
    trace.push_back(t.max_red());
  }
  return trace;
}

// Colour of the quotient edge between two vertex sets: 0 none, 1 black, 2 red.
inline int crossing_colour(const Matrix& a, const std::vector<int>& x, const std::vector<int>& y) {
  long long hit = 0;
  for (int u : x)
    for (int v : y) hit += a[u][v];
  if (hit == 0) return 0;
  return hit == static_cast<long long>(x.size()) * static_cast<long long>(y.size()) ? 1 : 2;
}

// --- enumeration up to isomorphism ---------------------------------------------------

inline std::uint64_t code(const Matrix& a, const std::vector<int>& order) {
  std::uint64_t c = 0;
  int n = static_cast<int>(order.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) c = (c << 1) | static_cast<std::uint64_t>(a[order[i]][order[j]]);
  return c;
}

// Canonical code: colour refinement, then the largest code over orders respecting the cells.
inline std::uint64_t canonical(const Matrix& a) {
  int n = static_cast<int>(a.size());
  std::vector<int> col(n, 0);
  for (int round = 0; round <= n; ++round) {
    std::vector<std::pair<std::pair<int, std::vector<int>>, int>> sig;
    for (int v = 0; v < n; ++v) {
      std::vector<int> nb;
      for (int w = 0; w < n; ++w)
        if (a[v][w]) nb.push_back(col[w]);
      std::sort(nb.begin(), nb.end());
      sig.push_back({{col[v], nb}, v});
    }
    std::sort(sig.begin(), sig.end());
    std::vector<int> next(n);
    int k = 0;
    for (int i = 0; i < n; ++i) {
      if (i > 0 && sig[i].first != sig[i - 1].first) ++k;
      next[sig[i].second] = k;
    }
    if (next == col) break;
    col = next;
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int x, int y) { return col[x] != col[y] ? col[x] < col[y] : x < y; });
  std::vector<std::pair<int, int>> cells;
  for (int i = 0; i < n;) {
    int j = i;
    while (j < n && col[order[j]] == col[order[i]]) ++j;
    cells.push_back({i, j});
    i = j;
  }
  std::uint64_t best = 0;
  // odometer over permutations of every cell
  for (auto& [b, e] : cells) std::sort(order.begin() + b, order.begin() + e);
  while (true) {
    best = std::max(best, code(a, order));
    std::size_t c = 0;
    for (; c < cells.size(); ++c) {
      auto [b, e] = cells[c];
      if (std::next_permutation(order.begin() + b, order.begin() + e)) break;
    }
    if (c == cells.size()) break;
  }
  return best;
}

// All graphs on n vertices up to isomorphism, 1 <= n <= 8.
inline std::vector<Matrix> all_graphs(int n) {
  std::vector<Matrix> level{Matrix(1, std::vector<int>(1, 0))};
  for (int k = 2; k <= n; ++k) {
    std::unordered_set<std::uint64_t> seen;
    std::vector<Matrix> next;
    for (const auto& g : level)
      for (int mask = 0; mask < (1 << (k - 1)); ++mask) {
        Matrix h(k, std::vector<int>(k, 0));
        for (int u = 0; u < k - 1; ++u)
          for (int v = 0; v < k - 1; ++v) h[u][v] = g[u][v];
        for (int u = 0; u < k - 1; ++u)
          if (mask >> u & 1) h[u][k - 1] = h[k - 1][u] = 1;
        if (seen.insert(canonical(h)).second) next.push_back(std::move(h));
      }
    level = std::move(next);
  }
  return level;
}

inline bool has_induced_p4(const Matrix& a) {
  int n = static_cast<int>(a.size());
  std::vector<int> p(4);
  for (p[0] = 0; p[0] < n; ++p[0])
    for (p[1] = 0; p[1] < n; ++p[1])
      for (p[2] = 0; p[2] < n; ++p[2])
        for (p[3] = 0; p[3] < n; ++p[3]) {
          std::set<int> s(p.begin(), p.end());
          if (s.size() < 4) continue;
          if (a[p[0]][p[1]] && a[p[1]][p[2]] && a[p[2]][p[3]] && !a[p[0]][p[2]] && !a[p[1]][p[3]] && !a[p[0]][p[3]])
            return true;
        }
  return false;
}

// K_{2,2} subgraph iff two vertices share two neighbours.
inline bool has_c4(const Matrix& a) {
  int n = static_cast<int>(a.size());
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      int common = 0;
      for (int w = 0; w < n; ++w) common += a[u][w] && a[v][w];
      if (common >= 2) return true;
    }
  return false;
}

inline Matrix random_matrix(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  Matrix a(n, std::vector<int>(n, 0));
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng)) a[u][v] = a[v][u] = 1;
  return a;
}

// --- separation ------------------------------------------------------------------------

inline bool separated(const Matrix& a, const std::vector<int>& A, const std::vector<int>& B, std::uint32_t removed) {
  int n = static_cast<int>(a.size());
  std::vector<char> seen(n, 0), inb(n, 0);
  for (int b : B) inb[b] = 1;
  std::deque<int> q;
  for (int x : A)
    if (!(removed >> x & 1) && !seen[x]) {
      seen[x] = 1;
      q.push_back(x);
    }
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    if (inb[v]) return false;
    for (int w = 0; w < n; ++w)
      if (a[v][w] && !seen[w] && !(removed >> w & 1)) {
        seen[w] = 1;
        q.push_back(w);
      }
  }
  return true;
}

// Size of a smallest A-B separator, by enumerating vertex subsets.
inline int min_separator(const Matrix& a, const std::vector<int>& A, const std::vector<int>& B) {
  int n = static_cast<int>(a.size());
  int best = n;
  for (std::uint32_t s = 0; s < (1u << n); ++s) {
    int k = __builtin_popcount(s);
    if (k < best && separated(a, A, B, s)) best = k;
  }
  return best;
}

// --- tree-width ----------------------------------------------------------------------

// Vertices outside S u {v} reachable from v through S.
inline int q_size(const Matrix& a, std::uint32_t s, int v) {
  int n = static_cast<int>(a.size());
  std::vector<char> seen(n, 0);
  std::deque<int> q{v};
  seen[v] = 1;
  int out = 0;
  while (!q.empty()) {
    int x = q.front();
    q.pop_front();
    for (int w = 0; w < n; ++w) {
      if (!a[x][w] || seen[w]) continue;
      seen[w] = 1;
      if (s >> w & 1)
        q.push_back(w);
      else
        ++out;
    }
  }
  return out;
}

// Tree-width as the best elimination ordering, by dynamic programming over eliminated sets.
inline int treewidth(const Matrix& a) {
  int n = static_cast<int>(a.size());
  if (n == 0) return -1;
  std::vector<int> f(1u << n, n);
  f[0] = -1;
  for (std::uint32_t s = 1; s < (1u << n); ++s)
    for (int v = 0; v < n; ++v)
      if (s >> v & 1) {
        std::uint32_t r = s & ~(1u << v);
        f[s] = std::min(f[s], std::max(f[r], q_size(a, r, v)));
      }
  return f[(1u << n) - 1];
}

}  // namespace oracle
