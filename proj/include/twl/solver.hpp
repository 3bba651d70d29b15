#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_set>
#include <vector>

#include "twl/graph.hpp"
#include "twl/sequence.hpp"

namespace twl {

inline constexpr long long default_search_budget = 10'000'000;

enum class Decision { yes, no, unknown };

struct DecideResult {
  Decision decision = Decision::unknown;
  std::optional<ContractionSequence> certificate;  // set iff yes
  long long expanded = 0;
};

namespace detail {

using mask_t = std::uint64_t;

inline mask_t bit(int i) { return mask_t{1} << i; }

// Quotient trigraph of a partition, stored per slot. Slot s is the smallest original
// vertex of its part, so the slot order is already the canonical part order.
struct MaskState {
  mask_t alive = 0;
  std::vector<mask_t> part;   // original vertices in the part
  std::vector<mask_t> black;  // slots black-adjacent
  std::vector<mask_t> red;    // slots red-adjacent
  std::vector<vertex_t> label;

  explicit MaskState(const Graph& g) {
    const int n = g.num_vertices();
    auto adj = g.adjacency_masks();
    part.resize(n);
    black = adj;
    red.assign(n, 0);
    label.resize(n);
    for (int v = 0; v < n; ++v) {
      alive |= bit(v);
      part[v] = bit(v);
      label[v] = v;
    }
  }

  int count() const { return std::popcount(alive); }

  int max_red() const {
    int d = 0;
    for (mask_t a = alive; a; a &= a - 1) d = std::max(d, std::popcount(red[std::countr_zero(a)]));
    return d;
  }

  // Red neighbourhood of the product of slots a < b.
  mask_t merged_red(int a, int b) const {
    mask_t na = black[a] | red[a], nb = black[b] | red[b];
    mask_t r = red[a] | red[b] | (na ^ nb);
    return r & ~bit(a) & ~bit(b);
  }

  // Maximum red degree of the trigraph obtained by contracting slots a < b.
  int max_red_after(int a, int b) const {
    mask_t r0 = merged_red(a, b);
    int d = std::popcount(r0);
    mask_t ab = bit(a) | bit(b);
    for (mask_t rest = alive & ~ab; rest; rest &= rest - 1) {
      int w = std::countr_zero(rest);
      int deg = std::popcount(red[w] & ~ab) + ((r0 >> w) & 1);
      d = std::max(d, deg);
    }
    return d;
  }

  void contract(int a, int b, vertex_t product) {
    mask_t na = black[a] | red[a], nb = black[b] | red[b];
    mask_t all = (na | nb) & ~bit(a) & ~bit(b);
    mask_t r0 = merged_red(a, b);
    for (mask_t m = alive; m; m &= m - 1) {
      int w = std::countr_zero(m);
      black[w] &= ~(bit(a) | bit(b));
      red[w] &= ~(bit(a) | bit(b));
      if ((all >> w) & 1) ((r0 >> w) & 1 ? red[w] : black[w]) |= bit(a);
    }
    part[a] |= part[b];
    red[a] = r0;
    black[a] = all & ~r0;
    alive &= ~bit(b);
    part[b] = black[b] = red[b] = 0;
    label[a] = product;
  }

  std::vector<mask_t> key() const {
    std::vector<mask_t> k;
    for (mask_t m = alive; m; m &= m - 1) k.push_back(part[std::countr_zero(m)]);
    return k;
  }
};

struct KeyHash {
  std::size_t operator()(const std::vector<mask_t>& k) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (mask_t x : k) {
      h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h *= 1099511628211ull;
    }
    return h;
  }
};

struct Candidate {
  int red;
  vertex_t lo, hi;  // external labels, lo < hi
  int a, b;         // slots, a < b
};

inline std::vector<Candidate> candidates(const MaskState& s, int d) {
  std::vector<Candidate> out;
  for (mask_t ma = s.alive; ma; ma &= ma - 1) {
    int a = std::countr_zero(ma);
    for (mask_t mb = s.alive & ~((bit(a) << 1) - 1); mb; mb &= mb - 1) {
      int b = std::countr_zero(mb);
      int r = s.max_red_after(a, b);
      if (r > d) continue;
      vertex_t la = s.label[a], lb = s.label[b];
      out.push_back({r, std::min(la, lb), std::max(la, lb), a, b});
    }
  }
  std::sort(out.begin(), out.end(), [](const Candidate& x, const Candidate& y) {
    return std::tie(x.red, x.lo, x.hi) < std::tie(y.red, y.lo, y.hi);
  });
  return out;
}

class DecideSearch {
public:
  DecideSearch(int n, int d, long long budget) : n_(n), d_(d), budget_(budget) {}

  // true: found; false: exhausted this subtree. Sets out_of_budget_ when stopped early.
  bool run(const MaskState& s, std::vector<edge_t>& path) {
    if (s.count() <= 1) return true;
    auto key = s.key();
    if (failed_.count(key)) return false;
    if (expanded_ >= budget_) {
      out_of_budget_ = true;
      return false;
    }
    ++expanded_;
    for (const auto& c : candidates(s, d_)) {
      MaskState next = s;
      next.contract(c.a, c.b, ContractionSequence::product_id(n_, static_cast<int>(path.size())));
      path.emplace_back(s.label[c.a], s.label[c.b]);
      if (run(next, path)) return true;
      path.pop_back();
      if (out_of_budget_) return false;
    }
    failed_.insert(std::move(key));
    return false;
  }

  long long expanded() const { return expanded_; }
  bool out_of_budget() const { return out_of_budget_; }

private:
  int n_, d_;
  long long budget_;
  long long expanded_ = 0;
  bool out_of_budget_ = false;
  std::unordered_set<std::vector<mask_t>, KeyHash> failed_;
};

inline void require_desk_scale(const Graph& g) {
  if (g.num_vertices() > 64)
    throw invalid_input("exact twin-width search supports at most 64 vertices, got " +
                        std::to_string(g.num_vertices()));
}

}  // namespace detail

// Depth-first search over contraction choices; states whose quotient exceeds red degree d
// are pruned, visited partitions are memoized.
inline DecideResult decide_twinwidth_at_most(const Graph& g, int d, long long budget = default_search_budget) {
  if (d < 0) throw invalid_input("width bound must be non-negative");
  detail::require_desk_scale(g);
  DecideResult r;
  if (g.num_vertices() <= 1) {
    r.decision = Decision::yes;
    r.certificate = ContractionSequence{std::max(g.num_vertices(), 1), {}};
    return r;
  }
  detail::DecideSearch search(g.num_vertices(), d, budget);
  std::vector<edge_t> path;
  bool found = search.run(detail::MaskState(g), path);
  r.expanded = search.expanded();
  if (found) {
    r.decision = Decision::yes;
    r.certificate = ContractionSequence::from_pairs(g.num_vertices(), path);
  } else {
    r.decision = search.out_of_budget() ? Decision::unknown : Decision::no;
  }
  return r;
}

struct ExactResult {
  enum class Status { exact, above_cap, unknown } status = Status::unknown;
  int value = -1;  // valid when exact
  std::optional<ContractionSequence> certificate;
  long long expanded = 0;
};

// Smallest d <= cap admitting a d-contraction sequence. The budget is shared across the
// decision calls.
inline ExactResult twinwidth_exact(const Graph& g, int cap, long long budget = default_search_budget) {
  if (cap < 0) throw invalid_input("width cap must be non-negative");
  ExactResult r;
  for (int d = 0; d <= cap; ++d) {
    DecideResult dr = decide_twinwidth_at_most(g, d, budget - r.expanded);
    r.expanded += dr.expanded;
    if (dr.decision == Decision::yes) {
      r.status = ExactResult::Status::exact;
      r.value = d;
      r.certificate = std::move(dr.certificate);
      return r;
    }
    if (dr.decision == Decision::unknown) {
      r.status = ExactResult::Status::unknown;
      return r;
    }
  }
  r.status = ExactResult::Status::above_cap;
  return r;
}

// Contracts lexicographically smallest twin pairs while any exist.
inline std::optional<ContractionSequence> twinwidth_zero(const Graph& g) {
  const int n = g.num_vertices();
  if (n <= 1) return ContractionSequence{std::max(n, 1), {}};
  Trigraph t(g);
  std::vector<edge_t> pairs;
  while (t.num_vertices() > 1) {
    auto vs = t.vertices();
    std::optional<edge_t> twin;
    for (std::size_t i = 0; i < vs.size() && !twin; ++i) {
      auto ni = t.neighbors(vs[i]);
      for (std::size_t j = i + 1; j < vs.size(); ++j) {
        auto nj = t.neighbors(vs[j]);
        ni.erase(vs[j]);
        nj.erase(vs[i]);
        bool same = ni == nj;
        if (t.adjacent(vs[i], vs[j])) ni.insert(vs[j]);
        if (same) {
          twin = edge_t{vs[i], vs[j]};
          break;
        }
      }
    }
    if (!twin) return std::nullopt;
    t.contract_in_place(twin->first, twin->second);
    pairs.push_back(*twin);
  }
  return ContractionSequence::from_pairs(n, pairs);
}

struct GreedyResult {
  ContractionSequence sequence;
  int width = 0;
};

// At each step contracts the pair giving the smallest maximum red degree; ties go to the
// lexicographically smallest (u,v).
inline GreedyResult greedy_sequence(const Graph& g) {
  const int n = g.num_vertices();
  if (n < 1) throw invalid_input("greedy sequence needs at least one vertex");
  Trigraph t(g);
  std::vector<edge_t> pairs;
  while (t.num_vertices() > 1) {
    auto vs = t.vertices();
    std::vector<int> deg;
    for (vertex_t v : vs) deg.push_back(t.red_degree(v));
    int best = -1;
    edge_t best_pair{-1, -1};
    for (std::size_t i = 0; i < vs.size(); ++i) {
      auto ni = t.neighbors(vs[i]);
      const auto& ri = t.red_neighbors(vs[i]);
      for (std::size_t j = i + 1; j < vs.size(); ++j) {
        auto nj = t.neighbors(vs[j]);
        const auto& rj = t.red_neighbors(vs[j]);
        std::set<vertex_t> r0;
        for (vertex_t w : ni)
          if (w != vs[j] && (ri.count(w) || !nj.count(w))) r0.insert(w);
        for (vertex_t w : nj)
          if (w != vs[i] && (rj.count(w) || !ni.count(w))) r0.insert(w);
        int m = static_cast<int>(r0.size());
        for (std::size_t k = 0; k < vs.size() && (best < 0 || m <= best); ++k) {
          if (k == i || k == j) continue;
          vertex_t w = vs[k];
          int dw = deg[k] - static_cast<int>(ri.count(w)) - static_cast<int>(rj.count(w)) +
                   static_cast<int>(r0.count(w));
          m = std::max(m, dw);
        }
        if (best < 0 || m < best) {
          best = m;
          best_pair = {vs[i], vs[j]};
        }
      }
    }
    t.contract_in_place(best_pair.first, best_pair.second);
    pairs.push_back(best_pair);
  }
  GreedyResult r{ContractionSequence::from_pairs(n, pairs), 0};
  r.width = verify_width(g, r.sequence).width;
  return r;
}

}  // namespace twl
