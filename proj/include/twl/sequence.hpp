#pragma once

#include <string>
#include <vector>

#include "twl/graph.hpp"

namespace twl {

// One merge. Originals are 0..n-1; the product of the k-th step (0-based) is n+k.
struct ContractionStep {
  vertex_t u;
  vertex_t v;
  vertex_t product;
};

struct ContractionSequence {
  int n = 0;
  std::vector<ContractionStep> steps;

  static vertex_t product_id(int n, int step_index) { return n + step_index; }

  // Builds a sequence from (u,v) pairs, assigning product ids.
  static ContractionSequence from_pairs(int n, const std::vector<edge_t>& pairs) {
    ContractionSequence s{n, {}};
    for (std::size_t i = 0; i < pairs.size(); ++i)
      s.steps.push_back({pairs[i].first, pairs[i].second, product_id(n, static_cast<int>(i))});
    return s;
  }

  std::vector<edge_t> pairs() const {
    std::vector<edge_t> out;
    for (const auto& st : steps) out.emplace_back(st.u, st.v);
    return out;
  }

  friend bool operator==(const ContractionSequence& a, const ContractionSequence& b) {
    return a.n == b.n && a.pairs() == b.pairs();
  }
};

class malformed_sequence : public invalid_input {
public:
  using invalid_input::invalid_input;
};

namespace detail {

inline void check_step(const Trigraph& t, const ContractionStep& st, int n, int index) {
  auto where = [&] { return "step " + std::to_string(index + 1) + ": "; };
  if (st.u == st.v) throw malformed_sequence(where() + "contracts vertex " + std::to_string(st.u) + " with itself");
  if (!t.contains(st.u)) throw malformed_sequence(where() + "vertex " + std::to_string(st.u) + " is not alive");
  if (!t.contains(st.v)) throw malformed_sequence(where() + "vertex " + std::to_string(st.v) + " is not alive");
  if (st.product != ContractionSequence::product_id(n, index))
    throw malformed_sequence(where() + "product id " + std::to_string(st.product) + ", expected " +
                             std::to_string(ContractionSequence::product_id(n, index)));
}

inline void check_header(const Graph& g, const ContractionSequence& s) {
  if (s.n != g.num_vertices())
    throw malformed_sequence("sequence is over " + std::to_string(s.n) + " vertices, graph has " +
                             std::to_string(g.num_vertices()));
  if (s.n < 1) throw malformed_sequence("contraction sequences need at least one vertex");
}

}  // namespace detail

struct WidthReport {
  int width = 0;
  std::vector<int> trace;  // max red degree after each step
};

// Replays the whole sequence and reports the largest red degree ever seen.
inline WidthReport verify_width(const Graph& g, const ContractionSequence& s) {
  detail::check_header(g, s);
  if (static_cast<int>(s.steps.size()) != s.n - 1)
    throw malformed_sequence("sequence has " + std::to_string(s.steps.size()) + " steps, expected " +
                             std::to_string(s.n - 1));
  Trigraph t(g);
  WidthReport r;
  r.trace.reserve(s.steps.size());
  for (std::size_t i = 0; i < s.steps.size(); ++i) {
    const auto& st = s.steps[i];
    detail::check_step(t, st, s.n, static_cast<int>(i));
    t.contract_in_place(st.u, st.v, st.product);
    int d = t.max_red_degree();
    r.trace.push_back(d);
    r.width = std::max(r.width, d);
  }
  return r;
}

// Trigraph after the first i contractions.
inline Trigraph apply_prefix(const Graph& g, const ContractionSequence& s, int i) {
  detail::check_header(g, s);
  if (i < 0 || i > s.n - 1 || i > static_cast<int>(s.steps.size()))
    throw malformed_sequence("prefix length " + std::to_string(i) + " out of range");
  Trigraph t(g);
  for (int k = 0; k < i; ++k) {
    detail::check_step(t, s.steps[k], s.n, k);
    t.contract_in_place(s.steps[k].u, s.steps[k].v, s.steps[k].product);
  }
  return t;
}

// A part split into two; ids follow the contraction that is being undone.
struct SplitRecord {
  int part;
  VertexPartition::Part first;
  VertexPartition::Part second;
};

// Partitions P^1 = {V} ... P^n = singletons, P^{i+1} = P^i with splits[i-1] applied.
struct UncontractionSequence {
  int n = 0;
  int root_id = 0;
  std::vector<SplitRecord> splits;

  // P^i for 1 <= i <= n.
  VertexPartition partition(int i) const {
    if (i < 1 || i > n) throw invalid_input("partition index " + std::to_string(i) + " out of range 1.." + std::to_string(n));
    VertexPartition p = VertexPartition::whole(n, root_id);
    for (int k = 0; k + 1 < i; ++k) p = p.split(splits[k].part, splits[k].first, splits[k].second);
    return p;
  }

  // All of P^1..P^n, computed incrementally.
  std::vector<VertexPartition> all_partitions() const {
    std::vector<VertexPartition> out;
    out.reserve(static_cast<std::size_t>(n));
    out.push_back(VertexPartition::whole(n, root_id));
    for (const auto& sp : splits) out.push_back(out.back().split(sp.part, sp.first, sp.second));
    return out;
  }
};

// Groups original vertices by the live vertex they were contracted into, read backwards.
inline UncontractionSequence invert(const Graph& g, const ContractionSequence& s) {
  verify_width(g, s);
  const int n = s.n;
  std::vector<std::vector<vertex_t>> members(static_cast<std::size_t>(2 * n - 1));
  for (int v = 0; v < n; ++v) members[v] = {v};
  for (const auto& st : s.steps) {
    auto& m = members[st.product];
    m = members[st.u];
    m.insert(m.end(), members[st.v].begin(), members[st.v].end());
    std::sort(m.begin(), m.end());
  }
  UncontractionSequence u;
  u.n = n;
  u.root_id = s.steps.empty() ? 0 : s.steps.back().product;
  for (auto it = s.steps.rbegin(); it != s.steps.rend(); ++it)
    u.splits.push_back({it->product, {it->u, members[it->u]}, {it->v, members[it->v]}});
  return u;
}

inline VertexPartition partitions_at(const UncontractionSequence& u, int i) { return u.partition(i); }

}  // namespace twl
