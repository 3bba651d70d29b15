#pragma once

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "twl/flow.hpp"
#include "twl/graph.hpp"
#include "twl/lab/witness.hpp"
#include "twl/sequence.hpp"
#include "twl/wall.hpp"

namespace twl::lab {

struct Step1Result {
  bool found = false;
  std::string stage;  // failing stage, or the case that produced the witness
  int m = 0;
  PartQuad parts{};
  int s = 0;
  bool witness_valid = false;  // parts pass check_witness at P^m
  int heavy = -1;              // Z
  bool used_columns = false;
  bool line_count_flag = false;       // Z hit fewer than k rows and fewer than k columns
  bool menger_contradiction = false;  // both-small case: a separator smaller than |Q| exists
  int separator_size = -1;
  int cut_size = -1;
};

namespace detail {

// Shortest subpath of `line` from a vertex of Z to a vertex outside U whose interior lies in U \ Z.
inline std::optional<std::pair<vertex_t, vertex_t>> escape(const std::vector<vertex_t>& line,
                                                           const std::vector<char>& in_z,
                                                           const std::vector<char>& in_u) {
  std::optional<std::pair<vertex_t, vertex_t>> best;
  std::size_t best_len = 0;
  const long len = static_cast<long>(line.size());
  for (long p = 0; p < len; ++p) {
    if (!in_z[line[p]]) continue;
    for (int dir : {1, -1}) {
      for (long q = p + dir; q >= 0 && q < len; q += dir) {
        vertex_t v = line[q];
        if (in_z[v]) break;
        if (!in_u[v]) {
          auto l = static_cast<std::size_t>(std::abs(q - p));
          if (!best || l < best_len) {
            best = std::make_pair(line[p], v);
            best_len = l;
          }
          break;
        }
      }
    }
  }
  return best;
}

}  // namespace detail

// Searches P^1, P^2, ... for the first partition whose parts all hold fewer than 4k^2
// branching vertices and derives a witness candidate from its heaviest part. Parts
// smaller than t count as small.
inline Step1Result find_step1_witness(const Graph& g, const UncontractionSequence& u, const MeshEmbedding& me, int k,
                                      int t = 1) {
  if (k < 1) throw invalid_input("k must be positive");
  if (t < 0) throw invalid_input("t must be non-negative");
  if (auto e = verify_mesh(g, me); !e.empty()) throw invalid_input("invalid mesh: " + e);
  const int n = g.num_vertices();
  if (u.n != n || static_cast<int>(u.splits.size()) != n - 1)
    throw malformed_sequence("uncontraction sequence does not match the graph");

  Step1Result r;
  auto nf = [&](std::string stage) {
    r.found = false;
    r.stage = std::move(stage);
    return r;
  };

  MeshEmbedding mesh = me;
  mesh.compute_branching();
  std::vector<char> branching(static_cast<std::size_t>(n), 0);
  for (vertex_t v : mesh.branching) branching[v] = 1;
  const long long light = 4LL * k * k, heavy = 2LL * k * k;

  VertexPartition p = VertexPartition::whole(n, u.root_id);
  auto counts = [&](const VertexPartition& part) {
    std::map<int, long long> c;
    for (const auto& pt : part.parts()) {
      long long b = 0;
      for (vertex_t v : pt.vertices) b += branching[v];
      c[pt.id] = b;
    }
    return c;
  };
  int m = 1;
  auto c = counts(p);
  auto all_light = [&] {
    return std::all_of(c.begin(), c.end(), [&](const auto& kv) { return kv.second < light; });
  };
  while (!all_light()) {
    const auto& sp = u.splits[m - 1];
    p = p.split(sp.part, sp.first, sp.second);
    ++m;
    c = counts(p);
  }
  r.m = m;

  int z = -1;
  for (auto [id, b] : c)
    if (b >= heavy && (z < 0 || b > c[z])) z = id;
  if (z < 0) return nf("no heavy part");
  r.heavy = z;

  std::vector<char> in_z = twl::detail::membership(n, p.part(z).vertices);
  auto lines_hit = [&](const std::vector<std::vector<vertex_t>>& lines) {
    std::vector<int> hit;
    for (int i = 0; i < static_cast<int>(lines.size()); ++i)
      if (std::any_of(lines[i].begin(), lines[i].end(), [&](vertex_t v) { return in_z[v] && branching[v]; }))
        hit.push_back(i);
    return hit;
  };
  auto rows_hit = lines_hit(mesh.rows), cols_hit = lines_hit(mesh.cols);
  std::vector<int> hit = rows_hit;
  if (static_cast<int>(rows_hit.size()) < k) {
    if (static_cast<int>(cols_hit.size()) >= k) {
      hit = cols_hit;
      r.used_columns = true;
    } else {
      r.line_count_flag = true;
      return nf("heavy part hits fewer than k rows and fewer than k columns");
    }
  }
  const auto& lines = r.used_columns ? mesh.cols : mesh.rows;

  auto pt = quotient(g, p);
  const Trigraph& q = pt.quotient;
  auto red = [&](int x) { auto s = q.red_neighbors(x); return std::vector<int>(s.begin(), s.end()); };
  auto zr = red(z);
  if (zr.size() > 2) return nf("red degree of the heavy part exceeds 2");
  std::optional<int> l1, r1, l2, r2, l3, r3;
  if (!zr.empty()) l1 = zr[0];
  if (zr.size() > 1) r1 = zr[1];

  bool degree_exceeded = false;
  auto next = [&](std::optional<int> from, int prev, const std::set<int>& exclude) -> std::optional<int> {
    if (!from) return std::nullopt;
    auto nb = red(*from);
    if (nb.size() > 2) degree_exceeded = true;
    for (int y : nb)
      if (y != prev && !exclude.count(y)) return y;
    return std::nullopt;
  };
  l2 = next(l1, z, r1 ? std::set<int>{*r1} : std::set<int>{});
  std::set<int> chain{z};
  for (auto x : {l1, l2, r1}) if (x) chain.insert(*x);
  r2 = next(r1, z, chain);
  if (r2) chain.insert(*r2);
  l3 = l2 ? next(l2, *l1, chain) : std::nullopt;
  r3 = r2 ? next(r2, *r1, chain) : std::nullopt;
  if (degree_exceeded) return nf("red degree above 2 on the chain around the heavy part");

  std::vector<vertex_t> chain_vertices;
  for (int id : chain) {
    const auto& vs = p.part(id).vertices;
    chain_vertices.insert(chain_vertices.end(), vs.begin(), vs.end());
  }
  std::vector<char> in_u = twl::detail::membership(n, chain_vertices);
  std::vector<vertex_t> starts, ends;
  for (int i : hit) {
    if (static_cast<int>(ends.size()) == k) break;
    if (auto e = detail::escape(lines[i], in_z, in_u)) {
      starts.push_back(e->first);
      ends.push_back(e->second);
    }
  }
  if (static_cast<int>(ends.size()) < k) return nf("fewer than k row paths leave the chain");

  auto is_small = [&](std::optional<int> x) { return !x || pt.part_size(*x) < t; };
  auto ends_in = [&](std::optional<int> x) {
    if (!x) return 0;
    return static_cast<int>(std::count_if(ends.begin(), ends.end(), [&](vertex_t v) { return p.part_of(v) == *x; }));
  };

  bool left_small = is_small(l1) || is_small(l2), right_small = is_small(r1) || is_small(r2);
  PartQuad x{};
  if (!left_small && !right_small) {
    r.stage = "all chain parts big";
    int el = ends_in(l3), er = ends_in(r3);
    bool left = el >= er;
    int need = std::max(1, (k - 5 * t + 1) / 2);
    if ((left ? el : er) < need) return nf("outer red neighbour carries too few path ends");
    x = left ? PartQuad{*l3, *l2, *l1, z} : PartQuad{*r3, *r2, *r1, z};
  } else if (left_small != right_small) {
    r.stage = "one side small";
    if (left_small) {
      std::swap(l1, r1);
      std::swap(l2, r2);
      std::swap(l3, r3);
    }
    int need = std::max(1, k - 5 * t);
    if (ends_in(l3) < need) return nf("outer red neighbour carries too few path ends");
    x = PartQuad{*l3, *l2, *l1, z};
  } else {
    std::vector<std::optional<int>> order{l2, l1, z, r1, r2};
    int wl = is_small(l1) ? 1 : 0, wr = is_small(r1) ? 3 : 4;
    std::vector<vertex_t> sep;
    auto add = [&](int id) {
      const auto& vs = p.part(id).vertices;
      sep.insert(sep.end(), vs.begin(), vs.end());
    };
    if (order[wl]) add(*order[wl]);
    if (order[wr]) add(*order[wr]);
    std::set<int> seen;
    for (int i = wl + 1; i < wr; ++i)
      for (int y : q.black_neighbors(*order[i]))
        if (seen.insert(y).second) add(y);
    std::sort(sep.begin(), sep.end());
    sep.erase(std::unique(sep.begin(), sep.end()), sep.end());
    r.separator_size = static_cast<int>(sep.size());
    r.cut_size = max_disjoint_paths(g, starts, ends).count;
    r.menger_contradiction = separates(g, starts, ends, sep) && r.separator_size < k;
    return nf("both sides small");
  }

  r.parts = x;
  if (!detail::is_red(q, x[0], x[1]) || !detail::is_red(q, x[1], x[2]) || !detail::is_red(q, x[2], x[3]) ||
      q.adjacent(x[0], x[3]))
    return nf("chain parts do not form a witness layout");
  r.found = true;
  r.s = detail::witness_paths(g, p, x).count;
  r.witness_valid = static_cast<bool>(check_witness(g, pt, x, t, m));
  return r;
}

}  // namespace twl::lab
