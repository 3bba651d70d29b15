#pragma once
// Constructed inputs shared by unit tests and the acceptance binary.

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "twl/lab/witness.hpp"
#include "twl/sequence.hpp"
#include "twl/wall.hpp"

namespace fixture {

using namespace twl;

// A wall carrying a mesh, cut into vertical strips of wall columns. The uncontraction
// sequence splits V into (left strips | Z u R), peels the left strips off one by one,
// then splits Z u R, and finally breaks every strip into singletons.
struct StripPlant {
  Graph g;
  MeshEmbedding me;
  UncontractionSequence u;
  int m = 0;                       // partition index right after Z u R is split
  std::vector<int> strip_ids;      // part ids of the strips at P^m, left to right
  lab::PartQuad expected{};        // (S_{p-2}, S_{p-1}, S_p, Z)
  std::string name;
};

// `widths` are the numbers of wall columns per strip, left to right, ending with Z and R.
inline StripPlant strip_plant(int N, const std::vector<int>& widths, bool mirror, bool subdivided) {
  const int W = 2 * N + 2;
  if (std::accumulate(widths.begin(), widths.end(), 0) != W) throw std::logic_error("strip widths must cover the wall");
  Wall wall = gen_wall(W);
  if (subdivided) wall = subdivide(wall);
  StripPlant pl;
  pl.g = wall.graph;
  pl.me = wall_to_mesh(wall.graph, wall.labels, N);
  const int n = pl.g.num_vertices();

  std::vector<int> strip_of_col(W);
  for (int s = 0, c = 0; s < static_cast<int>(widths.size()); ++s)
    for (int i = 0; i < widths[s]; ++i) strip_of_col[c++] = s;
  auto col_strip = [&](int j) { return strip_of_col[mirror ? W - 1 - j : j]; };

  std::vector<int> strip(n, -1), col_of(n, -1);
  for (int i = 0; i < W; ++i)
    for (int j = 0; j < W; ++j) {
      col_of[wall.labels.at[i][j]] = j;
      strip[wall.labels.at[i][j]] = col_strip(j);
    }
  for (const auto& [e, inner] : wall.labels.subdivided) {
    int j = std::min(col_of[e.first], col_of[e.second]);
    for (vertex_t v : inner) strip[v] = col_strip(j);
  }
  const int S = static_cast<int>(widths.size());
  std::vector<std::vector<vertex_t>> members(S);
  for (int v = 0; v < n; ++v) members[strip[v]].push_back(v);

  int next_id = 1;
  auto cat = [&](int from, int to) {
    std::vector<vertex_t> out;
    for (int s = from; s < to; ++s) out.insert(out.end(), members[s].begin(), members[s].end());
    std::sort(out.begin(), out.end());
    return out;
  };
  pl.u.n = n;
  pl.u.root_id = 0;
  // V -> left | Z u R
  int left = next_id++, zr = next_id++;
  pl.u.splits.push_back({0, {left, cat(0, S - 2)}, {zr, cat(S - 2, S)}});
  std::vector<int> ids(S);
  int rest = left;
  for (int s = 0; s < S - 3; ++s) {
    int a = next_id++, b = next_id++;
    pl.u.splits.push_back({rest, {a, members[s]}, {b, cat(s + 1, S - 2)}});
    ids[s] = a;
    rest = b;
  }
  ids[S - 3] = rest;
  ids[S - 2] = next_id++;
  ids[S - 1] = next_id++;
  pl.u.splits.push_back({zr, {ids[S - 2], members[S - 2]}, {ids[S - 1], members[S - 1]}});
  pl.m = static_cast<int>(pl.u.splits.size()) + 1;
  for (int s = 0; s < S; ++s) {
    std::vector<vertex_t> vs = members[s];
    int cur = ids[s];
    while (vs.size() > 1) {
      vertex_t v = vs.back();
      vs.pop_back();
      int a = next_id++, b = next_id++;
      pl.u.splits.push_back({cur, {a, {v}}, {b, vs}});
      cur = b;
    }
  }
  pl.strip_ids = ids;
  pl.expected = {ids[S - 5], ids[S - 4], ids[S - 3], ids[S - 2]};
  pl.name = "N=" + std::to_string(N) + " strips=";
  for (int w : widths) pl.name += std::to_string(w);
  pl.name += mirror ? " mirrored" : "";
  pl.name += subdivided ? " subdivided" : "";
  return pl;
}

// Compositions of `total` into parts of size 1..maxpart.
inline void compositions(int total, int maxpart, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (total == 0) {
    out.push_back(cur);
    return;
  }
  for (int p = 1; p <= std::min(total, maxpart); ++p) {
    cur.push_back(p);
    compositions(total - p, maxpart, cur, out);
    cur.pop_back();
  }
}

// Strip layouts with k = 2 where Z is the unique heaviest part (>= 8 branching vertices)
// and every strip stays below 16. Each branching wall column carries N branching vertices.
inline std::vector<std::vector<int>> planted_layouts(int N) {
  // Z and R widths in branching columns.
  int z = N == 6 ? 2 : 3, r = 1;
  int maxpart = N == 4 ? 2 : N == 5 ? 2 : 1;
  std::vector<std::vector<int>> comps, out;
  std::vector<int> cur;
  compositions(2 * N - z - r, maxpart, cur, comps);
  for (auto c : comps) {
    if (c.size() < 3) continue;
    c.front() += 1;  // column 0 carries no branching vertex
    c.push_back(z);
    c.push_back(r + 1);  // last column likewise
    out.push_back(c);
  }
  return out;
}

inline std::vector<StripPlant> planted_states(std::size_t count, unsigned seed = 7) {
  std::vector<StripPlant> all;
  for (int N : {4, 5, 6})
    for (const auto& w : planted_layouts(N))
      for (bool mirror : {false, true})
        for (bool sub : {false, true}) all.push_back(strip_plant(N, w, mirror, sub));
  std::mt19937 rng(seed);
  std::shuffle(all.begin(), all.end(), rng);
  if (all.size() > count) all.resize(count);
  return all;
}

struct Control {
  StripPlant plant;
  int k, t;
  std::string why;
};

inline std::vector<Control> starved_controls() {
  std::vector<Control> out;
  for (bool mirror : {false, true})
    for (bool sub : {false, true}) {
      out.push_back({strip_plant(4, {3, 2, 3, 2}, mirror, sub), 2, 1, "chain swallows every row"});
      out.push_back({strip_plant(4, {2, 1, 2, 3, 2}, mirror, sub), 5, 1, "no part reaches 2k^2"});
      out.push_back({strip_plant(3, {2, 1, 2, 1, 2}, mirror, sub), 4, 1, "no part reaches 2k^2"});
      out.push_back({strip_plant(4, {2, 1, 2, 3, 2}, mirror, sub), 3, 1, "heavy part is the whole graph"});
      out.push_back({strip_plant(4, {2, 1, 2, 3, 2}, mirror, sub), 2, 1000, "every part smaller than t"});
    }
  return out;
}

// --- pipeline corpus ---------------------------------------------------------------------

inline Graph random_tree(int n, std::mt19937_64& rng) {
  Graph g(n);
  for (int v = 1; v < n; ++v) g.add_edge(static_cast<int>(rng() % v), v);
  return g;
}

inline Graph cycle(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

// Series-parallel: start from an edge, then subdivide edges, add long parallel paths and
// pendant vertices.
inline Graph series_parallel(int steps, std::mt19937_64& rng) {
  std::vector<edge_t> edges{{0, 1}};
  int n = 2;
  for (int s = 0; s < steps; ++s) {
    auto e = edges[rng() % edges.size()];
    switch (rng() % 3) {
      case 0: {
        edges.erase(std::find(edges.begin(), edges.end(), e));
        edges.push_back({e.first, n});
        edges.push_back({n, e.second});
        ++n;
        break;
      }
      case 1: {
        int len = 3 + static_cast<int>(rng() % 3);  // internal vertices
        int prev = e.first;
        for (int i = 0; i < len; ++i) {
          edges.push_back({prev, n});
          prev = n++;
        }
        edges.push_back({prev, e.second});
        break;
      }
      default:
        edges.push_back({static_cast<int>(rng() % n), n});
        ++n;
    }
  }
  Graph g(n);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

struct CorpusEntry {
  Graph g;
  std::string name;
};

inline std::vector<CorpusEntry> pipeline_corpus(std::mt19937_64& rng) {
  std::vector<CorpusEntry> out;
  for (int i = 0; i < 30; ++i) {
    int n = 5 + static_cast<int>(rng() % 36);
    out.push_back({random_tree(n, rng), "tree n=" + std::to_string(n)});
  }
  for (int n = 5; n < 25; ++n) out.push_back({cycle(n), "cycle " + std::to_string(n)});
  while (out.size() < 80) {
    Graph g = series_parallel(4 + static_cast<int>(rng() % 10), rng);
    if (g.num_vertices() > 60 || oracle::has_c4(oracle::matrix(g))) continue;
    out.push_back({g, "series-parallel n=" + std::to_string(g.num_vertices())});
  }
  for (int r = 2; r <= 3; ++r)
    for (int c = 2; c <= 11 && out.size() < 100; ++c) {
      Graph g = subdivide(gen_grid(r, c));
      if (g.num_vertices() > 64) continue;
      out.push_back({g, "subdivided grid " + std::to_string(r) + "x" + std::to_string(c)});
    }
  for (int c = 2; out.size() < 100; ++c) out.push_back({cycle(25 + c), "cycle " + std::to_string(25 + c)});
  return out;
}

}  // namespace fixture
