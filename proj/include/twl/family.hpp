#pragma once

#include <vector>

#include "twl/graph.hpp"
#include "twl/sequence.hpp"

namespace twl {

// N disjoint paths of N vertices plus N apexes; apex i sees the i-th vertex of every path.
// Path p vertex i has id p*N+i, apex i has id N*N+i.
struct Tww3Family {
  int N = 0;
  Graph graph;
  std::vector<std::vector<vertex_t>> paths;
  std::vector<vertex_t> apexes;
};

inline Tww3Family gen_tww3_family(int N) {
  if (N < 1) throw invalid_input("family parameter must be positive");
  Tww3Family f{N, Graph(N * N + N), {}, {}};
  for (int p = 0; p < N; ++p) {
    std::vector<vertex_t> path;
    for (int i = 0; i < N; ++i) path.push_back(p * N + i);
    for (int i = 0; i + 1 < N; ++i) f.graph.add_edge(path[i], path[i + 1]);
    f.paths.push_back(std::move(path));
  }
  for (int i = 0; i < N; ++i) {
    vertex_t apex = N * N + i;
    f.apexes.push_back(apex);
    for (int p = 0; p < N; ++p) f.graph.add_edge(apex, f.paths[p][i]);
  }
  return f;
}

// Folds paths 2..N into the first one position by position, contracts every apex into its
// now unique neighbour, then collapses the remaining red path from its first vertex.
inline ContractionSequence tww3_family_sequence(int N) {
  Tww3Family f = gen_tww3_family(N);
  const int n = f.graph.num_vertices();
  std::vector<edge_t> pairs;
  auto next_id = [&] { return ContractionSequence::product_id(n, static_cast<int>(pairs.size())); };

  std::vector<vertex_t> acc = f.paths[0];
  for (int p = 1; p < N; ++p)
    for (int i = 0; i < N; ++i) {
      vertex_t id = next_id();
      pairs.emplace_back(acc[i], f.paths[p][i]);
      acc[i] = id;
    }
  for (int i = 0; i < N; ++i) {
    vertex_t id = next_id();
    pairs.emplace_back(f.apexes[i], acc[i]);
    acc[i] = id;
  }
  vertex_t head = acc[0];
  for (int i = 1; i < N; ++i) {
    vertex_t id = next_id();
    pairs.emplace_back(head, acc[i]);
    head = id;
  }
  return ContractionSequence::from_pairs(n, pairs);
}

}  // namespace twl
