#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "twl/lab/pipeline.hpp"
#include "twl/lab/step1.hpp"
#include "twl/lab/witness.hpp"

using namespace twl;
using namespace twl::lab;

namespace {

// Blobs X1..X4 of size 3 joined by perfect matchings, plus a vertex 12 complete to X2.
Graph blob_graph() {
  Graph g(13);
  for (int b = 0; b < 3; ++b)
    for (int i = 0; i < 3; ++i) g.add_edge(3 * b + i, 3 * b + 3 + i);
  for (int v = 3; v < 6; ++v) g.add_edge(12, v);
  return g;
}

VertexPartition blob_partition() {
  return VertexPartition(std::vector<std::vector<vertex_t>>{{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {9, 10, 11}, {12}});
}

struct RandomBlob {
  Graph g;
  VertexPartition p;
};

// Four blobs with random sparse links between consecutive blobs, plus extra vertices.
RandomBlob random_blob(std::mt19937_64& rng) {
  std::vector<int> size(4);
  for (auto& s : size) s = 2 + static_cast<int>(rng() % 3);
  int extra = static_cast<int>(rng() % 4);
  int n = std::accumulate(size.begin(), size.end(), 0) + extra;
  std::vector<std::vector<vertex_t>> parts(4);
  int v = 0;
  for (int b = 0; b < 4; ++b)
    for (int i = 0; i < size[b]; ++i) parts[b].push_back(v++);
  Graph g(n);
  std::bernoulli_distribution coin(0.5);
  for (int b = 0; b < 3; ++b) {
    int k = std::min(size[b], size[b + 1]);
    for (int i = 0; i < k; ++i) g.add_edge(parts[b][i], parts[b + 1][i]);
    for (vertex_t x : parts[b])
      for (vertex_t y : parts[b + 1])
        if (!g.has_edge(x, y) && rng() % 5 == 0) g.add_edge(x, y);
  }
  for (int b = 0; b < 4; ++b)
    for (vertex_t x : parts[b])
      for (vertex_t y : parts[b])
        if (x < y && rng() % 4 == 0) g.add_edge(x, y);
  for (int e = 0; e < extra; ++e, ++v) {
    parts.push_back({v});
    int b = 1 + static_cast<int>(rng() % 2);
    if (coin(rng))
      for (vertex_t x : parts[b]) g.add_edge(v, x);
    else
      g.add_edge(v, parts[rng() % 4][0]);
  }
  return {g, VertexPartition(parts)};
}

}  // namespace

TEST(Weight, BlackNeighbourhood) {
  auto pt = quotient(blob_graph(), blob_partition());
  EXPECT_EQ(black_neighborhood_weight(pt, 1), 1);
  EXPECT_EQ(black_neighborhood_weight(pt, 4), 3);
  EXPECT_EQ(black_neighborhood_weight(pt, 0), 0);
  EXPECT_THROW(black_neighborhood_weight(pt, 99), invalid_input);
}

TEST(Obs, PlantedBicliqueViolates) {
  Graph c4 = fixture::cycle(4);
  auto pt = quotient(c4, VertexPartition(std::vector<std::vector<vertex_t>>{{0, 2}, {1, 3}}));
  EXPECT_EQ(check_obs_red_edge(pt, 2).size(), 1u);
}

TEST(Obs, BicliqueFreeGraphsHaveRedEdgesOnly) {
  std::mt19937_64 rng(47);
  int graphs = 0;
  while (graphs < 60) {
    auto a = oracle::random_matrix(4 + static_cast<int>(rng() % 7), 0.35, rng);
    if (oracle::has_c4(a)) continue;
    ++graphs;
    Graph g = oracle::graph(a);
    int n = g.num_vertices();
    for (int rep = 0; rep < 20; ++rep) {
      int k = 1 + static_cast<int>(rng() % n);
      std::vector<std::vector<vertex_t>> parts(k);
      for (int v = 0; v < n; ++v) parts[v < k ? v : rng() % k].push_back(v);
      auto pt = quotient(g, VertexPartition(parts));
      ASSERT_TRUE(check_obs_red_edge(pt, 2).empty());
      for (int id = 0; id < k; ++id)
        if (pt.part_size(id) >= 2) {
          ASSERT_LE(black_neighborhood_weight(pt, id), 1);
        }
    }
  }
}

TEST(Witness, BlobIsValid) {
  auto c = check_witness(blob_graph(), blob_partition(), {0, 1, 2, 3}, 1);
  ASSERT_TRUE(c) << c.detail;
  EXPECT_EQ(c.state->s, 3);
  EXPECT_EQ(c.state->w2, 1);
  EXPECT_EQ(c.state->w3, 0);
  EXPECT_EQ(check_witness(blob_graph(), blob_partition(), {0, 1, 2, 3}, 2).failure, WitnessFailure::inequality);
  EXPECT_EQ(check_witness(blob_graph(), blob_partition(), {0, 1, 2, 3}, 4).failure, WitnessFailure::part_too_small);
  EXPECT_EQ(check_witness(blob_graph(), blob_partition(), {0, 2, 1, 3}, 1).failure, WitnessFailure::not_red_12);
  EXPECT_EQ(check_witness(blob_graph(), blob_partition(), {0, 1, 2, 9}, 1).failure, WitnessFailure::unknown_part);
  EXPECT_EQ(check_witness(blob_graph(), blob_partition(), {0, 1, 1, 3}, 1).failure, WitnessFailure::repeated_part);
}

TEST(Witness, C4HasNone) {
  Graph c4 = fixture::cycle(4);
  auto p = VertexPartition::singletons(4);
  std::vector<int> ids{0, 1, 2, 3};
  do {
    EXPECT_FALSE(check_witness(c4, p, {ids[0], ids[1], ids[2], ids[3]}, 1));
  } while (std::next_permutation(ids.begin(), ids.end()));
}

TEST(PathLayout, Blob) {
  EXPECT_TRUE(check_path_layout(blob_graph(), blob_partition(), {0, 1, 2, 3}));
  Graph g = blob_graph();
  g.add_edge(0, 6);
  EXPECT_THROW(check_path_layout(g, blob_partition(), {0, 1, 2, 3}), structural_violation);
  Graph cut(12);
  for (int i = 0; i < 3; ++i) {
    cut.add_edge(i, 3 + i);
    cut.add_edge(3 + i, 6 + i);
  }
  auto p = VertexPartition(std::vector<std::vector<vertex_t>>{{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {9, 10, 11}});
  EXPECT_TRUE(check_path_layout(cut, p, {0, 1, 2, 3}));  // no X1-X4 path at all
  EXPECT_THROW(check_path_layout(cut, p, {0, 1, 1, 3}), invalid_input);
}

TEST(Advance, BothHalvesRedToFarNeighbour) {
  Graph g = blob_graph();
  auto w = *check_witness(g, blob_partition(), {0, 1, 2, 3}, 1).state;
  auto rep = advance_witness(g, blob_partition(), w, {1, {20, {3, 4}}, {21, {5}}});
  EXPECT_EQ(rep.verdict, InvariantVerdict::violated_red_degree);
  EXPECT_FALSE(rep.successor);
}

TEST(Advance, EndSplitBothHalvesRed) {
  Graph g = blob_graph();
  auto w = *check_witness(g, blob_partition(), {0, 1, 2, 3}, 1).state;
  auto rep = advance_witness(g, blob_partition(), w, {3, {20, {9, 10}}, {21, {11}}});
  // both halves red to X3 -> X3 would see X2 and two halves
  EXPECT_EQ(rep.verdict, InvariantVerdict::violated_red_degree);
}

TEST(Advance, InvalidInputIsStructural) {
  Graph g = blob_graph();
  WitnessState w;
  w.parts = {0, 2, 1, 3};
  w.t = 1;
  auto rep = advance_witness(g, blob_partition(), w, {0, {20, {0}}, {21, {1, 2}}});
  EXPECT_EQ(rep.verdict, InvariantVerdict::violated_structure);
}

// Every MAINTAINED successor is a witness and s + w2 + w3 does not drop.
TEST(Advance, SoundnessAndConservation) {
  std::mt19937_64 rng(53);
  int maintained = 0, trials = 0;
  std::map<std::string, int> cases;
  while (trials < 4000) {
    auto rb = random_blob(rng);
    auto start = check_witness(rb.g, rb.p, {0, 1, 2, 3}, 1);
    if (!start) continue;
    ++trials;
    // a random part with at least two vertices, split at random
    std::vector<int> big;
    for (const auto& part : rb.p.parts())
      if (part.vertices.size() >= 2) big.push_back(part.id);
    int id = big[rng() % big.size()];
    auto vs = rb.p.part(id).vertices;
    std::shuffle(vs.begin(), vs.end(), rng);
    std::size_t cut = 1 + rng() % (vs.size() - 1);
    VertexPartition::Part a{100, std::vector<vertex_t>(vs.begin(), vs.begin() + cut)};
    VertexPartition::Part b{101, std::vector<vertex_t>(vs.begin() + cut, vs.end())};
    std::sort(a.vertices.begin(), a.vertices.end());
    std::sort(b.vertices.begin(), b.vertices.end());
    auto rep = advance_witness(rb.g, rb.p, *start.state, {id, a, b});
    cases[rep.case_label.substr(0, 2)]++;
    if (rep.verdict != InvariantVerdict::maintained) continue;
    ++maintained;
    const auto& s = *rep.successor;
    auto next = rb.p.split(id, a, b);
    ASSERT_TRUE(check_witness(rb.g, next, s.parts, 1));
    long long delta = (s.s - start.state->s) + (s.w2 - start.state->w2) + (s.w3 - start.state->w3);
    ASSERT_GE(delta, 0) << rep.case_label;
  }
  EXPECT_GT(maintained, 100);
  EXPECT_GT(cases["b:"], 0);
  EXPECT_GT(cases["c1"] + cases["c2"], 0);
}

TEST(Audit, NoWitnessOnC4) {
  Graph c4 = fixture::cycle(4);
  auto s = ContractionSequence::from_pairs(4, {{0, 2}, {1, 3}, {4, 5}});
  auto r = audit_sequence(c4, s, 4, {0, 1, 2, 3}, 1);
  EXPECT_EQ(r.verdict, AuditVerdict::no_witness);
  EXPECT_THROW(audit_sequence(c4, s, 9, {0, 1, 2, 3}, 1), invalid_input);
}

TEST(Audit, BlobWitnessNeverSurvives) {
  Graph g = blob_graph();
  // contract blobs internally, then join everything
  auto s = ContractionSequence::from_pairs(
      13, {{0, 1}, {13, 2}, {3, 4}, {15, 5}, {6, 7}, {17, 8}, {9, 10}, {19, 11}, {14, 16}, {21, 18}, {22, 20}, {23, 12}});
  auto r = audit_sequence(g, s, 5, {14, 16, 18, 20}, 1);
  EXPECT_NE(r.verdict, AuditVerdict::no_witness) << r.reason;
  EXPECT_FALSE(r.trail.empty());
}

TEST(Step1, PlantedStatesFound) {
  for (const auto& pl : fixture::planted_states(6)) {
    auto r = find_step1_witness(pl.g, pl.u, pl.me, 2);
    ASSERT_TRUE(r.found) << pl.name << ": " << r.stage;
    EXPECT_EQ(r.m, pl.m) << pl.name;
    EXPECT_EQ(r.parts, pl.expected) << pl.name;
    EXPECT_GE(r.s, 4) << pl.name;
    EXPECT_TRUE(r.witness_valid) << pl.name;
  }
}

TEST(Step1, StarvedControls) {
  for (const auto& c : fixture::starved_controls()) {
    auto r = find_step1_witness(c.plant.g, c.plant.u, c.plant.me, c.k, c.t);
    EXPECT_FALSE(r.found) << c.plant.name << " " << c.why;
  }
}

TEST(Step1, RejectsBadInput) {
  auto pl = fixture::strip_plant(4, {2, 1, 2, 3, 2}, false, false);
  auto bad = pl.me;
  bad.rows[0].pop_back();
  bad.rows[0].pop_back();
  bad.rows[0].push_back(bad.rows[1][0]);
  EXPECT_THROW(find_step1_witness(pl.g, pl.u, bad, 2), invalid_input);
  auto u = pl.u;
  u.splits.pop_back();
  EXPECT_THROW(find_step1_witness(pl.g, u, pl.me, 2), malformed_sequence);
}

TEST(Pipeline, Examples) {
  std::mt19937_64 rng(59);
  Graph tree = fixture::random_tree(20, rng);
  auto r = pipeline_certify(tree, 2, 1);
  ASSERT_EQ(r.status, PipelineResult::Status::sequence);
  EXPECT_LE(r.width, 7);
  EXPECT_EQ(verify_width(tree, *r.certificate).width, r.width);

  EXPECT_EQ(pipeline_certify(fixture::cycle(4), 2, 3).status, PipelineResult::Status::not_applicable);
  auto grid = pipeline_certify(gen_grid(5, 5), 3, 3);
  EXPECT_EQ(grid.status, PipelineResult::Status::tww_exceeds_2);
  EXPECT_TRUE(grid.conditional);
  EXPECT_EQ(pipeline_certify(gen_grid(5, 5), 2, 3).status, PipelineResult::Status::not_applicable);
}

TEST(Pipeline, SequenceFromDecompositionVerifies) {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 30; ++i) {
    auto a = oracle::random_matrix(3 + static_cast<int>(rng() % 8), 0.4, rng);
    Graph g = oracle::graph(a);
    auto tw = treewidth_exact(g);
    auto s = sequence_from_decomposition(g, tw.decomposition);
    auto tr = oracle::replay(a, s.pairs());
    ASSERT_EQ(static_cast<int>(tr.size()), g.num_vertices() - 1);
    EXPECT_LE(*std::max_element(tr.begin(), tr.end()), width_bound(tw.value));
  }
}
