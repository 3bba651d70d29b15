#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "twl/solver.hpp"

using namespace twl;

namespace {

Graph path(int n) {
  Graph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

Graph cycle(int n) {
  Graph g = path(n);
  g.add_edge(0, n - 1);
  return g;
}

int exact(const Graph& g) {
  auto r = twinwidth_exact(g, g.num_vertices());
  EXPECT_EQ(r.status, ExactResult::Status::exact);
  EXPECT_TRUE(r.certificate);
  EXPECT_EQ(verify_width(g, *r.certificate).width, r.value);
  return r.value;
}

}  // namespace

TEST(Exact, SmallNamedGraphs) {
  EXPECT_EQ(exact(cycle(4)), 0);
  EXPECT_EQ(exact(path(4)), 1);
  EXPECT_EQ(exact(cycle(5)), 2);
  EXPECT_EQ(exact(Graph(1)), 0);
  EXPECT_EQ(exact(Graph(5)), 0);
}

TEST(Exact, PetersenIsAboveTwo) {
  Graph g(10);
  for (int i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);
    g.add_edge(i, i + 5);
    g.add_edge(5 + i, 5 + (i + 2) % 5);
  }
  auto r = twinwidth_exact(g, 2);
  EXPECT_EQ(r.status, ExactResult::Status::above_cap);
  EXPECT_GE(exact(g), 3);
}

TEST(Exact, AgreesWithBruteForce) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 120; ++trial) {
    int n = 2 + static_cast<int>(rng() % 6);
    auto a = oracle::random_matrix(n, 0.5, rng);
    ASSERT_EQ(exact(oracle::graph(a)), oracle::brute_twinwidth(a)) << trial;
  }
}

TEST(Decide, CertificateMeetsBound) {
  auto r = decide_twinwidth_at_most(cycle(6), 2);
  ASSERT_EQ(r.decision, Decision::yes);
  EXPECT_LE(verify_width(cycle(6), *r.certificate).width, 2);
  EXPECT_EQ(decide_twinwidth_at_most(cycle(6), 1).decision, Decision::no);
  EXPECT_THROW(decide_twinwidth_at_most(Graph(65), 2), invalid_input);
}

TEST(Decide, BudgetExhaustionIsUnknown) {
  // Any certificate for P20 needs 19 expansions along one branch.
  auto r = decide_twinwidth_at_most(path(20), 1, 5);
  EXPECT_EQ(r.decision, Decision::unknown);
  EXPECT_FALSE(r.certificate);
}

TEST(Decide, Deterministic) {
  std::mt19937_64 rng(2);
  auto g = oracle::graph(oracle::random_matrix(9, 0.4, rng));
  auto a = decide_twinwidth_at_most(g, 3), b = decide_twinwidth_at_most(g, 3);
  ASSERT_EQ(a.decision, b.decision);
  if (a.certificate) {
    EXPECT_EQ(*a.certificate, *b.certificate);
  }
}

TEST(Zero, CographsAndP4) {
  EXPECT_TRUE(twinwidth_zero(cycle(4)));
  EXPECT_FALSE(twinwidth_zero(path(4)));
  auto s = twinwidth_zero(cycle(4));
  EXPECT_EQ(verify_width(cycle(4), *s).width, 0);
  for (int n = 1; n <= 6; ++n)
    for (const auto& a : oracle::all_graphs(n)) {
      bool cograph = !oracle::has_induced_p4(a);
      ASSERT_EQ(twinwidth_zero(oracle::graph(a)).has_value(), cograph);
    }
}

TEST(Greedy, UpperBoundsExact) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 2 + static_cast<int>(rng() % 7);
    auto g = oracle::graph(oracle::random_matrix(n, 0.5, rng));
    auto gr = greedy_sequence(g);
    EXPECT_EQ(verify_width(g, gr.sequence).width, gr.width);
    EXPECT_GE(gr.width, exact(g));
  }
}
