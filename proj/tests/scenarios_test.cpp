#include "influence/scenarios.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "influence/error.hpp"
#include "influence/metrics.hpp"
#include "influence/run.hpp"
#include "oracles.hpp"

namespace influence {
namespace {

std::vector<std::size_t> counts_of(const Assignment& a, int k) {
  std::vector<std::size_t> c(static_cast<std::size_t>(k), 0);
  for (OpinionId o : a) ++c[o];
  return c;
}

TEST(RandomUniformTest, BinaryCountsWithinFourSigma) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Rng rng(seed);
    const auto c = counts_of(init_random_uniform(900, 2, rng), 2);
    const double sigma = std::sqrt(900 * 0.25);
    EXPECT_LE(std::abs(static_cast<double>(c[0]) - 450.0), 4 * sigma) << "seed " << seed;
  }
}

TEST(RandomUniformTest, FiveOpinionCountsWithinFourSigma) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Rng rng(seed);
    const auto c = counts_of(init_random_uniform(900, 5, rng), 5);
    const double sigma = std::sqrt(900 * 0.2 * 0.8);
    for (std::size_t k = 0; k < 5; ++k) EXPECT_LE(std::abs(static_cast<double>(c[k]) - 180.0), 4 * sigma);
  }
}

TEST(RandomUniformTest, Deterministic) {
  Rng a(42), b(42);
  EXPECT_EQ(init_random_uniform(900, 3, a), init_random_uniform(900, 3, b));
}

TEST(FractionsTest, EvenSplitIsExact) {
  Rng rng(1);
  EXPECT_EQ(counts_of(init_fractions(900, std::vector{0.5, 0.5}, rng), 2), (std::vector<std::size_t>{450, 450}));
}

TEST(FractionsTest, FiveOpinionSplit) {
  Rng rng(1);
  const auto c = counts_of(init_fractions(900, std::vector{0.44, 0.14, 0.14, 0.14, 0.14}, rng), 5);
  EXPECT_EQ(c, (std::vector<std::size_t>{396, 126, 126, 126, 126}));
}

TEST(FractionsTest, LargestRemainderRounding) {
  EXPECT_EQ(largest_remainder_counts(10, std::vector{0.15, 0.85}), (std::vector<std::size_t>{2, 8}));
  // Both remainders are 0.5 here, so the tie goes to the lower id.
  EXPECT_EQ(largest_remainder_counts(10, std::vector{0.85, 0.15}), (std::vector<std::size_t>{9, 1}));
  EXPECT_EQ(largest_remainder_counts(7, std::vector{1.0 / 3, 1.0 / 3, 1.0 / 3}), (std::vector<std::size_t>{3, 2, 2}));
  EXPECT_EQ(largest_remainder_counts(900, std::vector{0.37, 0.63}), (std::vector<std::size_t>{333, 567}));
}

TEST(FractionsTest, PositionsAreShuffled) {
  Rng rng(5);
  const auto a = init_fractions(900, std::vector{0.5, 0.5}, rng);
  EXPECT_FALSE(std::is_sorted(a.begin(), a.end()));
}

TEST(FractionsTest, InvalidFractionsRejected) {
  Rng rng(1);
  EXPECT_THROW(init_fractions(900, std::vector{0.5, 0.6}, rng), Error);
  EXPECT_THROW(init_fractions(900, std::vector{1.2, -0.2}, rng), Error);
  EXPECT_THROW(init_fractions(900, std::vector{1.0}, rng), Error);
}

TEST(DropletTest, NineByNineCenteredBlock) {
  const Graph g = make_lattice2d_pbc(30, 30);
  const auto a = init_droplet(g, 0, 1, 0.09);
  EXPECT_EQ(counts_of(a, 2), (std::vector<std::size_t>{81, 819}));
  for (int r = 0; r < 30; ++r) {
    for (int c = 0; c < 30; ++c) {
      const bool inside = r >= 10 && r < 19 && c >= 10 && c < 19;
      EXPECT_EQ(a[static_cast<std::size_t>(r * 30 + c)], inside ? 0 : 1) << r << "," << c;
    }
  }
  EXPECT_EQ(oracle::components(g, a, 2), (std::vector<std::size_t>{1, 1}));
}

TEST(DropletTest, ClampKeepsSurroundingRing) {
  const Graph g = make_lattice2d_pbc(30, 30);
  const auto a = init_droplet(g, 0, 1, 0.999);
  EXPECT_EQ(counts_of(a, 2)[0], 29u * 29u);
  EXPECT_EQ(oracle::components(g, a, 2), (std::vector<std::size_t>{1, 1}));
}

TEST(DropletTest, BlockAndComplementConnectedForManyFractions) {
  const Graph g = make_lattice2d_pbc(12, 17);
  for (double f = 0.01; f < 1.0; f += 0.07) {
    const auto a = init_droplet(g, 1, 0, f);
    EXPECT_EQ(oracle::components(g, a, 2), (std::vector<std::size_t>{1, 1})) << f;
  }
}

TEST(DropletTest, RejectsNonLattice) {
  Rng rng(2);
  const Graph g = make_barabasi_albert(100, 3, rng);
  try {
    init_droplet(g, 0, 1, 0.09);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::unsupported_topology);
  }
}

TEST(DropletTest, MinoritySurvivesShortRun) {
  const Graph g = make_lattice2d_pbc(30, 30);
  GameParams p;
  p.rounds = 1000;
  const auto agents = apply_committed(init_droplet(g, 0, 1, 0.09), std::nullopt, p);
  const auto r = run(make_topology(g, 1, 1), p, agents, 17);
  EXPECT_GT(r.final_state.opinion_counts()[0], 0u);
}

TEST(DegreePreferentialTest, HighestDegreesHoldA) {
  Rng rng(3);
  const Graph g = make_barabasi_albert(1000, 4, rng);
  const auto a = init_degree_preferential(g, 400);
  EXPECT_EQ(counts_of(a, 2)[0], 400u);
  std::size_t min_a = g.size(), max_b = 0;
  for (NodeId v = 0; v < g.size(); ++v) {
    if (a[v] == 0) min_a = std::min(min_a, g.degree(v));
    else max_b = std::max(max_b, g.degree(v));
  }
  EXPECT_GE(min_a, max_b);
  // Equal-degree ties go to the lower id.
  for (NodeId u = 0; u < g.size(); ++u)
    for (NodeId v = u + 1; v < g.size(); ++v)
      if (g.degree(u) == g.degree(v) && a[u] == 1) ASSERT_EQ(a[v], 1) << u << " " << v;
}

TEST(DegreePreferentialTest, Extremes) {
  Rng rng(3);
  const Graph g = make_barabasi_albert(200, 2, rng);
  EXPECT_EQ(counts_of(init_degree_preferential(g, 0), 2)[1], 200u);
  EXPECT_EQ(counts_of(init_degree_preferential(g, 200), 2)[0], 200u);
  EXPECT_THROW(init_degree_preferential(g, 201), Error);
}

TEST(DegreePreferentialTest, BuildAssignmentRoundsShare) {
  Rng graph_rng(3), rng(1);
  const Graph g = make_barabasi_albert(1000, 4, graph_rng);
  ScenarioSpec spec;
  spec.kind = ScenarioKind::degree_preferential;
  spec.fractions = {0.4, 0.6};
  EXPECT_EQ(build_assignment(spec, g, 2, rng), init_degree_preferential(g, 400));
}

TEST(CommittedTest, FifteenPercentOfNineHundred) {
  Rng rng(8);
  GameParams p;
  p.num_opinions = 5;
  p.offer_amount.assign(5, 1.0);
  const auto a = init_fractions(900, std::vector{0.15, 0.2125, 0.2125, 0.2125, 0.2125}, rng);
  const auto agents = apply_committed(a, OpinionId{0}, p);
  const auto committed = std::count_if(agents.begin(), agents.end(), [](const AgentState& s) { return s.committed; });
  EXPECT_EQ(committed, 135);
  for (std::size_t v = 0; v < a.size(); ++v) EXPECT_EQ(agents[v].committed, a[v] == 0);
}

TEST(CommittedTest, NoneLeavesFlagsClear) {
  Rng rng(8);
  const GameParams p;
  for (const auto& s : apply_committed(init_random_uniform(100, 2, rng), std::nullopt, p)) {
    EXPECT_FALSE(s.committed);
    EXPECT_DOUBLE_EQ(s.change_cost, p.default_change_cost);
  }
}

TEST(CommittedTest, CommittedAgentsNeverFlip) {
  const Graph g = make_lattice2d_pbc(30, 30);
  GameParams p;
  p.num_opinions = 5;
  p.offer_amount.assign(5, 1.0);
  p.rounds = 10'000;
  Rng rng(12);
  const auto a = init_fractions(900, std::vector{0.15, 0.2125, 0.2125, 0.2125, 0.2125}, rng);
  const auto r = run(make_topology(g, 1, 1), p, apply_committed(a, OpinionId{0}, p), 4,
                     RunOptions{.record_trajectory = true, .check_invariants = true});
  for (NodeId v = 0; v < 900; ++v)
    if (a[v] == 0) ASSERT_EQ(r.final_state.opinion(v), 0);
  for (const auto& rec : r.trajectory)
    if (a[rec.listener] == 0) ASSERT_FALSE(rec.accepted);
}

}  // namespace
}  // namespace influence
