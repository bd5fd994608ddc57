#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "equivalence.hpp"
#include "kswitch/constraints.hpp"
#include "kswitch/motifs.hpp"
#include "kswitch/switch_engine.hpp"
#include "test_support.hpp"

namespace kswitch {
namespace {

using testing::make_graph;

EdgeDelta delta_of(const Graph& g, std::vector<std::size_t> slots, std::vector<std::size_t> perm,
                   std::vector<bool> flip = {}) {
  bool flips[16] = {};
  for (std::size_t i = 0; i < flip.size(); ++i) flips[i] = flip[i];
  const auto p = make_proposal(g, slots, perm, std::span<const bool>(flips, flip.size()));
  EdgeDelta d;
  EXPECT_TRUE(validate(g, p, NoConstraint{}, d).accepted);
  return d;
}

TEST(ColoredTriangles, FullCheckExamples) {
  Graph one = testing::rgb_triangles(1);
  EXPECT_TRUE(ColoredTriangles::from_starter(one).check_full(one));

  Graph path = make_graph({{0, 1}, {1, 2}}, true);
  path.set_colors({Color::R, Color::G, Color::B});
  EXPECT_FALSE(triangle_partition_check(path, path.colors()));

  Graph hexagon = make_graph({{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}}, true);
  hexagon.set_colors({Color::R, Color::G, Color::B, Color::R, Color::G, Color::B});
  EXPECT_FALSE(triangle_partition_check(hexagon, hexagon.colors()));

  const Graph two = testing::rgb_triangles(2);
  EXPECT_TRUE(triangle_partition_check(two, two.colors()));
  const Graph big = testing::rgb_triangles(60);
  EXPECT_TRUE(triangle_partition_check(big, big.colors()));

  // Wrong color counts.
  Graph skewed = testing::rgb_triangles(2);
  skewed.set_colors({Color::R, Color::R, Color::B, Color::R, Color::G, Color::B});
  EXPECT_FALSE(triangle_partition_check(skewed, skewed.colors()));
}

TEST(ColoredTriangles, Errors) {
  const Graph plain = make_graph({{0, 1}, {1, 2}, {2, 0}}, true);
  try {
    ColoredTriangles::from_starter(plain);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingColorData);
  }
  EXPECT_THROW(triangle_partition_check(plain, std::nullopt), Error);
  Graph four = make_graph({{0, 1}, {1, 2}, {2, 3}, {3, 0}}, true);
  four.set_colors({Color::R, Color::G, Color::B, Color::R});
  try {
    triangle_partition_check(four, four.colors());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NNotDivisibleBy3);
  }
}

TEST(BipartiteProjection, ToyStarter) {
  const Graph g = testing::c0_starter();
  const auto c = BipartiteProjection::from_starter(g);
  EXPECT_TRUE(c.check_full(g));
  EXPECT_EQ(c.target(), (std::vector<std::size_t>{1, 1, 2, 2, 2}));
  const std::vector<char> expected_side{1, 1, 1, 1, 1, 0, 0, 0, 0};
  EXPECT_EQ(c.side(), expected_side);
}

TEST(BipartiteProjection, ProjectionExamples) {
  // One B node with three A neighbors: a triangle in the projection.
  const Graph star = make_graph({{0, 3}, {1, 3}, {2, 3}}, true);
  EXPECT_EQ(projection_degrees(star, {1, 1, 1, 0}), (std::vector<std::size_t>{2, 2, 2}));
  const Graph apart = make_graph({{0, 3}, {1, 4}, {2, 5}}, true);
  EXPECT_EQ(projection_degrees(apart, {1, 1, 1, 0, 0, 0}), (std::vector<std::size_t>{0, 0, 0}));
  // Shared-neighbor multiplicity is ignored.
  const Graph twice = make_graph({{0, 2}, {0, 3}, {1, 2}, {1, 3}}, true);
  EXPECT_EQ(projection_degrees(twice, {1, 1, 0, 0}), (std::vector<std::size_t>{1, 1}));
  // Undirected with an explicit side.
  const Graph und = make_graph({{0, 3}, {1, 3}, {2, 4}}, false);
  EXPECT_EQ(projection_degrees(und, {1, 1, 1, 0, 0}), (std::vector<std::size_t>{0, 1, 1}));
  try {
    projection_degrees(make_graph({{0, 1}, {1, 2}}, true), {1, 0, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotBipartite);
  }
}

TEST(DegreeCorrelation, HistogramExamples) {
  const auto cycle = degree_pair_histogram(testing::three_cycle());
  ASSERT_EQ(cycle.size(), 1U);
  EXPECT_EQ(cycle.at({1, 1}), 3U);

  const auto fork = degree_pair_histogram(make_graph({{0, 1}, {0, 2}}, true));
  ASSERT_EQ(fork.size(), 1U);
  EXPECT_EQ(fork.at({2, 0}), 2U);

  Rng rng(3);
  const Graph g = testing::random_graph(20, 70, true, rng);
  std::size_t total = 0;
  for (const auto& [pair, count] : degree_pair_histogram(g)) total += count;
  EXPECT_EQ(total, g.num_edges());
  EXPECT_THROW(DegreeCorrelation::from_starter(make_graph({{0, 1}}, false)), Error);
}

TEST(DegreeCorrelation, EqualSourceDegreesAlwaysPass) {
  // Out-degrees: 0 and 3 have 2, 4 has 1.
  const Graph g = make_graph({{0, 1}, {0, 2}, {3, 4}, {3, 5}, {4, 3}}, true);
  const auto c = DegreeCorrelation::from_starter(g);
  EXPECT_TRUE(c.check_incremental(g, delta_of(g, {0, 2}, {1, 0})));
  EXPECT_TRUE(c.check_incremental(g, delta_of(g, {1, 3}, {1, 0})));
  // (2,0),(1,2) -> (2,2),(1,0)
  EXPECT_FALSE(c.check_incremental(g, delta_of(g, {0, 4}, {1, 0})));
}

TEST(TriangleCount, JoiningTwoTrianglesFails) {
  const Graph g = make_graph({{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}}, false);
  const auto c = TriangleCount::from_starter(g);
  EXPECT_TRUE(c.check_full(g));
  const EdgeDelta d = delta_of(g, {0, 3}, {1, 0});
  EXPECT_EQ(triangle_change(g, d), -2);
  EXPECT_FALSE(c.check_incremental(g, d));
  EXPECT_THROW(TriangleCount::from_starter(testing::three_cycle()), Error);
}

TEST(ComponentSizes, Examples) {
  EXPECT_EQ(component_size_multiset(make_graph({{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}}, false)),
            (std::vector<std::size_t>{3, 3}));
  EXPECT_EQ(component_size_multiset(make_graph({{0, 1}, {1, 2}, {2, 3}}, false)), (std::vector<std::size_t>{4}));
  Rng rng(5);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<std::pair<std::int64_t, std::int64_t>> forest;
    for (std::int64_t v = 1; v < 10; ++v) {
      if (uniform_below(rng, 3) != 0) forest.emplace_back(static_cast<std::int64_t>(uniform_below(rng, v)), v);
    }
    const auto sizes = component_size_multiset(make_graph(forest, false, 10));
    EXPECT_EQ(std::accumulate(sizes.begin(), sizes.end(), std::size_t{0}), 10U);
  }
}

TEST(ComponentSizes, SwitchKeepingAComponentConnectedPasses) {
  // Hexagon 0..5 plus a separate triangle 6-7-8.
  const Graph g =
      make_graph({{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}, {6, 7}, {7, 8}, {6, 8}}, false);
  const auto c = ComponentSizes::from_starter(g);
  // (0,1) oriented 0->1 and (3,4) oriented 4->3, swapped: 0-3 and 4-1.
  const EdgeDelta d = delta_of(g, {0, 3}, {1, 0}, {false, true});
  EXPECT_TRUE(c.check_incremental(g, d));
  // (0,1) and (6,7) swapped: 0-7 and 6-1 merge the pieces.
  const EdgeDelta merge = delta_of(g, {0, 6}, {1, 0});
  EXPECT_FALSE(c.check_incremental(g, merge));
}

TEST(Constraints, FactoryByName) {
  const Graph g = testing::c0_starter();
  EXPECT_EQ(make_constraint("c0", g).name(), "c0");
  EXPECT_EQ(make_constraint("none", g).name(), "none");
  try {
    make_constraint("bogus", g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ConfigInvalid);
  }
}

TEST(Constraints, AllOfRequiresEveryPart) {
  Rng rng(8);
  const Graph g = testing::random_graph(15, 30, false, rng);
  const AllOf both(TriangleCount::from_starter(g), ComponentSizes::from_starter(g));
  EXPECT_TRUE(both.check_full(g));
  EXPECT_EQ(both.name(), "triangles+components");
}

class Equivalence : public ::testing::TestWithParam<std::string> {};

TEST_P(Equivalence, IncrementalMatchesFull) {
  const auto stats = testing::check_equivalence(GetParam(), 20000, 1234);
  EXPECT_EQ(stats.mismatches, 0U);
  EXPECT_EQ(stats.compared, 20000U);
  EXPECT_GT(stats.accepted, 0U);
  EXPECT_LT(stats.accepted, stats.compared);
}

INSTANTIATE_TEST_SUITE_P(AllFamilies, Equivalence,
                         ::testing::Values("c0", "colored-triangles", "degree-corr", "triangles", "components"),
                         [](const auto& info) {
                           std::string s = info.param;
                           for (char& ch : s) ch = ch == '-' ? '_' : ch;
                           return s;
                         });

// Out-degrees never move along a walk, so histogram buckets computed from
// the starter's degrees stay valid.
TEST(DegreeCorrelation, FrozenOutDegrees) {
  Rng rng(12);
  const Graph g = testing::random_graph(30, 120, true, rng);
  const auto c = DegreeCorrelation::from_starter(g);
  WalkConfig cfg;
  cfg.k = 3;
  cfg.n_trials = 50000;
  cfg.observation_interval = 50000;
  const auto out0 = g.degree_sequences().out;
  auto hook = [&](std::uint64_t, const Graph& cur, const SwitchProposal&, const TrialOutcome& o) {
    if (o.accepted) {
      ASSERT_EQ(cur.degree_sequences().out, out0);
    }
  };
  const auto r = run_walk(g, c, cfg, {}, hook);
  EXPECT_EQ(degree_pair_histogram(r.final_graph), degree_pair_histogram(g));
}

TEST(ComponentSizes, MultisetConservedAlongWalk) {
  Rng rng(13);
  const Graph g = testing::random_clustered(40, 5, 0.3, 0.0, rng, false);
  const auto c = ComponentSizes::from_starter(g);
  WalkConfig cfg;
  cfg.k = 4;
  cfg.n_trials = 30000;
  cfg.observation_interval = 30000;
  const auto sizes0 = component_size_multiset(g);
  std::uint64_t checked = 0;
  auto hook = [&](std::uint64_t t, const Graph& cur, const SwitchProposal&, const TrialOutcome& o) {
    if (o.accepted && t % 7 == 0) {
      ASSERT_EQ(component_size_multiset(cur), sizes0);
      ++checked;
    }
  };
  const auto r = run_walk(g, c, cfg, {}, hook);
  EXPECT_GT(r.successes, 0U);
  EXPECT_GT(checked, 0U);
}

}  // namespace
}  // namespace kswitch
