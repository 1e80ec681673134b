#include <gtest/gtest.h>

#include <set>

#include "nqd/nqd.hpp"
#include "oracle.hpp"

using namespace nqd;

namespace {

SearchOptions threads(unsigned t) {
  SearchOptions o;
  o.threads = t;
  return o;
}

SearchOptions symmetric() {
  SearchOptions o;
  o.symmetry_reduction = true;
  return o;
}

std::uint64_t to_u64(const BigCount& c) { return static_cast<std::uint64_t>(c); }

// Independent sets of size k in the torus queen graph.
std::uint64_t oracle_modular_count(int n, int d, std::size_t k) {
  oracle::Graph g;
  g.sq = oracle::squares(n, d);
  g.adj.assign(g.sq.size(), std::vector<char>(g.sq.size(), 0));
  for (std::size_t i = 0; i < g.sq.size(); ++i) {
    for (std::size_t j = 0; j < g.sq.size(); ++j) g.adj[i][j] = oracle::modular_attacks(g.sq[i], g.sq[j], n);
  }
  std::uint64_t c = 0;
  oracle::independent_sets(g, k, [&](const std::vector<std::size_t>&) { ++c; });
  return c;
}

}  // namespace

TEST(MaxPartial, MatchesOracleOnSmallBoards) {
  for (auto [n, d] : std::vector<std::pair<int, int>>{{1, 2}, {2, 2}, {3, 2}, {4, 2}, {5, 2}, {6, 2}, {7, 2},
                                                      {1, 3}, {2, 3}, {3, 3}, {4, 3}, {2, 4}, {3, 4}}) {
    const BoardSpec b(n, d);
    const auto expect = oracle::max_independent(n, d);
    for (const auto& o : {SearchOptions{}, symmetric(), threads(3)}) {
      auto r = max_partial(b, o);
      ASSERT_EQ(r.status, SolveStatus::optimal);
      EXPECT_EQ(r.best_size, expect) << to_string(b);
      ASSERT_TRUE(r.witness);
      EXPECT_EQ(r.witness->size(), expect);
      EXPECT_TRUE(is_valid(*r.witness));
    }
  }
}

TEST(MaxPartial, HigherDimensions) {
  EXPECT_EQ(max_partial(BoardSpec(4, 3), symmetric()).best_size, 7u);
  EXPECT_EQ(max_partial(BoardSpec(3, 5), symmetric()).best_size, 11u);
  for (int d = 1; d <= 10; ++d) EXPECT_EQ(max_partial(BoardSpec(2, d), symmetric()).best_size, 1u) << d;
}

TEST(MaxPartial, NodeLimitReportsLimit) {
  SearchOptions o;
  o.node_limit = 2048;
  auto r = max_partial(BoardSpec(6, 3), o);
  EXPECT_EQ(r.status, SolveStatus::limit);
  ASSERT_TRUE(r.witness);
  EXPECT_TRUE(is_valid(*r.witness));
  EXPECT_LE(r.best_size, 21u);
}

TEST(Decide, FeasibleAndInfeasible) {
  auto yes = decide(BoardSpec(4, 3), 7);
  EXPECT_EQ(yes.status, SolveStatus::optimal);
  ASSERT_TRUE(yes.witness);
  EXPECT_EQ(yes.witness->size(), 7u);
  EXPECT_EQ(decide(BoardSpec(4, 3), 8).status, SolveStatus::infeasible);
  EXPECT_EQ(decide(BoardSpec(11, 3), 122).status, SolveStatus::infeasible);
  EXPECT_EQ(decide(BoardSpec(3, 2), 3).status, SolveStatus::infeasible);
}

TEST(Count, MatchesOracle) {
  for (int n = 1; n <= 7; ++n) {
    for (std::size_t k = 0; k <= static_cast<std::size_t>(n); ++k) {
      EXPECT_EQ(to_u64(count_solutions(BoardSpec(n, 2), k).count), oracle::count(n, 2, k)) << n << " k=" << k;
    }
  }
  for (std::size_t k = 0; k <= 5; ++k) EXPECT_EQ(to_u64(count_solutions(BoardSpec(3, 3), k).count), oracle::count(3, 3, k));
  for (std::size_t k : {1u, 2u, 6u, 7u, 8u}) {
    EXPECT_EQ(to_u64(count_solutions(BoardSpec(4, 3), k).count), oracle::count(4, 3, k)) << k;
  }
}

TEST(Count, KnownValues) {
  EXPECT_EQ(to_u64(count_solutions(BoardSpec(5, 2), 5).count), 10u);
  EXPECT_EQ(to_u64(count_solutions(BoardSpec(4, 3), 7).count), 1344u);
  EXPECT_EQ(to_u64(count_solutions(BoardSpec(2, 4), 1).count), 16u);
  EXPECT_EQ(to_u64(count_solutions(BoardSpec(8, 2), 8, threads(4)).count), 92u);
  EXPECT_EQ(count_solutions(BoardSpec(3, 2), 3).status, SolveStatus::infeasible);
  EXPECT_EQ(to_u64(count_solutions(BoardSpec(3, 2), 0).count), 1u);
}

TEST(Count, ModularBoards) {
  SearchOptions o;
  o.modular = true;
  for (int n = 1; n <= 7; ++n) {
    EXPECT_EQ(to_u64(count_solutions(BoardSpec(n, 2), static_cast<std::size_t>(n), o).count),
              oracle_modular_count(n, 2, static_cast<std::size_t>(n)))
        << n;
  }
  EXPECT_EQ(to_u64(count_solutions(BoardSpec(5, 2), 5, o).count), 10u);
  EXPECT_EQ(to_u64(count_solutions(BoardSpec(7, 2), 7, o).count), 28u);
  EXPECT_EQ(to_u64(count_solutions(BoardSpec(3, 3), 2, o).count), oracle_modular_count(3, 3, 2));
}

TEST(Enumerate, OrderAndContents) {
  auto four = enumerate_solutions(BoardSpec(4, 2), 4);
  ASSERT_EQ(four.size(), 2u);
  EXPECT_EQ(four[0], Placement(BoardSpec(4, 2), {{1, 2}, {2, 4}, {3, 1}, {4, 3}}));
  EXPECT_EQ(four[1], Placement(BoardSpec(4, 2), {{1, 3}, {2, 1}, {3, 4}, {4, 2}}));
  EXPECT_EQ(enumerate_solutions(BoardSpec(1, 1), 1).size(), 1u);
  for (auto [n, d, k] : std::vector<std::tuple<int, int, std::size_t>>{{3, 3, 4}, {6, 2, 6}, {5, 2, 3}, {4, 3, 7}}) {
    auto all = enumerate_solutions(BoardSpec(n, d), k);
    EXPECT_EQ(all.size(), oracle::count(n, d, k));
    EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
    EXPECT_EQ(std::set<Placement>(all.begin(), all.end()).size(), all.size());
    for (const auto& p : all) EXPECT_TRUE(is_valid(p));
  }
  EXPECT_EQ(enumerate_solutions(BoardSpec(3, 3), 4).size(), 16u);
}

TEST(Complete, Examples) {
  const BoardSpec b11(11, 3);
  auto r = complete(b11, Placement(b11, {{1, 1, 1}}), 121);
  ASSERT_EQ(r.status, SolveStatus::optimal);
  ASSERT_TRUE(r.witness);
  EXPECT_EQ(r.witness->size(), 121u);
  EXPECT_TRUE(r.witness->contains({1, 1, 1}));
  EXPECT_TRUE(is_valid(*r.witness));
  for (int d = 2; d <= 4; ++d) {
    const BoardSpec b(3, d);
    EXPECT_EQ(complete(b, Placement(b, {Square(std::vector<int>(static_cast<std::size_t>(d), 2))}), 2).status,
              SolveStatus::infeasible);
  }
  EXPECT_EQ(complete(BoardSpec(5, 3), Placement(BoardSpec(5, 3)), 0).status, SolveStatus::optimal);
  EXPECT_THROW(complete(BoardSpec(4, 2), Placement(BoardSpec(4, 2), {{1, 1}, {2, 2}}), 4), InvalidPlacement);
}

TEST(CompletionThreshold, SmallBoards) {
  EXPECT_EQ(completion_threshold(BoardSpec(1, 3)).value, 1u);
  EXPECT_EQ(completion_threshold(BoardSpec(2, 3)).value, 1u);
  EXPECT_EQ(completion_threshold(BoardSpec(2, 5)).value, 1u);
  EXPECT_EQ(completion_threshold(BoardSpec(3, 3)).value, 0u);
  EXPECT_EQ(completion_threshold(BoardSpec(3, 4)).value, 0u);
  EXPECT_EQ(completion_threshold(BoardSpec(5, 3)).value, 0u);
  EXPECT_EQ(completion_threshold(BoardSpec(4, 4)).value, 0u);
  auto r = completion_threshold(BoardSpec(3, 3));
  ASSERT_TRUE(r.blocker);
  EXPECT_EQ(r.blocker->size(), 1u);
  EXPECT_EQ(r.qmax, 4u);
}

// Brute force over all 1344 maximum placements: every valid pair extends,
// some triple does not.
TEST(CompletionThreshold, FourByThreeMatchesBruteForce) {
  const auto g = oracle::graph(4, 3);
  std::vector<std::vector<std::size_t>> maxima;
  oracle::independent_sets(g, 7, [&](const std::vector<std::size_t>& s) { maxima.push_back(s); });
  ASSERT_EQ(maxima.size(), 1344u);
  auto extends = [&](const std::vector<std::size_t>& part) {
    for (const auto& m : maxima) {
      if (std::includes(m.begin(), m.end(), part.begin(), part.end())) return true;
    }
    return false;
  };
  std::size_t oracle_qc = 0;
  for (std::size_t t = 1; t <= 7; ++t) {
    bool all = true;
    oracle::independent_sets(g, t, [&](const std::vector<std::size_t>& s) {
      if (all && !extends(s)) all = false;
    });
    if (!all) break;
    oracle_qc = t;
  }
  EXPECT_EQ(oracle_qc, 2u);
  auto r = completion_threshold(BoardSpec(4, 3));
  EXPECT_EQ(r.status, SolveStatus::optimal);
  EXPECT_EQ(r.value, oracle_qc);
  ASSERT_TRUE(r.blocker);
  EXPECT_EQ(r.blocker->size(), 3u);
  std::vector<std::size_t> idx = r.blocker->indices();
  EXPECT_FALSE(extends(idx));
}

TEST(Domination, SmallBoards) {
  for (int d = 2; d <= 4; ++d) EXPECT_EQ(min_domination(BoardSpec(3, d)).best_size, 1u);
  for (int d = 1; d <= 6; ++d) EXPECT_EQ(min_domination(BoardSpec(2, d)).best_size, 1u);
  for (int d = 1; d <= 4; ++d) EXPECT_EQ(min_domination(BoardSpec(1, d)).best_size, 1u);
  for (int n = 1; n <= 6; ++n) {
    auto r = min_domination(BoardSpec(n, 2));
    EXPECT_EQ(r.best_size, oracle::domination_number(n, 2)) << n;
    ASSERT_TRUE(r.witness);
    std::set<Square> hit;
    for (const auto& q : r.witness->queens()) {
      for (const auto& s : attacked_squares(q, BoardSpec(n, 2))) hit.insert(s);
    }
    EXPECT_EQ(hit.size(), static_cast<std::size_t>(n * n));
  }
  EXPECT_EQ(min_domination(BoardSpec(8, 2)).best_size, 5u);
}
