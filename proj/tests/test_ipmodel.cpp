#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "nqd/nqd.hpp"
#include "oracle.hpp"

using namespace nqd;

namespace {

const LinearConstraint* find_row(const IpModel& m, const std::string& tag, const std::vector<Square>& squares) {
  std::vector<std::size_t> want;
  for (const auto& s : squares) want.push_back(linear_index(s, m.board()));
  std::sort(want.begin(), want.end());
  for (const auto& c : m.constraints()) {
    if (c.tag != tag) continue;
    auto v = c.vars;
    std::sort(v.begin(), v.end());
    if (v == want) return &c;
  }
  return nullptr;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

IpModel full_model(const BoardSpec& b) {
  auto m = build_base(b, ModelMode::max());
  add_cube_cliques(m);
  add_star_cliques(m);
  if (b.d() >= 3) add_layer_inequalities(m, BoundTable::builtin());
  std::vector<int> sizes;
  for (int s = 2; s < b.n(); ++s) sizes.push_back(s);
  add_subsolution_inequalities(m, BoundTable::builtin(), sizes);
  add_odd_cycle_inequalities(m, find_chordless_5_cycles(b, 200));
  return m;
}

}  // namespace

TEST(Base, RowCounts) {
  auto m = build_base(BoardSpec(8, 2), ModelMode::max());
  EXPECT_EQ(m.constraints().size(), 42u);
  EXPECT_EQ(m.variable_count(), 64u);
  EXPECT_EQ(m.objective(), Objective::maximize_sum);
  EXPECT_EQ(build_base(BoardSpec(2, 2), ModelMode::max()).constraints().size(), 6u);
  for (const auto& c : m.constraints()) {
    EXPECT_EQ(c.sense, Sense::le);
    EXPECT_EQ(c.rhs, 1);
  }
}

TEST(Base, RefuteAddsCardinalityRow) {
  auto m = build_base(BoardSpec(11, 3), ModelMode::refute(122));
  EXPECT_EQ(m.count("cardinality"), 1u);
  EXPECT_EQ(m.count("base"), count_attack_lines(BoardSpec(11, 3)));
  const auto& last = m.constraints().back();
  EXPECT_EQ(last.sense, Sense::eq);
  EXPECT_EQ(last.rhs, 122);
  EXPECT_EQ(last.vars.size(), 1331u);
  EXPECT_EQ(last.name, "cardinality_1");
}

TEST(Base, FullSolutionModeUsesAxisEqualities) {
  auto m = build_base(BoardSpec(8, 2), ModelMode::fixed(8));
  std::size_t eq = 0;
  for (const auto& c : m.constraints()) eq += c.tag == "base" && c.sense == Sense::eq;
  EXPECT_EQ(eq, 16u);
  auto m3 = build_base(BoardSpec(11, 3), ModelMode::fixed(121));
  eq = 0;
  for (const auto& c : m3.constraints()) eq += c.tag == "base" && c.sense == Sense::eq;
  EXPECT_EQ(eq, 3u * 121u);
  EXPECT_TRUE(evaluate(m3, regular_solution({11, 3, {3, 5}, 0})).feasible);
  auto partial = build_base(BoardSpec(8, 2), ModelMode::fixed(7));
  for (const auto& c : partial.constraints()) {
    if (c.tag == "base") {
      EXPECT_EQ(c.sense, Sense::le);
    }
  }
}

TEST(CubeCliques, CountsAndShapes) {
  for (auto [n, d] : std::vector<std::pair<int, int>>{{9, 3}, {4, 2}, {5, 3}, {3, 4}}) {
    auto m = build_base(BoardSpec(n, d), ModelMode::max());
    add_cube_cliques(m);
    std::size_t expect = 0;
    for (int side = 2; side <= n; ++side) {
      std::size_t t = 1;
      for (int i = 0; i < d; ++i) t *= static_cast<std::size_t>(n - side + 1);
      expect += t;
    }
    EXPECT_EQ(m.count("cube"), expect) << n << "," << d;
  }
  auto m9 = build_base(BoardSpec(9, 3), ModelMode::max());
  add_cube_cliques(m9);
  EXPECT_EQ(m9.count("cube"), 1296u);
  auto m4 = build_base(BoardSpec(4, 2), ModelMode::max());
  add_cube_cliques(m4);
  EXPECT_NE(find_row(m4, "cube", {{1, 1}, {4, 1}, {1, 4}, {4, 4}}), nullptr);
  auto m3 = build_base(BoardSpec(3, 3), ModelMode::max());
  add_cube_cliques(m3);
  auto* centre = find_row(m3, "cube", {{1, 1, 1}, {1, 1, 3}, {1, 3, 1}, {1, 3, 3}, {3, 1, 1}, {3, 1, 3}, {3, 3, 1}, {3, 3, 3}, {2, 2, 2}});
  ASSERT_NE(centre, nullptr);
  EXPECT_EQ(centre->rhs, 1);
}

TEST(StarCliques, Shapes) {
  auto m9 = build_base(BoardSpec(9, 3), ModelMode::max());
  add_star_cliques(m9);
  EXPECT_NE(find_row(m9, "star", {{5, 5, 5}, {2, 5, 5}, {8, 5, 5}, {5, 2, 5}, {5, 8, 5}, {5, 5, 2}, {5, 5, 8}}), nullptr);
  auto m3 = build_base(BoardSpec(3, 2), ModelMode::max());
  add_star_cliques(m3);
  ASSERT_EQ(m3.count("star"), 1u);
  EXPECT_EQ(m3.constraints().back().vars.size(), 5u);
}

// Property: every clique row is pairwise attacking under the naive oracle.
TEST(Cliques, PairwiseAttackingOracle) {
  for (auto [n, d] : std::vector<std::pair<int, int>>{{5, 2}, {6, 2}, {4, 3}, {5, 3}, {3, 4}}) {
    auto m = build_base(BoardSpec(n, d), ModelMode::max());
    add_cube_cliques(m);
    add_star_cliques(m);
    EXPECT_TRUE(audit_cliques(m).empty());
    for (const auto& c : m.constraints()) {
      if (c.tag != "cube" && c.tag != "star") continue;
      for (std::size_t i = 0; i < c.vars.size(); ++i) {
        for (std::size_t j = i + 1; j < c.vars.size(); ++j) {
          ASSERT_TRUE(oracle::attacks(square_at(c.vars[i], m.board()).coords, square_at(c.vars[j], m.board()).coords))
              << c.name;
        }
      }
    }
  }
}

TEST(Layers, RowsAndRhs) {
  auto m = build_base(BoardSpec(6, 4), ModelMode::max());
  add_layer_inequalities(m, BoundTable::builtin());
  EXPECT_EQ(m.count("layer"), 24u);
  for (const auto& c : m.constraints()) {
    if (c.tag == "layer") {
      EXPECT_EQ(c.rhs, 21);
      EXPECT_EQ(c.vars.size(), 216u);
    }
  }
  auto m4 = build_base(BoardSpec(4, 4), ModelMode::max());
  add_layer_inequalities(m4, BoundTable::builtin());
  EXPECT_EQ(m4.constraints().back().rhs, 7);
  auto m3 = build_base(BoardSpec(5, 3), ModelMode::max());
  add_layer_inequalities(m3, BoundTable::builtin());
  EXPECT_EQ(m3.constraints().back().rhs, 5);
  // five dimensions: 3-dimensional sub-layers (two coordinates fixed) as well
  auto m5 = build_base(BoardSpec(3, 5), ModelMode::max());
  add_layer_inequalities(m5, BoundTable::builtin());
  EXPECT_EQ(m5.count("layer"), 15u + 10u * 9u);
  // upper-bound provenance is recorded in the row name
  BoundTable t;
  t.set_upper(5, 2, 5);
  auto mu = build_base(BoardSpec(5, 3), ModelMode::max());
  add_layer_inequalities(mu, t);
  EXPECT_EQ(mu.constraints().back().name, "layer_ub_15");
  EXPECT_THROW(add_layer_inequalities(mu, BoundTable{}), DomainError);
}

TEST(Subsolutions, RowsAndRhs) {
  auto m = build_base(BoardSpec(11, 3), ModelMode::max());
  add_subsolution_inequalities(m, BoundTable::builtin(), {10});
  EXPECT_EQ(m.count("subsol"), 8u);
  EXPECT_EQ(m.constraints().back().rhs, 91);
  auto m5 = build_base(BoardSpec(5, 3), ModelMode::max());
  add_subsolution_inequalities(m5, BoundTable::builtin(), {4, 5});
  EXPECT_EQ(m5.count("subsol"), 9u);
  EXPECT_EQ(m5.constraints()[m5.constraints().size() - 2].rhs, 7);
  EXPECT_EQ(m5.constraints().back().vars.size(), 125u);
  EXPECT_EQ(m5.constraints().back().rhs, 13);
  EXPECT_THROW(add_subsolution_inequalities(m5, BoundTable::builtin(), {6}), DomainError);
}

TEST(OddCycles, RhsAndValidation) {
  const BoardSpec b(8, 2);
  auto m = build_base(b, ModelMode::max());
  auto cycles = find_chordless_5_cycles(b, 3);
  ASSERT_EQ(cycles.size(), 3u);
  for (const auto& cyc : cycles) {
    for (std::size_t i = 0; i < 5; ++i) {
      for (std::size_t j = i + 1; j < 5; ++j) {
        const bool neighbours = j == i + 1 || (i == 0 && j == 4);
        EXPECT_EQ(oracle::attacks(cyc[i].coords, cyc[j].coords), neighbours);
      }
    }
  }
  add_odd_cycle_inequalities(m, cycles);
  EXPECT_EQ(m.constraints().back().rhs, 2);
  std::vector<Square> seven;
  for (int c = 1; c <= 7; ++c) seven.push_back({1, c});
  add_odd_cycle_inequalities(m, {seven});
  EXPECT_EQ(m.constraints().back().rhs, 3);
  EXPECT_THROW(add_odd_cycle_inequalities(m, {{{1, 1}, {1, 2}, {2, 2}}}), DomainError);
  EXPECT_THROW(add_odd_cycle_inequalities(m, {{{1, 1}, {1, 2}, {1, 3}, {1, 4}, {3, 3}}}), DomainError);
}

TEST(Domination, ModelAndOptimum) {
  for (auto [n, d] : std::vector<std::pair<int, int>>{{3, 2}, {3, 3}, {2, 3}, {1, 1}}) {
    const BoardSpec b(n, d);
    auto m = build_domination(b);
    EXPECT_EQ(m.objective(), Objective::minimize_sum);
    EXPECT_EQ(m.count("cover"), b.size());
    auto r = min_domination(b);
    ASSERT_EQ(r.best_size, 1u);
    EXPECT_TRUE(evaluate(m, *r.witness).feasible);
    EXPECT_EQ(oracle::domination_number(n, d), 1u);
  }
  auto m = build_domination(BoardSpec(4, 2));
  EXPECT_FALSE(evaluate(m, Placement(BoardSpec(4, 2), {{1, 1}})).feasible);
  EXPECT_THROW(build_domination(BoardSpec(4, 2), ModelMode::max()), DomainError);
}

TEST(Evaluate, ViolationsAndCertificates) {
  auto m = build_base(BoardSpec(5, 2), ModelMode::max());
  auto e = evaluate(m, Placement(BoardSpec(5, 2), {{1, 1}, {1, 3}}));
  EXPECT_FALSE(e.feasible);
  EXPECT_EQ(e.violated.size(), 1u);
  EXPECT_EQ(e.violated[0].rfind("base_", 0), 0u);
  std::vector<double> half(25, 0.5);
  EXPECT_FALSE(evaluate(m, half).feasible);
  EXPECT_THROW(evaluate(m, std::vector<double>(3, 0.0)), DomainError);
}

// Property: every maximum placement satisfies every cut family.
TEST(Evaluate, MaximumPlacementsSatisfyAllCuts) {
  for (auto [n, d, k] : std::vector<std::tuple<int, int, std::size_t>>{{5, 2, 5}, {6, 2, 6}, {3, 3, 4}, {4, 3, 7}}) {
    const BoardSpec b(n, d);
    const auto m = full_model(b);
    std::size_t seen = 0;
    enumerate_solutions(b, k, [&](const Placement& p) {
      ++seen;
      auto e = evaluate(m, p);
      ASSERT_TRUE(e.feasible) << to_string(b) << " " << (e.violated.empty() ? "" : e.violated[0]);
    });
    EXPECT_EQ(seen, oracle::count(n, d, k));
  }
  EXPECT_TRUE(evaluate(full_model(BoardSpec(11, 3)), regular_solution({11, 3, {3, 5}, 0})).feasible);
}

TEST(Refute, PartitionBoundRulesOut122) {
  auto m = build_base(BoardSpec(11, 3), ModelMode::refute(122));
  add_layer_inequalities(m, BoundTable::builtin());
  auto pb = partition_bound(m);
  ASSERT_TRUE(pb);
  EXPECT_EQ(*pb, 121);
  EXPECT_FALSE(evaluate(m, regular_solution({11, 3, {3, 5}, 0})).feasible);
}

TEST(LpFormat, GoldenTwoByTwo) {
  const auto text = export_lp(build_base(BoardSpec(2, 2), ModelMode::max()));
  EXPECT_EQ(text, slurp(NQD_TEST_DATA_DIR "/golden_2_2_max.lp"));
}

TEST(LpFormat, RoundTrip) {
  std::vector<IpModel> models;
  models.push_back(full_model(BoardSpec(5, 3)));
  models.push_back(build_base(BoardSpec(11, 3), ModelMode::refute(122)));
  models.push_back(build_base(BoardSpec(8, 2), ModelMode::fixed(8)));
  models.push_back(build_domination(BoardSpec(4, 3)));
  models.push_back(build_domination(BoardSpec(4, 2), ModelMode::fixed(4)));
  BoundTable t;
  t.set_upper(4, 2, 4);
  auto mu = build_base(BoardSpec(4, 3), ModelMode::max());
  add_layer_inequalities(mu, t);
  models.push_back(mu);
  for (const auto& m : models) {
    const auto text = export_lp(m);
    EXPECT_EQ(export_lp(m), text);  // byte-deterministic
    auto back = parse_lp(text);
    EXPECT_TRUE(back == m) << to_string(m.mode());
    std::istringstream lines(text);
    for (std::string line; std::getline(lines, line);) EXPECT_LE(line.size(), 100u);
  }
}

TEST(LpFormat, RejectsMalformedText) {
  const auto good = export_lp(build_base(BoardSpec(3, 2), ModelMode::max()));
  EXPECT_THROW(parse_lp(""), ParseError);
  EXPECT_THROW(parse_lp(good.substr(0, good.size() - 4)), ParseError);
  std::string unknown = good;
  unknown.replace(unknown.find("base_1: x_1_1") + 8, 5, "y_9_9");
  EXPECT_THROW(parse_lp(unknown), ParseError);
  std::string crlf = good;
  crlf.insert(crlf.find('\n'), "\r");
  EXPECT_THROW(parse_lp(crlf), ParseError);
  std::string renamed = good;
  renamed.replace(renamed.find("base_2:"), 7, "base_9:");
  EXPECT_THROW(parse_lp(renamed), ParseError);
  EXPECT_THROW(parse_mode("fixed:-3"), ParseError);
  EXPECT_THROW(parse_mode("exact"), ParseError);
  EXPECT_EQ(parse_mode("refute:122"), ModelMode::refute(122));
}

TEST(Warmstart, Counts) {
  const auto text = export_warmstart(regular_solution({11, 3, {3, 5}, 0}));
  std::size_t ones = 0, zeros = 0;
  std::istringstream in(text);
  std::string name, line;
  std::getline(in, line);
  EXPECT_EQ(line, "# MIP start");
  int v = 0;
  while (in >> name >> v) (v ? ones : zeros)++;
  EXPECT_EQ(ones, 121u);
  EXPECT_EQ(zeros, 1210u);
  const auto empty = export_warmstart(Placement(BoardSpec(3, 2)));
  EXPECT_EQ(empty.find(" 1\n"), std::string::npos);
  EXPECT_NE(empty.find("x_3_3 0\n"), std::string::npos);
  EXPECT_THROW(export_warmstart(Placement(BoardSpec(3, 2), {{1, 1}, {2, 2}})), InvalidPlacement);
}
