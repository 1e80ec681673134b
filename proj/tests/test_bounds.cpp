#include <gtest/gtest.h>

#include "nqd/nqd.hpp"
#include "oracle.hpp"

using namespace nqd;

namespace {

// Naive crop: shift every coordinate and keep queens in the low corner.
std::size_t naive_crop_size(const Placement& p, int k, const std::vector<int>& shift) {
  const int n = p.board().n();
  std::size_t c = 0;
  for (const auto& q : p.queens()) {
    bool in = true;
    for (std::size_t i = 0; i < q.dim(); ++i) in = in && ((q[i] - 1 + shift[i]) % n) + 1 <= n - k;
    c += in;
  }
  return c;
}

std::size_t naive_best_crop(const Placement& p, int k) {
  const int n = p.board().n();
  const int d = p.board().d();
  std::size_t best = 0;
  std::vector<int> s(static_cast<std::size_t>(d), 0);
  while (true) {
    best = std::max(best, naive_crop_size(p, k, s));
    int i = d - 1;
    while (i >= 0 && s[static_cast<std::size_t>(i)] == n - 1) s[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) break;
    ++s[static_cast<std::size_t>(i)];
  }
  return best;
}

BoundTable table_of(int d, std::vector<std::pair<int, long long>> rows) {
  BoundTable t;
  for (auto [n, v] : rows) t.set_exact(n, d, v);
  return t;
}

}  // namespace

TEST(Crop, IdentityAndValidity) {
  const auto p = regular_solution({11, 3, {3, 5}, 0});
  EXPECT_EQ(crop(p, 0).size(), 121u);
  const auto c = crop(p, 2, {1, 4, 7});
  EXPECT_EQ(c.board(), BoardSpec(9, 3));
  EXPECT_EQ(c.size(), naive_crop_size(p, 2, {1, 4, 7}));
  EXPECT_TRUE(is_valid(c));
  EXPECT_THROW(crop(p, 11), DomainError);
  EXPECT_THROW(crop(p, 1, {1, 2}), DomainError);
}

TEST(BestCrop, KnownCropSizes) {
  const std::vector<Placement> s11{regular_solution({11, 3, {3, 5}, 0})};
  const std::vector<Placement> s17{regular_solution({17, 3, {3, 5}, 0})};
  struct Case {
    int target;
    const std::vector<Placement>* src;
    long long expect;
  };
  for (const auto& c : std::vector<Case>{{10, &s11, 91}, {9, &s11, 67}, {16, &s17, 241}, {15, &s17, 199}}) {
    CropChoice choice;
    auto rec = best_crop(c.target, 3, *c.src, &choice);
    EXPECT_EQ(rec.lower, c.expect) << c.target;
    ASSERT_TRUE(rec.witness);
    EXPECT_EQ(rec.witness->size(), static_cast<std::size_t>(c.expect));
    EXPECT_TRUE(is_valid(*rec.witness));
    // the reported shifts reproduce the witness, and no shift beats it
    EXPECT_EQ(crop(c.src->front(), c.src->front().board().n() - c.target, choice.shifts), *rec.witness);
    EXPECT_EQ(naive_best_crop(c.src->front(), c.src->front().board().n() - c.target),
              static_cast<std::size_t>(c.expect));
  }
  EXPECT_THROW(best_crop(12, 3, s11), DomainError);
}

TEST(SubcubeFormula, ClosedForms) {
  EXPECT_EQ(subcube_formula(11, 3, 1, 0), 91);
  EXPECT_EQ(subcube_formula(17, 3, 1, 0), 241);
  EXPECT_EQ(subcube_formula(5, 2, 1, 1), 4);
  EXPECT_THROW(subcube_formula(5, 5, 1, 0), DomainError);
  // (5,2) solution with a corner queen, cropped by one: 4 queens remain
  Placement corner(BoardSpec(5, 2), {{1, 1}, {2, 3}, {3, 5}, {4, 2}, {5, 4}});
  ASSERT_TRUE(is_valid(corner));
  EXPECT_EQ(crop(corner, 1, {4, 4}).size(), 4u);
  EXPECT_EQ(corner_count(corner, 1, {4, 4}), 1);
}

// Property: for full regular solutions the closed forms equal the crop size
// for every shift. The d=4 form is only exact for k=1.
TEST(SubcubeFormula, AgreesWithCropOracle) {
  struct Src {
    Placement p;
    std::vector<int> ks;
  };
  std::vector<Src> srcs{{hoffman_2d(8), {1, 2, 3}},
                        {regular_solution({11, 3, {3, 5}, 0}), {1, 2, 3}},
                        {regular_solution({13, 3, {3, 5}, 0}), {1, 2}},
                        {regular_solution({17, 4, valid_coefficients(17, 4).all.front(), 0}), {1}}};
  for (const auto& s : srcs) {
    const int n = s.p.board().n();
    const int d = s.p.board().d();
    for (int k : s.ks) {
      std::vector<int> shift(static_cast<std::size_t>(d), 0);
      for (int t = 0; t < 40; ++t) {
        for (int i = 0; i < d; ++i) shift[static_cast<std::size_t>(i)] = (t * (2 * i + 3) + i) % n;
        const long long p = corner_count(s.p, k, shift);
        const auto size = static_cast<long long>(crop(s.p, k, shift).size());
        EXPECT_EQ(subcube_inclusion_exclusion(n, d, k, p), size) << n << "," << d << " k=" << k;
        EXPECT_EQ(subcube_formula(n, d, k, p), size) << n << "," << d << " k=" << k;
      }
    }
  }
}

// The stated d=4 closed form drifts from inclusion-exclusion once k > 1.
TEST(SubcubeFormula, FourDimensionalFormIsExactOnlyForOneLayer) {
  EXPECT_EQ(subcube_formula(11, 4, 1, 0), subcube_inclusion_exclusion(11, 4, 1, 0));
  EXPECT_NE(subcube_formula(11, 4, 2, 0), subcube_inclusion_exclusion(11, 4, 2, 0));
}

TEST(ClosedForm, Values) {
  EXPECT_EQ(lower_bound_closed_form(100), 8968);
  EXPECT_EQ(lower_bound_closed_form(11), 1);
  EXPECT_EQ(lower_bound_closed_form(50), 1968);
}

TEST(Tiling, KnownValues) {
  int m = 0;
  EXPECT_EQ(upper_bound_tiling(6, 3, table_of(3, {{2, 1}, {3, 4}}), &m), 27);
  EXPECT_EQ(m, 2);
  EXPECT_EQ(upper_bound_tiling(8, 3, table_of(3, {{2, 1}, {4, 7}}), &m), 56);
  EXPECT_EQ(m, 4);
  // reported even though the trivial n^(d-1) = 81 is smaller
  EXPECT_EQ(upper_bound_tiling(9, 3, table_of(3, {{3, 4}})), 108);
  for (int d = 2; d <= 8; ++d) EXPECT_EQ(upper_bound_tiling(4, d, BoundTable::builtin()), 1LL << d) << d;
  EXPECT_EQ(upper_bound_tiling(7, 3, BoundTable{}, &m), 49);
  EXPECT_EQ(m, 0);
}

TEST(Layer, KnownValues) {
  BoundTable t = table_of(3, {{9, 67}});
  EXPECT_EQ(upper_bound_layer(9, 4, t), 603);
  t.set_exact(3, 4, 6);
  EXPECT_EQ(std::min(upper_bound_layer(9, 4, t), upper_bound_tiling(9, 4, t)), 486);
  BoundTable t2 = table_of(2, {{4, 4}, {2, 1}});
  EXPECT_EQ(upper_bound_layer(4, 3, t2), 16);
  t2.set_exact(2, 3, 1);
  EXPECT_EQ(upper_bound_tiling(4, 3, t2), 8);
  EXPECT_EQ(upper_bound_layer(7, 2, BoundTable{}), 7);
}

// Property: known exact values always lie inside the reported interval.
TEST(Report, BracketsExactValues) {
  auto recs = bounds_report(1, 13, 3, BoundTable{});
  for (const auto& r : recs) {
    EXPECT_LE(r.lower, r.upper);
    if (auto e = BoundTable::builtin().exact(r.n, 3)) {
      EXPECT_LE(r.lower, *e) << r.n;
      EXPECT_GE(r.upper, *e) << r.n;
    }
    if (r.witness) {
      EXPECT_EQ(static_cast<long long>(r.witness->size()), r.lower);
      EXPECT_TRUE(is_valid(*r.witness));
    }
  }
  auto with = bounds_report(9, 11, 3, BoundTable::builtin());
  for (const auto& r : with) EXPECT_TRUE(r.exact());
  EXPECT_EQ(with[0].lower, 67);
  EXPECT_EQ(with[1].lower, 91);
  EXPECT_EQ(with[2].lower, 121);
  auto d4 = bounds_report(4, 4, 4, BoundTable::builtin());
  EXPECT_EQ(d4[0].lower, 16);
  EXPECT_EQ(d4[0].upper, 16);
  // crops without table help still reach 67 and 91
  auto raw = bounds_report(9, 10, 3, BoundTable{});
  EXPECT_EQ(raw[0].lower, 67);
  EXPECT_EQ(raw[1].lower, 91);
}

// n=27 comes from a k=2 crop of the 29-board: 29^2 - 6*29 + 12 = 679.
TEST(Report, LargeBoards) {
  auto recs = bounds_report(27, 31, 3, BoundTable::builtin());
  std::vector<long long> lows;
  for (const auto& r : recs) lows.push_back(r.lower);
  EXPECT_EQ(lows, (std::vector<long long>{679, 757, 841, 871, 961}));
  EXPECT_EQ(recs[0].lower_method, "crop:29-2");
  EXPECT_EQ(subcube_formula(29, 3, 2, 0), 679);
}

TEST(Report, CsvShape) {
  auto csv = bounds_csv(bounds_report(4, 5, 3, BoundTable::builtin()));
  EXPECT_EQ(csv, "n,d,lower,upper,exact,lower_method,upper_method\n4,3,7,7,1,table,table\n5,3,13,13,1,table,table\n");
}

TEST(BoundTableJson, RoundTripAndVendoredFile) {
  const auto& b = BoundTable::builtin();
  auto back = BoundTable::from_json(b.to_json());
  EXPECT_EQ(back.entries().size(), b.entries().size());
  auto file = BoundTable::load(NQD_DATA_DIR "/qmax_table.json");
  EXPECT_EQ(file.to_json(), b.to_json());
  EXPECT_EQ(*b.exact(7, 3), 32);
  EXPECT_EQ(*b.exact(4, 4), 16);
  BoundTable t;
  t.set_upper(5, 5, 100);
  t.set_upper(5, 5, 90);
  t.set_upper(5, 5, 95);
  EXPECT_EQ(t.find(5, 5)->value, 90);
  t.set_exact(5, 5, 80);
  t.set_upper(5, 5, 70);
  EXPECT_EQ(t.find(5, 5)->value, 80);
  EXPECT_THROW(BoundTable::from_json(nlohmann::json::parse(R"({"lower": {}})")), ParseError);
}
