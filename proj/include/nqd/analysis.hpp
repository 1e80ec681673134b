#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "nqd/board.hpp"
#include "nqd/bound_table.hpp"
#include "nqd/bounds.hpp"
#include "nqd/construct.hpp"
#include "nqd/geometry.hpp"
#include "nqd/solver.hpp"

namespace nqd {

struct DensityMap {
  BoardSpec board{1, 1};
  std::size_t k = 0;
  std::vector<std::uint64_t> counts;  // per linear square index
  BigCount total_solutions = 0;
  bool complete = true;  // false when a search limit cut enumeration short
};

// counts[s] = number of valid size-k placements containing s. With
// through_origin only placements holding (1,...,1) are counted.
inline DensityMap density_map(const BoardSpec& board, std::size_t k, const SearchOptions& opts = {},
                              bool through_origin = false) {
  DensityMap m;
  m.board = board;
  m.k = k;
  m.counts.assign(board.size(), 0);
  std::vector<std::size_t> fixed;
  if (through_origin) fixed.push_back(0);
  auto r = for_each_solution(
      board, k,
      [&](const std::vector<std::size_t>& sq) {
        for (auto s : sq) ++m.counts[s];
      },
      opts, fixed);
  m.total_solutions = r.count;
  m.complete = r.status != SolveStatus::limit;
  return m;
}

// One block per 2D layer (last two coordinates), blocks in index order and
// separated by a blank line; rows follow the second-to-last coordinate.
inline std::string density_csv(const DensityMap& m) {
  std::ostringstream os;
  const auto n = static_cast<std::size_t>(m.board.n());
  if (m.board.d() == 1) {
    for (std::size_t i = 0; i < n; ++i) os << (i ? "," : "") << m.counts[i];
    os << '\n';
    return os.str();
  }
  const std::size_t block = n * n;
  for (std::size_t b = 0; b < m.board.size() / block; ++b) {
    if (b) os << '\n';
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) os << (c ? "," : "") << m.counts[b * block + r * n + c];
      os << '\n';
    }
  }
  return os.str();
}

struct RegularityResult {
  bool regular = false;
  Square start;
  std::vector<std::vector<int>> movements;  // generators of the difference group
};

// A placement is regular when its differences to one queen, taken mod n, form
// a subgroup of Z_n^d: it is then swept out from the start square by repeating
// the movements. A single movement gives the cyclic case {s + k m}.
inline RegularityResult regularity_check(const Placement& p) {
  if (p.empty()) throw DomainError("regularity check needs a nonempty placement");
  const BoardSpec& b = p.board();
  const int n = b.n();
  const auto d = static_cast<std::size_t>(b.d());
  RegularityResult out;
  out.start = p.queens().front();
  auto encode = [&](const std::vector<int>& v) {
    std::size_t idx = 0;
    for (int x : v) idx = idx * static_cast<std::size_t>(n) + static_cast<std::size_t>(x);
    return idx;
  };
  std::vector<std::vector<int>> diffs;
  std::unordered_set<std::size_t> set;
  for (const auto& q : p.queens()) {
    std::vector<int> v(d);
    for (std::size_t i = 0; i < d; ++i) v[i] = static_cast<int>(detail::mod(q[i] - out.start[i], n));
    set.insert(encode(v));
    diffs.push_back(std::move(v));
  }
  std::vector<int> sum(d);
  for (const auto& a : diffs) {
    for (const auto& c : diffs) {
      for (std::size_t i = 0; i < d; ++i) sum[i] = (a[i] + c[i]) % n;
      if (!set.count(encode(sum))) return out;
    }
  }
  out.regular = true;
  // Greedy generating set: add any difference not yet spanned.
  std::unordered_set<std::size_t> span{encode(std::vector<int>(d, 0))};
  std::vector<std::vector<int>> span_list{std::vector<int>(d, 0)};
  for (const auto& v : diffs) {
    if (span.count(encode(v))) continue;
    out.movements.push_back(v);
    for (std::size_t i = 0; i < span_list.size(); ++i) {
      std::vector<int> w = span_list[i];
      while (true) {
        for (std::size_t j = 0; j < d; ++j) w[j] = (w[j] + v[j]) % n;
        if (!span.insert(encode(w)).second) break;
        span_list.push_back(w);
      }
    }
  }
  return out;
}

// count pairwise disjoint (n,2)-solutions; count == n is an n-colouring of the
// queen graph. Exact cover with column = square, row = solution.
inline std::optional<std::vector<Placement>> find_superimposable(int n, int count, const SearchOptions& opts = {}) {
  if (count < 0 || count > n) throw DomainError("find_superimposable needs 0 <= count <= n");
  const BoardSpec board(n, 2);
  if (count == 0) return std::vector<Placement>{};
  const auto sols = enumerate_solutions(board, static_cast<std::size_t>(n), opts);
  const std::size_t w = detail::words_for(board.size());
  std::vector<std::vector<std::uint64_t>> rows;
  for (const auto& s : sols) {
    std::vector<std::uint64_t> r(w, 0);
    for (auto i : s.indices()) r[i / 64] |= std::uint64_t{1} << (i % 64);
    rows.push_back(std::move(r));
  }
  auto disjoint = [&](const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& c) {
    for (std::size_t i = 0; i < w; ++i) {
      if (a[i] & c[i]) return false;
    }
    return true;
  };
  std::vector<std::uint64_t> used(w, 0);
  std::vector<std::size_t> chosen;
  std::function<bool(std::size_t)> search = [&](std::size_t from) -> bool {
    if (chosen.size() == static_cast<std::size_t>(count)) return true;
    if (count == n) {
      // Cover the free square with the fewest candidate rows (ties: smallest index).
      std::size_t best_cnt = SIZE_MAX;
      std::vector<std::size_t> best_rows;
      for (std::size_t sq = 0; sq < board.size(); ++sq) {
        if ((used[sq / 64] >> (sq % 64)) & 1u) continue;
        std::vector<std::size_t> cand;
        for (std::size_t r = 0; r < rows.size(); ++r) {
          if (((rows[r][sq / 64] >> (sq % 64)) & 1u) && disjoint(rows[r], used)) cand.push_back(r);
        }
        if (cand.size() < best_cnt) {
          best_cnt = cand.size();
          best_rows = std::move(cand);
          if (best_cnt == 0) return false;
        }
      }
      for (auto r : best_rows) {
        for (std::size_t i = 0; i < w; ++i) used[i] |= rows[r][i];
        chosen.push_back(r);
        if (search(0)) return true;
        chosen.pop_back();
        for (std::size_t i = 0; i < w; ++i) used[i] &= ~rows[r][i];
      }
      return false;
    }
    // Packing: choose rows in increasing order.
    for (std::size_t r = from; r < rows.size(); ++r) {
      if (rows.size() - r < static_cast<std::size_t>(count) - chosen.size()) break;
      if (!disjoint(rows[r], used)) continue;
      for (std::size_t i = 0; i < w; ++i) used[i] |= rows[r][i];
      chosen.push_back(r);
      if (search(r + 1)) return true;
      chosen.pop_back();
      for (std::size_t i = 0; i < w; ++i) used[i] &= ~rows[r][i];
    }
    return false;
  };
  if (!search(0)) return std::nullopt;
  std::vector<Placement> out;
  for (auto r : chosen) out.push_back(sols[r]);
  std::sort(out.begin(), out.end());
  return out;
}

struct TableCell {
  int n = 0;
  int d = 0;
  long long value = 0;
  std::string provenance;  // exact, lower or upper
  std::string source;      // solver, regular, bounds
  std::optional<long long> reference;  // vendored table value
  bool matches() const { return !reference || *reference == value; }
};

struct TablesScope {
  int d_min = 2;
  int d_max = 4;
  int n_max = 7;
  std::size_t max_squares = 512;  // larger boards are not searched
  double cell_time_limit = 30.0;
};

// Recomputes |Qmax(n,d)| cells: exact search for small boards, otherwise the
// bounds machinery. Each cell carries the vendored value for diffing.
inline std::vector<TableCell> tables_report(const TablesScope& scope, const BoundTable& reference,
                                            const SearchOptions& opts = {}) {
  std::vector<TableCell> out;
  for (int d = scope.d_min; d <= scope.d_max; ++d) {
    for (int n = 1; n <= scope.n_max; ++n) {
      double squares = 1;
      for (int i = 0; i < d; ++i) squares *= n;
      if (squares > static_cast<double>(kMaxSquares)) break;
      TableCell cell;
      cell.n = n;
      cell.d = d;
      if (auto e = reference.find(n, d)) cell.reference = e->value;
      const BoardSpec board(n, d);
      if (squares <= static_cast<double>(scope.max_squares)) {
        SearchOptions o = opts;
        o.symmetry_reduction = true;
        o.time_limit = scope.cell_time_limit;
        auto r = max_partial(board, o);
        cell.value = static_cast<long long>(r.best_size);
        cell.provenance = r.status == SolveStatus::optimal ? "exact" : "lower";
        cell.source = "solver";
      } else {
        auto rec = bounds_report(n, n, d, BoundTable{});
        cell.value = rec.front().lower;
        cell.provenance = rec.front().exact() ? "exact" : "lower";
        cell.source = "bounds";
      }
      out.push_back(cell);
    }
  }
  return out;
}

}  // namespace nqd
