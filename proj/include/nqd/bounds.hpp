#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nqd/board.hpp"
#include "nqd/bound_table.hpp"
#include "nqd/construct.hpp"
#include "nqd/geometry.hpp"

namespace nqd {

struct BoundsRecord {
  int n = 0;
  int d = 0;
  long long lower = 0;
  long long upper = 0;
  std::string lower_method;
  std::string upper_method;
  std::optional<Placement> witness;

  bool exact() const noexcept { return lower == upper; }
};

namespace detail {

inline long long ipow(long long b, int e) {
  long long r = 1;
  for (int i = 0; i < e; ++i) {
    if (b != 0 && r > std::numeric_limits<long long>::max() / b) throw SizeError("bound value overflows 64 bits");
    r *= b;
  }
  return r;
}

inline long long binom(int n, int k) {
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace detail

// Shift every dimension by shifts[i] (mod n), then keep the queens inside the
// lower (n-k)^d corner.
inline Placement crop(const Placement& p, int k, const std::vector<int>& shifts = {}) {
  const int n = p.board().n();
  const int d = p.board().d();
  if (k < 0 || k >= n) throw DomainError("crop needs 0 <= k < n, got k=" + std::to_string(k));
  if (!shifts.empty() && shifts.size() != static_cast<std::size_t>(d)) {
    throw DomainError("crop needs one shift per dimension");
  }
  std::vector<Square> kept;
  for (const auto& q : p.queens()) {
    Square s = q;
    bool inside = true;
    for (std::size_t i = 0; i < s.dim(); ++i) {
      const int off = shifts.empty() ? 0 : shifts[i];
      s[i] = static_cast<int>(detail::mod(s[i] - 1 + off, n)) + 1;
      if (s[i] > n - k) inside = false;
    }
    if (inside) kept.push_back(std::move(s));
  }
  return Placement(BoardSpec(n - k, d), std::move(kept));
}

struct CropChoice {
  std::size_t source = 0;
  std::vector<int> shifts;
  std::size_t size = 0;
};

namespace detail {

// Queens of one source board, prepared for fast shifted crops.
class CropSource {
 public:
  CropSource(const Placement& p, int n_target) : p_(p), ns_(p.board().n()), nt_(n_target), d_(p.board().d()) {
    // Prefix sums of the occupancy over the doubled torus [0, 2 ns)^d.
    const std::size_t side = 2 * static_cast<std::size_t>(ns_) + 1;
    std::size_t total = 1;
    for (int i = 0; i < d_; ++i) total *= side;
    pre_.assign(total, 0);
    stride_.assign(static_cast<std::size_t>(d_), 1);
    for (int i = d_ - 2; i >= 0; --i) stride_[static_cast<std::size_t>(i)] = stride_[static_cast<std::size_t>(i) + 1] * side;
    for (const auto& q : p.queens()) {
      for (unsigned mask = 0; mask < (1u << d_); ++mask) {
        std::size_t at = 0;
        for (int i = 0; i < d_; ++i) {
          const int c = q[static_cast<std::size_t>(i)] - 1 + (((mask >> i) & 1u) ? ns_ : 0);
          at += static_cast<std::size_t>(c + 1) * stride_[static_cast<std::size_t>(i)];
        }
        pre_[at] += 1;
      }
    }
    for (int i = 0; i < d_; ++i) {
      const std::size_t st = stride_[static_cast<std::size_t>(i)];
      for (std::size_t at = 0; at < total; ++at) {
        if ((at / st) % side != 0) pre_[at] += pre_[at - st];
      }
    }
    // Full solutions: the queen on each last-axis line, for sorted streaming.
    const BoardSpec lines(ns_, std::max(1, d_ - 1));
    if (d_ >= 2 && p.size() == lines.size()) {
      top_.assign(lines.size(), -1);
      graph_ = true;
      for (const auto& q : p.queens()) {
        std::size_t at = 0;
        for (int i = 0; i + 1 < d_; ++i) at = at * static_cast<std::size_t>(ns_) + static_cast<std::size_t>(q[static_cast<std::size_t>(i)] - 1);
        if (top_[at] != -1) graph_ = false;
        top_[at] = q[static_cast<std::size_t>(d_ - 1)] - 1;
      }
    }
  }

  int side() const noexcept { return ns_; }

  // Queens landing in [0, nt)^d after adding shift (mod ns).
  std::size_t count(const std::vector<int>& shift) const {
    long long total = 0;
    for (unsigned mask = 0; mask < (1u << d_); ++mask) {
      std::size_t at = 0;
      int sign = 1;
      for (int i = 0; i < d_; ++i) {
        const int lo = (ns_ - shift[static_cast<std::size_t>(i)]) % ns_;
        const int edge = ((mask >> i) & 1u) ? lo : lo + nt_;
        if ((mask >> i) & 1u) sign = -sign;
        at += static_cast<std::size_t>(edge) * stride_[static_cast<std::size_t>(i)];
      }
      total += sign * static_cast<long long>(pre_[at]);
    }
    return static_cast<std::size_t>(total);
  }

  // Sorted target indices of the crop, streamed to f; f returns false to stop.
  template <typename F>
  void stream(const std::vector<int>& shift, F&& f) const {
    const auto nt = static_cast<std::size_t>(nt_);
    if (graph_) {
      const BoardSpec prefix(nt_, std::max(1, d_ - 1));
      for (std::size_t t = 0; t < prefix.size(); ++t) {
        std::size_t src = 0, rem = t, scale = prefix.size();
        for (int i = 0; i + 1 < d_; ++i) {
          scale /= nt;
          const int ti = static_cast<int>(rem / scale);
          rem %= scale;
          src = src * static_cast<std::size_t>(ns_) + static_cast<std::size_t>(mod(ti - shift[static_cast<std::size_t>(i)], ns_));
        }
        const int z = (top_[src] + shift[static_cast<std::size_t>(d_ - 1)]) % ns_;
        if (z < nt_ && !f(t * nt + static_cast<std::size_t>(z))) return;
      }
      return;
    }
    std::vector<std::size_t> idx;
    for (const auto& q : p_.queens()) {
      std::size_t lin = 0;
      bool inside = true;
      for (int i = 0; i < d_; ++i) {
        const int c = (q[static_cast<std::size_t>(i)] - 1 + shift[static_cast<std::size_t>(i)]) % ns_;
        if (c >= nt_) inside = false;
        lin = lin * nt + static_cast<std::size_t>(c);
      }
      if (inside) idx.push_back(lin);
    }
    std::sort(idx.begin(), idx.end());
    for (auto i : idx) {
      if (!f(i)) return;
    }
  }

  std::vector<std::size_t> collect(const std::vector<int>& shift) const {
    std::vector<std::size_t> out;
    stream(shift, [&](std::size_t i) {
      out.push_back(i);
      return true;
    });
    return out;
  }

  // True when the crop under shift is lexicographically smaller than best.
  bool smaller_than(const std::vector<int>& shift, const std::vector<std::size_t>& best) const {
    std::size_t pos = 0;
    int verdict = 0;
    stream(shift, [&](std::size_t i) {
      if (pos >= best.size()) {
        verdict = 1;
        return false;
      }
      if (i != best[pos]) {
        verdict = i < best[pos] ? -1 : 1;
        return false;
      }
      ++pos;
      return true;
    });
    if (verdict == 0 && pos < best.size()) verdict = -1;
    return verdict < 0;
  }

 private:
  const Placement& p_;
  int ns_;
  int nt_;
  int d_;
  std::vector<std::uint32_t> pre_;
  std::vector<std::size_t> stride_;
  std::vector<int> top_;
  bool graph_ = false;
};

}  // namespace detail

// Exhaustive shift search over every source larger than the target. Ties go to
// the lexicographically smallest cropped placement.
inline BoundsRecord best_crop(int n_target, int d, const std::vector<Placement>& sources,
                              CropChoice* choice = nullptr) {
  BoundsRecord rec;
  rec.n = n_target;
  rec.d = d;
  const BoardSpec target(n_target, d);
  rec.upper = static_cast<long long>(target.lines_per_axis());
  rec.upper_method = "trivial";
  bool any = false;
  std::vector<std::size_t> best_idx;
  std::size_t best = 0;
  CropChoice best_choice;
  for (std::size_t si = 0; si < sources.size(); ++si) {
    const auto& src = sources[si];
    const int ns = src.board().n();
    if (src.board().d() != d || ns <= n_target) continue;
    any = true;
    const detail::CropSource cs(src, n_target);
    std::vector<int> shift(static_cast<std::size_t>(d), 0);
    while (true) {
      const std::size_t count = cs.count(shift);
      if (count > 0 && (count > best || (count == best && cs.smaller_than(shift, best_idx)))) {
        best = count;
        best_idx = cs.collect(shift);
        best_choice = CropChoice{si, shift, count};
      }
      std::size_t j = shift.size();
      while (j > 0 && shift[j - 1] == ns - 1) shift[--j] = 0;
      if (j == 0) break;
      ++shift[j - 1];
    }
  }
  if (!any) throw DomainError("best_crop needs a source board larger than " + std::to_string(n_target));
  rec.lower = static_cast<long long>(best);
  if (best > 0) {
    const auto& src = sources[best_choice.source];
    rec.lower_method = "crop:" + std::to_string(src.board().n()) + "-" + std::to_string(src.board().n() - n_target);
    rec.witness = Placement::from_indices(target, best_idx);
  } else {
    rec.lower = 1;
    rec.lower_method = "trivial";
    rec.witness = Placement(target, {Square(std::vector<int>(static_cast<std::size_t>(d), 1))});
  }
  if (choice) *choice = best_choice;
  return rec;
}

// Closed-form crop size of a full regular solution on the (n,d)-board after
// removing k layers per dimension, with p queens in the removed corner cube.
//   d=2: n - 2k + p
//   d=3: n^2 - 3kn + 3k^2 - p
//   d=4: n^3 - 4kn^2 + 6k^2 n + 8k^2 - 12k^3 + p
inline long long subcube_formula(int n, int d, int k, long long p) {
  if (k < 0 || p < 0) throw DomainError("subcube formula needs k >= 0 and p >= 0");
  const long long N = n, K = k;
  switch (d) {
    case 2:
      return N - 2 * K + p;
    case 3:
      return N * N - 3 * K * N + 3 * K * K - p;
    case 4:
      return N * N * N - 4 * K * N * N + 6 * K * K * N + 8 * K * K - 12 * K * K * K + p;
    default:
      throw DomainError("subcube formula is only stated for d in {2,3,4}");
  }
}

// Inclusion-exclusion count for any d: each axis line of a full solution holds
// exactly one queen, so only the corner cube needs counting.
inline long long subcube_inclusion_exclusion(int n, int d, int k, long long p) {
  long long total = 0;
  for (int i = 0; i < d; ++i) {
    const long long term = detail::binom(d, i) * detail::ipow(k, i) * detail::ipow(n, d - 1 - i);
    total += (i % 2 == 0) ? term : -term;
  }
  return total + ((d % 2 == 0) ? p : -p);
}

// Queens of p inside the corner cube [n-k+1, n]^d after the given shifts.
inline long long corner_count(const Placement& p, int k, const std::vector<int>& shifts) {
  const int n = p.board().n();
  long long c = 0;
  for (const auto& q : p.queens()) {
    bool in = true;
    for (std::size_t i = 0; i < q.dim(); ++i) {
      const int v = static_cast<int>(detail::mod(q[i] - 1 + shifts[i], n)) + 1;
      if (v <= n - k) in = false;
    }
    c += in;
  }
  return c;
}

inline long long lower_bound_closed_form(int n) {
  if (n < 1) throw DomainError("closed-form bound needs n >= 1");
  const long long N = n;
  return std::max<long long>(1, N * N - 10 * N - 32);
}

// Tiling bound: an (n,d)-board split into k^d copies of the (m,d)-board, n = k m.
// Uses only factorizations with a table entry; falls back to n^(d-1).
inline long long upper_bound_tiling(int n, int d, const BoundTable& table, int* best_m = nullptr) {
  long long best = std::numeric_limits<long long>::max();
  int arg = 0;
  for (int m = 1; m < n; ++m) {
    if (n % m != 0) continue;
    auto e = table.find(m, d);
    if (!e) continue;
    const long long v = e->value * detail::ipow(n / m, d);
    if (v < best) {
      best = v;
      arg = m;
    }
  }
  if (best_m) *best_m = arg;
  if (arg == 0) return detail::ipow(n, d - 1);
  return best;
}

// Layer bound: |Qmax(n,d)| <= |Qmax(n,d')| * n^(d-d'); d'=1 gives n^(d-1).
inline long long upper_bound_layer(int n, int d, const BoundTable& table, int* best_d = nullptr) {
  long long best = detail::ipow(n, d - 1);
  int arg = 1;
  for (int dd = 2; dd < d; ++dd) {
    auto e = table.find(n, dd);
    if (!e) continue;
    const long long v = e->value * detail::ipow(n, d - dd);
    if (v < best) {
      best = v;
      arg = dd;
    }
  }
  if (best_d) *best_d = arg;
  return best;
}

// One representative regular solution per coefficient class of the (n,d)-board.
inline std::vector<Placement> regular_sources(int n, int d) {
  std::vector<Placement> out;
  for (const auto& cls : valid_coefficients(n, d).classes) out.push_back(regular_solution(RegularSpec{n, d, cls.front(), 0}));
  return out;
}

struct BoundsOptions {
  int source_window = 4;  // crop from regular boards n+1 .. n+window
  bool closed_form = true;
};

// Combined lower and upper bounds for n in [n_from, n_to].
inline std::vector<BoundsRecord> bounds_report(int n_from, int n_to, int d, const BoundTable& table,
                                               const BoundsOptions& opts = {}) {
  if (n_from < 1 || n_to < n_from || d < 1) throw DomainError("bounds_report needs 1 <= n_from <= n_to, d >= 1");
  std::vector<BoundsRecord> out;
  std::map<int, std::vector<Placement>> sources;
  auto regular = [&](int m) -> const std::vector<Placement>& {
    auto it = sources.find(m);
    if (it == sources.end()) it = sources.emplace(m, d >= 2 ? regular_sources(m, d) : std::vector<Placement>{}).first;
    return it->second;
  };
  BoundsRecord prev;
  for (int n = n_from; n <= n_to; ++n) {
    BoundsRecord rec;
    rec.n = n;
    rec.d = d;
    rec.lower = 1;
    rec.lower_method = "trivial";
    rec.witness = Placement(BoardSpec(n, d), {Square(std::vector<int>(static_cast<std::size_t>(d), 1))});

    // Lower bounds.
    if (const auto& own = regular(n); !own.empty()) {
      rec.lower = static_cast<long long>(own.front().size());
      rec.lower_method = "regular";
      rec.witness = own.front();
    }
    for (int m = n + 1; m <= n + opts.source_window; ++m) {
      const auto& src = regular(m);
      if (src.empty()) continue;
      auto c = best_crop(n, d, src);
      if (c.lower > rec.lower) {
        rec.lower = c.lower;
        rec.lower_method = c.lower_method;
        rec.witness = c.witness;
      }
    }
    if (opts.closed_form && d == 3 && lower_bound_closed_form(n) > rec.lower) {
      rec.lower = lower_bound_closed_form(n);
      rec.lower_method = "closed-form";
      rec.witness.reset();
    }
    if (!out.empty() && prev.lower > rec.lower) {
      // Monotone in n: a placement on the smaller board fits the larger one.
      rec.lower = prev.lower;
      rec.lower_method = "monotone:" + std::to_string(n - 1);
      if (prev.witness) {
        rec.witness = Placement(BoardSpec(n, d), prev.witness->queens());
      } else {
        rec.witness.reset();
      }
    }

    // Upper bounds.
    rec.upper = detail::ipow(n, d - 1);
    rec.upper_method = "trivial";
    int m = 0;
    if (const long long t = upper_bound_tiling(n, d, table, &m); m != 0 && t < rec.upper) {
      rec.upper = t;
      rec.upper_method = "tiling:" + std::to_string(m);
    }
    int dd = 1;
    if (const long long l = upper_bound_layer(n, d, table, &dd); dd != 1 && l < rec.upper) {
      rec.upper = l;
      rec.upper_method = "layer:" + std::to_string(dd);
    }
    if (auto e = table.find(n, d)) {
      if (e->provenance == Provenance::exact) {
        if (e->value > rec.lower) {
          rec.lower = e->value;
          rec.lower_method = "table";
          rec.witness.reset();
        }
        rec.upper = e->value;
        rec.upper_method = "table";
      } else if (e->value < rec.upper) {
        rec.upper = e->value;
        rec.upper_method = "table";
      }
    }
    if (rec.lower > rec.upper) {
      throw Error("inconsistent bounds for " + to_string(BoardSpec(n, d)) + ": lower " + std::to_string(rec.lower) +
                  " > upper " + std::to_string(rec.upper));
    }
    prev = rec;
    out.push_back(rec);
  }
  return out;
}

inline std::string bounds_csv(const std::vector<BoundsRecord>& recs) {
  std::ostringstream os;
  os << "n,d,lower,upper,exact,lower_method,upper_method\n";
  for (const auto& r : recs) {
    os << r.n << ',' << r.d << ',' << r.lower << ',' << r.upper << ',' << (r.exact() ? 1 : 0) << ',' << r.lower_method
       << ',' << r.upper_method << '\n';
  }
  return os.str();
}

}  // namespace nqd
