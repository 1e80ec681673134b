#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nqd/board.hpp"
#include "nqd/geometry.hpp"

namespace nqd {

namespace detail {

inline Placement checked(Placement p, const char* what) {
  auto v = verify_certificate(p);
  if (!v.valid) {
    throw InvalidPlacement(std::string(what) + " produced attacking queens " + to_string(v.conflicts.front().first) +
                           " and " + to_string(v.conflicts.front().second));
  }
  return p;
}

inline long long mod(long long a, long long n) { return ((a % n) + n) % n; }

}  // namespace detail

// Explicit n-queens solution on the (n,2)-board, n >= 4.
//
// Even m: n = 6k+2 uses the second family, everything else the first.
// Odd n: solve n-1 and add (n,n); neither family touches the main diagonal.
inline Placement hoffman_2d(int n) {
  if (n < 4) throw DomainError("no (" + std::to_string(n) + ",2) solution exists for n <= 3");
  const int m = n % 2 == 0 ? n : n - 1;
  std::vector<Square> qs;
  const int h = m / 2;
  if (m % 6 != 2) {
    for (int j = 1; j <= h; ++j) {
      qs.push_back({j, 2 * j});
      qs.push_back({h + j, 2 * j - 1});
    }
  } else {
    for (int j = 1; j <= h; ++j) {
      const int r = (2 * (j - 1) + h - 1) % m;
      qs.push_back({j, 1 + r});
      qs.push_back({m + 1 - j, m - r});
    }
  }
  if (m != n) qs.push_back({n, n});
  return detail::checked(Placement(BoardSpec(n, 2), std::move(qs)), "hoffman_2d");
}

// Regular solution: last coordinate = (sum coeffs[i] * (x_i - 1) + shift) mod n, plus 1.
struct RegularSpec {
  int n = 0;
  int d = 0;
  std::vector<int> coeffs;  // d-1 entries in [0, n-1]
  int shift = 0;
};

struct AdmissibilityWitness {
  std::vector<int> e;  // e[0] multiplies the last coordinate, e[i] multiplies coeffs[i-1]
  long long value = 0;
  long long gcd = 0;
};

inline std::string to_string(const AdmissibilityWitness& w) {
  std::string s = "e=(";
  for (std::size_t i = 0; i < w.e.size(); ++i) s += (i ? "," : "") + std::to_string(w.e[i]);
  return s + ") gives " + std::to_string(w.value) + ", gcd " + std::to_string(w.gcd);
}

// First e in {-1,0,1}^d (lexicographic) whose value e0 + sum e_i c_i shares a
// factor with n; nullopt when the coefficients are admissible.
inline std::optional<AdmissibilityWitness> admissibility_violation(int n, const std::vector<int>& coeffs) {
  const std::size_t d = coeffs.size() + 1;
  std::vector<int> e(d, -1);
  while (true) {
    if (std::any_of(e.begin(), e.end(), [](int x) { return x != 0; })) {
      long long v = e[0];
      for (std::size_t i = 1; i < d; ++i) v += static_cast<long long>(e[i]) * coeffs[i - 1];
      const long long g = std::gcd(v, static_cast<long long>(n));
      if (g != 1) return AdmissibilityWitness{e, v, g};
    }
    std::size_t i = d;
    while (i > 0 && e[i - 1] == 1) e[--i] = -1;
    if (i == 0) break;
    ++e[i - 1];
  }
  return std::nullopt;
}

inline bool admissible(int n, const std::vector<int>& coeffs) { return !admissibility_violation(n, coeffs); }

inline Placement regular_solution(const RegularSpec& spec) {
  const BoardSpec board(spec.n, spec.d);
  if (spec.d < 2) throw DomainError("regular solutions need d >= 2");
  if (spec.coeffs.size() != static_cast<std::size_t>(spec.d - 1)) {
    throw DomainError("regular spec needs " + std::to_string(spec.d - 1) + " coefficients");
  }
  if (auto w = admissibility_violation(spec.n, spec.coeffs)) {
    throw DomainError("coefficients not admissible for n=" + std::to_string(spec.n) + ": " + to_string(*w));
  }
  const BoardSpec base(spec.n, spec.d - 1);
  std::vector<Square> qs;
  qs.reserve(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    Square s = square_at(i, base);
    long long z = spec.shift;
    for (std::size_t k = 0; k < s.dim(); ++k) z += static_cast<long long>(spec.coeffs[k]) * (s[k] - 1);
    s.coords.push_back(static_cast<int>(detail::mod(z, spec.n)) + 1);
    qs.push_back(std::move(s));
  }
  Placement p(board, std::move(qs));
  if (!is_valid(p, true)) throw InvalidPlacement("regular solution is not modular-valid");
  return detail::checked(std::move(p), "regular_solution");
}

struct CoefficientClasses {
  std::vector<std::vector<int>> all;                    // admissible vectors, lexicographic
  std::vector<std::vector<std::vector<int>>> classes;  // orbits, each sorted, ordered by first member
  std::size_t class_count() const noexcept { return classes.size(); }
};

namespace detail {

inline long long inverse_mod(long long a, long long n) {
  long long t = 0, nt = 1, r = n, nr = mod(a, n);
  while (nr) {
    const long long q = r / nr;
    t -= q * nt;
    std::swap(t, nt);
    r -= q * nr;
    std::swap(r, nr);
  }
  return r == 1 ? mod(t, n) : -1;
}

// Smallest image of the normal vector (c, -1) under sign changes and cyclic
// rotations of its entries, rescaled so the last entry is -1 again.
inline std::vector<int> coefficient_class_key(int n, const std::vector<int>& coeffs) {
  const std::size_t d = coeffs.size() + 1;
  std::vector<long long> nu(coeffs.begin(), coeffs.end());
  nu.push_back(-1);
  std::vector<int> best;
  for (std::size_t r = 0; r < d; ++r) {
    for (unsigned mask = 0; mask < (1u << d); ++mask) {
      std::vector<long long> img(d);
      for (std::size_t i = 0; i < d; ++i) {
        const long long v = nu[(i + r) % d];
        img[i] = ((mask >> i) & 1u) ? -v : v;
      }
      const long long inv = inverse_mod(img[d - 1], n);
      if (inv < 0) continue;
      std::vector<int> key(d - 1);
      for (std::size_t i = 0; i + 1 < d; ++i) key[i] = static_cast<int>(mod(-img[i] * inv, n));
      if (best.empty() || key < best) best = key;
    }
  }
  return best;
}

}  // namespace detail

// All admissible coefficient vectors for the (n,d)-board, grouped into classes.
inline CoefficientClasses valid_coefficients(int n, int d) {
  if (d < 2) throw DomainError("coefficient search needs d >= 2");
  BoardSpec(n, d);  // size guard
  CoefficientClasses out;
  std::vector<int> c(static_cast<std::size_t>(d - 1), 0);
  while (true) {
    if (admissible(n, c)) out.all.push_back(c);
    std::size_t i = c.size();
    while (i > 0 && c[i - 1] == n - 1) c[--i] = 0;
    if (i == 0) break;
    ++c[i - 1];
  }
  std::map<std::vector<int>, std::vector<std::vector<int>>> by_key;
  for (const auto& v : out.all) by_key[detail::coefficient_class_key(n, v)].push_back(v);
  for (auto& [key, members] : by_key) out.classes.push_back(std::move(members));
  std::sort(out.classes.begin(), out.classes.end());
  return out;
}

// Every distinct regular placement over all admissible coefficients and shifts.
inline std::vector<Placement> enumerate_regular(int n, int d) {
  std::set<Placement> seen;
  for (const auto& c : valid_coefficients(n, d).all) {
    for (int s = 0; s < n; ++s) seen.insert(regular_solution(RegularSpec{n, d, c, s}));
  }
  return {seen.begin(), seen.end()};
}

// Shifts coordinate dim (1-based) by offset modulo n.
inline Placement shift_class(const Placement& p, int dim, int offset) {
  const int n = p.board().n();
  if (dim < 1 || dim > p.board().d()) throw DomainError("shift dimension out of range");
  std::vector<Square> qs = p.queens();
  for (auto& q : qs) {
    auto& c = q[static_cast<std::size_t>(dim - 1)];
    c = static_cast<int>(detail::mod(c - 1 + offset, n)) + 1;
  }
  return Placement(p.board(), std::move(qs));
}

// Layers of a full solution along dim, with that coordinate dropped.
inline std::vector<Placement> superimposable_decomposition(const Placement& p, int dim) {
  const BoardSpec& b = p.board();
  if (b.d() < 2) throw DomainError("decomposition needs d >= 2");
  if (dim < 1 || dim > b.d()) throw DomainError("decomposition dimension out of range");
  if (p.size() != b.lines_per_axis()) {
    throw DomainError("decomposition needs a full solution of " + std::to_string(b.lines_per_axis()) + " queens, got " +
                      std::to_string(p.size()));
  }
  const BoardSpec sub(b.n(), b.d() - 1);
  std::vector<std::vector<Square>> layers(static_cast<std::size_t>(b.n()));
  for (const auto& q : p.queens()) {
    Square s = q;
    const int idx = s[static_cast<std::size_t>(dim - 1)];
    s.coords.erase(s.coords.begin() + (dim - 1));
    layers[static_cast<std::size_t>(idx - 1)].push_back(std::move(s));
  }
  std::vector<Placement> out;
  for (auto& l : layers) out.emplace_back(sub, std::move(l));
  return out;
}

}  // namespace nqd
