#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "nqd/error.hpp"

namespace nqd {

// Largest board (in squares) any module accepts.
inline constexpr std::uint64_t kMaxSquares = std::uint64_t{1} << 24;

// The (n,d)-board: n squares per side, d dimensions.
class BoardSpec {
 public:
  BoardSpec(int n, int d) : n_(n), d_(d) {
    if (n < 1 || d < 1) {
      throw DomainError("board needs n >= 1 and d >= 1, got (" + std::to_string(n) + "," +
                        std::to_string(d) + ")");
    }
    std::uint64_t total = 1;
    for (int i = 0; i < d; ++i) {
      total *= static_cast<std::uint64_t>(n);
      if (total > kMaxSquares) {
        throw SizeError("board (" + std::to_string(n) + "," + std::to_string(d) +
                        ") exceeds 2^24 squares");
      }
    }
    size_ = static_cast<std::size_t>(total);
  }

  int n() const noexcept { return n_; }
  int d() const noexcept { return d_; }
  // n^d
  std::size_t size() const noexcept { return size_; }
  // n^(d-1), the number of axis lines per direction and the trivial queen bound.
  std::size_t lines_per_axis() const noexcept { return size_ / static_cast<std::size_t>(n_); }

  friend bool operator==(const BoardSpec&, const BoardSpec&) = default;

 private:
  int n_;
  int d_;
  std::size_t size_ = 1;
};

inline std::string to_string(const BoardSpec& b) {
  return "(" + std::to_string(b.n()) + "," + std::to_string(b.d()) + ")";
}

// A square as a tuple of 1-based coordinates.
struct Square {
  std::vector<int> coords;

  Square() = default;
  explicit Square(std::vector<int> c) : coords(std::move(c)) {}
  Square(std::initializer_list<int> c) : coords(c) {}

  std::size_t dim() const noexcept { return coords.size(); }
  int operator[](std::size_t i) const { return coords[i]; }
  int& operator[](std::size_t i) { return coords[i]; }

  friend auto operator<=>(const Square&, const Square&) = default;
  friend bool operator==(const Square&, const Square&) = default;
};

inline std::string to_string(const Square& s) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.dim(); ++i) {
    if (i) out += ",";
    out += std::to_string(s[i]);
  }
  return out + ")";
}

inline bool fits(const Square& s, const BoardSpec& b) {
  if (s.dim() != static_cast<std::size_t>(b.d())) return false;
  return std::all_of(s.coords.begin(), s.coords.end(),
                     [&](int c) { return c >= 1 && c <= b.n(); });
}

inline void require_fits(const Square& s, const BoardSpec& b) {
  if (s.dim() != static_cast<std::size_t>(b.d())) {
    throw DomainError("square " + to_string(s) + " has dimension " + std::to_string(s.dim()) +
                      ", board " + to_string(b) + " needs " + std::to_string(b.d()));
  }
  if (!fits(s, b)) throw DomainError("square " + to_string(s) + " is off board " + to_string(b));
}

// Lexicographic rank of a square, 0-based; the first coordinate is most significant.
inline std::size_t linear_index(const Square& s, const BoardSpec& b) {
  require_fits(s, b);
  std::size_t idx = 0;
  for (int c : s.coords) idx = idx * static_cast<std::size_t>(b.n()) + static_cast<std::size_t>(c - 1);
  return idx;
}

inline Square square_at(std::size_t idx, const BoardSpec& b) {
  if (idx >= b.size()) throw DomainError("linear index " + std::to_string(idx) + " out of range");
  Square s;
  s.coords.resize(static_cast<std::size_t>(b.d()));
  const auto n = static_cast<std::size_t>(b.n());
  for (int i = b.d() - 1; i >= 0; --i) {
    s.coords[static_cast<std::size_t>(i)] = static_cast<int>(idx % n) + 1;
    idx /= n;
  }
  return s;
}

// Canonical attack direction: entries in {-1,0,1}, not all zero, first nonzero entry +1.
struct Direction {
  std::vector<int> eps;

  std::size_t dim() const noexcept { return eps.size(); }
  // Number of nonzero entries: 1 for rook lines, 2 for diagonals, 3 for triagonals, ...
  int weight() const {
    return static_cast<int>(std::count_if(eps.begin(), eps.end(), [](int e) { return e != 0; }));
  }

  friend auto operator<=>(const Direction&, const Direction&) = default;
  friend bool operator==(const Direction&, const Direction&) = default;
};

// A duplicate-free, lexicographically sorted set of squares on one board.
class Placement {
 public:
  explicit Placement(BoardSpec board) : board_(board) {}

  Placement(BoardSpec board, std::vector<Square> queens) : board_(board), queens_(std::move(queens)) {
    for (const auto& q : queens_) require_fits(q, board_);
    std::sort(queens_.begin(), queens_.end());
    auto dup = std::adjacent_find(queens_.begin(), queens_.end());
    if (dup != queens_.end()) throw DomainError("duplicate queen on " + to_string(*dup));
  }

  static Placement from_indices(BoardSpec board, const std::vector<std::size_t>& idx) {
    std::vector<Square> qs;
    qs.reserve(idx.size());
    for (auto i : idx) qs.push_back(square_at(i, board));
    return Placement(board, std::move(qs));
  }

  const BoardSpec& board() const noexcept { return board_; }
  const std::vector<Square>& queens() const noexcept { return queens_; }
  std::size_t size() const noexcept { return queens_.size(); }
  bool empty() const noexcept { return queens_.empty(); }

  bool contains(const Square& s) const { return std::binary_search(queens_.begin(), queens_.end(), s); }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    out.reserve(queens_.size());
    for (const auto& q : queens_) out.push_back(linear_index(q, board_));
    return out;
  }

  friend bool operator==(const Placement&, const Placement&) = default;
  friend auto operator<=>(const Placement& a, const Placement& b) {
    if (auto c = a.board_.n() <=> b.board_.n(); c != 0) return c;
    if (auto c = a.board_.d() <=> b.board_.d(); c != 0) return c;
    return a.queens_ <=> b.queens_;
  }

 private:
  BoardSpec board_;
  std::vector<Square> queens_;
};

}  // namespace nqd
