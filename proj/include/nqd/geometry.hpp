#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <utility>
#include <vector>

#include "nqd/board.hpp"

namespace nqd {

// All (3^d - 1) / 2 canonical directions in lexicographic order.
inline std::vector<Direction> attack_directions(int d) {
  if (d < 1) throw DomainError("dimension must be >= 1");
  std::vector<Direction> out;
  std::vector<int> eps(static_cast<std::size_t>(d), -1);
  // Odometer over {-1,0,1}^d in lexicographic order.
  while (true) {
    auto first = std::find_if(eps.begin(), eps.end(), [](int e) { return e != 0; });
    if (first != eps.end() && *first == 1) out.push_back(Direction{eps});
    int i = d - 1;
    while (i >= 0 && eps[static_cast<std::size_t>(i)] == 1) eps[static_cast<std::size_t>(i--)] = -1;
    if (i < 0) break;
    ++eps[static_cast<std::size_t>(i)];
  }
  return out;
}

namespace detail {

inline void require_same_board(const Square& a, const Square& b, const BoardSpec& board) {
  require_fits(a, board);
  require_fits(b, board);
}

}  // namespace detail

// True iff q1 = q2 + m * eps for some integer m and nonzero eps in {-1,0,1}^d.
// A square attacks itself.
inline bool attacks(const Square& q1, const Square& q2, const BoardSpec& board) {
  detail::require_same_board(q1, q2, board);
  int step = 0;
  for (std::size_t i = 0; i < q1.dim(); ++i) {
    const int delta = std::abs(q1[i] - q2[i]);
    if (delta == 0) continue;
    if (step == 0) {
      step = delta;
    } else if (delta != step) {
      return false;
    }
  }
  return true;
}

// Attack on the d-torus: q1 - q2 = m * eps (mod n).
inline bool modular_attacks(const Square& q1, const Square& q2, const BoardSpec& board) {
  detail::require_same_board(q1, q2, board);
  const int n = board.n();
  int step = 0;
  for (std::size_t i = 0; i < q1.dim(); ++i) {
    const int r = ((q1[i] - q2[i]) % n + n) % n;
    if (r == 0) continue;
    if (step == 0) {
      step = r;
    } else if (r != step && r != n - step) {
      return false;
    }
  }
  return true;
}

inline bool attacks(const Square& q1, const Square& q2, const BoardSpec& board, bool modular) {
  return modular ? modular_attacks(q1, q2, board) : attacks(q1, q2, board);
}

// Squares attacked by a queen on q, including q itself, sorted.
inline std::vector<Square> attacked_squares(const Square& q, const BoardSpec& board, bool modular = false) {
  require_fits(q, board);
  const int n = board.n();
  std::vector<Square> out{q};
  for (const auto& dir : attack_directions(board.d())) {
    for (int sign : {1, -1}) {
      for (int m = 1; m < n; ++m) {
        Square s = q;
        bool inside = true;
        for (std::size_t i = 0; i < s.dim(); ++i) {
          int c = s[i] + sign * m * dir.eps[i];
          if (modular) {
            c = ((c - 1) % n + n) % n + 1;
          } else if (c < 1 || c > n) {
            inside = false;
            break;
          }
          s[i] = c;
        }
        if (!inside) break;
        out.push_back(std::move(s));
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Maximal collinear square sets of length >= 2 along one direction.
struct LineFamily {
  Direction direction;
  std::vector<std::vector<Square>> lines;
};

// One family per canonical direction, lines ordered by their lexicographically
// smallest square.
inline std::vector<LineFamily> attack_lines(const BoardSpec& board) {
  std::vector<LineFamily> out;
  const int n = board.n();
  for (const auto& dir : attack_directions(board.d())) {
    LineFamily fam{dir, {}};
    for (std::size_t idx = 0; idx < board.size(); ++idx) {
      Square start = square_at(idx, board);
      // A line starts where stepping backwards leaves the board.
      bool has_pred = true;
      for (std::size_t i = 0; i < start.dim(); ++i) {
        const int c = start[i] - dir.eps[i];
        if (c < 1 || c > n) {
          has_pred = false;
          break;
        }
      }
      if (has_pred) continue;
      std::vector<Square> line{start};
      Square cur = start;
      while (true) {
        bool inside = true;
        for (std::size_t i = 0; i < cur.dim(); ++i) {
          cur[i] += dir.eps[i];
          if (cur[i] < 1 || cur[i] > n) inside = false;
        }
        if (!inside) break;
        line.push_back(cur);
      }
      // For a canonical direction the start square is the lexicographically
      // smallest member, so scanning starts in index order sorts by anchor.
      if (line.size() >= 2) fam.lines.push_back(std::move(line));
    }
    out.push_back(std::move(fam));
  }
  return out;
}

inline std::size_t count_attack_lines(const BoardSpec& board) {
  std::size_t total = 0;
  for (const auto& fam : attack_lines(board)) total += fam.lines.size();
  return total;
}

// The i-th layer in dimension dim (both 1-based): all squares with coords[dim-1] == idx.
inline std::vector<Square> layer(const BoardSpec& board, int dim, int idx) {
  if (dim < 1 || dim > board.d()) throw DomainError("layer dimension out of range");
  if (idx < 1 || idx > board.n()) throw DomainError("layer index out of range");
  std::vector<Square> out;
  out.reserve(board.lines_per_axis());
  for (std::size_t i = 0; i < board.size(); ++i) {
    Square s = square_at(i, board);
    if (s[static_cast<std::size_t>(dim - 1)] == idx) out.push_back(std::move(s));
  }
  return out;
}

// Undirected queen graph over linear square indices.
struct QueenGraph {
  BoardSpec board;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // i < j, sorted

  std::size_t vertex_count() const noexcept { return board.size(); }
  std::vector<std::size_t> degrees() const {
    std::vector<std::size_t> deg(board.size(), 0);
    for (auto [a, b] : edges) {
      ++deg[a];
      ++deg[b];
    }
    return deg;
  }
};

inline QueenGraph queen_graph(const BoardSpec& board, bool modular = false) {
  QueenGraph g{board, {}};
  for (std::size_t i = 0; i < board.size(); ++i) {
    for (const auto& s : attacked_squares(square_at(i, board), board, modular)) {
      const auto j = linear_index(s, board);
      if (j > i) g.edges.emplace_back(i, j);
    }
  }
  return g;
}

struct CertificateVerdict {
  bool valid = true;
  std::vector<std::pair<Square, Square>> conflicts;  // lexicographic pair order
};

// Checks pairwise non-attack; lists every conflicting pair.
inline CertificateVerdict verify_certificate(const Placement& p, bool modular = false) {
  CertificateVerdict v;
  const auto& qs = p.queens();
  for (const auto& q : qs) require_fits(q, p.board());
  for (std::size_t i = 0; i < qs.size(); ++i) {
    for (std::size_t j = i + 1; j < qs.size(); ++j) {
      if (attacks(qs[i], qs[j], p.board(), modular)) v.conflicts.emplace_back(qs[i], qs[j]);
    }
  }
  v.valid = v.conflicts.empty();
  return v;
}

inline bool is_valid(const Placement& p, bool modular = false) {
  return verify_certificate(p, modular).valid;
}

}  // namespace nqd
