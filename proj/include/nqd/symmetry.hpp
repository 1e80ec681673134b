#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <vector>

#include "nqd/board.hpp"

namespace nqd {

// One signed coordinate permutation: image[i] = flip[i] ? n+1-c[perm[i]] : c[perm[i]].
struct BoardSymmetry {
  std::vector<int> perm;
  std::vector<bool> flip;

  Square apply(const Square& s, int n) const {
    Square out;
    out.coords.resize(s.dim());
    for (std::size_t i = 0; i < s.dim(); ++i) {
      const int c = s[static_cast<std::size_t>(perm[i])];
      out[i] = flip[i] ? n + 1 - c : c;
    }
    return out;
  }
};

// The hyperoctahedral group of the (n,d)-board: all 2^d * d! signed coordinate
// permutations. Queen attacks are invariant under every element.
inline std::vector<BoardSymmetry> board_symmetries(int d) {
  std::vector<BoardSymmetry> out;
  std::vector<int> perm(static_cast<std::size_t>(d));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    for (unsigned mask = 0; mask < (1u << d); ++mask) {
      BoardSymmetry g{perm, std::vector<bool>(static_cast<std::size_t>(d))};
      for (int i = 0; i < d; ++i) g.flip[static_cast<std::size_t>(i)] = (mask >> i) & 1u;
      out.push_back(std::move(g));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

// Precomputed action of every board symmetry on linear square indices.
class SquareAction {
 public:
  explicit SquareAction(const BoardSpec& board) : board_(board) {
    const auto group = board_symmetries(board.d());
    images_.reserve(group.size());
    for (const auto& g : group) {
      std::vector<std::size_t> img(board.size());
      for (std::size_t i = 0; i < board.size(); ++i) img[i] = linear_index(g.apply(square_at(i, board), board.n()), board);
      images_.push_back(std::move(img));
    }
  }

  std::size_t group_size() const noexcept { return images_.size(); }
  std::size_t image(std::size_t g, std::size_t square) const { return images_[g][square]; }

  // Smallest index in each square orbit, ascending.
  std::vector<std::size_t> orbit_representatives() const {
    std::vector<std::size_t> reps;
    for (std::size_t i = 0; i < board_.size(); ++i) {
      bool smallest = true;
      for (const auto& img : images_) {
        if (img[i] < i) {
          smallest = false;
          break;
        }
      }
      if (smallest) reps.push_back(i);
    }
    return reps;
  }

  // Lexicographically smallest sorted index list over the group orbit of a set.
  std::vector<std::size_t> canonical(const std::vector<std::size_t>& squares) const {
    std::vector<std::size_t> best;
    std::vector<std::size_t> cur(squares.size());
    for (const auto& img : images_) {
      for (std::size_t k = 0; k < squares.size(); ++k) cur[k] = img[squares[k]];
      std::sort(cur.begin(), cur.end());
      if (best.empty() || cur < best) best = cur;
    }
    if (squares.empty()) return {};
    return best;
  }

 private:
  BoardSpec board_;
  std::vector<std::vector<std::size_t>> images_;
};

}  // namespace nqd
