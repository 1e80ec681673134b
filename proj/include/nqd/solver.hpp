#pragma once

// Exact combinatorial search over the queen graph.
//
// Placements are bitsets over square indices. A node keeps the set A of
// squares that are still available (not attacked, not excluded). Two upper
// bounds on how many more queens fit into A are maintained:
//
//   * axis-line bound: every axis line holds at most one queen, so for each
//     axis direction the number of lines still meeting A bounds the rest;
//     these counts are updated incrementally.
//   * clique-cover bound: a greedy partition of A into cliques of the queen
//     graph (colour classes of the complement), recomputed per node.
//
// When a bound is tight every part of the partition must receive a queen, so
// the search branches on the smallest part only. Otherwise it branches the
// classic way: include the highest-coloured vertex, then exclude it.

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "nqd/board.hpp"
#include "nqd/geometry.hpp"
#include "nqd/symmetry.hpp"

namespace nqd {

using BigCount = boost::multiprecision::cpp_int;

struct SearchOptions {
  double time_limit = 0.0;        // seconds; 0 disables the limit
  std::uint64_t node_limit = 0;   // 0 disables the limit
  unsigned threads = 1;
  bool symmetry_reduction = false;  // only used by maximisation and decision
  bool modular = false;
};

enum class SolveStatus { optimal, infeasible, limit };

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::optimal:
      return "optimal";
    case SolveStatus::infeasible:
      return "infeasible";
    case SolveStatus::limit:
      return "limit";
  }
  return "?";
}

struct SolveResult {
  SolveStatus status = SolveStatus::optimal;
  std::size_t best_size = 0;
  BigCount count = 0;
  std::optional<Placement> witness;
  std::uint64_t nodes = 0;
  double seconds = 0.0;
};

namespace detail {

using Word = std::uint64_t;

inline std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }

// Bitset view of the queen graph. Vertices are renumbered ("internal order")
// so that greedy clique covers come out small.
class BitGraph {
 public:
  enum class Order { lexicographic, blocked, automatic };

  BitGraph(const BoardSpec& board, bool modular, Order order = Order::automatic)
      : board_(board), modular_(modular), n_(board.size()), w_(words_for(board.size())) {
    const auto nn = static_cast<std::size_t>(board.n());
    const auto d = static_cast<std::size_t>(board.d());
    if (order == Order::automatic) {
      // 2-blocks are cliques; use them when they beat plain axis lines.
      double blocks = 1.0;
      for (std::size_t i = 0; i < d; ++i) blocks *= static_cast<double>((nn + 1) / 2);
      order = blocks < static_cast<double>(board.lines_per_axis()) ? Order::blocked : Order::lexicographic;
    }
    to_square_.resize(n_);
    std::iota(to_square_.begin(), to_square_.end(), 0u);
    if (order == Order::blocked) {
      std::vector<std::vector<int>> key(n_);
      for (std::size_t i = 0; i < n_; ++i) {
        const Square s = square_at(i, board);
        for (std::size_t k = 0; k < d; ++k) key[i].push_back((s[k] - 1) / 2);
        for (std::size_t k = 0; k < d; ++k) key[i].push_back(s[k]);
      }
      std::stable_sort(to_square_.begin(), to_square_.end(),
                       [&](std::uint32_t a, std::uint32_t b) { return key[a] < key[b]; });
    }
    to_internal_.resize(n_);
    for (std::size_t v = 0; v < n_; ++v) to_internal_[to_square_[v]] = static_cast<std::uint32_t>(v);

    closed_.assign(n_ * w_, 0);
    degree_.assign(n_, 0);
    double rays = static_cast<double>(nn);
    for (std::size_t i = 0; i < d; ++i) rays *= 3.0;
    if (rays > static_cast<double>(n_)) {
      // Many directions, few squares (small n, large d): test pairs directly.
      std::vector<Square> sq;
      for (std::size_t v = 0; v < n_; ++v) sq.push_back(square_at(to_square_[v], board));
      for (std::size_t v = 0; v < n_; ++v) {
        for (std::size_t u = v; u < n_; ++u) {
          if (u == v || attacks(sq[v], sq[u], board, modular)) {
            closed_[v * w_ + u / 64] |= Word{1} << (u % 64);
            closed_[u * w_ + v / 64] |= Word{1} << (v % 64);
          }
        }
      }
    } else {
      for (std::size_t v = 0; v < n_; ++v) {
        const Square s = square_at(to_square_[v], board);
        for (const auto& t : attacked_squares(s, board, modular)) {
          const auto u = to_internal_[linear_index(t, board)];
          closed_[v * w_ + u / 64] |= Word{1} << (u % 64);
        }
      }
    }
    for (std::size_t v = 0; v < n_; ++v) degree_[v] = static_cast<std::uint32_t>(popcount(row(v)) - 1);

    // Axis lines: line id of a square along axis j is its index with coordinate j dropped.
    lines_ = board.lines_per_axis();
    line_of_.assign(d * n_, 0);
    members_.assign(d * lines_ * nn, 0);
    std::vector<std::size_t> fill(d * lines_, 0);
    for (std::size_t v = 0; v < n_; ++v) {
      const Square s = square_at(to_square_[v], board);
      for (std::size_t j = 0; j < d; ++j) {
        std::size_t id = 0;
        for (std::size_t k = 0; k < d; ++k) {
          if (k != j) id = id * nn + static_cast<std::size_t>(s[k] - 1);
        }
        line_of_[j * n_ + v] = static_cast<std::uint32_t>(id);
        members_[(j * lines_ + id) * nn + fill[j * lines_ + id]++] = static_cast<std::uint32_t>(v);
      }
    }
    // Within a line, branch on the most attacking square first.
    for (std::size_t j = 0; j < d * lines_; ++j) {
      auto* b = &members_[j * nn];
      std::sort(b, b + nn, [&](std::uint32_t a, std::uint32_t c) {
        if (degree_[a] != degree_[c]) return degree_[a] > degree_[c];
        return to_square_[a] < to_square_[c];
      });
    }
  }

  const BoardSpec& board() const noexcept { return board_; }
  bool modular() const noexcept { return modular_; }
  std::size_t vertices() const noexcept { return n_; }
  std::size_t words() const noexcept { return w_; }
  std::size_t axes() const noexcept { return static_cast<std::size_t>(board_.d()); }
  std::size_t lines_per_axis() const noexcept { return lines_; }
  std::size_t side() const noexcept { return static_cast<std::size_t>(board_.n()); }

  const Word* row(std::size_t v) const { return &closed_[v * w_]; }
  std::uint32_t line_of(std::size_t axis, std::size_t v) const { return line_of_[axis * n_ + v]; }
  const std::uint32_t* line_members(std::size_t axis, std::size_t line) const {
    return &members_[(axis * lines_ + line) * side()];
  }
  std::uint32_t degree(std::size_t v) const { return degree_[v]; }
  std::uint32_t to_square(std::size_t v) const { return to_square_[v]; }
  std::uint32_t to_internal(std::size_t sq) const { return to_internal_[sq]; }

  std::size_t popcount(const Word* bits) const {
    std::size_t c = 0;
    for (std::size_t w = 0; w < w_; ++w) c += static_cast<std::size_t>(std::popcount(bits[w]));
    return c;
  }

 private:
  BoardSpec board_;
  bool modular_;
  std::size_t n_;
  std::size_t w_;
  std::size_t lines_ = 0;
  std::vector<Word> closed_;  // closed neighbourhood (attacked squares incl. self)
  std::vector<std::uint32_t> degree_;
  std::vector<std::uint32_t> to_square_;
  std::vector<std::uint32_t> to_internal_;
  std::vector<std::uint32_t> line_of_;
  std::vector<std::uint32_t> members_;
};

struct SharedSearch {
  std::atomic<bool> stop{false};
  std::atomic<bool> hit_limit{false};
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<std::size_t> best{0};
  std::chrono::steady_clock::time_point deadline = std::chrono::steady_clock::time_point::max();
  std::uint64_t node_limit = 0;
};

// Depth-first search engine; one instance per worker thread.
class Engine {
 public:
  enum class Mode { count, maximize, decide, visit };
  using Visitor = std::function<void(const std::vector<std::uint32_t>&)>;  // internal vertex ids

  Engine(const BitGraph& g, Mode mode, std::size_t target, SharedSearch& shared, Visitor visitor = {})
      : g_(g), mode_(mode), target_(target), shared_(shared), visitor_(std::move(visitor)) {
    const std::size_t depth = g.lines_per_axis() + 3;
    w_ = g.words();
    a_.assign(depth * w_, 0);
    scratch_u_.assign(w_, 0);
    scratch_q_.assign(w_, 0);
    order_.assign(depth * g.vertices(), 0);
    colour_.assign(depth * g.vertices(), 0);
    cnt_.assign(g.axes() * g.lines_per_axis(), 0);
    nonempty_.assign(g.axes(), 0);
  }

  // Resets the root to "all squares available" minus the given placements.
  void reset(const std::vector<std::uint32_t>& placed, const std::vector<std::uint32_t>& excluded) {
    Word* a = &a_[0];
    std::fill(a, a + w_, Word{0});
    for (std::size_t v = 0; v < g_.vertices(); ++v) a[v / 64] |= Word{1} << (v % 64);
    chosen_.clear();
    for (auto v : placed) {
      const Word* r = g_.row(v);
      for (std::size_t w = 0; w < w_; ++w) a[w] &= ~r[w];
      chosen_.push_back(v);
    }
    for (auto v : excluded) a[v / 64] &= ~(Word{1} << (v % 64));
    std::fill(cnt_.begin(), cnt_.end(), 0);
    std::fill(nonempty_.begin(), nonempty_.end(), 0);
    for_each_bit(a, [&](std::uint32_t v) { add_vertex(v); });
  }

  // Checks that the root placement is itself non-attacking.
  bool root_consistent(const std::vector<std::uint32_t>& placed) const {
    for (std::size_t i = 0; i < placed.size(); ++i) {
      for (std::size_t j = i + 1; j < placed.size(); ++j) {
        if (test(g_.row(placed[i]), placed[j])) return false;
      }
    }
    return true;
  }

  void run_ordered() { node</*Lex=*/false>(0); }
  void run_lexicographic() { node</*Lex=*/true>(0); }

  std::uint64_t count() const noexcept { return count_; }
  std::uint64_t nodes() const noexcept { return local_nodes_; }
  const std::vector<std::uint32_t>& best_set() const noexcept { return best_set_; }
  bool found() const noexcept { return found_; }
  void set_best(std::size_t best, std::vector<std::uint32_t> set) {
    best_set_ = std::move(set);
    if (mode_ == Mode::maximize) target_ = best + 1;
  }

 private:
  template <typename F>
  void for_each_bit(const Word* bits, F&& f) const {
    for (std::size_t w = 0; w < w_; ++w) {
      Word x = bits[w];
      while (x) {
        const auto b = static_cast<std::uint32_t>(std::countr_zero(x));
        x &= x - 1;
        f(static_cast<std::uint32_t>(w * 64 + b));
      }
    }
  }

  static bool test(const Word* bits, std::size_t v) { return (bits[v / 64] >> (v % 64)) & 1u; }

  void add_vertex(std::uint32_t v) {
    for (std::size_t j = 0; j < g_.axes(); ++j) {
      auto& c = cnt_[j * g_.lines_per_axis() + g_.line_of(j, v)];
      if (c++ == 0) ++nonempty_[j];
    }
  }
  void remove_vertex(std::uint32_t v) {
    for (std::size_t j = 0; j < g_.axes(); ++j) {
      auto& c = cnt_[j * g_.lines_per_axis() + g_.line_of(j, v)];
      if (--c == 0) --nonempty_[j];
    }
  }

  std::size_t line_bound() const { return *std::min_element(nonempty_.begin(), nonempty_.end()); }

  bool check_limits() {
    if (shared_.stop.load(std::memory_order_relaxed)) return true;
    if ((++local_nodes_ & 1023u) == 0) {
      const auto total = shared_.nodes.fetch_add(1024, std::memory_order_relaxed) + 1024;
      if ((shared_.node_limit && total >= shared_.node_limit) ||
          std::chrono::steady_clock::now() >= shared_.deadline) {
        shared_.hit_limit = true;
        shared_.stop = true;
        return true;
      }
    }
    return false;
  }

  std::size_t effective_target() const {
    if (mode_ == Mode::maximize) {
      return std::max(target_, shared_.best.load(std::memory_order_relaxed) + 1);
    }
    return target_;
  }

  void on_solution() {
    switch (mode_) {
      case Mode::count:
        ++count_;
        break;
      case Mode::visit:
        ++count_;
        if (visitor_) visitor_(chosen_);
        break;
      case Mode::decide:
        found_ = true;
        best_set_ = chosen_;
        shared_.stop = true;
        break;
      case Mode::maximize:
        break;
    }
  }

  // Greedy clique cover of A. Returns the number of classes; order/colour are
  // filled in cover order, class_start records where each class begins.
  std::size_t colour(const Word* a, std::size_t depth, std::size_t& k) {
    Word* u = scratch_u_.data();
    Word* q = scratch_q_.data();
    std::copy(a, a + w_, u);
    std::uint32_t* ord = &order_[depth * g_.vertices()];
    std::uint32_t* col = &colour_[depth * g_.vertices()];
    k = 0;
    std::size_t classes = 0;
    std::size_t first = 0;
    while (true) {
      while (first < w_ && u[first] == 0) ++first;
      if (first == w_) break;
      ++classes;
      std::copy(u + first, u + w_, q + first);
      std::size_t qw = first;
      while (true) {
        while (qw < w_ && q[qw] == 0) ++qw;
        if (qw == w_) break;
        const auto v = static_cast<std::uint32_t>(qw * 64 + static_cast<std::size_t>(std::countr_zero(q[qw])));
        const Word bit = Word{1} << (v % 64);
        u[qw] &= ~bit;
        q[qw] &= ~bit;
        ord[k] = v;
        col[k] = static_cast<std::uint32_t>(classes);
        ++k;
        const Word* r = g_.row(v);
        for (std::size_t w = qw; w < w_; ++w) q[w] &= r[w];
      }
    }
    return classes;
  }

  template <bool Lex>
  void include(std::uint32_t v, std::size_t depth) {
    const Word* a = &a_[depth * w_];
    Word* c = &a_[(depth + 1) * w_];
    const Word* r = g_.row(v);
    for (std::size_t w = 0; w < w_; ++w) {
      Word removed = a[w] & r[w];
      c[w] = a[w] & ~r[w];
      while (removed) {
        remove_vertex(static_cast<std::uint32_t>(w * 64 + static_cast<std::size_t>(std::countr_zero(removed))));
        removed &= removed - 1;
      }
    }
    chosen_.push_back(v);
    node<Lex>(depth + 1);
    chosen_.pop_back();
    for (std::size_t w = 0; w < w_; ++w) {
      Word removed = a[w] & r[w];
      while (removed) {
        add_vertex(static_cast<std::uint32_t>(w * 64 + static_cast<std::size_t>(std::countr_zero(removed))));
        removed &= removed - 1;
      }
    }
  }

  template <bool Lex>
  void node(std::size_t depth) {
    if (check_limits()) return;
    Word* a = &a_[depth * w_];
    const std::size_t placed = chosen_.size();

    if (mode_ == Mode::maximize && placed > shared_.best.load(std::memory_order_relaxed)) {
      std::size_t prev = shared_.best.load();
      while (placed > prev && !shared_.best.compare_exchange_weak(prev, placed)) {
      }
      if (placed > prev) best_set_ = chosen_;
      target_ = placed + 1;
    }
    std::size_t target = effective_target();
    if (placed >= target) {
      on_solution();
      return;
    }
    std::size_t need = target - placed;
    const std::size_t lb = line_bound();
    if (lb < need) return;

    if (!Lex && lb == need) {
      // Every nonempty line of a tight axis must take a queen: branch on the smallest one.
      std::size_t best_axis = 0, best_line = 0;
      int best_cnt = std::numeric_limits<int>::max();
      for (std::size_t j = 0; j < g_.axes(); ++j) {
        if (nonempty_[j] != lb) continue;
        for (std::size_t l = 0; l < g_.lines_per_axis(); ++l) {
          const int c = cnt_[j * g_.lines_per_axis() + l];
          if (c > 0 && c < best_cnt) {
            best_cnt = c;
            best_axis = j;
            best_line = l;
          }
        }
      }
      const auto* mem = g_.line_members(best_axis, best_line);
      for (std::size_t i = 0; i < g_.side(); ++i) {
        const auto v = mem[i];
        if (!test(a, v)) continue;
        include<Lex>(v, depth);
        if (shared_.stop.load(std::memory_order_relaxed)) return;
        if (placed + line_bound() < effective_target()) return;
      }
      return;
    }

    std::size_t k = 0;
    const std::size_t classes = colour(a, depth, k);
    if (classes < need) return;
    const std::uint32_t* ord = &order_[depth * g_.vertices()];
    const std::uint32_t* col = &colour_[depth * g_.vertices()];

    if (!Lex && classes == need) {
      // Tight clique cover: the smallest class must take a queen.
      std::size_t best_start = 0, best_len = std::numeric_limits<std::size_t>::max();
      for (std::size_t i = 0; i < k;) {
        std::size_t j = i;
        while (j < k && col[j] == col[i]) ++j;
        if (j - i < best_len) {
          best_len = j - i;
          best_start = i;
        }
        i = j;
      }
      std::vector<std::uint32_t> cls(ord + best_start, ord + best_start + best_len);
      std::sort(cls.begin(), cls.end(), [&](std::uint32_t x, std::uint32_t y) {
        if (g_.degree(x) != g_.degree(y)) return g_.degree(x) > g_.degree(y);
        return x < y;
      });
      for (auto v : cls) {
        include<Lex>(v, depth);
        if (shared_.stop.load(std::memory_order_relaxed)) return;
        if (placed + line_bound() < effective_target()) return;
      }
      return;
    }

    std::vector<std::uint32_t> excluded;
    if constexpr (Lex) {
      // Include-then-exclude in ascending square order yields lexicographic output.
      std::vector<std::uint32_t> candidates(ord, ord + k);
      std::sort(candidates.begin(), candidates.end(),
                [&](std::uint32_t x, std::uint32_t y) { return g_.to_square(x) < g_.to_square(y); });
      std::size_t remaining = k;
      for (auto v : candidates) {
        if (remaining < need) break;
        include<Lex>(v, depth);
        if (shared_.stop.load(std::memory_order_relaxed)) break;
        a[v / 64] &= ~(Word{1} << (v % 64));
        remove_vertex(v);
        excluded.push_back(v);
        --remaining;
        if (line_bound() < need) break;
      }
    } else {
      for (std::size_t i = k; i-- > 0;) {
        target = effective_target();
        if (placed >= target) break;
        need = target - placed;
        if (col[i] < need) break;
        const auto v = ord[i];
        include<Lex>(v, depth);
        if (shared_.stop.load(std::memory_order_relaxed)) break;
        a[v / 64] &= ~(Word{1} << (v % 64));
        remove_vertex(v);
        excluded.push_back(v);
        if (line_bound() + placed < effective_target()) break;
      }
    }
    for (auto v : excluded) {
      a[v / 64] |= Word{1} << (v % 64);
      add_vertex(v);
    }
  }

  const BitGraph& g_;
  Mode mode_;
  std::size_t target_;
  SharedSearch& shared_;
  Visitor visitor_;
  std::size_t w_ = 0;
  std::vector<Word> a_;
  std::vector<Word> scratch_u_;
  std::vector<Word> scratch_q_;
  std::vector<std::uint32_t> order_;
  std::vector<std::uint32_t> colour_;
  std::vector<int> cnt_;
  std::vector<std::size_t> nonempty_;
  std::vector<std::uint32_t> chosen_;
  std::vector<std::uint32_t> best_set_;
  std::uint64_t count_ = 0;
  std::uint64_t local_nodes_ = 0;
  bool found_ = false;
};


struct RootTask {
  std::vector<std::uint32_t> placed;
  std::vector<std::uint32_t> excluded;
};

inline void configure(SharedSearch& shared, const SearchOptions& opts) {
  if (opts.time_limit > 0) {
    shared.deadline = std::chrono::steady_clock::now() +
                      std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                          std::chrono::duration<double>(opts.time_limit));
  }
  shared.node_limit = opts.node_limit;
}

inline std::vector<std::uint32_t> internal_ids(const BitGraph& g, const Placement& p) {
  std::vector<std::uint32_t> out;
  for (auto i : p.indices()) out.push_back(g.to_internal(i));
  return out;
}

inline Placement to_placement(const BitGraph& g, const std::vector<std::uint32_t>& set) {
  std::vector<std::size_t> idx;
  idx.reserve(set.size());
  for (auto v : set) idx.push_back(g.to_square(v));
  return Placement::from_indices(g.board(), idx);
}

// Orbit of a square under signed coordinate permutations: the sorted multiset
// of distances to the nearer face.
inline std::vector<int> orbit_key(const Square& s, int n) {
  std::vector<int> key;
  for (int c : s.coords) key.push_back(std::min(c, n + 1 - c));
  std::sort(key.begin(), key.end());
  return key;
}

// One task per square orbit: the first orbit met by a placement is moved onto
// its representative, earlier orbits are excluded.
inline std::vector<RootTask> symmetric_tasks(const BitGraph& g) {
  const BoardSpec& b = g.board();
  std::vector<std::vector<int>> keys;
  std::vector<std::size_t> orbit(b.size());
  std::vector<std::size_t> rep;
  for (std::size_t i = 0; i < b.size(); ++i) {
    auto key = orbit_key(square_at(i, b), b.n());
    auto it = std::find(keys.begin(), keys.end(), key);
    if (it == keys.end()) {
      orbit[i] = keys.size();
      keys.push_back(std::move(key));
      rep.push_back(i);
    } else {
      orbit[i] = static_cast<std::size_t>(it - keys.begin());
    }
  }
  std::vector<RootTask> tasks;
  for (std::size_t o = 0; o < rep.size(); ++o) {
    RootTask t;
    t.placed.push_back(g.to_internal(rep[o]));
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (orbit[i] < o) t.excluded.push_back(g.to_internal(i));
    }
    tasks.push_back(std::move(t));
  }
  return tasks;
}

// Splits on the squares of one axis line: take the j-th, skip the earlier ones;
// the last task skips the whole line.
inline std::vector<RootTask> line_tasks(const BitGraph& g) {
  std::vector<RootTask> tasks;
  const auto* mem = g.line_members(0, 0);
  std::vector<std::uint32_t> before;
  for (std::size_t i = 0; i < g.side(); ++i) {
    tasks.push_back(RootTask{{mem[i]}, before});
    before.push_back(mem[i]);
  }
  tasks.push_back(RootTask{{}, before});
  return tasks;
}

struct RunOutcome {
  BigCount count = 0;
  std::vector<std::uint32_t> best_set;
  bool found = false;
  std::uint64_t nodes = 0;
};

inline RunOutcome run_tasks(const BitGraph& g, Engine::Mode mode, std::size_t target, SharedSearch& shared,
                            const std::vector<RootTask>& tasks, unsigned threads, bool lex,
                            const std::vector<std::uint32_t>& incumbent = {}, Engine::Visitor visitor = {}) {
  RunOutcome out;
  std::mutex mu;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    Engine e(g, mode, target, shared, visitor);
    if (mode == Engine::Mode::maximize) e.set_best(shared.best.load(), incumbent);
    while (!shared.stop.load()) {
      const std::size_t t = next.fetch_add(1);
      if (t >= tasks.size()) break;
      if (!e.root_consistent(tasks[t].placed)) continue;
      e.reset(tasks[t].placed, tasks[t].excluded);
      if (lex) {
        e.run_lexicographic();
      } else {
        e.run_ordered();
      }
    }
    std::lock_guard lock(mu);
    out.count += e.count();
    out.nodes += e.nodes();
    if (e.found() && !out.found) {
      out.found = true;
      out.best_set = e.best_set();
    }
    if (mode == Engine::Mode::maximize && e.best_set().size() > out.best_set.size()) out.best_set = e.best_set();
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(tasks.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return out;
}

// Static greedy: low-degree squares first.
inline std::vector<std::uint32_t> greedy_independent(const BitGraph& g) {
  std::vector<std::uint32_t> order(g.vertices());
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return g.degree(a) < g.degree(b); });
  std::vector<Word> blocked(g.words(), 0);
  std::vector<std::uint32_t> out;
  for (auto v : order) {
    if ((blocked[v / 64] >> (v % 64)) & 1u) continue;
    out.push_back(v);
    const Word* r = g.row(v);
    for (std::size_t w = 0; w < g.words(); ++w) blocked[w] |= r[w];
  }
  return out;
}

inline double elapsed(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

inline SolveResult decide_on(const BitGraph& g, std::size_t k, const SearchOptions& opts,
                             const std::vector<std::uint32_t>& fixed = {}) {
  const auto start = std::chrono::steady_clock::now();
  SolveResult res;
  SharedSearch shared;
  configure(shared, opts);
  std::vector<RootTask> tasks;
  if (fixed.empty() && k > 0 && opts.symmetry_reduction) {
    tasks = symmetric_tasks(g);
  } else if (fixed.empty() && k > 0 && opts.threads > 1) {
    tasks = line_tasks(g);
  } else {
    tasks.push_back(RootTask{fixed, {}});
  }
  auto out = run_tasks(g, Engine::Mode::decide, k, shared, tasks, opts.threads, false);
  res.nodes = out.nodes;
  if (out.found) {
    res.status = SolveStatus::optimal;
    res.best_size = k;
    res.witness = to_placement(g, out.best_set);
  } else {
    res.status = shared.hit_limit ? SolveStatus::limit : SolveStatus::infeasible;
  }
  res.seconds = elapsed(start);
  return res;
}

}  // namespace detail

// Maximum number of mutually non-attacking queens, with a witness.
inline SolveResult max_partial(const BoardSpec& board, const SearchOptions& opts = {}) {
  const auto start = std::chrono::steady_clock::now();
  detail::BitGraph g(board, opts.modular);
  detail::SharedSearch shared;
  detail::configure(shared, opts);
  const auto incumbent = detail::greedy_independent(g);
  shared.best = incumbent.size();
  std::vector<detail::RootTask> tasks;
  if (opts.symmetry_reduction) {
    tasks = detail::symmetric_tasks(g);
  } else if (opts.threads > 1) {
    tasks = detail::line_tasks(g);
  } else {
    tasks.push_back({});
  }
  auto out = detail::run_tasks(g, detail::Engine::Mode::maximize, incumbent.size() + 1, shared, tasks,
                               opts.threads, false, incumbent);
  SolveResult res;
  res.nodes = out.nodes;
  res.status = shared.hit_limit ? SolveStatus::limit : SolveStatus::optimal;
  res.best_size = out.best_set.size();
  if (opts.threads > 1 && res.status == SolveStatus::optimal) {
    // Witnesses from a parallel run depend on timing; redo the last step serially.
    SearchOptions serial = opts;
    serial.threads = 1;
    serial.time_limit = 0;
    serial.node_limit = 0;
    auto again = detail::decide_on(g, res.best_size, serial);
    res.nodes += again.nodes;
    if (again.witness) out.best_set = detail::internal_ids(g, *again.witness);
  }
  if (!out.best_set.empty()) res.witness = detail::to_placement(g, out.best_set);
  res.seconds = detail::elapsed(start);
  return res;
}

// Is there a valid placement of exactly k queens? Witness on success.
inline SolveResult decide(const BoardSpec& board, std::size_t k, const SearchOptions& opts = {}) {
  detail::BitGraph g(board, opts.modular);
  return detail::decide_on(g, k, opts);
}

// Number of valid placements of exactly k queens.
inline SolveResult count_solutions(const BoardSpec& board, std::size_t k, const SearchOptions& opts = {}) {
  const auto start = std::chrono::steady_clock::now();
  detail::BitGraph g(board, opts.modular);
  detail::SharedSearch shared;
  detail::configure(shared, opts);
  std::vector<detail::RootTask> tasks;
  if (opts.threads > 1 && k > 0) {
    tasks = detail::line_tasks(g);
  } else {
    tasks.push_back({});
  }
  auto out = detail::run_tasks(g, detail::Engine::Mode::count, k, shared, tasks, opts.threads, false);
  SolveResult res;
  res.nodes = out.nodes;
  res.count = out.count;
  res.status = shared.hit_limit ? SolveStatus::limit : (out.count > 0 ? SolveStatus::optimal : SolveStatus::infeasible);
  res.best_size = out.count > 0 ? k : 0;
  res.seconds = detail::elapsed(start);
  return res;
}

// Calls visit for every valid size-k placement, in lexicographic order of the
// sorted square lists. Single threaded.
inline SolveResult enumerate_solutions(const BoardSpec& board, std::size_t k,
                                       const std::function<void(const Placement&)>& visit,
                                       const SearchOptions& opts = {}) {
  const auto start = std::chrono::steady_clock::now();
  detail::BitGraph g(board, opts.modular, detail::BitGraph::Order::lexicographic);
  detail::SharedSearch shared;
  detail::configure(shared, opts);
  auto out = detail::run_tasks(g, detail::Engine::Mode::visit, k, shared, {detail::RootTask{}}, 1, true, {},
                               [&](const std::vector<std::uint32_t>& set) { visit(detail::to_placement(g, set)); });
  SolveResult res;
  res.nodes = out.nodes;
  res.count = out.count;
  res.status = shared.hit_limit ? SolveStatus::limit : (out.count > 0 ? SolveStatus::optimal : SolveStatus::infeasible);
  res.best_size = out.count > 0 ? k : 0;
  res.seconds = detail::elapsed(start);
  return res;
}

inline std::vector<Placement> enumerate_solutions(const BoardSpec& board, std::size_t k,
                                                  const SearchOptions& opts = {}) {
  std::vector<Placement> out;
  enumerate_solutions(board, k, [&](const Placement& p) { out.push_back(p); }, opts);
  return out;
}

// Unordered but fast visit over linear square indices, optionally forcing some
// squares. Used for density accumulation.
inline SolveResult for_each_solution(const BoardSpec& board, std::size_t k,
                                     const std::function<void(const std::vector<std::size_t>&)>& visit,
                                     const SearchOptions& opts = {}, const std::vector<std::size_t>& fixed = {}) {
  const auto start = std::chrono::steady_clock::now();
  detail::BitGraph g(board, opts.modular);
  detail::SharedSearch shared;
  detail::configure(shared, opts);
  detail::RootTask root;
  for (auto i : fixed) root.placed.push_back(g.to_internal(i));
  std::vector<std::size_t> buf;
  auto out = detail::run_tasks(g, detail::Engine::Mode::visit, k, shared, {root}, 1, false, {},
                               [&](const std::vector<std::uint32_t>& set) {
                                 buf.clear();
                                 for (auto v : set) buf.push_back(g.to_square(v));
                                 visit(buf);
                               });
  SolveResult res;
  res.nodes = out.nodes;
  res.count = out.count;
  res.status = shared.hit_limit ? SolveStatus::limit : (out.count > 0 ? SolveStatus::optimal : SolveStatus::infeasible);
  res.best_size = out.count > 0 ? k : 0;
  res.seconds = detail::elapsed(start);
  return res;
}

// Does a valid superset of partial with exactly k queens exist?
inline SolveResult complete(const BoardSpec& board, const Placement& partial, std::size_t k,
                            const SearchOptions& opts = {}) {
  if (!(partial.board() == board)) throw DomainError("partial placement is on a different board");
  if (!is_valid(partial, opts.modular)) throw InvalidPlacement("partial placement has attacking queens");
  SolveResult res;
  if (partial.size() > k) {
    res.status = SolveStatus::infeasible;
    return res;
  }
  detail::BitGraph g(board, opts.modular);
  SearchOptions serial = opts;
  serial.threads = 1;
  return detail::decide_on(g, k, serial, detail::internal_ids(g, partial));
}

struct ThresholdResult {
  SolveStatus status = SolveStatus::optimal;
  std::size_t value = 0;  // qc, or the best proven lower bound when status is limit
  std::size_t qmax = 0;
  std::size_t checked = 0;  // canonical placements tested
  std::optional<Placement> blocker;  // a placement of size value+1 that cannot be completed
  double seconds = 0.0;
};

// Largest t such that every valid placement of at most t queens extends to a
// maximum one. Capped at |Qmax|.
inline ThresholdResult completion_threshold(const BoardSpec& board, const SearchOptions& opts = {}) {
  const auto start = std::chrono::steady_clock::now();
  const auto deadline_left = [&] {
    return opts.time_limit > 0 ? std::max(1e-3, opts.time_limit - detail::elapsed(start)) : 0.0;
  };
  ThresholdResult out;
  SearchOptions mopts = opts;
  mopts.symmetry_reduction = true;
  auto m = max_partial(board, mopts);
  out.qmax = m.best_size;
  if (m.status == SolveStatus::limit) {
    out.status = SolveStatus::limit;
    out.seconds = detail::elapsed(start);
    return out;
  }
  SquareAction action(board);
  for (std::size_t t = 1; t <= out.qmax; ++t) {
    std::set<std::vector<std::size_t>> seen;
    bool blocked = false;
    bool limited = false;
    SearchOptions eopts = opts;
    eopts.time_limit = deadline_left();
    enumerate_solutions(
        board, t,
        [&](const Placement& p) {
          if (blocked || limited) return;
          auto canon = action.canonical(p.indices());
          if (!seen.insert(canon).second) return;
          ++out.checked;
          SearchOptions copts = opts;
          copts.time_limit = deadline_left();
          auto r = complete(board, Placement::from_indices(board, canon), out.qmax, copts);
          if (r.status == SolveStatus::limit) {
            limited = true;
          } else if (r.status == SolveStatus::infeasible) {
            blocked = true;
            out.blocker = Placement::from_indices(board, canon);
          }
        },
        eopts);
    if (blocked) {
      out.value = t - 1;
      out.seconds = detail::elapsed(start);
      return out;
    }
    if (limited || (opts.time_limit > 0 && detail::elapsed(start) >= opts.time_limit)) {
      out.status = SolveStatus::limit;
      out.value = t - 1;
      out.seconds = detail::elapsed(start);
      return out;
    }
  }
  out.value = out.qmax;
  out.seconds = detail::elapsed(start);
  return out;
}

namespace detail {

// Depth-bounded set cover: is there a dominating set of at most k queens?
class CoverSearch {
 public:
  CoverSearch(const BitGraph& g, SharedSearch& shared) : g_(g), shared_(shared) {
    for (std::size_t v = 0; v < g.vertices(); ++v) max_cover_ = std::max<std::size_t>(max_cover_, g.degree(v) + 1);
  }

  bool run(std::size_t k) {
    std::vector<Word> u(g_.words(), 0);
    for (std::size_t v = 0; v < g_.vertices(); ++v) u[v / 64] |= Word{1} << (v % 64);
    chosen_.clear();
    return dfs(u, k);
  }
  const std::vector<std::uint32_t>& chosen() const noexcept { return chosen_; }
  std::uint64_t nodes() const noexcept { return nodes_; }

 private:
  bool dfs(const std::vector<Word>& u, std::size_t left) {
    if (shared_.stop) return false;
    if ((++nodes_ & 1023u) == 0) {
      const auto total = shared_.nodes.fetch_add(1024) + 1024;
      if ((shared_.node_limit && total >= shared_.node_limit) || std::chrono::steady_clock::now() >= shared_.deadline) {
        shared_.hit_limit = true;
        shared_.stop = true;
        return false;
      }
    }
    const std::size_t open = g_.popcount(u.data());
    if (open == 0) return true;
    if (left == 0 || left * max_cover_ < open) return false;
    // The uncovered square with the fewest possible coverers.
    std::uint32_t pick = 0;
    std::size_t fewest = std::numeric_limits<std::size_t>::max();
    for (std::size_t w = 0; w < g_.words(); ++w) {
      Word x = u[w];
      while (x) {
        const auto v = static_cast<std::uint32_t>(w * 64 + static_cast<std::size_t>(std::countr_zero(x)));
        x &= x - 1;
        if (g_.degree(v) + 1 < fewest) {
          fewest = g_.degree(v) + 1;
          pick = v;
        }
      }
    }
    std::vector<std::pair<std::size_t, std::uint32_t>> options;
    const Word* r = g_.row(pick);
    for (std::size_t w = 0; w < g_.words(); ++w) {
      Word x = r[w];
      while (x) {
        const auto v = static_cast<std::uint32_t>(w * 64 + static_cast<std::size_t>(std::countr_zero(x)));
        x &= x - 1;
        std::size_t gain = 0;
        const Word* rv = g_.row(v);
        for (std::size_t q = 0; q < g_.words(); ++q) gain += static_cast<std::size_t>(std::popcount(rv[q] & u[q]));
        options.emplace_back(gain, v);
      }
    }
    std::sort(options.begin(), options.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first > b.first;
      return a.second < b.second;
    });
    std::vector<Word> next(g_.words());
    for (const auto& [gain, v] : options) {
      const Word* rv = g_.row(v);
      for (std::size_t q = 0; q < g_.words(); ++q) next[q] = u[q] & ~rv[q];
      chosen_.push_back(v);
      if (dfs(next, left - 1)) return true;
      chosen_.pop_back();
      if (shared_.stop) return false;
    }
    return false;
  }

  const BitGraph& g_;
  SharedSearch& shared_;
  std::size_t max_cover_ = 1;
  std::vector<std::uint32_t> chosen_;
  std::uint64_t nodes_ = 0;
};

}  // namespace detail

// Minimum number of queens attacking every square (iterative deepening).
inline SolveResult min_domination(const BoardSpec& board, const SearchOptions& opts = {}) {
  const auto start = std::chrono::steady_clock::now();
  detail::BitGraph g(board, opts.modular);
  detail::SharedSearch shared;
  detail::configure(shared, opts);
  detail::CoverSearch search(g, shared);
  SolveResult res;
  for (std::size_t k = 1; k <= board.lines_per_axis(); ++k) {
    if (search.run(k)) {
      res.status = SolveStatus::optimal;
      res.best_size = k;
      std::vector<std::size_t> idx;
      for (auto v : search.chosen()) idx.push_back(g.to_square(v));
      res.witness = Placement::from_indices(board, idx);
      break;
    }
    if (shared.hit_limit) {
      res.status = SolveStatus::limit;
      res.best_size = k;  // lower bound: nothing smaller works
      break;
    }
  }
  res.nodes = search.nodes();
  res.seconds = detail::elapsed(start);
  return res;
}

}  // namespace nqd
