#pragma once

// Integer programs over one binary x_s per square: base line constraints plus
// optional clique, layer, subsolution and odd-cycle cuts.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "nqd/board.hpp"
#include "nqd/bound_table.hpp"
#include "nqd/geometry.hpp"

namespace nqd {

enum class Sense { le, eq, ge };

inline const char* to_string(Sense s) {
  switch (s) {
    case Sense::le:
      return "<=";
    case Sense::eq:
      return "=";
    case Sense::ge:
      return ">=";
  }
  return "?";
}

struct LinearConstraint {
  std::vector<std::size_t> vars;  // linear square indices, coefficient 1 each
  Sense sense = Sense::le;
  long long rhs = 0;
  std::string tag;   // base, cube, star, layer, subsol, oddcycle, cardinality, cover
  bool upper_rhs = false;  // rhs taken from an upper bound rather than an exact value
  std::string name;

  friend bool operator==(const LinearConstraint&, const LinearConstraint&) = default;
};

enum class Objective { maximize_sum, minimize_sum, none };

struct ModelMode {
  enum class Kind { max, fixed, refute, minimize };
  Kind kind = Kind::max;
  long long k = 0;

  static ModelMode max() { return {Kind::max, 0}; }
  static ModelMode fixed(long long k) { return {Kind::fixed, k}; }
  static ModelMode refute(long long k) { return {Kind::refute, k}; }
  static ModelMode minimize() { return {Kind::minimize, 0}; }

  friend bool operator==(const ModelMode&, const ModelMode&) = default;
};

inline std::string to_string(const ModelMode& m) {
  switch (m.kind) {
    case ModelMode::Kind::max:
      return "max";
    case ModelMode::Kind::fixed:
      return "fixed:" + std::to_string(m.k);
    case ModelMode::Kind::refute:
      return "refute:" + std::to_string(m.k);
    case ModelMode::Kind::minimize:
      return "minimize";
  }
  return "?";
}

inline ModelMode parse_mode(const std::string& s) {
  auto number = [&](std::size_t pos) {
    try {
      std::size_t used = 0;
      const long long k = std::stoll(s.substr(pos), &used);
      if (used != s.size() - pos || k < 0) throw ParseError("");
      return k;
    } catch (const std::exception&) {
      throw ParseError("bad mode '" + s + "'");
    }
  };
  if (s == "max") return ModelMode::max();
  if (s == "minimize") return ModelMode::minimize();
  if (s.rfind("fixed:", 0) == 0) return ModelMode::fixed(number(6));
  if (s.rfind("refute:", 0) == 0) return ModelMode::refute(number(7));
  throw ParseError("bad mode '" + s + "', expected max|fixed:K|refute:K|minimize");
}

// Variable name: "x" followed by the 1-based coordinates, joined by '_'.
inline std::string variable_name(const Square& s) {
  std::string out = "x";
  for (int c : s.coords) out += "_" + std::to_string(c);
  return out;
}

class IpModel {
 public:
  IpModel(BoardSpec board, ModelMode mode, Objective objective) : board_(board), mode_(mode), objective_(objective) {}

  const BoardSpec& board() const noexcept { return board_; }
  const ModelMode& mode() const noexcept { return mode_; }
  Objective objective() const noexcept { return objective_; }
  const std::vector<LinearConstraint>& constraints() const noexcept { return constraints_; }
  std::size_t variable_count() const noexcept { return board_.size(); }
  std::string variable_name(std::size_t i) const { return nqd::variable_name(square_at(i, board_)); }

  const std::optional<Placement>& warmstart() const noexcept { return warmstart_; }
  void set_warmstart(Placement p) {
    if (!(p.board() == board_)) throw DomainError("warmstart is on a different board");
    warmstart_ = std::move(p);
  }

  // Appends a constraint and names it "<tag>[_ub]_<ordinal>".
  const LinearConstraint& add(LinearConstraint c) {
    if (c.rhs < 0) throw DomainError("constraint rhs must be >= 0");
    std::vector<std::size_t> sorted = c.vars;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw DomainError("constraint repeats a variable");
    }
    if (!sorted.empty() && sorted.back() >= board_.size()) throw DomainError("constraint references unknown variable");
    const std::string prefix = c.tag + (c.upper_rhs ? "_ub" : "");
    c.name = prefix + "_" + std::to_string(++ordinals_[prefix]);
    constraints_.push_back(std::move(c));
    return constraints_.back();
  }

  std::size_t count(const std::string& tag) const {
    return static_cast<std::size_t>(std::count_if(constraints_.begin(), constraints_.end(),
                                                  [&](const LinearConstraint& c) { return c.tag == tag; }));
  }

  friend bool operator==(const IpModel& a, const IpModel& b) {
    return a.board_ == b.board_ && a.mode_ == b.mode_ && a.objective_ == b.objective_ &&
           a.constraints_ == b.constraints_;
  }

 private:
  BoardSpec board_;
  ModelMode mode_;
  Objective objective_;
  std::vector<LinearConstraint> constraints_;
  std::map<std::string, std::size_t> ordinals_;
  std::optional<Placement> warmstart_;
};

namespace detail {

inline void add_cardinality(IpModel& m) {
  if (m.mode().kind != ModelMode::Kind::fixed && m.mode().kind != ModelMode::Kind::refute) return;
  LinearConstraint c;
  c.vars.resize(m.board().size());
  for (std::size_t i = 0; i < c.vars.size(); ++i) c.vars[i] = i;
  c.sense = Sense::eq;
  c.rhs = m.mode().k;
  c.tag = "cardinality";
  m.add(std::move(c));
}

}  // namespace detail

// One "<= 1" row per attack line of length >= 2. In fixed(n^(d-1)) mode every
// axis line must hold a queen, so those rows become equalities.
inline IpModel build_base(const BoardSpec& board, ModelMode mode) {
  if (mode.kind == ModelMode::Kind::minimize) throw DomainError("minimize mode belongs to domination models");
  IpModel m(board, mode, mode.kind == ModelMode::Kind::max ? Objective::maximize_sum : Objective::none);
  const bool full = mode.kind == ModelMode::Kind::fixed &&
                    mode.k == static_cast<long long>(board.lines_per_axis());
  for (const auto& fam : attack_lines(board)) {
    const bool axis = fam.direction.weight() == 1;
    for (const auto& line : fam.lines) {
      LinearConstraint c;
      for (const auto& s : line) c.vars.push_back(linear_index(s, board));
      c.sense = (full && axis) ? Sense::eq : Sense::le;
      c.rhs = 1;
      c.tag = "base";
      m.add(std::move(c));
    }
  }
  detail::add_cardinality(m);
  return m;
}

// Corners of every axis-parallel hypercube of side h, plus its centre when h
// is even: all pairwise attacking.
inline IpModel& add_cube_cliques(IpModel& m) {
  const BoardSpec& b = m.board();
  const int n = b.n();
  const int d = b.d();
  for (std::size_t a = 0; a < b.size(); ++a) {
    const Square anchor = square_at(a, b);
    const int room = n - *std::max_element(anchor.coords.begin(), anchor.coords.end());
    for (int h = 1; h <= room; ++h) {
      LinearConstraint c;
      for (unsigned mask = 0; mask < (1u << d); ++mask) {
        Square s = anchor;
        for (int i = 0; i < d; ++i) {
          if ((mask >> (d - 1 - i)) & 1u) s[static_cast<std::size_t>(i)] += h;
        }
        c.vars.push_back(linear_index(s, b));
      }
      if (h % 2 == 0) {
        Square s = anchor;
        for (auto& x : s.coords) x += h / 2;
        c.vars.push_back(linear_index(s, b));
      }
      c.rhs = 1;
      c.tag = "cube";
      m.add(std::move(c));
    }
  }
  return m;
}

// A centre square and its 2d axis neighbours at distance h.
inline IpModel& add_star_cliques(IpModel& m) {
  const BoardSpec& b = m.board();
  const int n = b.n();
  for (std::size_t ci = 0; ci < b.size(); ++ci) {
    const Square centre = square_at(ci, b);
    int room = n;
    for (int x : centre.coords) room = std::min({room, x - 1, n - x});
    for (int h = 1; h <= room; ++h) {
      LinearConstraint c;
      c.vars.push_back(ci);
      for (std::size_t i = 0; i < centre.dim(); ++i) {
        for (int sign : {-1, 1}) {
          Square s = centre;
          s[i] += sign * h;
          c.vars.push_back(linear_index(s, b));
        }
      }
      c.rhs = 1;
      c.tag = "star";
      m.add(std::move(c));
    }
  }
  return m;
}

namespace detail {

// Rows over all squares whose coordinates at the chosen positions take the chosen values.
inline void add_fixed_coordinate_rows(IpModel& m, int free_dims, long long rhs, bool upper) {
  const BoardSpec& b = m.board();
  const int d = b.d();
  const int fixed = d - free_dims;
  std::vector<int> pick(static_cast<std::size_t>(d), 0);
  std::fill(pick.begin(), pick.begin() + fixed, 1);
  // Position sets in lexicographic order of their members.
  std::vector<std::vector<int>> position_sets;
  do {
    std::vector<int> pos;
    for (int i = 0; i < d; ++i) {
      if (pick[static_cast<std::size_t>(i)]) pos.push_back(i);
    }
    position_sets.push_back(pos);
  } while (std::prev_permutation(pick.begin(), pick.end()));
  const BoardSpec values(b.n(), fixed);
  for (const auto& pos : position_sets) {
    for (std::size_t v = 0; v < values.size(); ++v) {
      const Square val = square_at(v, values);
      LinearConstraint c;
      for (std::size_t i = 0; i < b.size(); ++i) {
        const Square s = square_at(i, b);
        bool match = true;
        for (std::size_t j = 0; j < pos.size(); ++j) {
          if (s[static_cast<std::size_t>(pos[j])] != val[j]) {
            match = false;
            break;
          }
        }
        if (match) c.vars.push_back(i);
      }
      c.rhs = rhs;
      c.tag = "layer";
      c.upper_rhs = upper;
      m.add(std::move(c));
    }
  }
}

}  // namespace detail

// Every layer (one coordinate fixed) holds at most |Qmax(n,d-1)| queens. Lower
// levels (sub-layers of dimension >= 3) are added when the table knows them.
inline IpModel& add_layer_inequalities(IpModel& m, const BoundTable& table) {
  const BoardSpec& b = m.board();
  if (b.d() < 2) throw DomainError("layer inequalities need d >= 2");
  auto top = table.find(b.n(), b.d() - 1);
  if (!top) {
    throw DomainError("bound table has no entry for (" + std::to_string(b.n()) + "," + std::to_string(b.d() - 1) + ")");
  }
  detail::add_fixed_coordinate_rows(m, b.d() - 1, top->value, top->provenance == Provenance::upper);
  for (int sub = b.d() - 2; sub >= 3; --sub) {
    if (auto e = table.find(b.n(), sub)) {
      detail::add_fixed_coordinate_rows(m, sub, e->value, e->provenance == Provenance::upper);
    }
  }
  return m;
}

// Every m-subcube holds at most |Qmax(m,d)| queens.
inline IpModel& add_subsolution_inequalities(IpModel& m, const BoundTable& table, const std::vector<int>& sizes) {
  const BoardSpec& b = m.board();
  for (int size : sizes) {
    if (size < 1 || size > b.n()) throw DomainError("subsolution size out of range");
    auto e = table.find(size, b.d());
    if (!e) {
      throw DomainError("bound table has no entry for (" + std::to_string(size) + "," + std::to_string(b.d()) + ")");
    }
    const BoardSpec anchors(b.n() - size + 1, b.d());
    const BoardSpec cube(size, b.d());
    for (std::size_t a = 0; a < anchors.size(); ++a) {
      const Square anchor = square_at(a, anchors);
      LinearConstraint c;
      for (std::size_t o = 0; o < cube.size(); ++o) {
        Square s = square_at(o, cube);
        for (std::size_t i = 0; i < s.dim(); ++i) s[i] += anchor[i] - 1;
        c.vars.push_back(linear_index(s, b));
      }
      c.rhs = e->value;
      c.tag = "subsol";
      c.upper_rhs = e->provenance == Provenance::upper;
      m.add(std::move(c));
    }
  }
  return m;
}

// Odd cycle O of the queen graph: at most (|O|-1)/2 of its squares are used.
inline IpModel& add_odd_cycle_inequalities(IpModel& m, const std::vector<std::vector<Square>>& cycles) {
  const BoardSpec& b = m.board();
  for (const auto& cyc : cycles) {
    if (cyc.size() % 2 == 0) throw DomainError("odd-cycle inequality needs an odd cycle");
    if (cyc.size() < 5) throw DomainError("cycles shorter than 5 are cliques; use clique cuts");
    std::set<Square> distinct(cyc.begin(), cyc.end());
    if (distinct.size() != cyc.size()) throw DomainError("cycle repeats a square");
    LinearConstraint c;
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      if (!attacks(cyc[i], cyc[(i + 1) % cyc.size()], b)) {
        throw DomainError("not a cycle: " + to_string(cyc[i]) + " does not attack " +
                          to_string(cyc[(i + 1) % cyc.size()]));
      }
      c.vars.push_back(linear_index(cyc[i], b));
    }
    c.rhs = static_cast<long long>((cyc.size() - 1) / 2);
    c.tag = "oddcycle";
    m.add(std::move(c));
  }
  return m;
}

// Chordless 5-cycles, each reported once (smallest square first, then the
// smaller of its two neighbours). Stops after limit cycles.
inline std::vector<std::vector<Square>> find_chordless_5_cycles(const BoardSpec& b, std::size_t limit) {
  std::vector<std::vector<Square>> out;
  const std::size_t n = b.size();
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  std::vector<std::vector<std::size_t>> nb(n);
  for (const auto& [i, j] : queen_graph(b).edges) {
    adj[i][j] = adj[j][i] = true;
    nb[i].push_back(j);
    nb[j].push_back(i);
  }
  for (std::size_t v0 = 0; v0 < n && out.size() < limit; ++v0) {
    for (auto v1 : nb[v0]) {
      if (v1 <= v0) continue;
      for (auto v2 : nb[v1]) {
        if (v2 <= v0 || adj[v2][v0]) continue;
        for (auto v3 : nb[v2]) {
          if (v3 <= v0 || v3 == v1 || adj[v3][v0] || adj[v3][v1]) continue;
          for (auto v4 : nb[v3]) {
            if (v4 <= v1 || !adj[v4][v0] || adj[v4][v1] || adj[v4][v2]) continue;
            out.push_back({square_at(v0, b), square_at(v1, b), square_at(v2, b), square_at(v3, b), square_at(v4, b)});
            if (out.size() >= limit) return out;
          }
        }
      }
    }
  }
  return out;
}

// Domination: every square is attacked by (or holds) a queen.
inline IpModel build_domination(const BoardSpec& board, ModelMode mode = ModelMode::minimize()) {
  if (mode.kind != ModelMode::Kind::minimize && mode.kind != ModelMode::Kind::fixed) {
    throw DomainError("domination models use minimize or fixed:K mode");
  }
  IpModel m(board, mode, mode.kind == ModelMode::Kind::minimize ? Objective::minimize_sum : Objective::none);
  for (std::size_t i = 0; i < board.size(); ++i) {
    LinearConstraint c;
    for (const auto& s : attacked_squares(square_at(i, board), board)) c.vars.push_back(linear_index(s, board));
    c.sense = Sense::ge;
    c.rhs = 1;
    c.tag = "cover";
    m.add(std::move(c));
  }
  detail::add_cardinality(m);
  return m;
}

struct Evaluation {
  bool feasible = true;
  std::vector<std::string> violated;  // constraint names, model order
};

inline Evaluation evaluate(const IpModel& m, const std::vector<double>& x, double tol = 1e-9) {
  if (x.size() != m.variable_count()) throw DomainError("assignment size does not match the model");
  Evaluation e;
  for (const auto& c : m.constraints()) {
    double lhs = 0;
    for (auto v : c.vars) lhs += x[v];
    const double r = static_cast<double>(c.rhs);
    const bool ok = c.sense == Sense::le ? lhs <= r + tol : c.sense == Sense::ge ? lhs >= r - tol : std::abs(lhs - r) <= tol;
    if (!ok) e.violated.push_back(c.name);
  }
  e.feasible = e.violated.empty();
  return e;
}

inline Evaluation evaluate(const IpModel& m, const Placement& p) {
  if (!(p.board() == m.board())) throw DomainError("placement is on a different board");
  std::vector<double> x(m.variable_count(), 0.0);
  for (auto i : p.indices()) x[i] = 1.0;
  return evaluate(m, x);
}

// Pairwise attack audit of the clique families; returns offending row names.
inline std::vector<std::string> audit_cliques(const IpModel& m) {
  std::vector<std::string> bad;
  for (const auto& c : m.constraints()) {
    if (c.tag != "cube" && c.tag != "star") continue;
    bool ok = true;
    for (std::size_t i = 0; i < c.vars.size() && ok; ++i) {
      for (std::size_t j = i + 1; j < c.vars.size() && ok; ++j) {
        ok = attacks(square_at(c.vars[i], m.board()), square_at(c.vars[j], m.board()), m.board());
      }
    }
    if (!ok) bad.push_back(c.name);
  }
  return bad;
}

// LP bound from a set of pairwise disjoint "<=" rows covering every variable:
// the sum of their right-hand sides. Rows are taken greedily in model order.
inline std::optional<long long> partition_bound(const IpModel& m) {
  std::vector<bool> used(m.variable_count(), false);
  std::size_t covered = 0;
  long long total = 0;
  for (const auto& c : m.constraints()) {
    if (c.sense != Sense::le) continue;
    if (std::any_of(c.vars.begin(), c.vars.end(), [&](std::size_t v) { return used[v]; })) continue;
    for (auto v : c.vars) used[v] = true;
    covered += c.vars.size();
    total += c.rhs;
    if (covered == m.variable_count()) return total;
  }
  return std::nullopt;
}

}  // namespace nqd
