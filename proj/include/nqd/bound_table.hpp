#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

#include "nqd/error.hpp"

namespace nqd {

enum class Provenance { exact, upper };

inline const char* to_string(Provenance p) { return p == Provenance::exact ? "exact" : "upper"; }

struct BoundEntry {
  long long value = 0;
  Provenance provenance = Provenance::exact;
};

// Known |Qmax(n,d)| values, each either exact or an upper bound.
// JSON form: {"exact": {"<d>": {"<n>": v}}, "upper": {"<d>": {"<n>": v}}}.
class BoundTable {
 public:
  BoundTable() = default;

  void set_exact(int n, int d, long long v) { entries_[{n, d}] = {v, Provenance::exact}; }

  // Keeps the tighter of two upper bounds; never overrides an exact value.
  void set_upper(int n, int d, long long v) {
    auto it = entries_.find({n, d});
    if (it == entries_.end()) {
      entries_[{n, d}] = {v, Provenance::upper};
    } else if (it->second.provenance == Provenance::upper && v < it->second.value) {
      it->second.value = v;
    }
  }

  std::optional<BoundEntry> find(int n, int d) const {
    auto it = entries_.find({n, d});
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }

  std::optional<long long> exact(int n, int d) const {
    auto e = find(n, d);
    if (e && e->provenance == Provenance::exact) return e->value;
    return std::nullopt;
  }

  void merge(const BoundTable& other) {
    for (const auto& [key, e] : other.entries_) {
      if (e.provenance == Provenance::exact) {
        set_exact(key.first, key.second, e.value);
      } else {
        set_upper(key.first, key.second, e.value);
      }
    }
  }

  const std::map<std::pair<int, int>, BoundEntry>& entries() const noexcept { return entries_; }
  bool empty() const noexcept { return entries_.empty(); }

  nlohmann::json to_json() const {
    nlohmann::json j = {{"exact", nlohmann::json::object()}, {"upper", nlohmann::json::object()}};
    for (const auto& [key, e] : entries_) {
      j[to_string(e.provenance)][std::to_string(key.second)][std::to_string(key.first)] = e.value;
    }
    return j;
  }

  static BoundTable from_json(const nlohmann::json& j) {
    BoundTable t;
    if (!j.is_object()) throw ParseError("bound table must be a JSON object");
    for (const auto& [kind, rows] : j.items()) {
      if (kind != "exact" && kind != "upper") throw ParseError("unknown bound table section '" + kind + "'");
      if (!rows.is_object()) throw ParseError("bound table section '" + kind + "' must be an object");
      for (const auto& [dkey, row] : rows.items()) {
        for (const auto& [nkey, v] : row.items()) {
          int n = 0, d = 0;
          try {
            d = std::stoi(dkey);
            n = std::stoi(nkey);
          } catch (const std::exception&) {
            throw ParseError("bad bound table key d=" + dkey + " n=" + nkey);
          }
          if (!v.is_number_integer() || n < 1 || d < 1) {
            throw ParseError("bad bound table entry d=" + dkey + " n=" + nkey);
          }
          if (kind == "exact") {
            t.set_exact(n, d, v.get<long long>());
          } else {
            t.set_upper(n, d, v.get<long long>());
          }
        }
      }
    }
    return t;
  }

  static BoundTable load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open bound table " + path);
    try {
      return from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("bound table " + path + ": " + e.what());
    }
  }

  // The table shipped with the library (same content as data/qmax_table.json).
  static const BoundTable& builtin() {
    static const BoundTable t = [] {
      BoundTable b;
      const std::map<int, std::map<int, long long>> rows = {
          {1, {{1, 1}, {2, 1}, {3, 1}, {4, 1}, {5, 1}, {6, 1}, {7, 1}, {8, 1}, {9, 1}, {10, 1}, {11, 1}, {12, 1}, {13, 1}}},
          {2, {{1, 1}, {2, 1}, {3, 2}, {4, 4}, {5, 5}, {6, 6}, {7, 7}, {8, 8}, {9, 9}, {10, 10}, {11, 11}, {12, 12}, {13, 13}}},
          {3, {{1, 1}, {2, 1}, {3, 4}, {4, 7}, {5, 13}, {6, 21}, {7, 32}, {8, 48}, {9, 67}, {10, 91}, {11, 121}, {13, 169}}},
          {4, {{1, 1}, {2, 1}, {3, 6}, {4, 16}, {5, 38}, {6, 80}, {7, 145}}},
          {5, {{1, 1}, {2, 1}, {3, 11}, {4, 32}}},
          {6, {{1, 1}, {2, 1}, {3, 19}, {4, 64}}},
          {7, {{1, 1}, {2, 1}, {3, 32}, {4, 128}}},
          {8, {{1, 1}, {2, 1}, {3, 52}}},
      };
      for (const auto& [d, row] : rows) {
        for (const auto& [n, v] : row) b.set_exact(n, d, v);
      }
      return b;
    }();
    return t;
  }

 private:
  std::map<std::pair<int, int>, BoundEntry> entries_;  // key (n, d)
};

}  // namespace nqd
