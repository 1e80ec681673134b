#pragma once

// {"n": 4, "d": 2, "queens": [[1,2],[2,4],[3,1],[4,3]]}, 1-based, sorted.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nqd/board.hpp"

namespace nqd {

inline nlohmann::json to_json(const Placement& p) {
  nlohmann::json qs = nlohmann::json::array();
  for (const auto& q : p.queens()) qs.push_back(q.coords);
  return {{"n", p.board().n()}, {"d", p.board().d()}, {"queens", qs}};
}

inline Placement placement_from_json(const nlohmann::json& j) {
  try {
    if (!j.is_object()) throw ParseError("placement must be a JSON object");
    for (const char* key : {"n", "d", "queens"}) {
      if (!j.contains(key)) throw ParseError(std::string("placement lacks '") + key + "'");
    }
    if (!j["n"].is_number_integer() || !j["d"].is_number_integer()) throw ParseError("placement n and d must be integers");
    if (!j["queens"].is_array()) throw ParseError("placement 'queens' must be an array");
    const BoardSpec board(j["n"].get<int>(), j["d"].get<int>());
    std::vector<Square> qs;
    for (const auto& q : j["queens"]) {
      if (!q.is_array()) throw ParseError("each queen must be a coordinate array");
      std::vector<int> c;
      for (const auto& x : q) {
        if (!x.is_number_integer()) throw ParseError("coordinates must be integers");
        c.push_back(x.get<int>());
      }
      qs.emplace_back(std::move(c));
    }
    return Placement(board, std::move(qs));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("placement JSON: ") + e.what());
  } catch (const DomainError& e) {
    throw ParseError(std::string("placement JSON: ") + e.what());
  }
}

inline Placement parse_placement(const std::string& text) {
  try {
    return placement_from_json(nlohmann::json::parse(text));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("placement JSON: ") + e.what());
  }
}

inline Placement load_placement(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_placement(ss.str());
}

}  // namespace nqd
