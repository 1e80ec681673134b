#pragma once

// CPLEX-style LP text for IpModel, plus MIP-start files.
//
//   \ board 4 2
//   \ mode max
//   Maximize
//    obj: x_1_1 + x_1_2 + ...
//   Subject To
//    base_1: x_1_1 + x_1_2 + x_1_3 + x_1_4 <= 1
//   Binaries
//    x_1_1 x_1_2 ...
//   End
//
// Long rows wrap before a '+'; continuation lines are indented.

#include <cctype>
#include <cstddef>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "nqd/geometry.hpp"
#include "nqd/ipmodel.hpp"

namespace nqd {

namespace detail {

inline constexpr std::size_t kLpWidth = 100;

// Returns the column reached after the last term.
inline std::size_t write_sum(std::ostringstream& os, const IpModel& m, const std::vector<std::size_t>& vars,
                             std::size_t used) {
  for (std::size_t i = 0; i < vars.size(); ++i) {
    std::string term = (i ? "+ " : "") + m.variable_name(vars[i]);
    if (used + term.size() + 1 > kLpWidth) {
      os << "\n   ";
      used = 3;
    } else {
      os << ' ';
      ++used;
    }
    os << term;
    used += term.size();
  }
  return used;
}

inline const char* objective_word(Objective o) {
  switch (o) {
    case Objective::maximize_sum:
      return "max-sum";
    case Objective::minimize_sum:
      return "min-sum";
    case Objective::none:
      return "none";
  }
  return "?";
}

}  // namespace detail

inline std::string export_lp(const IpModel& m) {
  std::ostringstream os;
  os << "\\ board " << m.board().n() << ' ' << m.board().d() << '\n';
  os << "\\ mode " << to_string(m.mode()) << '\n';
  os << "\\ objective " << detail::objective_word(m.objective()) << '\n';
  os << (m.objective() == Objective::minimize_sum ? "Minimize" : "Maximize") << '\n';
  os << " obj:";
  if (m.objective() != Objective::none) {
    std::vector<std::size_t> all(m.variable_count());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    detail::write_sum(os, m, all, 5);
  }
  os << "\nSubject To\n";
  for (const auto& c : m.constraints()) {
    os << ' ' << c.name << ':';
    const std::size_t used = detail::write_sum(os, m, c.vars, c.name.size() + 2);
    const std::string tail = std::string(to_string(c.sense)) + ' ' + std::to_string(c.rhs);
    os << (used + tail.size() + 1 > detail::kLpWidth ? "\n   " : " ") << tail << '\n';
  }
  os << "Binaries\n";
  std::size_t used = 0;
  for (std::size_t i = 0; i < m.variable_count(); ++i) {
    const std::string v = m.variable_name(i);
    if (used && used + v.size() + 1 > detail::kLpWidth) {
      os << '\n';
      used = 0;
    }
    os << ' ' << v;
    used += v.size() + 1;
  }
  os << "\nEnd\n";
  return os.str();
}

inline IpModel parse_lp(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int n = 0, d = 0;
  std::string mode_s, objective_s;
  enum class Section { header, objective, constraints, binaries, done } sec = Section::header;
  std::vector<std::string> tokens;  // constraint section tokens
  std::string sense_word;
  std::size_t binaries = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') throw ParseError("LP text must use LF line endings");
    if (line.rfind("\\", 0) == 0) {
      std::istringstream hs(line.substr(1));
      std::string key;
      hs >> key;
      if (key == "board") {
        hs >> n >> d;
      } else if (key == "mode") {
        hs >> mode_s;
      } else if (key == "objective") {
        hs >> objective_s;
      }
      continue;
    }
    std::string lower;
    for (char c : line) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    const auto first = lower.find_first_not_of(' ');
    const std::string word = first == std::string::npos ? "" : lower.substr(first);
    if (word == "maximize" || word == "minimize") {
      sense_word = word;
      sec = Section::objective;
      continue;
    }
    if (word == "subject to") {
      sec = Section::constraints;
      continue;
    }
    if (word == "binaries") {
      sec = Section::binaries;
      continue;
    }
    if (word == "end") {
      sec = Section::done;
      continue;
    }
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
      if (sec == Section::constraints) {
        tokens.push_back(tok);
      } else if (sec == Section::binaries) {
        ++binaries;
      } else if (sec == Section::done) {
        throw ParseError("text after End");
      }
    }
  }
  if (sec != Section::done) throw ParseError("LP text has no End line");
  if (n < 1 || d < 1) throw ParseError("LP text lacks a '\\ board n d' header");
  const BoardSpec board(n, d);
  Objective obj = Objective::none;
  if (objective_s == "max-sum") {
    obj = Objective::maximize_sum;
  } else if (objective_s == "min-sum") {
    obj = Objective::minimize_sum;
  } else if (objective_s != "none") {
    throw ParseError("LP text lacks a '\\ objective' header");
  }
  if ((obj == Objective::minimize_sum) != (sense_word == "minimize")) throw ParseError("objective sense mismatch");
  if (binaries != board.size()) throw ParseError("Binaries section does not list every square");
  IpModel m(board, parse_mode(mode_s), obj);

  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < board.size(); ++i) index.emplace(m.variable_name(i), i);

  std::size_t i = 0;
  while (i < tokens.size()) {
    const std::string& name_tok = tokens[i];
    if (name_tok.size() < 2 || name_tok.back() != ':') throw ParseError("expected a row name, got '" + name_tok + "'");
    const std::string name = name_tok.substr(0, name_tok.size() - 1);
    ++i;
    LinearConstraint c;
    bool expect_term = true;
    while (true) {
      if (i >= tokens.size()) throw ParseError("row " + name + " is truncated");
      const std::string& t = tokens[i++];
      if (t == "<=" || t == ">=" || t == "=") {
        c.sense = t == "<=" ? Sense::le : t == ">=" ? Sense::ge : Sense::eq;
        if (i >= tokens.size()) throw ParseError("row " + name + " has no right-hand side");
        try {
          std::size_t used = 0;
          c.rhs = std::stoll(tokens[i], &used);
          if (used != tokens[i].size()) throw ParseError("");
        } catch (const std::exception&) {
          throw ParseError("row " + name + " has a bad right-hand side '" + tokens[i] + "'");
        }
        ++i;
        break;
      }
      if (t == "+") {
        if (expect_term) throw ParseError("row " + name + ": misplaced '+'");
        expect_term = true;
        continue;
      }
      if (!expect_term) throw ParseError("row " + name + ": missing '+' before " + t);
      auto it = index.find(t);
      if (it == index.end()) throw ParseError("row " + name + ": unknown variable " + t);
      c.vars.push_back(it->second);
      expect_term = false;
    }
    const auto us = name.rfind('_');
    if (us == std::string::npos || us == 0) throw ParseError("row name " + name + " lacks an ordinal");
    std::string prefix = name.substr(0, us);
    if (prefix.size() > 3 && prefix.compare(prefix.size() - 3, 3, "_ub") == 0) {
      c.upper_rhs = true;
      prefix.resize(prefix.size() - 3);
    }
    c.tag = prefix;
    try {
      if (m.add(std::move(c)).name != name) throw ParseError("row " + name + " is out of order");
    } catch (const DomainError& e) {
      throw ParseError("row " + name + ": " + e.what());
    }
  }
  return m;
}

// MIP start: every variable with its 0/1 value.
inline std::string export_warmstart(const Placement& p) {
  if (!is_valid(p)) throw InvalidPlacement("warmstart placement has attacking queens");
  std::vector<char> on(p.board().size(), 0);
  for (auto i : p.indices()) on[i] = 1;
  std::ostringstream os;
  os << "# MIP start\n";
  for (std::size_t i = 0; i < on.size(); ++i) {
    os << variable_name(square_at(i, p.board())) << ' ' << (on[i] ? 1 : 0) << '\n';
  }
  return os.str();
}

}  // namespace nqd
