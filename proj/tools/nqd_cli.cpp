// nqd: command-line front end for the n-queens-in-d-dimensions library.
//
// JSON goes to stdout (or --out), a one-line summary to stderr.
// Exit codes: 0 success, 1 usage or runtime error, 2 negative verdict
// (infeasible decision, refuted model, invalid certificate).

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "nqd/nqd.hpp"

using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kNegative = 2;

struct Common {
  int n = 0;
  int d = 2;
  long long k = -1;
  double time_limit = 0;
  std::uint64_t node_limit = 0;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  bool modular = false;
  std::string out;
  std::string table_path;
};

Common g;

nqd::SearchOptions search_opts() {
  nqd::SearchOptions o;
  o.time_limit = g.time_limit;
  o.node_limit = g.node_limit;
  o.threads = g.threads;
  o.modular = g.modular;
  return o;
}

nqd::BoundTable table() {
  if (g.table_path.empty()) return nqd::BoundTable::builtin();
  return nqd::BoundTable::load(g.table_path);
}

void write_text(const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out, std::ios::binary | std::ios::trunc);
  if (!f) throw nqd::Error("cannot write " + g.out);
  f << text;
}

void emit(const json& j) { write_text(j.dump(2) + "\n"); }

std::string count_str(const nqd::BigCount& c) { return c.str(); }

json result_json(const nqd::SolveResult& r) {
  json j = {{"status", nqd::to_string(r.status)},
            {"best_size", r.best_size},
            {"count", count_str(r.count)},
            {"nodes", r.nodes},
            {"seconds", r.seconds}};
  j["witness"] = r.witness ? nqd::to_json(*r.witness) : json(nullptr);
  return j;
}

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw nqd::ParseError("bad integer list '" + s + "'");
    }
  }
  return out;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(tok);
  }
  return out;
}

nqd::BoardSpec board() { return nqd::BoardSpec(g.n, g.d); }

std::size_t need_k(const char* what) {
  if (g.k < 0) throw CLI::ValidationError(std::string(what) + " needs -k");
  return static_cast<std::size_t>(g.k);
}

// ---- subcommands ----

struct ConstructArgs {
  std::string kind = "regular";
  std::string coeffs;
  int shift = 0;
  bool list = false;
  bool all = false;
};

int run_construct(const ConstructArgs& a) {
  if (a.list) {
    auto cc = nqd::valid_coefficients(g.n, g.d);
    json classes = json::array();
    for (const auto& c : cc.classes) classes.push_back(c);
    emit({{"n", g.n}, {"d", g.d}, {"admissible", cc.all}, {"classes", classes}, {"class_count", cc.class_count()}});
    std::cerr << cc.all.size() << " admissible coefficient vectors in " << cc.class_count() << " classes\n";
    return kOk;
  }
  if (a.all) {
    auto sols = nqd::enumerate_regular(g.n, g.d);
    json arr = json::array();
    for (const auto& p : sols) arr.push_back(nqd::to_json(p));
    emit({{"n", g.n}, {"d", g.d}, {"count", sols.size()}, {"solutions", arr}});
    std::cerr << sols.size() << " regular solutions\n";
    return kOk;
  }
  nqd::Placement p(board());
  if (a.kind == "hoffman") {
    if (g.d != 2) throw CLI::ValidationError("--kind hoffman is two-dimensional");
    p = nqd::hoffman_2d(g.n);
  } else if (a.kind == "regular") {
    std::vector<int> c = a.coeffs.empty() ? std::vector<int>{} : parse_ints(a.coeffs);
    if (c.empty()) {
      auto cc = nqd::valid_coefficients(g.n, g.d);
      if (cc.all.empty()) {
        std::cerr << "no admissible coefficients for n=" << g.n << " d=" << g.d << "\n";
        return kNegative;
      }
      c = cc.all.front();
    }
    if (auto w = nqd::admissibility_violation(g.n, c)) {
      std::cerr << "coefficients not admissible: " << nqd::to_string(*w) << "\n";
      return kNegative;
    }
    p = nqd::regular_solution({g.n, g.d, c, a.shift});
  } else {
    throw CLI::ValidationError("--kind must be hoffman or regular");
  }
  emit(nqd::to_json(p));
  std::cerr << a.kind << " placement with " << p.size() << " queens\n";
  return kOk;
}

int run_verify(const std::string& in) {
  auto p = nqd::load_placement(in);
  auto v = nqd::verify_certificate(p, g.modular);
  json conflicts = json::array();
  for (const auto& [a, b] : v.conflicts) conflicts.push_back({a.coords, b.coords});
  emit({{"valid", v.valid}, {"size", p.size()}, {"conflicts", conflicts}});
  std::cerr << (v.valid ? "valid" : "invalid") << ", " << p.size() << " queens, " << v.conflicts.size()
            << " conflicting pairs\n";
  return v.valid ? kOk : kNegative;
}

int run_solve(bool no_symmetry) {
  auto o = search_opts();
  o.symmetry_reduction = !no_symmetry && !g.modular;
  nqd::SolveResult r;
  if (g.k >= 0) {
    r = nqd::decide(board(), static_cast<std::size_t>(g.k), o);
  } else {
    r = nqd::max_partial(board(), o);
  }
  emit(result_json(r));
  std::cerr << nqd::to_string(r.status) << " best_size=" << r.best_size << " nodes=" << r.nodes << "\n";
  return r.status == nqd::SolveStatus::infeasible ? kNegative : kOk;
}

int run_count() {
  auto r = nqd::count_solutions(board(), need_k("count"), search_opts());
  emit(result_json(r));
  std::cerr << nqd::to_string(r.status) << " count=" << r.count << "\n";
  return kOk;
}

int run_enumerate(long long limit) {
  auto o = search_opts();
  std::ostringstream buf;
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!g.out.empty()) {
    file.open(g.out, std::ios::binary | std::ios::trunc);
    if (!file) throw nqd::Error("cannot write " + g.out);
    os = &file;
  }
  long long seen = 0;
  // Line-delimited Placement JSON, lexicographic order.
  auto r = nqd::enumerate_solutions(
      board(), need_k("enumerate"),
      [&](const nqd::Placement& p) {
        if (limit >= 0 && seen >= limit) return;
        ++seen;
        *os << nqd::to_json(p).dump() << '\n';
      },
      o);
  std::cerr << nqd::to_string(r.status) << " " << r.count << " solutions, " << seen << " written\n";
  return kOk;
}

int run_complete(const std::string& in) {
  auto p = nqd::load_placement(in);
  std::size_t k = 0;
  if (g.k >= 0) {
    k = static_cast<std::size_t>(g.k);
  } else if (auto e = table().exact(p.board().n(), p.board().d())) {
    k = static_cast<std::size_t>(*e);
  } else {
    auto o = search_opts();
    o.symmetry_reduction = true;
    k = nqd::max_partial(p.board(), o).best_size;
  }
  auto r = nqd::complete(p.board(), p, k, search_opts());
  auto j = result_json(r);
  j["target"] = k;
  emit(j);
  std::cerr << nqd::to_string(r.status) << " completing " << p.size() << " queens to " << k << "\n";
  return r.status == nqd::SolveStatus::infeasible ? kNegative : kOk;
}

int run_qc() {
  auto r = nqd::completion_threshold(board(), search_opts());
  emit({{"status", nqd::to_string(r.status)},
        {"qc", r.value},
        {"qmax", r.qmax},
        {"checked", r.checked},
        {"blocker", r.blocker ? nqd::to_json(*r.blocker) : json(nullptr)},
        {"seconds", r.seconds}});
  std::cerr << nqd::to_string(r.status) << " qc=" << r.value << " (|Qmax|=" << r.qmax << ", " << r.checked
            << " placements checked)\n";
  return kOk;
}

int run_dominate() {
  auto r = nqd::min_domination(board(), search_opts());
  emit(result_json(r));
  std::cerr << nqd::to_string(r.status) << " domination number " << r.best_size << "\n";
  return kOk;
}

int run_bounds(int from, int to, const std::string& emit_as, int window) {
  if (from < 1) from = g.n;
  if (to < 1) to = from;
  nqd::BoundsOptions bo;
  bo.source_window = window;
  auto recs = nqd::bounds_report(from, to, g.d, table(), bo);
  if (emit_as == "csv") {
    write_text(nqd::bounds_csv(recs));
  } else {
    json arr = json::array();
    for (const auto& r : recs) {
      arr.push_back({{"n", r.n},
                     {"d", r.d},
                     {"lower", r.lower},
                     {"upper", r.upper},
                     {"lower_method", r.lower_method},
                     {"upper_method", r.upper_method},
                     {"exact", r.exact()}});
    }
    emit(arr);
  }
  std::cerr << recs.size() << " bound records for d=" << g.d << "\n";
  return kOk;
}

struct ModelArgs {
  std::string mode = "max";
  std::string cuts;
  std::string subsol_sizes;
  std::size_t odd_cycles = 100;
  std::string warmstart;
  bool domination = false;
  bool check = false;
};

int run_model(const ModelArgs& a) {
  const auto mode = nqd::parse_mode(a.mode);
  nqd::IpModel m = a.domination ? nqd::build_domination(board(), mode) : nqd::build_base(board(), mode);
  for (const auto& cut : split(a.cuts)) {
    if (a.domination) throw CLI::ValidationError("cuts apply to packing models only");
    if (cut == "cube") {
      nqd::add_cube_cliques(m);
    } else if (cut == "star") {
      nqd::add_star_cliques(m);
    } else if (cut == "layer") {
      nqd::add_layer_inequalities(m, table());
    } else if (cut == "subsol") {
      auto sizes = parse_ints(a.subsol_sizes);
      if (sizes.empty()) {
        for (int s = 2; s < g.n; ++s) {
          if (table().find(s, g.d)) sizes.push_back(s);
        }
      }
      nqd::add_subsolution_inequalities(m, table(), sizes);
    } else if (cut == "oddcycle") {
      nqd::add_odd_cycle_inequalities(m, nqd::find_chordless_5_cycles(board(), a.odd_cycles));
    } else {
      throw CLI::ValidationError("unknown cut family '" + cut + "'");
    }
  }
  const std::string text = nqd::export_lp(m);
  write_text(text);
  if (!a.warmstart.empty()) {
    auto o = search_opts();
    o.symmetry_reduction = true;
    auto r = nqd::max_partial(board(), o);
    if (!r.witness) throw nqd::Error("no warmstart placement found");
    std::ofstream f(a.warmstart, std::ios::binary | std::ios::trunc);
    if (!f) throw nqd::Error("cannot write " + a.warmstart);
    f << nqd::export_warmstart(*r.witness);
  }
  std::cerr << m.constraints().size() << " rows, " << m.variable_count() << " binaries\n";
  if (!a.check) return kOk;

  // Re-read the text and settle it with the internal solver.
  const auto back = nqd::parse_lp(text);
  if (!(back == m)) throw nqd::Error("LP round trip changed the model");
  json j = {{"rows", back.constraints().size()}, {"roundtrip", true}};
  if (auto pb = nqd::partition_bound(back)) j["partition_bound"] = *pb;
  int code = kOk;
  if (mode.kind == nqd::ModelMode::Kind::refute || mode.kind == nqd::ModelMode::Kind::fixed) {
    auto r = nqd::decide(board(), static_cast<std::size_t>(mode.k), search_opts());
    j["decide"] = result_json(r);
    if (r.status == nqd::SolveStatus::infeasible) code = kNegative;
    std::cerr << "decide(" << mode.k << "): " << nqd::to_string(r.status) << "\n";
  }
  std::cerr << j.dump() << "\n";
  return code;
}

int run_density(bool origin, const std::string& emit_as) {
  auto m = nqd::density_map(board(), need_k("density"), search_opts(), origin);
  if (emit_as == "csv") {
    write_text(nqd::density_csv(m));
  } else {
    emit({{"n", g.n},
          {"d", g.d},
          {"k", m.k},
          {"complete", m.complete},
          {"total_solutions", count_str(m.total_solutions)},
          {"counts", m.counts}});
  }
  const auto zeros = std::count(m.counts.begin(), m.counts.end(), 0u);
  std::cerr << m.total_solutions << " solutions, " << zeros << " never-occupied squares\n";
  return kOk;
}

int run_regularity(const std::string& in) {
  auto p = nqd::load_placement(in);
  auto r = nqd::regularity_check(p);
  emit({{"regular", r.regular}, {"start", r.start.coords}, {"movements", r.movements}});
  std::cerr << (r.regular ? "regular" : "not regular") << "\n";
  return kOk;
}

int run_color(int count) {
  if (count < 0) count = g.n;
  auto r = nqd::find_superimposable(g.n, count, search_opts());
  json j = {{"n", g.n}, {"count", count}, {"found", r.has_value()}};
  json sols = json::array();
  if (r) {
    for (const auto& p : *r) sols.push_back(nqd::to_json(p));
  }
  j["solutions"] = sols;
  emit(j);
  std::cerr << (r ? "found " : "no ") << count << " superimposable solutions for n=" << g.n << "\n";
  return r ? kOk : kNegative;
}

int run_tables(const nqd::TablesScope& scope) {
  auto cells = nqd::tables_report(scope, table(), search_opts());
  json arr = json::array();
  std::size_t mismatches = 0;
  for (const auto& c : cells) {
    json j = {{"n", c.n}, {"d", c.d}, {"value", c.value}, {"provenance", c.provenance}, {"source", c.source}};
    j["reference"] = c.reference ? json(*c.reference) : json(nullptr);
    j["matches"] = c.matches();
    if (!c.matches()) ++mismatches;
    arr.push_back(j);
  }
  emit(arr);
  std::cerr << cells.size() << " cells, " << mismatches << " differ from the reference table\n";
  return kOk;
}

void board_flags(CLI::App* s, bool with_k) {
  s->add_option("-n", g.n, "board side")->required()->check(CLI::PositiveNumber);
  s->add_option("-d", g.d, "dimension")->check(CLI::PositiveNumber);
  if (with_k) s->add_option("-k", g.k, "number of queens")->check(CLI::NonNegativeNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"n-queens on d-dimensional boards"};
  app.set_config("--config", "", "read flags from a TOML/INI file");
  app.require_subcommand(1);
  app.add_option("--threads", g.threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--time-limit", g.time_limit, "seconds, 0 = none")->check(CLI::NonNegativeNumber);
  app.add_option("--node-limit", g.node_limit, "search nodes, 0 = none");
  app.add_option("--out", g.out, "write the result here instead of stdout");
  app.add_option("--table", g.table_path, "JSON table of known |Qmax| values");
  app.add_flag("--modular", g.modular, "wrap attacks around the board");

  ConstructArgs ca;
  auto* construct = app.add_subcommand("construct", "Hoffman or regular placement");
  construct->add_option("-n", g.n, "board side")->required()->check(CLI::PositiveNumber);
  construct->add_option("-d", g.d, "dimension")->check(CLI::PositiveNumber);
  construct->add_option("--kind", ca.kind, "hoffman|regular");
  construct->add_option("--coeffs", ca.coeffs, "comma-separated coefficients, d-1 of them");
  construct->add_option("--shift", ca.shift, "constant term");
  construct->add_flag("--list-coeffs", ca.list, "list admissible coefficients and their classes");
  construct->add_flag("--all", ca.all, "every regular solution, deduplicated");

  std::string in;
  auto* verify = app.add_subcommand("verify", "check a placement file");
  verify->add_option("--in,input", in, "placement JSON")->required();

  bool no_sym = false;
  auto* solve = app.add_subcommand("solve", "maximum placement, or decide a size with -k");
  board_flags(solve, true);
  solve->add_flag("--no-symmetry", no_sym, "disable board-symmetry pruning");

  auto* count = app.add_subcommand("count", "count placements of size k");
  board_flags(count, true);

  long long limit = -1;
  auto* enumerate = app.add_subcommand("enumerate", "stream placements of size k as JSON lines");
  board_flags(enumerate, true);
  enumerate->add_option("--limit", limit, "stop writing after this many");

  auto* completion = app.add_subcommand("complete", "extend a partial placement");
  completion->add_option("--in,input", in, "placement JSON")->required();
  completion->add_option("-k", g.k, "target size (default |Qmax|)")->check(CLI::NonNegativeNumber);

  auto* qc = app.add_subcommand("qc", "completion threshold");
  board_flags(qc, false);

  auto* dominate = app.add_subcommand("dominate", "minimum dominating queen set");
  board_flags(dominate, false);

  int from = 0, to = 0, window = 4;
  std::string emit_as = "json";
  auto* bounds = app.add_subcommand("bounds", "lower and upper bounds on |Qmax|");
  bounds->add_option("--from", from, "first n");
  bounds->add_option("--to", to, "last n");
  bounds->add_option("-d", g.d, "dimension")->check(CLI::PositiveNumber);
  bounds->add_option("--window", window, "crop from regular boards up to this much larger");
  bounds->add_option("--emit", emit_as, "json|csv")->check(CLI::IsMember({"json", "csv"}));

  ModelArgs ma;
  auto* model = app.add_subcommand("model", "export an integer program as LP text");
  board_flags(model, false);
  model->add_option("--mode", ma.mode, "max|fixed:K|refute:K|minimize");
  model->add_option("--cuts", ma.cuts, "cube,star,layer,subsol,oddcycle");
  model->add_option("--subsol-sizes", ma.subsol_sizes, "subcube sides for subsol cuts");
  model->add_option("--odd-cycles", ma.odd_cycles, "how many 5-cycles to add");
  model->add_option("--warmstart", ma.warmstart, "write a MIP start here");
  model->add_flag("--domination", ma.domination, "domination model instead of packing");
  model->add_flag("--check", ma.check, "re-read the LP and decide it internally");

  bool origin = false;
  auto* density = app.add_subcommand("density", "per-square solution counts");
  board_flags(density, true);
  density->add_flag("--origin", origin, "only placements through (1,...,1)");
  density->add_option("--emit", emit_as, "json|csv")->check(CLI::IsMember({"json", "csv"}));

  auto* regularity = app.add_subcommand("regularity", "is a placement swept out by fixed movements");
  regularity->add_option("--in,input", in, "placement JSON")->required();

  int colors = -1;
  auto* color = app.add_subcommand("color", "pairwise disjoint (n,2) solutions");
  color->add_option("-n", g.n, "board side")->required()->check(CLI::PositiveNumber);
  color->add_option("--count", colors, "how many (default n)");

  nqd::TablesScope scope;
  auto* tables = app.add_subcommand("tables", "recompute |Qmax| cells and diff against the table");
  tables->add_option("--d-min", scope.d_min);
  tables->add_option("--d-max", scope.d_max);
  tables->add_option("--n-max", scope.n_max);
  tables->add_option("--max-squares", scope.max_squares, "largest board searched exactly");
  tables->add_option("--cell-time", scope.cell_time_limit, "seconds per searched cell");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kError;
  }

  try {
    if (*construct) return run_construct(ca);
    if (*verify) return run_verify(in);
    if (*solve) return run_solve(no_sym);
    if (*count) return run_count();
    if (*enumerate) return run_enumerate(limit);
    if (*completion) return run_complete(in);
    if (*qc) return run_qc();
    if (*dominate) return run_dominate();
    if (*bounds) return run_bounds(from, to, emit_as, window);
    if (*model) return run_model(ma);
    if (*density) return run_density(origin, emit_as);
    if (*regularity) return run_regularity(in);
    if (*color) return run_color(colors);
    if (*tables) return run_tables(scope);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
