// Export the (11,3) model that asks for 122 queens, read it back, and show
// why it has no solution: the rows for the eleven x-layers already cap the
// sum at 121.
#include <fstream>
#include <iostream>

#include "nqd/nqd.hpp"

int main(int argc, char** argv) {
  using namespace nqd;
  const BoardSpec b(11, 3);
  auto m = build_base(b, ModelMode::refute(122));
  add_cube_cliques(m);
  add_star_cliques(m);

  const std::string text = export_lp(m);
  const std::string path = argc > 1 ? argv[1] : "refute_11_3.lp";
  std::ofstream(path) << text;
  std::cout << "wrote " << path << ": " << m.constraints().size() << " rows, " << text.size() << " bytes\n";

  auto back = parse_lp(text);
  std::cout << "round trip equal: " << (back == m) << "\n";
  if (auto cap = partition_bound(back)) std::cout << "disjoint rows cap the sum at " << *cap << "\n";

  auto r = decide(b, 122);
  std::cout << "search: " << to_string(r.status) << " after " << r.nodes << " nodes\n";
  return r.status == SolveStatus::infeasible ? 0 : 2;
}
