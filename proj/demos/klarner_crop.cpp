// Build the 121-queen regular solution on the (11,3) board, then crop it
// down to (10,3) and (9,3) and print how many queens survive.
#include <iostream>

#include "nqd/nqd.hpp"

int main() {
  using namespace nqd;
  const auto full = regular_solution({11, 3, {3, 5}, 0});
  std::cout << "(11,3) regular: " << full.size() << " queens, valid=" << is_valid(full) << "\n";

  for (int target : {10, 9}) {
    CropChoice choice;
    auto rec = best_crop(target, 3, {full}, &choice);
    std::cout << "(" << target << ",3) crop: " << rec.lower << " queens, shifts";
    for (int s : choice.shifts) std::cout << ' ' << s;
    std::cout << ", valid=" << is_valid(*rec.witness) << "\n";
  }

  // a regular placement is a coset: one start square and d-1 movements
  auto r = regularity_check(full);
  std::cout << "regular=" << r.regular << " movements=" << r.movements.size() << "\n";
}
