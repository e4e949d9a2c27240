// Library walk-through: a non-invariant nacs on SU(4) and the SU(2) action family.

#include <iostream>

#include "liecr/liecr.hpp"

int main() {
  using namespace liecr;

  const CartanBorelData su4 = cartan_borel(su(4));
  Eigen::MatrixXcd m(3, 2);
  m << 0, 1, 0, kI, 1, 0;
  const MorphismSpec spec(3, 2, m);
  std::cout << "condition II: " << (check_condition(spec).pass ? "holds" : "fails") << "\n";

  const StructurePair pair = build_invariant_pair(spec, su4);
  std::cout << "dim l = " << pair.l.dim() << ", dim l' = " << pair.l_prime->dim() << "\n";
  std::cout << "nacs: " << (verify_nacs(pair).pass ? "verified" : "FAILED") << "\n";
  std::cout << "l = (l cap r) + u: " << (verify_borel_decomposition(pair, su4).pass ? "yes" : "no") << "\n";

  for (Complex a : {Complex(0.0), Complex(0.5), Complex(0.0, 1.0)}) {
    const geom::ActionParams p{a, 1.0};
    const auto iv = geom::check_condition_IV_analytic(p);
    std::cout << "a = " << a << ": condition IV " << (iv.pass ? "holds" : "fails");
    if (iv.pass) std::cout << ", invariant: " << geom::check_invariance(p).data["invariant"];
    std::cout << "\n";
  }
  return 0;
}
