// Computes σ for a few modules and checks one witness against the oracle.

#include <iostream>

#include "covercalc/covercalc.hpp"

using namespace covercalc;

int main() {
  const RingHandle z = RingHandle::integers();

  ModuleDescriptor m(z);
  m.torsion.push_back({factor_ideal(z, RingElement(std::int64_t{12})), Cardinal(1)});
  m.torsion.push_back({factor_ideal(z, RingElement(std::int64_t{18})), Cardinal(1)});

  std::cout << render(m) << "\n";
  std::cout << "  NC(M)   = " << nc_set(m).to_string() << "\n";
  std::cout << "  q(M)    = " << q_value(m)->to_string() << "\n";
  std::cout << "  sigma   = " << sigma(m).to_string() << "\n";

  const CoverWitness w = build_cover_witness(m);
  const auto mm = oracle::materialize(m);
  const bool ok = oracle::verify_cover_witness(mm, w);
  const auto brute = oracle::min_submodule_cover(mm.module);
  std::cout << "  witness with " << w.lines().lines.size() << " lines verified: " << (ok ? "yes" : "no") << "\n";
  std::cout << "  oracle  = " << *brute.size << " on " << mm.size() << " elements\n";

  ModuleDescriptor q(z);
  q.field_copies = Cardinal(1);
  std::cout << render(q) << "\n  sigma   = " << sigma(q).to_string() << "\n";

  std::cout << "phi(Z/12) = " << phi_cyclic(z, factor_ideal(z, RingElement(std::int64_t{12}))) << "\n";
  return ok && brute.size == std::size_t{3} ? 0 : 1;
}
