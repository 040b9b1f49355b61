// A short tour: an invariant subspace that is not ultrainvariant, its closure,
// and the full ultrainvariant lattice of a nilpotent and an algebraic operator.

#include <iostream>

#include "lcomm/fixtures.hpp"
#include "lcomm/intertwiner.hpp"
#include "lcomm/invariance.hpp"
#include "lcomm/spectral.hpp"

using namespace lcomm;
using Q = GaussRational;

namespace {

void show_basis(const Subspace<Q>& s) {
  std::cout << "  dim " << s.dim() << ", basis columns:";
  for (const auto& v : s.basis()) {
    std::cout << " (";
    for (std::size_t i = 0; i < v.size(); ++i) std::cout << (i ? " " : "") << v[i];
    std::cout << ")";
  }
  std::cout << "\n";
}

}  // namespace

int main() {
  // A = diag(1, 1, 0), M = span(e1, e3): invariant, yet C(A;M) is not an algebra.
  const auto f = example_projection_3block<Q>(1, 1, 1);
  std::cout << "A = " << f.a << "\nM:\n";
  show_basis(f.m);

  const auto an = analyze_algebra(f.a, f.m);
  std::cout << std::boolalpha << "invariant: " << is_invariant(f.a, f.m) << ", ultrainvariant: " << an.verdict.ultrainvariant
            << ", C(A;M) is an algebra: " << an.verdict.is_algebra << "\n";
  std::cout << "dim C(A;M) = " << an.local.dim() << ", dim (A)' = " << commutant(f.a).dim() << "\n";
  std::cout << "girder of C(A;M):\n";
  show_basis(an.girder);
  std::cout << "C(A;M)M:\n";
  show_basis(an.cm);
  std::cout << "ultrainvariant closure:\n";
  show_basis(ultrainvariant_closure(f.a, f.m));

  // Nilpotent J_2 + J_1: the lattice is the kernel chain, and im A is invariant yet not ultrainvariant.
  const auto j = build_jordan<Q>({2, 1}, Q(0));
  const auto nl = nilpotent_ultra_lattice(j);
  std::cout << "\nJ_2 + J_1 has " << nl.members.size() << " ultrainvariant subspaces:\n";
  for (const auto& m : nl.members) show_basis(m.space);
  for (const auto& c : nl.image_checks)
    if (!c.equals_kernel)
      std::cout << "im A^" << nl.orders.front() - c.j << " differs from ker A^" << c.j
                << "; ultrainvariant: " << c.image_ultrainvariant << ", closure is the kernel: " << c.closure_is_kernel
                << "\n";

  // Eigenvalues 2 (index 2) and i (index 1): (2+1)(1+1) = 6 ultrainvariant subspaces.
  const auto alg = build_algebraic<Q>({Q(2), Q(mpq_class(0), mpq_class(1))}, {{2}, {1, 1}});
  const auto al = algebraic_ultra_lattice(alg.a, alg.spec);
  std::cout << "\nalgebraic example: " << al.members.size() << " members, closed under meet and join: "
            << al.closed_under_meet_join << "\n";
  for (const auto& m : al.members) {
    std::cout << "  exponents";
    for (auto e : m.exponents) std::cout << " " << e;
    std::cout << ": dim " << m.space.dim() << (m.verified_ultrainvariant ? ", verified" : ", NOT verified") << "\n";
  }
}
