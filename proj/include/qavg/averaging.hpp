#pragma once

#include "qavg/basis.hpp"
#include "qavg/operator.hpp"

namespace qavg {

/// H0 as the diagonal operator of level energies.
Operator unperturbed_hamiltonian(const Basis& basis);

/// Time average of G under the H0 flow: the block-diagonal part of G with
/// respect to the H0 eigenspaces. Entries coupling different levels are
/// exact zeros.
Operator average(const Operator& g, const Basis& basis);

/// Solution of the homological equation: entry (i, k) is
/// (hbar / i) G_ik / (E_i - E_k) for i, k in different levels and exactly
/// zero inside a level block. Consequently average(s_map(G)) == 0.
Operator s_map(const Operator& g, const Basis& basis, double hbar);

struct HomologicalResidual {
  double homological;  ///< ||ad(S(G), H0) + G - average(G)||_max
  double commutation;  ///< ||ad(H0, average(G))||_max
  double tolerance;    ///< 1e-10 (1 + ||G||_max)

  bool passed() const noexcept { return homological <= tolerance && commutation <= tolerance; }
};

HomologicalResidual check_homological(const Operator& g, const Basis& basis, double hbar);

}  // namespace qavg
