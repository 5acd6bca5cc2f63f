#include "qavg/averaging.hpp"

#include "qavg/errors.hpp"

namespace qavg {
namespace {

void require_basis_dim(const Operator& g, const Basis& basis, const char* what) {
  if (g.dim() != basis.dim()) {
    throw DimensionError(std::string(what) + ": operator dimension " + std::to_string(g.dim()) +
                         " does not match basis dimension " + std::to_string(basis.dim()));
  }
}

}  // namespace

Operator unperturbed_hamiltonian(const Basis& basis) {
  const std::vector<double> diag = basis.diagonal();
  return Operator::diagonal(diag);
}

Operator average(const Operator& g, const Basis& basis) {
  require_basis_dim(g, basis, "average");
  const auto n = static_cast<Eigen::Index>(g.dim());
  Matrix out = Matrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const std::size_t lk = basis.level_of(static_cast<std::size_t>(k));
    for (Eigen::Index i = 0; i < n; ++i) {
      if (basis.level_of(static_cast<std::size_t>(i)) == lk) out(i, k) = g.matrix()(i, k);
    }
  }
  return Operator(std::move(out));
}

Operator s_map(const Operator& g, const Basis& basis, double hbar) {
  require_basis_dim(g, basis, "s_map");
  if (!(hbar > 0.0)) throw InputError("s_map: hbar must be positive");
  const auto n = static_cast<Eigen::Index>(g.dim());
  // hbar / i = -i hbar
  const Complex prefactor(0.0, -hbar);
  Matrix out = Matrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto uk = static_cast<std::size_t>(k);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      if (basis.level_of(ui) == basis.level_of(uk)) continue;
      out(i, k) = prefactor * g.matrix()(i, k) / (basis.energy_at(ui) - basis.energy_at(uk));
    }
  }
  return Operator(std::move(out));
}

HomologicalResidual check_homological(const Operator& g, const Basis& basis, double hbar) {
  const Operator h0 = unperturbed_hamiltonian(basis);
  const Operator g_bar = average(g, basis);
  const Operator lhs = ad(s_map(g, basis, hbar), h0, hbar) + g - g_bar;
  return {lhs.max_abs(), ad(h0, g_bar, hbar).max_abs(), kHermitianTolerance * (1.0 + g.max_abs())};
}

}  // namespace qavg
