#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "qavg/basis.hpp"
#include "qavg/operator.hpp"

namespace qavg {

/// Input to the expansion: a labelled H0 spectrum plus H(eps).
///
/// The series' zeroth coefficient is the diagonal of basis energies and every
/// perturbation coefficient is Hermitian.
struct Model {
  std::string name;
  Basis basis;
  OperatorSeries hamiltonian;
  std::map<std::string, double> parameters;  ///< truncation and physical parameters
  std::vector<std::string> state_labels;     ///< one per matrix index; may be empty
};

struct Ladder {
  Operator lower;  ///< a: <n-1|a|n> = sqrt(n)
  Operator raise;  ///< a^dagger
};

/// Number-state ladder operators on n_max + 1 states. Requires n_max >= 1.
Ladder ladder(std::size_t n_max);

/// Harmonic oscillator H0 = N + 1/2 with H1 = x^4 / 4, x = (a + a^dagger)/sqrt(2),
/// hbar = 1, on number states 0..n_max. Requires n_max >= 12.
///
/// Matrix elements of H1 are those of the untruncated operator (x^4 is formed
/// on a padded space and then restricted), so every entry is exact.
Model anharmonic(std::size_t n_max);

/// Two-mode oscillator H0 = N1 + N2 + 1 with H1 = alpha x1^2 x2 + beta x2^3,
/// hbar = 1, on states n1 + n2 <= cutoff ordered by total quanta, then n1
/// ascending. Requires cutoff >= 8.
Model henon_heiles(std::size_t cutoff, double alpha, double beta);

/// Truncation defaults that keep low-state order-N results free of
/// truncation effects.
std::size_t default_anharmonic_nmax(std::size_t j_max, int order);
std::size_t default_henon_heiles_cutoff(std::size_t k_max, int order);

/// Model file (JSON):
///   { "name": str, "hbar": num = 1, "h0_diagonal": [num...],
///     "degeneracy_tolerance": num = 1e-9,
///     "perturbations": { "<p>": [[[re, im], ...], ...], ... } }
///
/// The basis is inferred with make_basis; H0 becomes the diagonal of level
/// energies. Errors name the offending field and index (ParseError,
/// DimensionError, HermiticityError, InputError).
Model parse_model(std::string_view text);
Model load_model(const std::filesystem::path& path);

std::string model_to_json(const Model& model);
void save_model(const Model& model, const std::filesystem::path& path);

}  // namespace qavg
