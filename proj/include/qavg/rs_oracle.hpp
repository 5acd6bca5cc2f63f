#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qavg/basis.hpp"
#include "qavg/operator.hpp"
#include "qavg/pvz.hpp"

namespace qavg {

/// Textbook second-order Rayleigh-Schroedinger matrix on level j:
///
///   E_j 1 + eps <a|H1|b> + eps^2 ( <a|H2|b>/2
///       + sum_{k != j, c} <a|H1|k,c><k,c|H1|b> / (E_j - E_k) )
///
/// evaluated as a literal double sum over intermediate states. It shares no
/// code with the averaging maps.
Matrix rs_block_order2(const OperatorSeries& h, const Basis& basis, std::size_t level, double epsilon);

struct ExactSpectrum {
  Eigen::VectorXd values;  ///< ascending
  Matrix vectors;          ///< column i pairs with values(i)
};

/// Dense Hermitian diagonalization of H(eps). Throws HermiticityError if the
/// evaluated series is not Hermitian.
ExactSpectrum exact_eigen(const OperatorSeries& h, double epsilon);

struct StateMatch {
  std::size_t approx = 0;        ///< index into EigenReport::states
  std::size_t exact = 0;         ///< column of ExactSpectrum
  double overlap = 0.0;          ///< |<exact|approx>|
  double subspace_overlap = 0.0; ///< norm of approx projected onto the exact states matched to its level
};

/// Two approximate states from different levels whose best exact partner is
/// the same state.
struct PairingConflict {
  std::size_t exact = 0;
  std::vector<std::size_t> approx;
};

struct Pairing {
  std::vector<StateMatch> matches;  ///< one per approximate state, in report order
  std::vector<PairingConflict> conflicts;

  bool ambiguous() const noexcept { return !conflicts.empty(); }
};

/// Greedy maximum-|overlap| assignment of approximate to exact eigenvectors.
/// Conflicting first choices are listed in `conflicts` rather than hidden;
/// rotations inside a degenerate level are not conflicts.
Pairing match_states(const ExactSpectrum& exact, const EigenReport& approx);

struct SlopeFit {
  std::vector<double> epsilons;
  std::vector<double> norms;
  double slope = 0.0;
  double intercept = 0.0;
  std::size_t points_used = 0;
  bool exact = false;  ///< every norm was exactly zero; slope and intercept are meaningless
};

/// Least-squares line through (log eps, log norm). Exact zeros are dropped
/// from the fit; if all norms are zero the result is flagged `exact`.
/// Throws InputError for mismatched sizes, negative or non-finite norms,
/// non-positive or repeated epsilons, or fewer than 3 usable points.
SlopeFit fit_slope(std::span<const double> epsilons, std::span<const double> norms);

/// `count` log-uniform points from `hi` down to `lo`.
std::vector<double> log_grid(double hi, double lo, std::size_t count);

/// 1e-1, 10^-1.2, ..., 1e-3.
std::vector<double> default_epsilon_grid();

}  // namespace qavg
