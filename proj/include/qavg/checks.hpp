#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "qavg/models.hpp"
#include "qavg/operator.hpp"
#include "qavg/pvz.hpp"

namespace qavg {

enum class Bound {
  AtMost,  ///< passes when value <= tolerance (residuals)
  AtLeast, ///< passes when value >= tolerance (fitted slopes)
};

/// One numeric check. Pass/fail is a pure function of the stored fields.
struct CheckRecord {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  Bound bound = Bound::AtMost;
  bool exact = false;  ///< slope checks: every residual was exactly zero
  std::size_t samples = 1;

  bool passed() const noexcept;
  /// Larger is worse; used to keep the worst record when aggregating.
  double severity() const noexcept;
};

/// Keeps, per name, the worst record seen; `samples` counts merges.
/// Order of first appearance is preserved.
void merge_worst(std::vector<CheckRecord>& into, const std::vector<CheckRecord>& records);

/// SplitMix64 stream: output i is mix(seed + (i + 1) * golden). Identical on
/// every platform; uniforms use the top 53 bits.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next();
  double uniform();           ///< [0, 1)
  double normal();            ///< standard normal (Box-Muller)
  std::size_t below(std::size_t n);

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

/// A + A^dagger with independent standard normal real and imaginary parts.
Operator random_hermitian(CounterRng& rng, std::size_t dim);

/// Random model: `levels` distinct integer energies in [0, 3 levels), random
/// degeneracies summing to `dim` (kept within {1,2,3} when possible), H0
/// positions shuffled, random Hermitian H1 and (optionally) H2.
Model random_model(CounterRng& rng, std::size_t dim, std::size_t levels, bool with_h2 = true);

/// Epsilon grid over one decade scaled to the model: eps = kappa * x with
/// x in [1e-2, 1e-1] and kappa = min_gap / max(min_gap, sum_p ||H_p||_2 / p!).
std::vector<double> scaled_epsilon_grid(const Model& model, std::size_t points = 6);

/// Structural checks of a finished expansion: Hermiticity of F, W, K;
/// [H0, K_p] = 0; homological identity on every F_p; average(W_p) = 0.
std::vector<CheckRecord> expansion_checks(const Expansion& exp);

/// ||K^N - (Phi^N)^-1 H Phi^N||_max at eps, with the inverse from an LU solve.
double conjugation_residual(const Expansion& exp, double epsilon);

/// ||(Phi^N)^dagger Phi^N - 1||_max at eps.
double unitarity_residual(const Expansion& exp, double epsilon);

/// max over levels and block entries of |K^2 block - rs_block_order2| divided
/// by the largest |rs_block_order2| entry.
double rs_equivalence_residual(const Expansion& order2, double epsilon);

/// Diagonal of K_2 / 2 against 1/2 <i|H2|i> + sum_{k outside level(i)} |<i|H1|k>|^2 / (E_i - E_k),
/// relative to the sum of absolute values of the terms.
double closed_form_sum_residual(const Expansion& order2);

/// Every invariant of the averaging algebra and of the expansion on one model:
/// homological and commutation identities, annihilation, idempotence,
/// cross-term vanishing, Hermiticity, [H0, K_p] = 0, conjugation consistency
/// and near-unitarity slopes, gauge invariance of order-2 eigenvalues, the
/// order-2 equivalence with Rayleigh-Schroedinger and the closed-form sum.
std::vector<CheckRecord> structural_checks(const Model& model, int order, CounterRng& rng);

}  // namespace qavg
