#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace qavg {

/// One eigenvalue of the unperturbed Hamiltonian together with its
/// multiplicity.
struct Level {
  double energy;
  std::size_t degeneracy;

  bool operator==(const Level&) const = default;
};

/// Labelled discrete spectrum of H0.
///
/// Matrix index i carries the label (level, slot). Levels are sorted by
/// energy; slots within a level are ordered by matrix index. Two distinct
/// levels are always separated by more than `degeneracy_tolerance()`.
class Basis {
 public:
  Basis() = default;

  /// Builds a basis from explicit levels. `positions` lists the matrix index
  /// of every (level, slot) pair in level-major order and must be a
  /// permutation of 0..dim-1. An empty `positions` means contiguous blocks.
  Basis(std::vector<Level> levels, std::vector<std::size_t> positions, double degeneracy_tolerance);

  static Basis from_levels(std::vector<Level> levels, double degeneracy_tolerance = 0.0);

  std::size_t dim() const noexcept { return level_of_.size(); }
  std::size_t level_count() const noexcept { return levels_.size(); }
  const Level& level(std::size_t j) const;
  std::span<const Level> levels() const noexcept { return levels_; }
  double degeneracy_tolerance() const noexcept { return tolerance_; }

  /// Matrix index of slot `alpha` in level `j`.
  std::size_t index(std::size_t j, std::size_t alpha) const;
  std::size_t level_of(std::size_t i) const { return level_of_.at(i); }
  std::size_t slot_of(std::size_t i) const { return slot_of_.at(i); }
  std::span<const std::size_t> level_indices(std::size_t j) const;

  double energy_at(std::size_t i) const { return levels_[level_of(i)].energy; }

  /// Level energies expanded back onto matrix indices.
  std::vector<double> diagonal() const;

  /// Smallest separation between consecutive levels (infinity for one level).
  double min_gap() const noexcept;

  bool operator==(const Basis&) const = default;

 private:
  std::vector<Level> levels_;
  std::vector<std::size_t> offsets_;    // level j occupies positions_[offsets_[j] .. offsets_[j+1])
  std::vector<std::size_t> positions_;  // flattened (level, slot) -> matrix index
  std::vector<std::size_t> level_of_;
  std::vector<std::size_t> slot_of_;
  double tolerance_ = 0.0;
};

/// Groups a raw H0 diagonal into degenerate levels.
///
/// Entries are sorted and consecutive values within `tolerance` are chained
/// together; each chain becomes one level whose energy is the chain mean.
/// Throws InputError on non-finite entries, negative tolerance, or a chain
/// whose total spread exceeds `tolerance` (transitive merging of values that
/// are not themselves close).
Basis make_basis(std::span<const double> diagonal, double tolerance);

/// 1e-9 * max(1, max |E|).
double default_degeneracy_tolerance(std::span<const double> diagonal);

}  // namespace qavg
