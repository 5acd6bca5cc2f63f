#include "qavg/basis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "qavg/errors.hpp"

namespace qavg {

Basis::Basis(std::vector<Level> levels, std::vector<std::size_t> positions, double degeneracy_tolerance)
    : levels_(std::move(levels)), positions_(std::move(positions)), tolerance_(degeneracy_tolerance) {
  if (levels_.empty()) throw InputError("basis: no levels");
  if (!(tolerance_ >= 0.0) || !std::isfinite(tolerance_)) {
    throw InputError("basis: degeneracy tolerance must be finite and >= 0");
  }

  offsets_.assign(levels_.size() + 1, 0);
  for (std::size_t j = 0; j < levels_.size(); ++j) {
    const Level& lv = levels_[j];
    if (!std::isfinite(lv.energy)) throw InputError("basis: non-finite level energy");
    if (lv.degeneracy == 0) throw InputError("basis: level with zero degeneracy");
    if (j > 0 && !(lv.energy - levels_[j - 1].energy > tolerance_)) {
      std::ostringstream msg;
      msg << "basis: levels " << j - 1 << " and " << j << " are not separated by more than the degeneracy tolerance";
      throw InputError(msg.str());
    }
    offsets_[j + 1] = offsets_[j] + lv.degeneracy;
  }

  const std::size_t dim = offsets_.back();
  if (positions_.empty()) {
    positions_.resize(dim);
    std::iota(positions_.begin(), positions_.end(), std::size_t{0});
  }
  if (positions_.size() != dim) throw DimensionError("basis: position map size differs from total degeneracy");

  constexpr auto unset = std::numeric_limits<std::size_t>::max();
  level_of_.assign(dim, unset);
  slot_of_.assign(dim, unset);
  for (std::size_t j = 0; j < levels_.size(); ++j) {
    for (std::size_t a = 0; a < levels_[j].degeneracy; ++a) {
      const std::size_t i = positions_[offsets_[j] + a];
      if (i >= dim || level_of_[i] != unset) throw InputError("basis: position map is not a bijection onto 0..dim-1");
      level_of_[i] = j;
      slot_of_[i] = a;
    }
  }
}

Basis Basis::from_levels(std::vector<Level> levels, double degeneracy_tolerance) {
  return Basis(std::move(levels), {}, degeneracy_tolerance);
}

const Level& Basis::level(std::size_t j) const { return levels_.at(j); }

std::size_t Basis::index(std::size_t j, std::size_t alpha) const {
  if (j >= levels_.size() || alpha >= levels_[j].degeneracy) throw std::out_of_range("basis: (level, slot) out of range");
  return positions_[offsets_[j] + alpha];
}

std::span<const std::size_t> Basis::level_indices(std::size_t j) const {
  if (j >= levels_.size()) throw std::out_of_range("basis: level out of range");
  return std::span<const std::size_t>(positions_).subspan(offsets_[j], levels_[j].degeneracy);
}

std::vector<double> Basis::diagonal() const {
  std::vector<double> out(dim());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = energy_at(i);
  return out;
}

double Basis::min_gap() const noexcept {
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t j = 1; j < levels_.size(); ++j) gap = std::min(gap, levels_[j].energy - levels_[j - 1].energy);
  return gap;
}

double default_degeneracy_tolerance(std::span<const double> diagonal) {
  double scale = 1.0;
  for (double e : diagonal) {
    if (std::isfinite(e)) scale = std::max(scale, std::abs(e));
  }
  return 1e-9 * scale;
}

Basis make_basis(std::span<const double> diagonal, double tolerance) {
  if (diagonal.empty()) throw InputError("make_basis: empty diagonal");
  if (!(tolerance >= 0.0) || !std::isfinite(tolerance)) throw InputError("make_basis: tolerance must be finite and >= 0");
  for (std::size_t i = 0; i < diagonal.size(); ++i) {
    if (!std::isfinite(diagonal[i])) {
      std::ostringstream msg;
      msg << "make_basis: non-finite energy at index " << i;
      throw InputError(msg.str());
    }
  }

  std::vector<std::size_t> order(diagonal.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return diagonal[a] < diagonal[b]; });

  std::vector<Level> levels;
  std::vector<std::size_t> positions;
  positions.reserve(diagonal.size());

  std::size_t start = 0;
  while (start < order.size()) {
    std::size_t stop = start + 1;
    while (stop < order.size() && diagonal[order[stop]] - diagonal[order[stop - 1]] <= tolerance) ++stop;

    const double lo = diagonal[order[start]];
    const double hi = diagonal[order[stop - 1]];
    if (hi - lo > tolerance) {
      std::ostringstream msg;
      msg << "make_basis: ill-conditioned degeneracy chain spanning [" << lo << ", " << hi
          << "] exceeds tolerance " << tolerance;
      throw InputError(msg.str());
    }

    // Slots follow matrix order inside a level.
    std::vector<std::size_t> group(order.begin() + static_cast<std::ptrdiff_t>(start),
                                   order.begin() + static_cast<std::ptrdiff_t>(stop));
    std::sort(group.begin(), group.end());
    double sum = 0.0;
    for (std::size_t i : group) sum += diagonal[i];
    levels.push_back({sum / static_cast<double>(group.size()), group.size()});
    positions.insert(positions.end(), group.begin(), group.end());
    start = stop;
  }

  return Basis(std::move(levels), std::move(positions), tolerance);
}

}  // namespace qavg
