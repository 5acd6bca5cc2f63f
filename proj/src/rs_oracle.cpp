#include "qavg/rs_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <tuple>

#include "qavg/errors.hpp"

namespace qavg {

Matrix rs_block_order2(const OperatorSeries& h, const Basis& basis, std::size_t level, double epsilon) {
  if (h.dim() != basis.dim()) throw DimensionError("rs_block_order2: series and basis dimensions differ");
  if (level >= basis.level_count()) throw std::out_of_range("rs_block_order2: level out of range");

  const Matrix h1 = h.coefficient(1).matrix();
  const Matrix h2 = h.coefficient(2).matrix();
  const auto block = basis.level_indices(level);
  const double e_j = basis.level(level).energy;
  const auto d = static_cast<Eigen::Index>(block.size());

  Matrix out = Matrix::Zero(d, d);
  for (Eigen::Index a = 0; a < d; ++a) {
    const auto ia = static_cast<Eigen::Index>(block[static_cast<std::size_t>(a)]);
    for (Eigen::Index b = 0; b < d; ++b) {
      const auto ib = static_cast<Eigen::Index>(block[static_cast<std::size_t>(b)]);

      Complex second = 0.5 * h2(ia, ib);
      for (std::size_t k = 0; k < basis.level_count(); ++k) {
        if (k == level) continue;
        const double denom = e_j - basis.level(k).energy;
        for (std::size_t ic : basis.level_indices(k)) {
          const auto c = static_cast<Eigen::Index>(ic);
          second += h1(ia, c) * h1(c, ib) / denom;
        }
      }
      out(a, b) = (a == b ? e_j : 0.0) + epsilon * h1(ia, ib) + epsilon * epsilon * second;
    }
  }
  return out;
}

ExactSpectrum exact_eigen(const OperatorSeries& h, double epsilon) {
  const Operator op = series_eval(h, epsilon);
  require_hermitian(op, "exact_eigen: H(epsilon)");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(op.matrix());
  if (solver.info() != Eigen::Success) throw Error("exact_eigen: eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Pairing match_states(const ExactSpectrum& exact, const EigenReport& approx) {
  const auto n_exact = static_cast<std::size_t>(exact.vectors.cols());
  const std::size_t n_approx = approx.states.size();
  if (n_exact != n_approx || static_cast<std::size_t>(exact.values.size()) != n_exact) {
    throw DimensionError("match_states: exact spectrum has " + std::to_string(n_exact) + " states, report has " +
                         std::to_string(n_approx));
  }

  Eigen::MatrixXd overlap(static_cast<Eigen::Index>(n_exact), static_cast<Eigen::Index>(n_approx));
  for (std::size_t a = 0; a < n_approx; ++a) {
    const Vector& v = approx.states[a].vector;
    if (v.size() != exact.vectors.rows()) throw DimensionError("match_states: eigenvector length mismatch");
    overlap.col(static_cast<Eigen::Index>(a)) = (exact.vectors.adjoint() * v).cwiseAbs();
  }

  // Greedy assignment: highest overlaps first, ties broken by index.
  std::vector<std::tuple<double, std::size_t, std::size_t>> candidates;
  candidates.reserve(n_exact * n_approx);
  for (std::size_t a = 0; a < n_approx; ++a)
    for (std::size_t e = 0; e < n_exact; ++e)
      candidates.emplace_back(overlap(static_cast<Eigen::Index>(e), static_cast<Eigen::Index>(a)), a, e);
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const auto& x, const auto& y) { return std::get<0>(x) > std::get<0>(y); });

  Pairing pairing;
  pairing.matches.resize(n_approx);
  std::vector<bool> approx_done(n_approx, false), exact_taken(n_exact, false);
  std::size_t assigned = 0;
  for (const auto& [ov, a, e] : candidates) {
    if (assigned == n_approx) break;
    if (approx_done[a] || exact_taken[e]) continue;
    approx_done[a] = exact_taken[e] = true;
    pairing.matches[a] = {a, e, ov, 0.0};
    ++assigned;
  }

  // Subspace overlaps per level.
  std::map<std::size_t, std::vector<std::size_t>> exact_by_level;
  for (std::size_t a = 0; a < n_approx; ++a) exact_by_level[approx.states[a].level].push_back(pairing.matches[a].exact);
  for (std::size_t a = 0; a < n_approx; ++a) {
    const auto& cols = exact_by_level[approx.states[a].level];
    double sq = 0.0;
    for (std::size_t e : cols) {
      const double o = overlap(static_cast<Eigen::Index>(e), static_cast<Eigen::Index>(a));
      sq += o * o;
    }
    pairing.matches[a].subspace_overlap = std::sqrt(sq);
  }

  // First-choice clashes across different levels.
  std::map<std::size_t, std::vector<std::size_t>> first_choice;
  for (std::size_t a = 0; a < n_approx; ++a) {
    Eigen::Index best = 0;
    overlap.col(static_cast<Eigen::Index>(a)).maxCoeff(&best);
    first_choice[static_cast<std::size_t>(best)].push_back(a);
  }
  for (auto& [e, claimants] : first_choice) {
    std::set<std::size_t> levels;
    for (std::size_t a : claimants) levels.insert(approx.states[a].level);
    if (levels.size() > 1) pairing.conflicts.push_back({e, claimants});
  }
  return pairing;
}

SlopeFit fit_slope(std::span<const double> epsilons, std::span<const double> norms) {
  if (epsilons.size() != norms.size()) throw InputError("fit_slope: epsilons and norms differ in length");
  std::vector<double> sorted(epsilons.begin(), epsilons.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (!(sorted[i] > 0.0) || !std::isfinite(sorted[i])) throw InputError("fit_slope: epsilons must be finite and positive");
    if (i > 0 && sorted[i] == sorted[i - 1]) throw InputError("fit_slope: repeated epsilon");
  }

  SlopeFit fit;
  fit.epsilons.assign(epsilons.begin(), epsilons.end());
  fit.norms.assign(norms.begin(), norms.end());

  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < norms.size(); ++i) {
    if (!std::isfinite(norms[i]) || norms[i] < 0.0) throw InputError("fit_slope: norms must be finite and >= 0");
    if (norms[i] == 0.0) continue;
    xs.push_back(std::log(epsilons[i]));
    ys.push_back(std::log(norms[i]));
  }
  if (xs.empty() && !norms.empty()) {
    fit.exact = true;
    return fit;
  }
  if (xs.size() < 3) throw InputError("fit_slope: need at least 3 nonzero norms, got " + std::to_string(xs.size()));

  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.points_used = xs.size();
  return fit;
}

std::vector<double> log_grid(double hi, double lo, std::size_t count) {
  if (!(hi > 0.0) || !(lo > 0.0) || count < 2) throw InputError("log_grid: need positive bounds and at least 2 points");
  std::vector<double> out(count);
  const double a = std::log10(hi), b = std::log10(lo);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = std::pow(10.0, a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
  }
  return out;
}

std::vector<double> default_epsilon_grid() { return log_grid(1e-1, 1e-3, 11); }

}  // namespace qavg
