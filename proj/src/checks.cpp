#include "qavg/checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "qavg/averaging.hpp"
#include "qavg/errors.hpp"
#include "qavg/rs_oracle.hpp"

namespace qavg {
namespace {

constexpr double kExactTolerance = 1e-10;
constexpr double kEquivalenceTolerance = 1e-12;
constexpr double kSlopeMargin = 0.25;

double spectral_norm(const Operator& a) {
  if (a.dim() == 0 || a.matrix().isZero(0.0)) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a.matrix(), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

double relative_defect(const Operator& a) { return hermiticity_defect(a) / (1.0 + a.max_abs()); }

CheckRecord at_most(std::string name, double value, double tolerance) {
  return {std::move(name), value, tolerance, Bound::AtMost, false, 1};
}

CheckRecord slope_check(std::string name, const std::vector<double>& eps, const std::vector<double>& norms,
                        double minimum) {
  const SlopeFit fit = fit_slope(eps, norms);
  CheckRecord r{std::move(name), fit.exact ? 0.0 : fit.slope, minimum, Bound::AtLeast, fit.exact, 1};
  return r;
}

std::vector<double> block_eigenvalues(const Operator& k, const Basis& basis, std::size_t level) {
  const auto idx = basis.level_indices(level);
  const auto d = static_cast<Eigen::Index>(idx.size());
  Matrix sub(d, d);
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index b = 0; b < d; ++b) sub(a, b) = k(idx[static_cast<std::size_t>(a)], idx[static_cast<std::size_t>(b)]);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sub, Eigen::EigenvaluesOnly);
  return {solver.eigenvalues().data(), solver.eigenvalues().data() + d};
}

Operator second_order_normal_form(const Expansion& exp, double epsilon) {
  if (exp.order() < 2) throw InputError("second-order checks need an expansion of order >= 2");
  return exp.k(0) + Complex(epsilon) * exp.k(1) + Complex(0.5 * epsilon * epsilon) * exp.k(2);
}

}  // namespace

bool CheckRecord::passed() const noexcept {
  if (bound == Bound::AtLeast) return exact || value >= tolerance;
  return value <= tolerance;
}

double CheckRecord::severity() const noexcept {
  if (bound == Bound::AtLeast) return exact ? -std::numeric_limits<double>::infinity() : tolerance - value;
  if (tolerance > 0.0) return value / tolerance;
  return value > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
}

void merge_worst(std::vector<CheckRecord>& into, const std::vector<CheckRecord>& records) {
  for (const CheckRecord& r : records) {
    auto it = std::find_if(into.begin(), into.end(), [&](const CheckRecord& x) { return x.name == r.name; });
    if (it == into.end()) {
      into.push_back(r);
      continue;
    }
    const std::size_t samples = it->samples + r.samples;
    if (r.severity() > it->severity()) *it = r;
    it->samples = samples;
  }
}

std::uint64_t CounterRng::next() {
  ++counter_;
  std::uint64_t z = seed_ + counter_ * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double CounterRng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double CounterRng::normal() {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::size_t CounterRng::below(std::size_t n) {
  if (n == 0) throw std::invalid_argument("CounterRng::below: empty range");
  return static_cast<std::size_t>(next() % n);
}

Operator random_hermitian(CounterRng& rng, std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  Matrix a(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) {
      const double re = rng.normal();
      const double im = rng.normal();
      a(i, j) = Complex(re, im);
    }
  // Exactly Hermitian: build the upper triangle and mirror it.
  Matrix h = a + a.adjoint();
  for (Eigen::Index j = 0; j < n; ++j) {
    h(j, j) = h(j, j).real();
    for (Eigen::Index i = j + 1; i < n; ++i) h(i, j) = std::conj(h(j, i));
  }
  return Operator(std::move(h), true);
}

Model random_model(CounterRng& rng, std::size_t dim, std::size_t levels, bool with_h2) {
  if (levels < 2 || dim < levels) throw InputError("random_model: need dim >= levels >= 2");

  // Distinct integer energies from 0 .. 3 levels - 1 (partial Fisher-Yates).
  std::vector<int> pool(3 * levels);
  for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = static_cast<int>(i);
  for (std::size_t i = 0; i < levels; ++i) std::swap(pool[i], pool[i + rng.below(pool.size() - i)]);
  std::vector<int> energies(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(levels));
  std::sort(energies.begin(), energies.end());

  std::vector<std::size_t> degeneracy(levels, 1);
  for (std::size_t extra = dim - levels; extra > 0; --extra) {
    std::vector<std::size_t> open;
    for (std::size_t j = 0; j < levels; ++j)
      if (degeneracy[j] < 3) open.push_back(j);
    if (open.empty()) {
      ++degeneracy[rng.below(levels)];
    } else {
      ++degeneracy[open[rng.below(open.size())]];
    }
  }

  std::vector<double> diag;
  for (std::size_t j = 0; j < levels; ++j) diag.insert(diag.end(), degeneracy[j], static_cast<double>(energies[j]));
  for (std::size_t i = diag.size(); i > 1; --i) std::swap(diag[i - 1], diag[rng.below(i)]);

  Model model;
  model.name = "random";
  model.basis = make_basis(diag, default_degeneracy_tolerance(diag));
  std::vector<Operator> coeffs{Operator::diagonal(model.basis.diagonal()), random_hermitian(rng, dim)};
  if (with_h2) coeffs.push_back(random_hermitian(rng, dim));
  model.hamiltonian = OperatorSeries(std::move(coeffs), 1.0);
  model.parameters = {{"dim", static_cast<double>(dim)}, {"levels", static_cast<double>(levels)}};
  return model;
}

std::vector<double> scaled_epsilon_grid(const Model& model, std::size_t points) {
  double size = 0.0;
  double weight = 1.0;
  for (std::size_t p = 1; p <= model.hamiltonian.order(); ++p) {
    weight /= static_cast<double>(p);
    size += weight * spectral_norm(model.hamiltonian.coefficients()[p]);
  }
  double gap = model.basis.min_gap();
  if (!std::isfinite(gap)) gap = 1.0;
  const double kappa = gap / std::max(gap, size);
  std::vector<double> grid = log_grid(1e-1, 1e-2, points);
  for (double& e : grid) e *= kappa;
  return grid;
}

std::vector<CheckRecord> expansion_checks(const Expansion& exp) {
  const Basis& basis = exp.basis();
  const Operator h0 = unperturbed_hamiltonian(basis);
  double herm = 0.0, comm = 0.0, homo = 0.0, avg_w = 0.0;
  for (int p = 1; p <= exp.order(); ++p) {
    herm = std::max({herm, relative_defect(exp.f(p)), relative_defect(exp.w(p)), relative_defect(exp.k(p))});
    comm = std::max(comm, commutator(h0, exp.k(p)).max_abs() / ((1.0 + h0.max_abs()) * (1.0 + exp.k(p).max_abs())));
    const HomologicalResidual r = check_homological(exp.f(p), basis, exp.hbar());
    homo = std::max(homo, std::max(r.homological, r.commutation) / (1.0 + exp.f(p).max_abs()));
    avg_w = std::max(avg_w, average(exp.w(p), basis).max_abs());
  }
  return {
      at_most("hermitian_F_W_K", herm, kExactTolerance),
      at_most("commutes_H0_K", comm, kExactTolerance),
      at_most("homological_F", homo, kExactTolerance),
      at_most("average_W_zero", avg_w, 0.0),
  };
}

double conjugation_residual(const Expansion& exp, double epsilon) {
  const Matrix phi = phi_truncated(exp, epsilon).matrix();
  const Matrix h = series_eval(exp.hamiltonian(), epsilon).matrix();
  const Matrix conjugated = phi.partialPivLu().solve(h * phi);
  return (k_truncated(exp, epsilon).matrix() - conjugated).cwiseAbs().maxCoeff();
}

double unitarity_residual(const Expansion& exp, double epsilon) {
  const Matrix phi = phi_truncated(exp, epsilon).matrix();
  const auto n = phi.rows();
  return (phi.adjoint() * phi - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
}

double rs_equivalence_residual(const Expansion& order2, double epsilon) {
  const Basis& basis = order2.basis();
  const Operator k2 = second_order_normal_form(order2, epsilon);
  double worst = 0.0;
  for (std::size_t j = 0; j < basis.level_count(); ++j) {
    const Matrix rs = rs_block_order2(order2.hamiltonian(), basis, j, epsilon);
    const auto idx = basis.level_indices(j);
    double diff = 0.0;
    for (Eigen::Index a = 0; a < rs.rows(); ++a)
      for (Eigen::Index b = 0; b < rs.cols(); ++b)
        diff = std::max(diff, std::abs(k2(idx[static_cast<std::size_t>(a)], idx[static_cast<std::size_t>(b)]) - rs(a, b)));
    const double scale = rs.cwiseAbs().maxCoeff();
    worst = std::max(worst, scale > 0.0 ? diff / scale : diff);
  }
  return worst;
}

double closed_form_sum_residual(const Expansion& order2) {
  if (order2.order() < 2) throw InputError("closed_form_sum_residual: expansion order must be >= 2");
  const Basis& basis = order2.basis();
  const Matrix h1 = order2.hamiltonian().coefficient(1).matrix();
  const Matrix h2 = order2.hamiltonian().coefficient(2).matrix();
  double worst = 0.0;
  for (std::size_t i = 0; i < basis.dim(); ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    const double lhs = 0.5 * order2.k(2)(i, i).real();
    double rhs = 0.5 * h2(ii, ii).real();
    double magnitude = std::abs(rhs);
    for (std::size_t k = 0; k < basis.dim(); ++k) {
      if (basis.level_of(k) == basis.level_of(i)) continue;
      const double term = std::norm(h1(ii, static_cast<Eigen::Index>(k))) / (basis.energy_at(i) - basis.energy_at(k));
      rhs += term;
      magnitude += std::abs(term);
    }
    const double diff = std::abs(lhs - rhs);
    worst = std::max(worst, magnitude > 0.0 ? diff / magnitude : diff);
  }
  return worst;
}

std::vector<CheckRecord> structural_checks(const Model& model, int order, CounterRng& rng) {
  const Basis& basis = model.basis;
  const OperatorSeries& h = model.hamiltonian;
  const double hbar = h.hbar();
  const std::size_t dim = basis.dim();

  const Expansion exp = expand(h, basis, order);
  std::vector<CheckRecord> out = expansion_checks(exp);

  // Averaging algebra on fresh random operators.
  const Operator g = random_hermitian(rng, dim);
  const Operator b = random_hermitian(rng, dim);
  const HomologicalResidual hr = check_homological(g, basis, hbar);
  out.push_back(at_most("homological_random", hr.homological / (1.0 + g.max_abs()), kExactTolerance));
  out.push_back(at_most("commutation_random", hr.commutation / (1.0 + g.max_abs()), kExactTolerance));

  const Operator g_bar = average(g, basis);
  const Operator s_g = s_map(g, basis, hbar);
  out.push_back(at_most("annihilation", std::max(average(s_g, basis).max_abs(), s_map(g_bar, basis, hbar).max_abs()), 0.0));
  out.push_back(at_most("idempotence", (average(g_bar, basis) - g_bar).max_abs(), 0.0));
  const Operator b_bar = average(b, basis);
  out.push_back(at_most("cross_term",
                        average(ad(s_g, b_bar, hbar), basis).max_abs() / ((1.0 + s_g.max_abs()) * (1.0 + b_bar.max_abs())),
                        kExactTolerance));

  // Order-tagged identities.
  const std::vector<double> grid = scaled_epsilon_grid(model);
  std::vector<double> conj, unit;
  for (double e : grid) {
    conj.push_back(conjugation_residual(exp, e));
    unit.push_back(unitarity_residual(exp, e));
  }
  const double min_slope = order + 1 - kSlopeMargin;
  out.push_back(slope_check("conjugation_slope", grid, conj, min_slope));
  out.push_back(slope_check("unitarity_slope", grid, unit, min_slope));

  // Second-order identities.
  const Expansion exp2 = order >= 2 ? exp : expand(h, basis, 2);
  double rs = rs_equivalence_residual(exp2, 1.0);
  for (double e : grid) rs = std::max(rs, rs_equivalence_residual(exp2, e));
  out.push_back(at_most("rs_equivalence_order2", rs, kEquivalenceTolerance));
  out.push_back(at_most("closed_form_sum", closed_form_sum_residual(exp2), kEquivalenceTolerance));

  // Gauge shift W_1 -> W_1 + v with [v, H0] = 0. Non-degenerate eigenvalues
  // are unchanged exactly; inside degenerate levels they move at O(eps^3).
  ExpansionOptions gauge;
  gauge.gauge_shifts.push_back(average(random_hermitian(rng, dim), basis));
  const Expansion shifted = expand(h, basis, 2, gauge);
  double nondegenerate = 0.0;
  double energy_scale = 1.0;
  bool any_degenerate = false;
  std::vector<double> degenerate_diffs;
  for (double e : grid) {
    const Operator ka = second_order_normal_form(exp2, e);
    const Operator kb = second_order_normal_form(shifted, e);
    double deg = 0.0;
    for (std::size_t j = 0; j < basis.level_count(); ++j) {
      const auto ea = block_eigenvalues(ka, basis, j);
      const auto eb = block_eigenvalues(kb, basis, j);
      double diff = 0.0;
      for (std::size_t a = 0; a < ea.size(); ++a) {
        diff = std::max(diff, std::abs(ea[a] - eb[a]));
        energy_scale = std::max(energy_scale, std::abs(ea[a]));
      }
      if (ea.size() == 1) {
        nondegenerate = std::max(nondegenerate, diff);
      } else {
        any_degenerate = true;
        deg = std::max(deg, diff);
      }
    }
    degenerate_diffs.push_back(deg);
  }
  out.push_back(at_most("gauge_invariance_nondegenerate", nondegenerate / energy_scale, kExactTolerance));
  if (any_degenerate) out.push_back(slope_check("gauge_invariance_degenerate_slope", grid, degenerate_diffs, 3.0 - kSlopeMargin));

  return out;
}

}  // namespace qavg
