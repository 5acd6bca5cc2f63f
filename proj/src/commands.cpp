#include "qavg/commands.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "qavg/errors.hpp"
#include "qavg/pvz.hpp"
#include "qavg/rs_oracle.hpp"

namespace qavg {
namespace {

constexpr double kSlopeMargin = 0.25;
constexpr double kEquivalenceTolerance = 1e-12;

void require_order(int order) {
  if (order < 1 || order > kMaxOrder) {
    throw InputError("--order must lie in 1.." + std::to_string(kMaxOrder) + ", got " + std::to_string(order));
  }
}

void require_finite(const std::vector<double>& epsilons) {
  for (double e : epsilons)
    if (!std::isfinite(e)) throw InputError("--epsilon values must be finite");
}

std::string state_tag(int order, std::size_t level, std::size_t slot) {
  std::ostringstream s;
  s << "[N=" << order << ",level=" << level << ",slot=" << slot << "]";
  return s.str();
}

/// Pairing conflicts touching a state on a level <= level_max.
std::size_t relevant_conflicts(const Pairing& pairing, const EigenReport& er, std::size_t level_max) {
  std::size_t n = 0;
  for (const PairingConflict& c : pairing.conflicts) {
    if (std::any_of(c.approx.begin(), c.approx.end(), [&](std::size_t a) { return er.states[a].level <= level_max; }))
      ++n;
  }
  return n;
}

/// Eigen rows for levels <= level_max, optionally paired with exact eigenvalues.
void add_eigen_rows(Report& report, const Expansion& exp, double epsilon, std::size_t level_max, bool with_exact) {
  const EigenReport er = eigen_report(exp, epsilon);
  std::optional<ExactSpectrum> ex;
  std::optional<Pairing> pairing;
  if (with_exact) {
    ex = exact_eigen(exp.hamiltonian(), epsilon);
    pairing = match_states(*ex, er);
    if (const std::size_t n = relevant_conflicts(*pairing, er, level_max); n > 0) {
      report.notes.push_back("ambiguous state pairing at epsilon " + std::to_string(epsilon));
      report.checks.push_back({"pairing_unambiguous", static_cast<double>(n), 0.0, Bound::AtMost, false, 1});
    }
  }
  for (std::size_t a = 0; a < er.states.size(); ++a) {
    const EigenState& s = er.states[a];
    if (s.level > level_max) continue;
    StateRow row{epsilon, s.level, s.slot, s.eigenvalue, s.residual, std::nullopt, std::nullopt};
    if (pairing) {
      const StateMatch& m = pairing->matches[a];
      row.exact = ex->values(static_cast<Eigen::Index>(m.exact));
      row.overlap = m.overlap;
    }
    report.states.push_back(row);
  }
}

void add_coefficients(Report& report, const Expansion& exp, std::size_t level_max) {
  const Basis& basis = exp.basis();
  for (std::size_t j = 0; j < basis.level_count() && j <= level_max; ++j) {
    if (basis.level(j).degeneracy != 1) continue;
    report.coefficients.push_back({j, eigenvalue_polynomial(exp, j)});
  }
}

Report expansion_report(const std::string& command, const Model& model, int order, const std::vector<double>& epsilons,
                        std::size_t level_max, bool with_exact) {
  const Expansion exp = expand(model.hamiltonian, model.basis, order);
  Report report;
  report.command = command;
  report.model = model.name;
  report.parameters = model.parameters;
  report.order = order;
  report.exact = model.hamiltonian.is_unperturbed();
  report.epsilons = epsilons;
  add_coefficients(report, exp, level_max);
  for (double e : epsilons) add_eigen_rows(report, exp, e, level_max, with_exact);
  for (const CheckRecord& c : expansion_checks(exp)) report.checks.push_back(c);
  if (report.exact) report.notes.push_back("exact: the model has no perturbation");
  return report;
}

}  // namespace

Model build_example(const std::string& name, std::size_t level_max, int order, std::optional<std::size_t> truncation,
                    double alpha, double beta) {
  if (name == "anharmonic") return anharmonic(truncation.value_or(default_anharmonic_nmax(level_max, order)));
  if (name == "henon-heiles") {
    return henon_heiles(truncation.value_or(default_henon_heiles_cutoff(level_max, order)), alpha, beta);
  }
  throw InputError("unknown example '" + name + "' (expected anharmonic or henon-heiles)");
}

Report run_example(const ExampleOptions& options) {
  require_order(options.order);
  require_finite(options.epsilons);
  const bool anh = options.name == "anharmonic";
  const std::size_t level_max = options.level_max.value_or(anh ? 4 : 2);
  const Model model =
      build_example(options.name, level_max, options.order, options.truncation, options.alpha, options.beta);
  std::vector<double> epsilons = options.epsilons;
  if (epsilons.empty()) epsilons = {anh ? 0.01 : 1.0};

  Report report = expansion_report("example", model, options.order, epsilons, level_max, options.with_exact);
  report.parameters["level_max"] = static_cast<double>(level_max);
  return report;
}

Report run_expand(const ExpandCommandOptions& options) {
  require_order(options.order);
  require_finite(options.epsilons);
  const Model model = load_model(options.model_path);
  return expansion_report("expand", model, options.order, options.epsilons, model.basis.level_count(), options.with_exact);
}

Report run_verify(const VerifyOptions& options) {
  require_order(options.order);
  if (options.levels < 2 || options.dim < options.levels) throw InputError("verify: need --dim >= --levels >= 2");
  if (options.trials < 1) throw InputError("verify: --trials must be >= 1");

  CounterRng rng(options.seed);
  Report report;
  report.command = "verify";
  report.model = "random";
  report.order = options.order;
  report.parameters = {{"dim", static_cast<double>(options.dim)},
                       {"levels", static_cast<double>(options.levels)},
                       {"trials", static_cast<double>(options.trials)}};
  report.notes.push_back("seed " + std::to_string(options.seed));
  for (std::size_t t = 0; t < options.trials; ++t) {
    const Model model = random_model(rng, options.dim, options.levels);
    merge_worst(report.checks, structural_checks(model, options.order, rng));
  }
  return report;
}

Report run_compare(const CompareOptions& options) {
  if (options.orders.empty()) throw InputError("compare: --orders is empty");
  for (int n : options.orders) require_order(n);
  std::vector<double> epsilons = options.epsilons.empty() ? default_epsilon_grid() : options.epsilons;
  require_finite(epsilons);
  if (epsilons.size() < 3) throw InputError("compare: need at least 3 epsilon values");
  for (double e : epsilons)
    if (!(e > 0.0)) throw InputError("compare: epsilon values must be positive");

  const int max_order = *std::max_element(options.orders.begin(), options.orders.end());
  const bool builtin = options.model == "anharmonic" || options.model == "henon-heiles";
  const Model model = builtin ? build_example(options.model, options.level_max, max_order, options.truncation,
                                              options.alpha, options.beta)
                              : load_model(options.model);

  Report report;
  report.command = "compare";
  report.model = model.name;
  report.parameters = model.parameters;
  report.parameters["level_max"] = static_cast<double>(options.level_max);
  report.order = max_order;
  report.exact = model.hamiltonian.is_unperturbed();
  report.epsilons = epsilons;

  std::vector<ExactSpectrum> exact;
  exact.reserve(epsilons.size());
  for (double e : epsilons) exact.push_back(exact_eigen(model.hamiltonian, e));

  std::size_t conflicts = 0;
  for (int order : options.orders) {
    const Expansion exp = expand(model.hamiltonian, model.basis, order);
    std::map<std::pair<std::size_t, std::size_t>, std::vector<double>> errors;
    double energy_scale = 1.0;
    for (std::size_t i = 0; i < epsilons.size(); ++i) {
      const EigenReport er = eigen_report(exp, epsilons[i]);
      const Pairing pairing = match_states(exact[i], er);
      if (const std::size_t n = relevant_conflicts(pairing, er, options.level_max); n > 0) {
        conflicts += n;
        report.notes.push_back("ambiguous state pairing at N=" + std::to_string(order) + ", epsilon " +
                               std::to_string(epsilons[i]));
      }
      for (std::size_t a = 0; a < er.states.size(); ++a) {
        const EigenState& s = er.states[a];
        if (s.level > options.level_max) continue;
        const double e_exact = exact[i].values(static_cast<Eigen::Index>(pairing.matches[a].exact));
        errors[{s.level, s.slot}].push_back(std::abs(e_exact - s.eigenvalue));
        energy_scale = std::max(energy_scale, std::abs(e_exact));
      }
    }

    for (const auto& [key, errs] : errors) {
      const std::string name = "eigenvalue_error" + state_tag(order, key.first, key.second);
      SlopeFit fit;
      try {
        fit = fit_slope(epsilons, errs);
      } catch (const InputError&) {
        // Fewer than three nonzero errors: only acceptable at the rounding floor.
        fit.epsilons = epsilons;
        fit.norms = errs;
        const double worst = *std::max_element(errs.begin(), errs.end());
        fit.exact = worst <= 1e-13 * energy_scale;
        report.notes.push_back(name + ": too few nonzero errors for a fit");
        if (!fit.exact) fit.slope = 0.0;
      }
      report.slopes.push_back({name, order, fit});
      report.checks.push_back({name, fit.exact ? 0.0 : fit.slope, order + 1 - kSlopeMargin, Bound::AtLeast, fit.exact, 1});
    }
  }

  if (conflicts > 0) report.checks.push_back({"pairing_unambiguous", static_cast<double>(conflicts), 0.0, Bound::AtMost, false, 1});

  const Expansion exp2 = expand(model.hamiltonian, model.basis, 2);
  double rs = 0.0;
  for (double e : epsilons) rs = std::max(rs, rs_equivalence_residual(exp2, e));
  report.checks.push_back({"rs_equivalence_order2", rs, kEquivalenceTolerance, Bound::AtMost, rs <= kEquivalenceTolerance, 1});
  return report;
}

}  // namespace qavg
