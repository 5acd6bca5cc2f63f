#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qavg/models.hpp"
#include "qavg/report.hpp"

namespace qavg {

/// `example anharmonic|henon-heiles`
struct ExampleOptions {
  std::string name;
  int order = 2;
  std::vector<double> epsilons;            ///< empty: 0.01 (anharmonic) or 1 (henon-heiles)
  std::optional<std::size_t> level_max;    ///< --jmax / --kmax; default 4 / 2
  std::optional<std::size_t> truncation;   ///< --nmax / --cutoff
  double alpha = 0.1;
  double beta = 0.1;
  bool with_exact = false;
};

/// `expand <model file>`
struct ExpandCommandOptions {
  std::string model_path;
  int order = 2;
  std::vector<double> epsilons{0.0, 0.01, 0.1};
  bool with_exact = false;
};

/// `verify`: random-model invariant suite.
struct VerifyOptions {
  std::uint64_t seed = 42;
  std::size_t dim = 16;
  std::size_t levels = 5;
  int order = 4;
  std::size_t trials = 100;
};

/// `compare <model file | example name>`: slopes of |E_exact - E^N| and the
/// order-2 equivalence with Rayleigh-Schroedinger.
struct CompareOptions {
  std::string model;
  std::vector<int> orders{1, 2, 3, 4};
  std::vector<double> epsilons;           ///< empty: default_epsilon_grid()
  std::size_t level_max = 2;              ///< states on levels 0..level_max enter the slope fits
  std::optional<std::size_t> truncation;  ///< example models only
  double alpha = 0.1;
  double beta = 0.1;
};

/// Builds one of the built-in examples with the truncation implied by the
/// options. Throws InputError for unknown names.
Model build_example(const std::string& name, std::size_t level_max, int order, std::optional<std::size_t> truncation,
                    double alpha, double beta);

Report run_example(const ExampleOptions& options);
Report run_expand(const ExpandCommandOptions& options);
Report run_verify(const VerifyOptions& options);
Report run_compare(const CompareOptions& options);

}  // namespace qavg
