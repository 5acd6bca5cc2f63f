#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qavg/checks.hpp"
#include "qavg/rs_oracle.hpp"

namespace qavg {

struct StateRow {
  double epsilon = 0.0;
  std::size_t level = 0;
  std::size_t slot = 0;
  double eigenvalue = 0.0;
  double residual = 0.0;
  std::optional<double> exact;    ///< paired exact eigenvalue, when requested
  std::optional<double> overlap;  ///< |<exact|approx>| of that pairing
};

/// E^N_j(eps) = sum_p coefficients[p] eps^p for a non-degenerate level.
struct CoefficientRow {
  std::size_t level = 0;
  std::vector<double> coefficients;
};

struct SlopeRecord {
  std::string name;
  int order = 0;
  SlopeFit fit;
};

/// Everything a CLI verb produces. Rendering is deterministic: containers are
/// emitted in stored order and parameters in key order.
struct Report {
  std::string command;
  std::string model;
  std::map<std::string, double> parameters;
  int order = 0;
  bool exact = false;  ///< the model has no perturbation at all
  std::vector<double> epsilons;
  std::vector<StateRow> states;
  std::vector<CoefficientRow> coefficients;
  std::vector<CheckRecord> checks;
  std::vector<SlopeRecord> slopes;
  std::vector<std::string> notes;

  bool passed() const;
};

enum class Format { Json, Csv, Table };

/// Throws InputError for anything but "json", "csv" or "table".
Format parse_format(std::string_view name);

/// JSON numbers use the shortest representation that round-trips exactly;
/// CSV uses 17 significant digits; the table uses 9.
std::string render(const Report& report, Format format);

}  // namespace qavg
