#include "qavg/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "qavg/errors.hpp"

namespace qavg {
namespace {

using json = nlohmann::json;

std::string number(double v, int digits) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

const char* bound_name(Bound b) { return b == Bound::AtMost ? "at_most" : "at_least"; }

std::string status(const CheckRecord& c) {
  if (c.exact) return "exact";
  return c.passed() ? "pass" : "fail";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

json to_json(const Report& r) {
  json doc;
  doc["command"] = r.command;
  doc["model"] = r.model;
  doc["parameters"] = r.parameters;
  doc["order"] = r.order;
  doc["exact"] = r.exact;
  doc["epsilons"] = r.epsilons;

  json states = json::array();
  for (const StateRow& s : r.states) {
    json row{{"epsilon", s.epsilon}, {"level", s.level}, {"slot", s.slot}, {"eigenvalue", s.eigenvalue}, {"residual", s.residual}};
    if (s.exact) row["exact"] = *s.exact;
    if (s.overlap) row["overlap"] = *s.overlap;
    states.push_back(std::move(row));
  }
  doc["states"] = std::move(states);

  json coeffs = json::array();
  for (const CoefficientRow& c : r.coefficients) coeffs.push_back({{"level", c.level}, {"coefficients", c.coefficients}});
  doc["coefficients"] = std::move(coeffs);

  json checks = json::array();
  for (const CheckRecord& c : r.checks) {
    checks.push_back({{"name", c.name},
                      {"value", c.value},
                      {"tolerance", c.tolerance},
                      {"bound", bound_name(c.bound)},
                      {"exact", c.exact},
                      {"samples", c.samples},
                      {"passed", c.passed()}});
  }
  doc["checks"] = std::move(checks);

  json slopes = json::array();
  for (const SlopeRecord& s : r.slopes) {
    json row{{"name", s.name}, {"order", s.order}, {"exact", s.fit.exact}, {"points", s.fit.points_used},
             {"epsilons", s.fit.epsilons}, {"norms", s.fit.norms}};
    row["slope"] = s.fit.exact ? json(nullptr) : json(s.fit.slope);
    row["intercept"] = s.fit.exact ? json(nullptr) : json(s.fit.intercept);
    slopes.push_back(std::move(row));
  }
  doc["slopes"] = std::move(slopes);
  doc["notes"] = r.notes;
  doc["passed"] = r.passed();
  return doc;
}

std::string to_csv(const Report& r) {
  constexpr int kDigits = 17;
  std::ostringstream out;
  out << "kind,name,epsilon,level,slot,value,tolerance,bound,status\n";
  auto row = [&](const std::string& kind, const std::string& name, const std::string& eps, const std::string& level,
                 const std::string& slot, const std::string& value, const std::string& tol = "",
                 const std::string& bound = "", const std::string& st = "") {
    out << kind << ',' << csv_field(name) << ',' << eps << ',' << level << ',' << slot << ',' << csv_field(value) << ','
        << tol << ',' << bound << ',' << st << '\n';
  };

  row("meta", "command", "", "", "", r.command);
  row("meta", "model", "", "", "", r.model);
  row("meta", "order", "", "", "", std::to_string(r.order));
  row("meta", "exact", "", "", "", r.exact ? "true" : "false");
  for (const auto& [k, v] : r.parameters) row("param", k, "", "", "", number(v, kDigits));
  for (const StateRow& s : r.states) {
    const std::string e = number(s.epsilon, kDigits), l = std::to_string(s.level), a = std::to_string(s.slot);
    row("state", "eigenvalue", e, l, a, number(s.eigenvalue, kDigits));
    row("state", "residual", e, l, a, number(s.residual, kDigits));
    if (s.exact) row("state", "exact", e, l, a, number(*s.exact, kDigits));
    if (s.overlap) row("state", "overlap", e, l, a, number(*s.overlap, kDigits));
  }
  for (const CoefficientRow& c : r.coefficients) {
    for (std::size_t p = 0; p < c.coefficients.size(); ++p) {
      row("coeff", "c" + std::to_string(p), "", std::to_string(c.level), "", number(c.coefficients[p], kDigits));
    }
  }
  for (const CheckRecord& c : r.checks) {
    row("check", c.name, "", "", "", number(c.value, kDigits), number(c.tolerance, kDigits), bound_name(c.bound), status(c));
  }
  for (const SlopeRecord& s : r.slopes) {
    if (s.fit.exact) {
      row("slope", s.name, "", "", "", "", "", "", "exact");
    } else {
      row("slope", s.name, "", "", "", number(s.fit.slope, kDigits), "", "", "fit");
      row("slope", s.name + ".intercept", "", "", "", number(s.fit.intercept, kDigits), "", "", "fit");
    }
  }
  for (const std::string& n : r.notes) row("note", n, "", "", "", "");
  row("meta", "passed", "", "", "", r.passed() ? "true" : "false");
  return out.str();
}

std::string to_table(const Report& r) {
  constexpr int kDigits = 9;
  std::ostringstream out;
  out << r.command << ": " << r.model << "  order " << r.order << (r.exact ? "  (exact: no perturbation)" : "") << '\n';
  for (const auto& [k, v] : r.parameters) out << "  " << k << " = " << number(v, kDigits) << '\n';

  if (!r.coefficients.empty()) {
    out << "\nE_j(eps) = sum_p c_p eps^p\n";
    out << std::setw(6) << "level";
    const std::size_t width = r.coefficients.front().coefficients.size();
    for (std::size_t p = 0; p < width; ++p) out << std::setw(18) << ("c" + std::to_string(p));
    out << '\n';
    for (const CoefficientRow& c : r.coefficients) {
      out << std::setw(6) << c.level;
      for (double v : c.coefficients) out << std::setw(18) << number(v, kDigits);
      out << '\n';
    }
  }

  if (!r.states.empty()) {
    const bool with_exact = std::any_of(r.states.begin(), r.states.end(), [](const StateRow& s) { return s.exact.has_value(); });
    out << '\n' << std::setw(14) << "epsilon" << std::setw(6) << "level" << std::setw(5) << "slot" << std::setw(18)
        << "eigenvalue" << std::setw(16) << "residual";
    if (with_exact) out << std::setw(18) << "exact" << std::setw(12) << "overlap";
    out << '\n';
    for (const StateRow& s : r.states) {
      out << std::setw(14) << number(s.epsilon, kDigits) << std::setw(6) << s.level << std::setw(5) << s.slot
          << std::setw(18) << number(s.eigenvalue, kDigits) << std::setw(16) << number(s.residual, 3);
      if (with_exact) {
        out << std::setw(18) << (s.exact ? number(*s.exact, kDigits) : "-") << std::setw(12)
            << (s.overlap ? number(*s.overlap, 6) : "-");
      }
      out << '\n';
    }
  }

  if (!r.slopes.empty()) {
    out << "\nslope fits\n";
    for (const SlopeRecord& s : r.slopes) {
      out << "  " << std::left << std::setw(44) << s.name << std::right;
      if (s.fit.exact) {
        out << "exact\n";
      } else {
        out << "slope " << number(s.fit.slope, kDigits) << "  (" << s.fit.points_used << " points)\n";
      }
    }
  }

  if (!r.checks.empty()) {
    out << "\nchecks\n";
    for (const CheckRecord& c : r.checks) {
      out << "  " << std::left << std::setw(6) << status(c) << std::setw(44) << c.name << std::right
          << number(c.value, kDigits) << (c.bound == Bound::AtMost ? " <= " : " >= ") << number(c.tolerance, kDigits);
      if (c.samples > 1) out << "  (worst of " << c.samples << ")";
      out << '\n';
    }
  }
  for (const std::string& n : r.notes) out << "note: " << n << '\n';
  out << (r.passed() ? "PASSED" : "FAILED") << '\n';
  return out.str();
}

}  // namespace

bool Report::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.passed(); });
}

Format parse_format(std::string_view name) {
  if (name == "json") return Format::Json;
  if (name == "csv") return Format::Csv;
  if (name == "table") return Format::Table;
  throw InputError("unknown format '" + std::string(name) + "' (expected json, csv or table)");
}

std::string render(const Report& report, Format format) {
  switch (format) {
    case Format::Json:
      return to_json(report).dump(2) + "\n";
    case Format::Csv:
      return to_csv(report);
    case Format::Table:
      return to_table(report);
  }
  return {};
}

}  // namespace qavg
