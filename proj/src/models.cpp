#include "qavg/models.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qavg/errors.hpp"

namespace qavg {
namespace {

using json = nlohmann::json;

Matrix position_matrix(std::size_t n_max) {
  const Ladder l = ladder(n_max);
  return (l.lower.matrix() + l.raise.matrix()) / std::sqrt(2.0);
}

double number_at(const json& node, const std::string& where) {
  if (!node.is_number()) throw ParseError("model: " + where + " must be a number");
  const double v = node.get<double>();
  if (!std::isfinite(v)) throw InputError("model: " + where + " is not finite");
  return v;
}

Matrix parse_matrix(const json& node, std::size_t dim, const std::string& field) {
  if (!node.is_array()) throw ParseError("model: " + field + " must be an array of rows");
  if (node.size() != dim) {
    throw DimensionError("model: " + field + " has " + std::to_string(node.size()) + " rows, expected " +
                         std::to_string(dim));
  }
  const auto n = static_cast<Eigen::Index>(dim);
  Matrix m(n, n);
  for (std::size_t i = 0; i < dim; ++i) {
    const json& row = node[i];
    const std::string row_name = field + "[" + std::to_string(i) + "]";
    if (!row.is_array()) throw ParseError("model: " + row_name + " must be an array");
    if (row.size() != dim) {
      throw DimensionError("model: " + row_name + " has " + std::to_string(row.size()) + " entries, expected " +
                           std::to_string(dim));
    }
    for (std::size_t j = 0; j < dim; ++j) {
      const json& entry = row[j];
      const std::string name = row_name + "[" + std::to_string(j) + "]";
      if (!entry.is_array() || entry.size() != 2) throw ParseError("model: " + name + " must be a [re, im] pair");
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          Complex(number_at(entry[0], name + ".re"), number_at(entry[1], name + ".im"));
    }
  }
  return m;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

Ladder ladder(std::size_t n_max) {
  if (n_max < 1) throw InputError("ladder: n_max must be >= 1");
  const auto n = static_cast<Eigen::Index>(n_max + 1);
  Matrix a = Matrix::Zero(n, n);
  for (Eigen::Index k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  Operator lower(a);
  return {lower, lower.adjoint()};
}

std::size_t default_anharmonic_nmax(std::size_t j_max, int order) {
  return std::max<std::size_t>(60, j_max + 8 * static_cast<std::size_t>(std::max(order, 0)) + 8);
}

std::size_t default_henon_heiles_cutoff(std::size_t k_max, int order) {
  return std::max<std::size_t>(14, k_max + 3 * static_cast<std::size_t>(std::max(order, 0)) + 6);
}

Model anharmonic(std::size_t n_max) {
  if (n_max < 12) throw InputError("anharmonic: n_max must be >= 12");
  const auto n = static_cast<Eigen::Index>(n_max + 1);

  const Matrix x = position_matrix(n_max + 4);
  const Matrix x2 = x * x;
  const Matrix h1 = 0.25 * (x2 * x2).topLeftCorner(n, n);

  std::vector<double> diag(n_max + 1);
  std::vector<std::string> labels;
  for (std::size_t j = 0; j <= n_max; ++j) {
    diag[j] = static_cast<double>(j) + 0.5;
    labels.push_back("n=" + std::to_string(j));
  }

  Model model;
  model.name = "anharmonic";
  model.basis = make_basis(diag, default_degeneracy_tolerance(diag));
  model.hamiltonian = OperatorSeries({Operator::diagonal(model.basis.diagonal()), Operator(h1, true)}, 1.0);
  model.parameters = {{"n_max", static_cast<double>(n_max)}};
  model.state_labels = std::move(labels);
  return model;
}

Model henon_heiles(std::size_t cutoff, double alpha, double beta) {
  if (cutoff < 8) throw InputError("henon_heiles: cutoff must be >= 8");
  if (!std::isfinite(alpha) || !std::isfinite(beta)) throw InputError("henon_heiles: alpha and beta must be finite");

  struct State {
    std::size_t n1, n2;
  };
  std::vector<State> states;
  for (std::size_t k = 0; k <= cutoff; ++k)
    for (std::size_t n1 = 0; n1 <= k; ++n1) states.push_back({n1, k - n1});

  // Single-mode factors on a padded space give exact matrix elements.
  const Matrix x = position_matrix(cutoff + 3);
  const Matrix x_sq = x * x;
  const Matrix x_cube = x_sq * x;

  const auto dim = static_cast<Eigen::Index>(states.size());
  Matrix h1 = Matrix::Zero(dim, dim);
  std::vector<double> diag(states.size());
  std::vector<std::string> labels;
  for (Eigen::Index r = 0; r < dim; ++r) {
    const State& s = states[static_cast<std::size_t>(r)];
    diag[static_cast<std::size_t>(r)] = static_cast<double>(s.n1 + s.n2) + 1.0;
    labels.push_back("(" + std::to_string(s.n1) + "," + std::to_string(s.n2) + ")");
    const auto r1 = static_cast<Eigen::Index>(s.n1), r2 = static_cast<Eigen::Index>(s.n2);
    for (Eigen::Index c = 0; c < dim; ++c) {
      const State& t = states[static_cast<std::size_t>(c)];
      const auto c1 = static_cast<Eigen::Index>(t.n1), c2 = static_cast<Eigen::Index>(t.n2);
      Complex v = alpha * x_sq(r1, c1) * x(r2, c2);
      if (r1 == c1) v += beta * x_cube(r2, c2);
      h1(r, c) = v;
    }
  }

  Model model;
  model.name = "henon-heiles";
  model.basis = make_basis(diag, default_degeneracy_tolerance(diag));
  model.hamiltonian = OperatorSeries({Operator::diagonal(model.basis.diagonal()), Operator(h1, true)}, 1.0);
  model.parameters = {{"cutoff", static_cast<double>(cutoff)}, {"alpha", alpha}, {"beta", beta}};
  model.state_labels = std::move(labels);
  return model;
}

Model parse_model(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("model: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("model: top level must be an object");

  Model model;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) throw ParseError("model: name must be a string");
    model.name = doc["name"].get<std::string>();
  }
  const double hbar = doc.contains("hbar") ? number_at(doc["hbar"], "hbar") : 1.0;
  if (!(hbar > 0.0)) throw InputError("model: hbar must be positive");

  if (!doc.contains("h0_diagonal")) throw ParseError("model: missing field h0_diagonal");
  const json& diag_node = doc["h0_diagonal"];
  if (!diag_node.is_array() || diag_node.empty()) throw ParseError("model: h0_diagonal must be a non-empty array");
  std::vector<double> diag;
  for (std::size_t i = 0; i < diag_node.size(); ++i) {
    diag.push_back(number_at(diag_node[i], "h0_diagonal[" + std::to_string(i) + "]"));
  }

  const double tol = doc.contains("degeneracy_tolerance")
                         ? number_at(doc["degeneracy_tolerance"], "degeneracy_tolerance")
                         : default_degeneracy_tolerance(diag);
  if (tol < 0.0) throw InputError("model: degeneracy_tolerance must be >= 0");
  model.basis = make_basis(diag, tol);

  std::map<std::size_t, Matrix> terms;
  if (doc.contains("perturbations")) {
    const json& pert = doc["perturbations"];
    if (!pert.is_object()) throw ParseError("model: perturbations must be an object keyed by order");
    for (const auto& [key, value] : pert.items()) {
      std::size_t p = 0;
      std::size_t used = 0;
      try {
        p = std::stoul(key, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != key.size() || p < 1) throw ParseError("model: perturbations key \"" + key + "\" is not an order >= 1");
      const std::string field = "perturbations." + key;
      Matrix m = parse_matrix(value, diag.size(), field);
      require_hermitian(Operator(m), field);
      terms.emplace(p, std::move(m));
    }
  }

  std::vector<Operator> coeffs{Operator::diagonal(model.basis.diagonal())};
  const std::size_t top = terms.empty() ? 0 : terms.rbegin()->first;
  const auto n = static_cast<Eigen::Index>(diag.size());
  for (std::size_t p = 1; p <= top; ++p) {
    auto it = terms.find(p);
    coeffs.emplace_back(it != terms.end() ? it->second : Matrix::Zero(n, n), true);
  }
  model.hamiltonian = OperatorSeries(std::move(coeffs), hbar);
  return model;
}

Model load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("model: cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

std::string model_to_json(const Model& model) {
  json doc;
  doc["name"] = model.name;
  doc["hbar"] = model.hamiltonian.hbar();
  doc["h0_diagonal"] = model.basis.diagonal();
  doc["degeneracy_tolerance"] = model.basis.degeneracy_tolerance();
  json pert = json::object();
  for (std::size_t p = 1; p <= model.hamiltonian.order(); ++p) {
    pert[std::to_string(p)] = matrix_to_json(model.hamiltonian.coefficients()[p].matrix());
  }
  doc["perturbations"] = std::move(pert);
  return doc.dump(2);
}

void save_model(const Model& model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("model: cannot write " + path.string());
  out << model_to_json(model) << '\n';
}

}  // namespace qavg
