#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "qavg/models.hpp"
#include "qavg/operator.hpp"

namespace qtest {

using qavg::Complex;
using qavg::Matrix;

inline double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

/// x = (a + a^dagger)/sqrt(2) on n states, filled element by element.
inline Eigen::MatrixXd position(std::size_t n) {
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t k = 1; k < n; ++k) {
    const double v = std::sqrt(static_cast<double>(k) / 2.0);
    x(static_cast<Eigen::Index>(k - 1), static_cast<Eigen::Index>(k)) = v;
    x(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k - 1)) = v;
  }
  return x;
}

/// <j|x^p|k> of the untruncated oscillator, by padding well past j, k.
inline double x_power_element(int p, std::size_t j, std::size_t k) {
  const std::size_t n = std::max(j, k) + static_cast<std::size_t>(p) + 2;
  const Eigen::MatrixXd x = position(n);
  Eigen::MatrixXd acc = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (int i = 0; i < p; ++i) acc = acc * x;
  return acc(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k));
}

inline double anharmonic_c1(double j) { return 3.0 / 8.0 * (j * j + j) + 3.0 / 16.0; }
inline double anharmonic_c2(double j) {
  return -(17.0 / 64.0 * j * j * j + 51.0 / 128.0 * j * j + 59.0 / 128.0 * j + 21.0 / 128.0);
}

/// Henon-Heiles order-2 closed forms at eps = 1.
struct HenonHeilesLevels {
  double e01, e11, e12, e21, e2m, e2p;
};
inline HenonHeilesLevels henon_heiles_closed_form(double a, double b) {
  const double root = std::sqrt(2025 * std::pow(b, 4) - 446 * b * b * a * a - 16 * a * a * a * b + 41 * std::pow(a, 4)) / 4;
  const double base2 = 3 - 101 * b * b / 8 - 15 * b * a / 4 - 17 * a * a / 8;
  return {1 - 11 * b * b / 8 - 5 * a * a / 24 - 3 * b * a / 4,
          2 - 11 * b * b / 8 - 11 * a * a / 8 - 9 * b * a / 4,
          2 - 71 * b * b / 8 - 13 * a * a / 24 - 9 * b * a / 4,
          3 - 71 * b * b / 8 - 19 * a * a / 8 - 27 * b * a / 4,
          base2 - root,
          base2 + root};
}

/// H0 = diag(0, 1), H1 = sigma_x.
inline qavg::Model two_level() {
  const std::vector<double> e{0.0, 1.0};
  Matrix sx(2, 2);
  sx << 0, 1, 1, 0;
  qavg::Model m;
  m.name = "two-level";
  m.basis = qavg::make_basis(e, 1e-9);
  m.hamiltonian = qavg::OperatorSeries({qavg::Operator::diagonal(e), qavg::Operator(sx, true)});
  return m;
}

inline std::pair<double, double> two_level_exact(double eps) {
  const double r = std::sqrt(1 + 4 * eps * eps);
  return {(1 - r) / 2, (1 + r) / 2};
}

}  // namespace qtest
