#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace qavg {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kHermitianTolerance = 1e-10;

/// Dense complex operator expressed in a Basis ordering.
///
/// `hermitian_hint == true` is a checked claim: construction fails with
/// HermiticityError when ||A - A^dagger||_max > 1e-10 (1 + ||A||_max).
/// Nothing is ever symmetrized silently.
class Operator {
 public:
  Operator() = default;
  explicit Operator(Matrix matrix, std::optional<bool> hermitian_hint = std::nullopt);

  static Operator zero(std::size_t dim);
  static Operator identity(std::size_t dim);
  static Operator diagonal(std::span<const double> entries);

  const Matrix& matrix() const noexcept { return m_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  std::optional<bool> hermitian_hint() const noexcept { return hint_; }
  Complex operator()(std::size_t i, std::size_t j) const {
    return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

  Operator adjoint() const;
  double max_abs() const;

  Operator& operator+=(const Operator& other);
  Operator& operator-=(const Operator& other);
  Operator& operator*=(Complex s);

  friend Operator operator+(Operator a, const Operator& b) { return a += b; }
  friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
  friend Operator operator*(Complex s, Operator a) { return a *= s; }
  friend Operator operator*(Operator a, Complex s) { return a *= s; }
  friend Operator operator*(const Operator& a, const Operator& b);

 private:
  Matrix m_;
  std::optional<bool> hint_;
};

/// ||A - A^dagger||_max.
double hermiticity_defect(const Operator& a);
bool is_hermitian(const Operator& a, double rel_tol = kHermitianTolerance);

/// Throws HermiticityError naming `what` and the worst (row, col) entry.
void require_hermitian(const Operator& a, std::string_view what, double rel_tol = kHermitianTolerance);

/// Throws DimensionError unless both operators have the same dimension.
void require_same_dim(const Operator& a, const Operator& b, std::string_view what);

/// AB - BA.
Operator commutator(const Operator& a, const Operator& b);

/// AD F(G) = (i/hbar) [F, G].
Operator ad(const Operator& f, const Operator& g, double hbar);

/// Coefficients [A_0, ..., A_N] of sum_p (eps^p / p!) A_p.
class OperatorSeries {
 public:
  OperatorSeries() = default;
  explicit OperatorSeries(std::vector<Operator> coefficients, double hbar = 1.0);

  std::size_t dim() const noexcept { return coeffs_.empty() ? 0 : coeffs_.front().dim(); }
  /// Highest stored power.
  std::size_t order() const noexcept { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
  double hbar() const noexcept { return hbar_; }
  std::span<const Operator> coefficients() const noexcept { return coeffs_; }

  /// A_p, or the zero operator when p exceeds the stored order.
  Operator coefficient(std::size_t p) const;

  /// True when every A_p with p >= 1 is exactly zero.
  bool is_unperturbed() const;

 private:
  std::vector<Operator> coeffs_;
  double hbar_ = 1.0;
};

/// sum_p (eps^p / p!) A_p.
Operator series_eval(const OperatorSeries& series, double epsilon);

}  // namespace qavg
