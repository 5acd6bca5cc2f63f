#include "qavg/operator.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "qavg/errors.hpp"

namespace qavg {

Operator::Operator(Matrix matrix, std::optional<bool> hermitian_hint) : m_(std::move(matrix)), hint_(hermitian_hint) {
  if (m_.rows() != m_.cols()) throw DimensionError("operator: matrix is not square");
  if (hint_.value_or(false)) require_hermitian(*this, "operator");
}

Operator Operator::zero(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return Operator(Matrix::Zero(n, n), true);
}

Operator Operator::identity(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return Operator(Matrix::Identity(n, n), true);
}

Operator Operator::diagonal(std::span<const double> entries) {
  const auto n = static_cast<Eigen::Index>(entries.size());
  Matrix m = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = entries[static_cast<std::size_t>(i)];
  return Operator(std::move(m), true);
}

Operator Operator::adjoint() const {
  Operator out(m_.adjoint());
  out.hint_ = hint_;
  return out;
}

double Operator::max_abs() const { return m_.size() == 0 ? 0.0 : m_.cwiseAbs().maxCoeff(); }

Operator& Operator::operator+=(const Operator& other) {
  require_same_dim(*this, other, "operator +");
  m_ += other.m_;
  hint_.reset();
  return *this;
}

Operator& Operator::operator-=(const Operator& other) {
  require_same_dim(*this, other, "operator -");
  m_ -= other.m_;
  hint_.reset();
  return *this;
}

Operator& Operator::operator*=(Complex s) {
  m_ *= s;
  hint_.reset();
  return *this;
}

Operator operator*(const Operator& a, const Operator& b) {
  require_same_dim(a, b, "operator *");
  return Operator(a.m_ * b.m_);
}

double hermiticity_defect(const Operator& a) {
  if (a.dim() == 0) return 0.0;
  return (a.matrix() - a.matrix().adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const Operator& a, double rel_tol) {
  return hermiticity_defect(a) <= rel_tol * (1.0 + a.max_abs());
}

void require_hermitian(const Operator& a, std::string_view what, double rel_tol) {
  const Matrix& m = a.matrix();
  if (!m.allFinite()) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) {
          std::ostringstream msg;
          msg << what << ": non-finite entry (" << i << "," << j << ")";
          throw InputError(msg.str());
        }
      }
    }
  }
  const double limit = rel_tol * (1.0 + a.max_abs());
  Eigen::Index worst_i = 0, worst_j = 0;
  const double defect = (m - m.adjoint()).cwiseAbs().maxCoeff(&worst_i, &worst_j);
  if (defect > limit) {
    // Report the entry in the upper triangle: (0,1) rather than (1,0).
    const auto row = static_cast<std::size_t>(std::min(worst_i, worst_j));
    const auto col = static_cast<std::size_t>(std::max(worst_i, worst_j));
    std::ostringstream msg;
    msg << what << ": not Hermitian at entry (" << row << "," << col << "), |A - A^dagger| = " << defect
        << " exceeds " << limit;
    throw HermiticityError(msg.str(), row, col);
  }
}

void require_same_dim(const Operator& a, const Operator& b, std::string_view what) {
  if (a.dim() != b.dim()) {
    std::ostringstream msg;
    msg << what << ": dimension mismatch (" << a.dim() << " vs " << b.dim() << ")";
    throw DimensionError(msg.str());
  }
}

Operator commutator(const Operator& a, const Operator& b) {
  require_same_dim(a, b, "commutator");
  return Operator(a.matrix() * b.matrix() - b.matrix() * a.matrix());
}

Operator ad(const Operator& f, const Operator& g, double hbar) {
  require_same_dim(f, g, "ad");
  if (!(hbar > 0.0)) throw InputError("ad: hbar must be positive");
#ifdef QAVG_MUTATION_AD_SIGN
  // Mutation-testing build only: flips the sign of the i/hbar factor.
  const Complex factor(0.0, -1.0 / hbar);
#else
  const Complex factor(0.0, 1.0 / hbar);
#endif
  return Operator(factor * (f.matrix() * g.matrix() - g.matrix() * f.matrix()));
}

OperatorSeries::OperatorSeries(std::vector<Operator> coefficients, double hbar)
    : coeffs_(std::move(coefficients)), hbar_(hbar) {
  if (coeffs_.empty()) throw InputError("operator series: no coefficients");
  if (!(hbar_ > 0.0) || !std::isfinite(hbar_)) throw InputError("operator series: hbar must be finite and positive");
  for (std::size_t p = 1; p < coeffs_.size(); ++p) {
    require_same_dim(coeffs_.front(), coeffs_[p], "operator series coefficient " + std::to_string(p));
  }
}

Operator OperatorSeries::coefficient(std::size_t p) const {
  if (p < coeffs_.size()) return coeffs_[p];
  return Operator::zero(dim());
}

bool OperatorSeries::is_unperturbed() const {
  for (std::size_t p = 1; p < coeffs_.size(); ++p) {
    if (!coeffs_[p].matrix().isZero(0.0)) return false;
  }
  return true;
}

Operator series_eval(const OperatorSeries& series, double epsilon) {
  if (!std::isfinite(epsilon)) throw InputError("series_eval: epsilon must be finite");
  Matrix sum = series.coefficients().front().matrix();
  double weight = 1.0;
  for (std::size_t p = 1; p <= series.order(); ++p) {
    weight *= epsilon / static_cast<double>(p);
    sum += weight * series.coefficients()[p].matrix();
  }
  return Operator(std::move(sum));
}

}  // namespace qavg
