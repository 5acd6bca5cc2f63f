#include "qavg/pvz.hpp"

#include <array>
#include <cmath>
#include <sstream>
#include <string>

#include "qavg/averaging.hpp"
#include "qavg/errors.hpp"

namespace qavg {
namespace {

constexpr auto kPascal = [] {
  std::array<std::array<long long, kMaxOrder + 1>, kMaxOrder + 1> t{};
  for (int n = 0; n <= kMaxOrder; ++n) {
    t[n][0] = 1;
    for (int k = 1; k <= n; ++k) t[n][k] = t[n - 1][k - 1] + (k < n ? t[n - 1][k] : 0);
  }
  return t;
}();

std::string indexed(const char* name, int p) { return std::string(name) + "_" + std::to_string(p); }

void check_unperturbed_diagonal(const Operator& h0, const Basis& basis) {
  const Matrix& m = h0.matrix();
  const double scale = 1.0 + h0.max_abs();
  for (Eigen::Index k = 0; k < m.cols(); ++k) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const double expected = (i == k) ? basis.energy_at(static_cast<std::size_t>(i)) : 0.0;
      const double slack = (i == k) ? std::max(basis.degeneracy_tolerance(), kHermitianTolerance * scale)
                                    : kHermitianTolerance * scale;
      if (std::abs(m(i, k) - expected) > slack) {
        std::ostringstream msg;
        msg << "expand: H_0 entry (" << i << "," << k << ") = " << m(i, k)
            << " is not the diagonal of basis energies (expected " << expected << ")";
        throw InputError(msg.str());
      }
    }
  }
}

}  // namespace

long long binomial(int n, int k) {
  if (n < 0 || n > kMaxOrder || k < 0 || k > n) throw std::out_of_range("binomial: argument out of range");
  return kPascal[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

long long factorial(int n) {
  if (n < 0 || n > kMaxOrder) throw std::out_of_range("factorial: argument out of range");
  long long r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

const Operator& Expansion::f(int p) const {
  if (p < 1 || p > order_) throw std::out_of_range(indexed("F", p) + " not available");
  return f_[static_cast<std::size_t>(p)];
}

const Operator& Expansion::w(int p) const {
  if (p < 1 || p > order_) throw std::out_of_range(indexed("W", p) + " not available");
  return w_[static_cast<std::size_t>(p)];
}

const Operator& Expansion::k(int p) const {
  if (p < 0 || p > order_) throw std::out_of_range(indexed("K", p) + " not available");
  return k_[static_cast<std::size_t>(p)];
}

const Operator& Expansion::phi(int p) const {
  if (p < 0 || p > order_) throw std::out_of_range(indexed("Phi", p) + " not available");
  return phi_[static_cast<std::size_t>(p)];
}

Operator Expansion::compute_T(int q, int m, std::map<std::pair<int, int>, Operator>& cache) const {
  if (q == 0) return hamiltonian_.coefficient(static_cast<std::size_t>(m));
  if (auto it = t_cache_.find({q, m}); it != t_cache_.end()) return it->second;
  if (auto it = cache.find({q, m}); it != cache.end()) return it->second;

  // T_{p+1} = sum_l C(p, l) AD W_{l+1} o T_{p-l}
  const int p = q - 1;
  Operator sum = Operator::zero(basis_.dim());
  for (int l = 0; l <= p; ++l) {
    const Operator inner = compute_T(p - l, m, cache);
    sum += static_cast<double>(binomial(p, l)) * ad(w_[static_cast<std::size_t>(l + 1)], inner, hbar());
  }
  cache.emplace(std::make_pair(q, m), sum);
  return sum;
}

Operator Expansion::apply_T(int q, int m) const {
  if (q < 0 || m < 0) throw std::out_of_range("apply_T: negative index");
  if (q > static_cast<int>(w_.size()) - 1) {
    throw std::out_of_range("apply_T: T_" + std::to_string(q) + " needs generators beyond W_" +
                            std::to_string(static_cast<int>(w_.size()) - 1));
  }
  std::map<std::pair<int, int>, Operator> scratch;
  return compute_T(q, m, scratch);
}

Expansion expand(const OperatorSeries& h, const Basis& basis, int order, const ExpansionOptions& options) {
  if (order < 1 || order > kMaxOrder) {
    throw InputError("expand: order must lie in 1.." + std::to_string(kMaxOrder) + ", got " + std::to_string(order));
  }
  if (h.dim() != basis.dim()) {
    throw DimensionError("expand: series dimension " + std::to_string(h.dim()) + " does not match basis dimension " +
                         std::to_string(basis.dim()));
  }
  for (std::size_t p = 0; p <= h.order(); ++p) require_hermitian(h.coefficients()[p], indexed("H", static_cast<int>(p)));
  check_unperturbed_diagonal(h.coefficients().front(), basis);

  if (options.gauge_shifts.size() > static_cast<std::size_t>(order)) {
    throw InputError("expand: more gauge shifts than expansion order");
  }
  for (std::size_t p = 0; p < options.gauge_shifts.size(); ++p) {
    const Operator& v = options.gauge_shifts[p];
    const std::string name = indexed("gauge shift v", static_cast<int>(p + 1));
    if (v.dim() != basis.dim()) throw DimensionError(name + ": dimension mismatch");
    require_hermitian(v, name);
    if ((v - average(v, basis)).max_abs() > kHermitianTolerance * (1.0 + v.max_abs())) {
      throw InputError(name + ": does not commute with H_0");
    }
  }

  const std::size_t dim = basis.dim();
  const double hbar = h.hbar();

  Expansion exp;
  exp.order_ = order;
  exp.basis_ = basis;
  exp.hamiltonian_ = h;
  exp.f_.push_back(Operator::zero(dim));
  exp.w_.push_back(Operator::zero(dim));
  exp.k_.push_back(h.coefficients().front());
  exp.phi_.push_back(Operator::identity(dim));

  for (int p = 1; p <= order; ++p) {
    // F_p = H_p + sum_{l=0}^{p-2} C(p-1, l) (AD W_{l+1}(K_{p-l-1}) + T_{p-l-1} H_{l+1})
    Operator f = h.coefficient(static_cast<std::size_t>(p));
    for (int l = 0; l <= p - 2; ++l) {
      const auto c = static_cast<double>(binomial(p - 1, l));
      const Operator t = exp.compute_T(p - l - 1, l + 1, exp.t_cache_);
      f += c * (ad(exp.w_[static_cast<std::size_t>(l + 1)], exp.k_[static_cast<std::size_t>(p - l - 1)], hbar) + t);
    }

    Operator w = s_map(f, basis, hbar);
    if (static_cast<std::size_t>(p) <= options.gauge_shifts.size()) w += options.gauge_shifts[static_cast<std::size_t>(p - 1)];

    exp.k_.push_back(average(f, basis));
    exp.w_.push_back(std::move(w));
    exp.f_.push_back(std::move(f));
  }

  // Phi_{p+1} = -(i/hbar) sum_l C(p, l) Phi_{p-l} W_{l+1}
  const Complex minus_i_over_hbar(0.0, -1.0 / hbar);
  for (int p = 0; p < order; ++p) {
    Matrix sum = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (int l = 0; l <= p; ++l) {
      sum += static_cast<double>(binomial(p, l)) *
             (exp.phi_[static_cast<std::size_t>(p - l)].matrix() * exp.w_[static_cast<std::size_t>(l + 1)].matrix());
    }
    exp.phi_.emplace_back(minus_i_over_hbar * sum);
  }

  // Structural invariants. A failure here is an engine bug, not bad input.
  const Operator h0 = unperturbed_hamiltonian(basis);
  const double h0_scale = 1.0 + h0.max_abs();
  if (!exp.phi_[0].matrix().isIdentity(0.0)) throw InvariantError("expand: Phi_0 is not the identity");
  for (int p = 1; p <= order; ++p) {
    const auto up = static_cast<std::size_t>(p);
    const Operator& kp = exp.k_[up];
    if (!is_hermitian(exp.f_[up])) throw InvariantError("expand: " + indexed("F", p) + " is not Hermitian");
    if (!is_hermitian(exp.w_[up])) throw InvariantError("expand: " + indexed("W", p) + " is not Hermitian");
    if (!is_hermitian(kp)) throw InvariantError("expand: " + indexed("K", p) + " is not Hermitian");
    if (commutator(h0, kp).max_abs() > kHermitianTolerance * h0_scale * (1.0 + kp.max_abs())) {
      throw InvariantError("expand: " + indexed("K", p) + " does not commute with H_0");
    }
    Operator expected_avg = Operator::zero(dim);
    if (up <= options.gauge_shifts.size()) expected_avg = average(options.gauge_shifts[up - 1], basis);
    if (!(average(exp.w_[up], basis) - expected_avg).matrix().isZero(0.0)) {
      throw InvariantError("expand: average(" + indexed("W", p) + ") differs from the gauge choice");
    }
  }
  return exp;
}

Operator k_truncated(const Expansion& exp, double epsilon) {
  if (!std::isfinite(epsilon)) throw InputError("k_truncated: epsilon must be finite");
  Matrix sum = exp.k(0).matrix();
  double weight = 1.0;
  for (int p = 1; p <= exp.order(); ++p) {
    weight *= epsilon / static_cast<double>(p);
    sum += weight * exp.k(p).matrix();
  }
  return Operator(std::move(sum));
}

Operator phi_truncated(const Expansion& exp, double epsilon) {
  if (!std::isfinite(epsilon)) throw InputError("phi_truncated: epsilon must be finite");
  Matrix sum = exp.phi(0).matrix();
  double weight = 1.0;
  for (int p = 1; p <= exp.order(); ++p) {
    weight *= epsilon / static_cast<double>(p);
    sum += weight * exp.phi(p).matrix();
  }
  return Operator(std::move(sum));
}

EigenReport eigen_report(const Expansion& exp, double epsilon) {
  const Basis& basis = exp.basis();
  const Matrix k = k_truncated(exp, epsilon).matrix();
  const Matrix phi = phi_truncated(exp, epsilon).matrix();
  const Matrix h = series_eval(exp.hamiltonian(), epsilon).matrix();
  const auto n = static_cast<Eigen::Index>(basis.dim());

  EigenReport report;
  report.epsilon = epsilon;
  for (std::size_t j = 0; j < basis.level_count(); ++j) {
    const auto idx = basis.level_indices(j);
    const auto d = static_cast<Eigen::Index>(idx.size());

    LevelBlock block;
    block.level = j;
    if (d == 1) {
      block.eigenvalues = {k(static_cast<Eigen::Index>(idx[0]), static_cast<Eigen::Index>(idx[0])).real()};
      block.mixing = Matrix::Identity(1, 1);
    } else {
      Matrix sub(d, d);
      for (Eigen::Index a = 0; a < d; ++a)
        for (Eigen::Index b = 0; b < d; ++b)
          sub(a, b) = k(static_cast<Eigen::Index>(idx[static_cast<std::size_t>(a)]),
                        static_cast<Eigen::Index>(idx[static_cast<std::size_t>(b)]));
      Eigen::SelfAdjointEigenSolver<Matrix> solver(sub);
      block.eigenvalues.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + d);
      block.mixing = solver.eigenvectors();
    }

    for (Eigen::Index a = 0; a < d; ++a) {
      Vector mixed = Vector::Zero(n);
      for (Eigen::Index b = 0; b < d; ++b) mixed(static_cast<Eigen::Index>(idx[static_cast<std::size_t>(b)])) = block.mixing(b, a);
      EigenState state;
      state.level = j;
      state.slot = static_cast<std::size_t>(a);
      state.eigenvalue = block.eigenvalues[static_cast<std::size_t>(a)];
      state.vector = phi * mixed;
      state.vector.normalize();
      state.residual = (h * state.vector - state.eigenvalue * state.vector).norm();
      report.states.push_back(std::move(state));
    }
    report.blocks.push_back(std::move(block));
  }
  return report;
}

std::vector<double> residual_norms(const Expansion& exp, double epsilon) {
  const EigenReport report = eigen_report(exp, epsilon);
  std::vector<double> out;
  out.reserve(report.states.size());
  for (const auto& s : report.states) out.push_back(s.residual);
  return out;
}

std::vector<double> eigenvalue_polynomial(const Expansion& exp, std::size_t level) {
  const auto idx = exp.basis().level_indices(level);
  if (idx.size() != 1) {
    throw InputError("eigenvalue_polynomial: level " + std::to_string(level) + " is degenerate (d = " +
                     std::to_string(idx.size()) + ")");
  }
  std::vector<double> coeffs;
  for (int p = 0; p <= exp.order(); ++p) {
    coeffs.push_back(exp.k(p)(idx[0], idx[0]).real() / static_cast<double>(factorial(p)));
  }
  return coeffs;
}

}  // namespace qavg
