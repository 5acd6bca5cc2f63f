#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "qavg/basis.hpp"
#include "qavg/operator.hpp"

namespace qavg {

/// Highest supported expansion order; binomial and factorial weights are
/// exact integers up to here.
inline constexpr int kMaxOrder = 12;

struct ExpansionOptions {
  /// Optional gauge shifts v_1, v_2, ...: W_p = S(F_p) + v_p. Each v_p must be
  /// Hermitian and commute with H0 (block diagonal). Empty means the
  /// canonical gauge average(W_p) = 0.
  std::vector<Operator> gauge_shifts;
};

/// Order-N averaging expansion of H(eps) = sum_p (eps^p / p!) H_p.
///
/// Holds F_1..F_N, the generators W_1..W_N, the normal-form terms K_0..K_N
/// (K_0 = H0, K_p = average(F_p)), the unitary-series terms Phi_0..Phi_N and
/// every application T_q(H_m) computed while building F. Immutable after
/// expand() returns.
class Expansion {
 public:
  int order() const noexcept { return order_; }
  double hbar() const noexcept { return hamiltonian_.hbar(); }
  const Basis& basis() const noexcept { return basis_; }
  const OperatorSeries& hamiltonian() const noexcept { return hamiltonian_; }

  const Operator& f(int p) const;    ///< p in 1..N
  const Operator& w(int p) const;    ///< p in 1..N
  const Operator& k(int p) const;    ///< p in 0..N
  const Operator& phi(int p) const;  ///< p in 0..N

  /// T_q(H_m). Returns the memoized value when expand() needed it, otherwise
  /// computes it (without mutating the expansion). Requires q <= order().
  Operator apply_T(int q, int m) const;
  bool has_cached_T(int q, int m) const { return t_cache_.contains({q, m}); }
  std::size_t t_cache_size() const noexcept { return t_cache_.size(); }

 private:
  friend Expansion expand(const OperatorSeries&, const Basis&, int, const ExpansionOptions&);

  Operator compute_T(int q, int m, std::map<std::pair<int, int>, Operator>& cache) const;

  int order_ = 0;
  Basis basis_;
  OperatorSeries hamiltonian_;
  std::vector<Operator> f_;    // index 0 holds F_0 = 0
  std::vector<Operator> w_;    // index 0 unused (zero)
  std::vector<Operator> k_;
  std::vector<Operator> phi_;
  std::map<std::pair<int, int>, Operator> t_cache_;
};

/// Runs the recursion to order N (1 <= N <= kMaxOrder).
///
/// Throws HermiticityError / DimensionError for bad input, InputError when H_0
/// is not the diagonal of basis energies, and InvariantError if a built term
/// fails its structural check (K_p Hermitian and commuting with H0, W_p
/// Hermitian with the requested average, Phi_0 = 1).
Expansion expand(const OperatorSeries& h, const Basis& basis, int order, const ExpansionOptions& options = {});

/// K^N(eps) = sum_{p<=N} (eps^p / p!) K_p. Block diagonal.
Operator k_truncated(const Expansion& exp, double epsilon);

/// Phi^N(eps) = sum_{p<=N} (eps^p / p!) Phi_p.
Operator phi_truncated(const Expansion& exp, double epsilon);

/// Diagonalized level block of K^N(eps).
struct LevelBlock {
  std::size_t level = 0;
  std::vector<double> eigenvalues;  ///< ascending
  Matrix mixing;                    ///< column a = coefficients c_{beta a} of eigenvector a
};

struct EigenState {
  std::size_t level = 0;
  std::size_t slot = 0;  ///< position in the ascending order within the block
  double eigenvalue = 0.0;
  Vector vector;         ///< Phi^N(eps) applied to the mixed basis vector, normalized
  double residual = 0.0; ///< ||H(eps) v - E v||_2
};

struct EigenReport {
  double epsilon = 0.0;
  std::vector<LevelBlock> blocks;
  std::vector<EigenState> states;  ///< level-major, ascending within a level
};

EigenReport eigen_report(const Expansion& exp, double epsilon);

/// Residuals ||H(eps) v - E^N v||_2 for every state of eigen_report().
std::vector<double> residual_norms(const Expansion& exp, double epsilon);

/// Coefficients c_p = <j|K_p|j> / p! of E^N_j(eps) = sum_p c_p eps^p for a
/// non-degenerate level. Throws InputError for degenerate levels.
std::vector<double> eigenvalue_polynomial(const Expansion& exp, std::size_t level);

/// Exact binomial coefficient for 0 <= k <= n <= kMaxOrder.
long long binomial(int n, int k);

/// Exact factorial for 0 <= n <= kMaxOrder.
long long factorial(int n);

}  // namespace qavg
