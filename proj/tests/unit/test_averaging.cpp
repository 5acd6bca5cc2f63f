#include <doctest.h>

#include "qavg/averaging.hpp"
#include "qavg/checks.hpp"
#include "support.hpp"

using namespace qavg;
using qtest::max_abs;

namespace {

Basis three_levels(std::size_t dim, CounterRng& rng) {
  std::vector<double> e(dim);
  for (std::size_t i = 0; i < dim; ++i) e[i] = double(rng.below(3)) * 1.5;
  e[0] = 0.0, e[1] = 1.5, e[2] = 3.0;
  return make_basis(e, 1e-9);
}

}  // namespace

TEST_CASE("average keeps level blocks") {
  const std::vector<double> e{0.0, 1.0, 1.0, 2.0};
  const Basis b = make_basis(e, 1e-9);
  Matrix g = Matrix::Constant(4, 4, Complex(1.0, 0.5));
  const Matrix avg = average(Operator(g), b).matrix();
  for (Eigen::Index i = 0; i < 4; ++i)
    for (Eigen::Index k = 0; k < 4; ++k) {
      const bool same = b.level_of(std::size_t(i)) == b.level_of(std::size_t(k));
      CHECK(avg(i, k) == (same ? g(i, k) : Complex(0)));
    }

  const std::vector<double> d{3.0, -1.0, 2.0, 0.5};
  CHECK(average(Operator::diagonal(d), b).matrix() == Operator::diagonal(d).matrix());
}

TEST_CASE("average of the quartic perturbation") {
  const Model m = anharmonic(24);
  const Matrix avg = average(m.hamiltonian.coefficient(1), m.basis).matrix();
  CHECK(avg(0, 0).real() == doctest::Approx(3.0 / 16.0).epsilon(1e-14));
  for (std::size_t j = 0; j <= 20; ++j) {
    const double brute = qtest::x_power_element(4, j, j) / 4;
    CHECK(avg(j, j).real() == doctest::Approx(brute).epsilon(1e-13));
    CHECK(avg(j, j).real() == doctest::Approx(qtest::anharmonic_c1(double(j))).epsilon(1e-13));
  }
  CHECK(max_abs(avg - Matrix(avg.diagonal().asDiagonal())) == 0.0);
}

TEST_CASE("average of the Henon-Heiles perturbation vanishes") {
  const Model m = henon_heiles(10, 0.1, 0.1);
  CHECK(max_abs(m.hamiltonian.coefficient(1).matrix()) > 0.0);
  CHECK(max_abs(average(m.hamiltonian.coefficient(1), m.basis).matrix()) < 1e-15);
}

TEST_CASE("s_map") {
  SUBCASE("block-diagonal input") {
    const std::vector<double> e{0.0, 1.0, 1.0};
    const Basis b = make_basis(e, 1e-9);
    Matrix g = Matrix::Zero(3, 3);
    g(1, 2) = Complex(2, 1);
    g(2, 1) = Complex(2, -1);
    g(0, 0) = 5;
    CHECK(max_abs(s_map(Operator(g), b, 1.0).matrix()) == 0.0);
    CHECK(max_abs(s_map(unperturbed_hamiltonian(b), b, 1.0).matrix()) == 0.0);
  }
  SUBCASE("quartic generator element") {
    const Model m = anharmonic(20);
    const Matrix w = s_map(m.hamiltonian.coefficient(1), m.basis, 1.0).matrix();
    const Complex expect = std::sqrt(24.0) / (64.0 * Complex(0, 1));
    CHECK(std::abs(w(4, 0) - expect) < 1e-15);
    CHECK(w(4, 0).imag() == doctest::Approx(-0.0765466).epsilon(1e-6));
    // The same value from the raw element: <4|x^4/4|0> / (E4 - E0) / i
    CHECK(std::abs(w(4, 0) - qtest::x_power_element(4, 4, 0) / 4 / 4.0 / Complex(0, 1)) < 1e-15);
  }
  SUBCASE("hbar scales the generator") {
    const Model m = anharmonic(12);
    const Matrix w1 = s_map(m.hamiltonian.coefficient(1), m.basis, 1.0).matrix();
    const Matrix w2 = s_map(m.hamiltonian.coefficient(1), m.basis, 2.0).matrix();
    CHECK(max_abs(w2 - 2.0 * w1) < 1e-15);
  }
}

TEST_CASE("homological identity") {
  SUBCASE("diagonal input gives exact zeros") {
    const std::vector<double> e{0.0, 1.0, 1.0, 4.0};
    const std::vector<double> d{1.0, 2.0, 3.0, 4.0};
    const HomologicalResidual r = check_homological(Operator::diagonal(d), make_basis(e, 1e-9), 1.0);
    CHECK(r.homological == 0.0);
    CHECK(r.commutation == 0.0);
  }
  SUBCASE("random Hermitian, 16 states on 3 levels") {
    CounterRng rng(42);
    for (int t = 0; t < 10; ++t) {
      const Basis b = three_levels(16, rng);
      const HomologicalResidual r = check_homological(random_hermitian(rng, 16), b, 1.0);
      CHECK(r.homological < 1e-10);
      CHECK(r.commutation < 1e-10);
      CHECK(r.passed());
    }
  }
  SUBCASE("quartic perturbation") {
    const Model m = anharmonic(30);
    const HomologicalResidual r = check_homological(m.hamiltonian.coefficient(1), m.basis, 1.0);
    CHECK(r.homological < 1e-10);
    CHECK(r.commutation < 1e-10);
  }
}

TEST_CASE("averaging algebra on random operators") {
  CounterRng rng(3);
  for (int t = 0; t < 20; ++t) {
    const Basis b = three_levels(9, rng);
    const Operator g = random_hermitian(rng, 9), h = random_hermitian(rng, 9);
    const Operator avg = average(g, b);
    CHECK(average(avg, b).matrix() == avg.matrix());
    CHECK(max_abs(average(s_map(g, b, 1.0), b).matrix()) == 0.0);
    CHECK(is_hermitian(s_map(g, b, 1.0)));
    // Products of two block-diagonal operators stay block diagonal.
    const Operator prod = avg * average(h, b);
    CHECK(max_abs((prod - average(prod, b)).matrix()) == 0.0);
  }
}
