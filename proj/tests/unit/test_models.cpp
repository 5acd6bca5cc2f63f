#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>

#include <json.hpp>

#include "qavg/averaging.hpp"
#include "qavg/errors.hpp"
#include "support.hpp"

using namespace qavg;
using qtest::max_abs;

TEST_CASE("ladder operators") {
  const Ladder l1 = ladder(1);
  Matrix a1(2, 2);
  a1 << 0, 1, 0, 0;
  CHECK(l1.lower.matrix() == a1);

  const Ladder l = ladder(6);
  CHECK(l.lower(3, 4) == Complex(2.0));
  CHECK(l.raise.matrix() == l.lower.matrix().adjoint());
  Matrix expect = Matrix::Identity(7, 7);
  expect(6, 6) = -6.0;
  CHECK(max_abs(commutator(l.lower, l.raise).matrix() - expect) < 1e-13);
  CHECK_THROWS_AS(ladder(0), InputError);
}

TEST_CASE("quartic oscillator matrix") {
  const Model m = anharmonic(20);
  const Matrix h1 = m.hamiltonian.coefficient(1).matrix();
  CHECK(m.basis.dim() == 21);
  CHECK(h1(0, 0).real() == doctest::Approx(3.0 / 16.0).epsilon(1e-15));
  CHECK(qtest::x_power_element(4, 0, 0) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(h1(4, 0).real() == doctest::Approx(std::sqrt(24.0) / 16).epsilon(1e-15));
  for (Eigen::Index j = 0; j < 21; ++j)
    for (Eigen::Index k = 0; k < 21; ++k) {
      const auto d = std::abs(j - k);
      if (d != 0 && d != 2 && d != 4) CHECK(h1(j, k) == Complex(0.0));
      // Entries near the cutoff are those of the untruncated operator.
      CHECK(h1(j, k).real() == doctest::Approx(qtest::x_power_element(4, std::size_t(j), std::size_t(k)) / 4).epsilon(1e-12));
    }
  for (std::size_t j = 0; j < 21; ++j) CHECK(m.hamiltonian.coefficient(0)(j, j).real() == j + 0.5);
  CHECK_THROWS_AS(anharmonic(11), InputError);
}

TEST_CASE("Henon-Heiles matrix") {
  const double a = 0.3, b = 0.2;
  const std::size_t cut = 9;
  const Model m = henon_heiles(cut, a, b);
  CHECK(m.basis.dim() == (cut + 1) * (cut + 2) / 2);
  CHECK(m.basis.level(0).degeneracy == 1);
  CHECK(m.basis.level(1).degeneracy == 2);
  CHECK(m.basis.level(2).degeneracy == 3);
  CHECK(m.basis.level(2).energy == 3.0);
  CHECK(m.state_labels.at(0) == "(0,0)");

  const Operator h1 = m.hamiltonian.coefficient(1);
  CHECK(max_abs(average(h1, m.basis).matrix()) < 1e-15);

  // States are ordered by total quanta, then n1: (0,0), (0,1), (1,0), (0,2), (1,1), (2,0), (0,3), ...
  auto idx = [](std::size_t n1, std::size_t n2) { const std::size_t k = n1 + n2; return k * (k + 1) / 2 + n1; };
  CHECK(m.state_labels.at(idx(2, 1)) == "(2,1)");
  const double x3_30 = qtest::x_power_element(3, 3, 0);
  CHECK(x3_30 == doctest::Approx(std::sqrt(6.0) / std::pow(2.0, 1.5)).epsilon(1e-15));
  CHECK(h1(idx(0, 3), idx(0, 0)).real() == doctest::Approx(b * x3_30).epsilon(1e-14));
  CHECK(h1(idx(0, 1), idx(0, 0)).real() ==
        doctest::Approx(b * qtest::x_power_element(3, 1, 0) + a * qtest::x_power_element(2, 0, 0) * std::sqrt(0.5)).epsilon(1e-14));
  CHECK(h1(idx(2, 1), idx(0, 0)).real() == doctest::Approx(a * qtest::x_power_element(2, 2, 0) * std::sqrt(0.5)).epsilon(1e-14));

  // x1 -> -x1 parity commutes with both H0 and H1.
  std::vector<double> parity(m.basis.dim());
  for (std::size_t k = 0; k <= cut; ++k)
    for (std::size_t n1 = 0; n1 <= k; ++n1) parity[idx(n1, k - n1)] = (n1 % 2 == 0) ? 1.0 : -1.0;
  const Operator p = Operator::diagonal(parity);
  CHECK(max_abs(commutator(p, h1).matrix()) == 0.0);
  CHECK(max_abs(commutator(p, m.hamiltonian.coefficient(0)).matrix()) == 0.0);
  CHECK_THROWS_AS(henon_heiles(7, a, b), InputError);
}

TEST_CASE("default truncations") {
  CHECK(default_anharmonic_nmax(10, 2) >= 60);
  CHECK(default_anharmonic_nmax(30, 4) > 30 + 8);
  CHECK(default_henon_heiles_cutoff(2, 2) >= 14);
}

TEST_CASE("model files") {
  SUBCASE("minimal file") {
    const Model m = parse_model(R"({"name": "pair", "h0_diagonal": [0.5, 1.5],
      "perturbations": {"1": [[[0,0],[0.2,0.1]], [[0.2,-0.1],[0,0]]]}})");
    CHECK(m.name == "pair");
    CHECK(m.basis.level_count() == 2);
    CHECK(m.basis.level(0).degeneracy == 1);
    CHECK(m.hamiltonian.coefficient(1)(0, 1) == Complex(0.2, 0.1));
    CHECK(m.hamiltonian.hbar() == 1.0);
  }
  SUBCASE("absent orders are zero") {
    const Model m = parse_model(R"({"h0_diagonal": [0, 1], "hbar": 2,
      "perturbations": {"2": [[[1,0],[0,0]], [[0,0],[1,0]]]}})");
    CHECK(m.hamiltonian.order() == 2);
    CHECK(max_abs(m.hamiltonian.coefficient(1).matrix()) == 0.0);
    CHECK(m.hamiltonian.hbar() == 2.0);
  }
  SUBCASE("non-Hermitian perturbation names the entry") {
    try {
      (void)parse_model(R"({"h0_diagonal": [0.5, 1.5],
        "perturbations": {"1": [[[0,0],[0.3,0]], [[0.1,0],[0,0]]]}})");
      FAIL("expected HermiticityError");
    } catch (const HermiticityError& e) {
      CHECK(e.row() == 0);
      CHECK(e.col() == 1);
      CHECK(std::string(e.what()).find("(0,1)") != std::string::npos);
    }
  }
  SUBCASE("errors name the field") {
    auto message = [](const char* text) {
      try {
        (void)parse_model(text);
      } catch (const InputError& e) {
        return std::string(e.what());
      }
      return std::string();
    };
    CHECK(message("{").size() > 0);
    CHECK(message(R"({"perturbations": {}})").find("h0_diagonal") != std::string::npos);
    CHECK(message(R"({"h0_diagonal": [0, 1], "perturbations": {"1": [[[0,0],[0,0]]]}})").find("perturbations.1") !=
          std::string::npos);
    CHECK(message(R"({"h0_diagonal": [0, 1], "perturbations": {"1": [[[0,0],[0,"x"]], [[0,0],[0,0]]]}})")
              .find("perturbations.1[0][1]") != std::string::npos);
    CHECK(message(R"({"h0_diagonal": [0, 1], "perturbations": {"0": [[[0,0],[0,0]], [[0,0],[0,0]]]}})").size() > 0);
    CHECK(message(R"({"h0_diagonal": [0, 1], "hbar": -1})").find("hbar") != std::string::npos);
  }
  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(parse_model(R"({"h0_diagonal": [0, 1, 2], "perturbations": {"1": [[[0,0],[0,0]], [[0,0],[0,0]]]}})"),
                    DimensionError);
  }
  SUBCASE("round trip") {
    const Model m = henon_heiles(8, 0.13, 0.07);
    const std::filesystem::path path = std::filesystem::temp_directory_path() / "qavg_round_trip.json";
    save_model(m, path);
    const Model back = load_model(path);
    std::filesystem::remove(path);
    CHECK(back.basis == m.basis);
    CHECK(back.hamiltonian.order() == m.hamiltonian.order());
    for (std::size_t p = 0; p <= m.hamiltonian.order(); ++p)
      CHECK(back.hamiltonian.coefficient(p).matrix() == m.hamiltonian.coefficient(p).matrix());
    CHECK(model_to_json(back) == model_to_json(m));
    CHECK(nlohmann::json::parse(model_to_json(m)).contains("perturbations"));
  }
  SUBCASE("missing file") { CHECK_THROWS_AS(load_model("/nonexistent/model.json"), InputError); }
}
