#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "polariton/magnetofilm.hpp"
#include "polariton/params.hpp"

using namespace polariton;
using cd = std::complex<double>;

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
  return v;
}

GyroParams sheet_at(double b, double gamma_ghz = 10.0) {
  PhysParams par;
  return gyro_from(par, b, si::two_pi * gamma_ghz * 1e9, 2e-6);
}

}  // namespace

TEST_CASE("permittivity tensor structure and zero-field limit") {
  const auto gp = sheet_at(0.0);
  CHECK(gp.omega_pl == doctest::Approx(38249828114.563965).epsilon(1e-12));

  const auto eps0t = permittivity_tensor(si::two_pi * 0.4e12, gp);
  CHECK(eps0t(0, 1) == cd(0.0, 0.0));
  CHECK(eps0t(1, 0) == cd(0.0, 0.0));
  CHECK(eps0t(2, 2) == cd(12.96, 0.0));
  CHECK(eps0t(0, 0) == eps0t(1, 1));
  CHECK(eps0t(0, 2) == cd(0.0, 0.0));

  const auto gpb = sheet_at(1.3);
  const auto e = permittivity_tensor(si::two_pi * 0.4e12, gpb);
  CHECK(e(1, 0) == -e(0, 1));
  CHECK(e(0, 1) != cd(0.0, 0.0));
  CHECK(e(2, 2) == cd(12.96, 0.0));

  CHECK_THROWS_AS(permittivity_tensor(0.0, gpb), std::invalid_argument);
}

TEST_CASE("field reversal swaps the circular eigenvalues exactly") {
  for (double f_ghz : {200.0, 500.0, 835.0, 1200.0}) {
    const double w = si::two_pi * f_ghz * 1e9;
    const auto p = circular_eigenpermittivities(w, sheet_at(1.7));
    const auto m = circular_eigenpermittivities(w, sheet_at(-1.7));
    CHECK(p.plus == m.minus);
    CHECK(p.minus == m.plus);
  }
}

TEST_CASE("circular eigenvalues diagonalize the in-plane block") {
  const auto gp = sheet_at(2.0);
  const double w = si::two_pi * 0.7e12;
  const auto eps = permittivity_tensor(w, gp);
  Eigen::Matrix2cd blk = eps.topLeftCorner<2, 2>();
  const Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(blk);
  const auto pair = circular_eigenpermittivities(w, gp);

  const cd e0 = es.eigenvalues()(0), e1 = es.eigenvalues()(1);
  const double direct =
      std::min(std::abs(e0 - pair.plus) + std::abs(e1 - pair.minus),
               std::abs(e0 - pair.minus) + std::abs(e1 - pair.plus));
  CHECK(direct < 1e-12 * std::abs(pair.minus));
}

TEST_CASE("dissipation sign: absorptive imaginary parts, pole in the minus channel") {
  const auto gp = sheet_at(2.0);
  const double wc = gp.omega_c_signed();
  for (double f : linspace(50e9, 1500e9, 80)) {
    const auto p = circular_eigenpermittivities(si::two_pi * f, gp);
    CHECK(p.plus.imag() >= 0.0);
    CHECK(p.minus.imag() >= 0.0);
  }
  const auto at_res = circular_eigenpermittivities(wc, gp);
  CHECK(at_res.minus.imag() > 100.0 * at_res.plus.imag());
}

TEST_CASE("inactive sheet reduces the stack to a textbook dielectric slab") {
  GyroParams gp;
  gp.omega_pl = 0.0;
  gp.gamma = 0.0;
  gp.b_field = 0.0;
  gp.d = 50e-6;
  gp.eps_bg = 4.0;
  LayerStack stack;  // sheet only

  const auto freq = linspace(0.1e12, 1.2e12, 160);
  const auto fs = film_transmission(stack, gp, freq);
  const double n = 2.0;
  for (size_t k = 0; k < freq.size(); ++k) {
    const double delta = n * si::two_pi * freq[k] / si::c0 * gp.d;
    // Airy summation of internal reflections, algebraically independent of
    // the characteristic-matrix route. One-pass phase is e^{-i delta} in the
    // matrix bookkeeping used here (cf. the vacuum limit t = e^{-i delta}).
    const cd r = (1.0 - n) / (1.0 + n);
    const cd ph(std::cos(delta), -std::sin(delta));
    const cd t_airy = (1.0 - r * r) * ph / (1.0 - r * r * ph * ph);
    CHECK(std::abs(fs.t_plus[k] - t_airy) < 1e-10);
    // Classic power formula.
    const double s = std::sin(delta);
    const double want =
        1.0 / (1.0 + std::pow((n * n - 1.0) / (2.0 * n), 2) * s * s);
    CHECK(std::norm(fs.t_plus[k]) == doctest::Approx(want).epsilon(1e-10));
    CHECK(fs.t_minus[k] == fs.t_plus[k]);
    CHECK(fs.t_yx[k] == cd(0.0, 0.0));
  }

  // Half-wave thickness transmits fully.
  const double f_halfwave = si::c0 / (2.0 * n * gp.d);
  const auto fu = film_transmission(stack, gp, {f_halfwave});
  CHECK(std::norm(fu.t_plus[0]) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("cyclotron absorption dips the minus channel at the expected field") {
  const auto gp = sheet_at(2.0);  // gamma/2pi = 10 GHz
  const double fc = gp.omega_c_signed() / si::two_pi;  // 835.6 GHz
  LayerStack stack;

  const auto freq = linspace(0.70e12, 0.95e12, 1001);  // 0.25 GHz steps
  const auto fs = film_transmission(stack, gp, freq);
  const auto pm = fs.power_minus();
  const auto pp = fs.power_plus();

  size_t kmin = 0;
  for (size_t k = 1; k < pm.size(); ++k) {
    if (pm[k] < pm[kmin]) kmin = k;
  }
  CHECK(std::abs(freq[kmin] - fc) < 0.5 * gp.gamma / si::two_pi);
  // Contrast: the resonant channel absorbs, the other passes.
  CHECK(pm[kmin] < 0.5);
  double pp_min = 1.0;
  for (double v : pp) pp_min = std::min(pp_min, v);
  CHECK(pp_min > 0.8);
}

TEST_CASE("linear-basis reconstruction is consistent and vanishes off field") {
  const auto freq = linspace(0.3e12, 1.0e12, 60);
  LayerStack stack;
  stack.layers = {{30e-6, 12.96}};
  stack.gyro_index = 1;

  const auto fs = film_transmission(stack, sheet_at(1.1), freq);
  for (size_t k = 0; k < freq.size(); ++k) {
    const cd lhs = fs.t_xx[k] - cd(0.0, 1.0) * fs.t_yx[k];
    CHECK(std::abs(lhs - fs.t_plus[k]) < 1e-14);
    CHECK(std::abs(fs.t_yx[k]) > 0.0);  // field-induced rotation present
  }

  const auto f0 = film_transmission(stack, sheet_at(0.0), freq);
  for (size_t k = 0; k < freq.size(); ++k) CHECK(f0.t_yx[k] == cd(0.0, 0.0));
}

TEST_CASE("invalid film configurations are rejected") {
  GyroParams gp = sheet_at(1.0);
  LayerStack stack;
  stack.layers = {{30e-6, 12.96}};

  stack.gyro_index = 2;
  CHECK_THROWS_AS(film_transmission(stack, gp, {0.4e12}), std::invalid_argument);
  stack.gyro_index = -1;
  CHECK_THROWS_AS(film_transmission(stack, gp, {0.4e12}), std::invalid_argument);
  stack.gyro_index = 0;
  CHECK_THROWS_AS(film_transmission(stack, gp, {}), std::invalid_argument);

  stack.layers = {{0.0, 12.96}};
  CHECK_THROWS_AS(film_transmission(stack, gp, {0.4e12}), std::invalid_argument);
  stack.layers = {{30e-6, 0.5}};
  CHECK_THROWS_AS(film_transmission(stack, gp, {0.4e12}), std::invalid_argument);

  GyroParams bad = gp;
  bad.gamma = -1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = gp;
  bad.d = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = gp;
  bad.eps_bg = 0.2;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
