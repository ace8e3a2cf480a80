#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "polariton/coupling.hpp"
#include "polariton/mode_profile.hpp"
#include "polariton/params.hpp"

using namespace polariton;

namespace {

std::vector<ModeProfile> toy_pair(double eps, int n = 48) {
  return {toy_mode_profile(1, eps, n), toy_mode_profile(2, eps, n)};
}

// Cell mean of sin(u+p1)sin(v+p1) * sin(u+p2)sin(v+p2) by direct quadrature,
// independent of the Grid2D machinery.
double pattern_overlap(double p1, double p2) {
  const int n = 400;
  double s = 0.0;
  for (int iy = 0; iy < n; ++iy) {
    for (int ix = 0; ix < n; ++ix) {
      const double u = 2.0 * M_PI * ix / n, v = 2.0 * M_PI * iy / n;
      s += std::sin(u + p1) * std::sin(v + p1) * std::sin(u + p2) * std::sin(v + p2);
    }
  }
  return s / (static_cast<double>(n) * n);
}

}  // namespace

TEST_CASE("coupling prefactor: reference values and sqrt(B) scaling") {
  PhysParams par;
  const auto cs = build_couplings(toy_pair(1.0), 0.81, par);
  REQUIRE(cs.n_modes() == 2);
  CHECK(cs.chirality == 1.0);
  CHECK(cs.omega_c == doctest::Approx(cyclotron_frequency(0.81, par)));
  // Independently evaluated sqrt(e^2 omega_c n_e / (4 eps0 m omega_p a)).
  CHECK(cs.modes[0].prefactor == doctest::Approx(1.04713674421e12).epsilon(1e-10));
  CHECK(cs.modes[1].prefactor == doctest::Approx(9.83869814024e11).epsilon(1e-10));

  const auto cs4 = build_couplings(toy_pair(1.0), 4.0 * 0.81, par);
  CHECK(cs4.modes[0].prefactor ==
        doctest::Approx(2.0 * cs.modes[0].prefactor).epsilon(1e-12));
}

TEST_CASE("effective couplings of the toy pair") {
  PhysParams par;
  const auto cs = build_couplings(toy_pair(1.0), 0.81, par);
  const double om1 = effective_coupling(cs, 0);
  const double om2 = effective_coupling(cs, 1);
  // Omega_i = prefactor_i / 2 since the pattern mean-square is 1/4.
  CHECK(om1 == doctest::Approx(5.23568372104e11).epsilon(1e-10));
  CHECK(om1 / si::two_pi == doctest::Approx(83.32849447e9).epsilon(1e-9));
  CHECK(om2 == doctest::Approx(4.91934907012e11).epsilon(1e-10));
  CHECK(om1 == doctest::Approx(0.5 * cs.modes[0].prefactor).epsilon(1e-12));

  // Self inner product is structurally real.
  CHECK(std::abs(gtilde_inner(cs, 0, 0).imag()) == 0.0);
  CHECK(std::abs(gtilde_inner(cs, 1, 1).imag()) == 0.0);

  const auto cs4 = build_couplings(toy_pair(1.0), 4.0 * 0.81, par);
  CHECK(effective_coupling(cs4, 0) == doctest::Approx(2.0 * om1).epsilon(1e-12));
}

TEST_CASE("mode overlap follows the tunable pattern angle") {
  PhysParams par;
  for (double eps : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const auto cs = build_couplings(toy_pair(eps), 0.81, par);
    const double phi = (1.0 - eps) * si::pi / 2.0;
    const auto xi = overlap_xi(cs, 0, 1);
    CHECK(std::abs(xi.imag()) < 1e-12);
    CHECK(xi.real() == doctest::Approx(std::cos(phi) * std::cos(phi)).epsilon(1e-10));
    // Independent quadrature oracle: xi = <f1,f2> / sqrt(<f1,f1><f2,f2>).
    const double num = pattern_overlap(0.0, phi);
    const double den = std::sqrt(pattern_overlap(0.0, 0.0) * pattern_overlap(phi, phi));
    CHECK(xi.real() == doctest::Approx(num / den).epsilon(1e-10).scale(1.0));

    CHECK(std::abs(overlap_xi(cs, 0, 0) - 1.0) < 1e-14);
    CHECK(std::abs(overlap_xi(cs, 1, 1) - 1.0) < 1e-14);
    CHECK(std::abs(xi) <= 1.0 + 1e-14);
    CHECK(std::abs(overlap_xi(cs, 1, 0) - std::conj(xi)) < 1e-14);
  }
}

TEST_CASE("grid and Fourier representations give identical inner products") {
  PhysParams par;
  for (double eps : {1.0, 0.35}) {
    const auto cs = build_couplings(toy_pair(eps), 0.81, par);
    auto cf = cs;
    for (auto& m : cf.modes) {
      m.gx = Grid2D();
      m.gy = Grid2D();
    }
    REQUIRE(!cf.modes[0].has_grid());
    REQUIRE(cf.modes[0].has_fourier());
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        const auto zg = gtilde_inner(cs, i, j);
        const auto zf = gtilde_inner(cf, i, j);
        CHECK(std::abs(zg - zf) < 1e-8 * std::abs(zg) + 1e-3);
      }
    }
    const auto dg = a2_coefficients(cs);
    const auto df = a2_coefficients(cf);
    CHECK((dg - df).norm() < 1e-8 * dg.norm());
  }
}

TEST_CASE("quadratic-term coefficients: analytic values, symmetry, PSD") {
  PhysParams par;
  const double eps = 0.5;
  const auto cs = build_couplings(toy_pair(eps), 0.81, par);
  const auto d = a2_coefficients(cs);
  REQUIRE(d.rows() == 2);
  const double om1 = effective_coupling(cs, 0);
  const double om2 = effective_coupling(cs, 1);
  const double cphi = std::cos((1.0 - eps) * si::pi / 2.0);
  CHECK(d(0, 0) == doctest::Approx(om1 * om1 / cs.omega_c).epsilon(1e-12));
  CHECK(d(1, 1) == doctest::Approx(om2 * om2 / cs.omega_c).epsilon(1e-12));
  CHECK(d(0, 1) == doctest::Approx(om1 * om2 * cphi * cphi / cs.omega_c).epsilon(1e-10));
  CHECK(d(0, 1) == d(1, 0));

  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(d);
  CHECK(es.eigenvalues().minCoeff() >= -1e-9 * es.eigenvalues().maxCoeff());

  // D is built from |B|-independent field patterns divided by omega_c times
  // omega_c from the prefactors: net B-independent.
  const auto d2 = a2_coefficients(build_couplings(toy_pair(eps), 1.7, par));
  CHECK((d - d2).norm() < 1e-12 * d.norm());
}

TEST_CASE("figure of merit eta is field independent with frozen reference values") {
  PhysParams par;
  const auto at = [&](double eps, double b) {
    return fom_eta(build_couplings(toy_pair(eps), b, par), 0, 1);
  };
  CHECK(std::abs(at(1.0, 0.81) - 0.230930145921) < 1e-10);
  CHECK(std::abs(at(0.5, 0.81) - 0.163292272161) < 1e-10);
  CHECK(std::abs(at(1.0, 0.4) - at(1.0, 1.3)) < 1e-10 * std::abs(at(1.0, 0.4)));

  const auto cs = build_couplings(toy_pair(1.0), 0.81, par);
  const auto e11 = fom_eta(cs, 0, 0);
  CHECK(std::abs(e11 - 0.246018526627) < 1e-10);
  const double om1 = effective_coupling(cs, 0);
  CHECK(e11.real() ==
        doctest::Approx(om1 / std::sqrt(cs.omega_c * cs.modes[0].omega)).epsilon(1e-12));
}

TEST_CASE("inter-mode figure of merit on the toy pair") {
  PhysParams par;
  const auto cs = build_couplings(toy_pair(1.0), 0.81, par);
  const auto lam = fom_lambda(cs, Pol::y);
  CHECK(std::abs(lam - 0.654528443056) < 1e-10);
  CHECK_THROWS_AS(fom_lambda(cs, Pol::x), std::invalid_argument);

  CouplingSet one = cs;
  one.modes.resize(1);
  CHECK_THROWS_AS(fom_lambda(one, Pol::y), std::invalid_argument);

  ToyParams tp;
  tp.omega1 = si::two_pi * 0.35e12;
  tp.omega2 = tp.omega1;
  const std::vector<ModeProfile> deg = {toy_mode_profile(1, 1.0, 32, tp),
                                        toy_mode_profile(2, 1.0, 32, tp)};
  CHECK_THROWS_AS(fom_lambda(build_couplings(deg, 0.81, par), Pol::y),
                  std::invalid_argument);
}

TEST_CASE("crossed polarizations give an imaginary overlap with field-set phase") {
  PhysParams par;
  ToyParams tx;
  tx.component = Pol::x;
  const std::vector<ModeProfile> mixed = {toy_mode_profile(1, 1.0, 48),
                                          toy_mode_profile(2, 1.0, 48, tx)};
  const auto cs = build_couplings(mixed, 0.81, par);
  const auto z = gtilde_inner(cs, 0, 1);
  // gt = gy - i s gx puts a crossed pair on the imaginary axis, sign = s.
  CHECK(std::abs(z.real()) < 1e-10 * std::abs(z));
  CHECK(z.imag() > 0.0);
  CHECK(z.imag() == doctest::Approx(0.25 * cs.modes[0].prefactor *
                                    cs.modes[1].prefactor).epsilon(1e-10));

  const auto eta = fom_eta(cs, 0, 1);
  CHECK(std::arg(eta) == doctest::Approx(si::pi / 4.0).epsilon(1e-10));

  const auto neg = build_couplings(mixed, -0.81, par);
  CHECK(neg.chirality == -1.0);
  const auto zn = gtilde_inner(neg, 0, 1);
  CHECK(zn.imag() < 0.0);
  CHECK(std::abs(zn + z) < 1e-10 * std::abs(z));
  CHECK(std::arg(fom_eta(neg, 0, 1)) == doctest::Approx(-si::pi / 4.0).epsilon(1e-10));

  // Fourier path agrees, including the phase.
  auto cf = cs;
  for (auto& m : cf.modes) {
    m.gx = Grid2D();
    m.gy = Grid2D();
  }
  CHECK(std::abs(gtilde_inner(cf, 0, 1) - z) < 1e-8 * std::abs(z));
}

TEST_CASE("invalid coupling construction is rejected") {
  PhysParams par;
  CHECK_THROWS_AS(build_couplings(toy_pair(1.0), 0.0, par), std::invalid_argument);
  CHECK_THROWS_AS(build_couplings({}, 0.81, par), std::invalid_argument);

  ToyParams tp;
  tp.a = 200e-6;
  const std::vector<ModeProfile> mixed_a = {toy_mode_profile(1, 1.0, 32),
                                            toy_mode_profile(2, 1.0, 32, tp)};
  CHECK_THROWS_AS(build_couplings(mixed_a, 0.81, par), std::invalid_argument);

  const auto mp = toy_mode_profile(1, 1.0, 32);
  CHECK_THROWS_AS(coupling_field(mp, -1.0, par), std::invalid_argument);
  CHECK_THROWS_AS(coupling_field(mp, 2e12, par, 0.5), std::invalid_argument);
}
