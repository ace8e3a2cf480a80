#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "polariton/grid.hpp"
#include "polariton/mode_profile.hpp"
#include "polariton/params.hpp"

using namespace polariton;

TEST_CASE("cyclotron frequency matches e B / m_eff") {
  PhysParams par;
  const double wc = cyclotron_frequency(0.81, par);
  // Independently evaluated e*0.81/(0.067 m_e) / 2 pi.
  CHECK(wc / si::two_pi == doctest::Approx(338.4166686e9).epsilon(1e-9));
  CHECK(cyclotron_frequency(0.0, par) == 0.0);
  CHECK_THROWS_AS(cyclotron_frequency(-0.1, par), std::invalid_argument);

  PhysParams bad;
  bad.n_e = 0.0;
  CHECK_THROWS_AS(cyclotron_frequency(0.5, bad), std::invalid_argument);
}

TEST_CASE("magnetic length and filling factor reference values") {
  PhysParams par;
  CHECK(magnetic_length(1.0, par) == doctest::Approx(2.56556418074e-8).epsilon(1e-10));
  // nu = 2 pi n_e hbar / (e B)
  CHECK(filling_factor(0.81, par) == doctest::Approx(157.257487639).epsilon(1e-10));
  CHECK_THROWS_AS(magnetic_length(0.0, par), std::invalid_argument);
}

TEST_CASE("cell averages are spectrally exact for band-limited fields") {
  const int n = 32;
  Grid2D f(n, n), g(n, n);
  for (int iy = 0; iy < n; ++iy) {
    for (int ix = 0; ix < n; ++ix) {
      f.at(ix, iy) = std::sin(si::two_pi * ix / n) * std::sin(si::two_pi * iy / n);
      g.at(ix, iy) = 2.0 + std::cos(si::two_pi * (ix + 2.0 * iy) / n);
    }
  }
  CHECK(std::abs(cell_mean(f)) < 1e-15);
  CHECK(cell_mean(g) == doctest::Approx(2.0).epsilon(1e-14));
  // \int sin^2 sin^2 = 1/4
  CHECK(cell_mean_product(f, f) == doctest::Approx(0.25).epsilon(1e-14));
  Grid2D wrong(n / 2, n);
  CHECK_THROWS_AS(cell_mean_product(f, wrong), std::invalid_argument);
}

TEST_CASE("toy profiles: analytic values, defaults, validation") {
  const auto m1 = toy_mode_profile(1, 1.0, 64);
  CHECK(m1.omega == doctest::Approx(si::two_pi * 0.339e12));
  CHECK(m1.quality == 72.0);
  CHECK(m1.a == doctest::Approx(333e-6));
  CHECK(m1.sigma == Pol::y);
  CHECK(m1.ey.at(16, 16) == doctest::Approx(1.0).epsilon(1e-14));  // quarter cell
  CHECK(m1.fy.size() == 4);
  for (const auto& c : m1.fy.c) CHECK(std::abs(c) == doctest::Approx(0.25).epsilon(1e-14));

  // p=2 at eps=1 has the same pattern as p=1.
  const auto m2same = toy_mode_profile(2, 1.0, 64);
  for (size_t i = 0; i < m1.ey.v.size(); ++i) {
    CHECK(m2same.ey.v[i] == doctest::Approx(m1.ey.v[i]).epsilon(1e-12).scale(1.0));
  }

  CHECK_THROWS_AS(toy_mode_profile(3, 1.0, 64), std::invalid_argument);
  CHECK_THROWS_AS(toy_mode_profile(1, 1.5, 64), std::invalid_argument);
  CHECK_THROWS_AS(toy_mode_profile(1, -0.1, 64), std::invalid_argument);
  CHECK_THROWS_AS(toy_mode_profile(1, 0.5, 2), std::invalid_argument);

  ToyParams tp;
  tp.component = Pol::x;
  const auto mx = toy_mode_profile(1, 1.0, 32, tp);
  CHECK(mx.ey.empty());
  CHECK(!mx.ex.empty());
}

namespace {

// Gaussian energy profile along z, uniform in plane, analytically normalized:
//   eps = 1, Ex = f(z), f^2 = (a / (sigma sqrt(2 pi))) exp(-(z-z0)^2/(2 sigma^2))
VolumeProfile gaussian_slab(double z0, double sigma, double a, int nz) {
  VolumeProfile vp;
  vp.omega = si::two_pi * 0.35e12;
  vp.a = a;
  vp.nx = 4;
  vp.ny = 4;
  const double z_lo = z0 - 6.0 * sigma, z_hi = z0 + 6.0 * sigma;
  for (int i = 0; i < nz; ++i) {
    vp.z.push_back(z_lo + (z_hi - z_lo) * i / (nz - 1));
  }
  vp.ex.resize(static_cast<size_t>(vp.nx) * vp.ny * nz);
  for (int iz = 0; iz < nz; ++iz) {
    const double f2 = a / (sigma * std::sqrt(si::two_pi)) *
                      std::exp(-0.5 * (vp.z[iz] - z0) * (vp.z[iz] - z0) / (sigma * sigma));
    for (int i = 0; i < vp.nx * vp.ny; ++i) {
      vp.ex[static_cast<size_t>(iz) * vp.nx * vp.ny + i] = std::sqrt(f2);
    }
  }
  return vp;
}

}  // namespace

TEST_CASE("vacuum maps: moments of a gaussian energy profile") {
  const double a = 333e-6, z0 = 40e-6, sig = 8e-6;
  const auto vp = gaussian_slab(z0, sig, a, 801);
  const auto vm = vacuum_maps(vp, z0);

  CHECK(std::abs(vm.norm - 1.0) < 1e-3);
  // Mean position sits at the gaussian center (first moment, no square root).
  CHECK(vm.zbar == doctest::Approx(z0).epsilon(1e-6));
  CHECK(vm.sigma_z == doctest::Approx(sig).epsilon(1e-3));

  // Intensity scale at the center slice: hbar omega/(4a) * u(z0).
  const double u0 = a / (sig * std::sqrt(si::two_pi));
  int iz0 = 0;
  for (size_t i = 0; i < vp.z.size(); ++i) {
    if (std::abs(vp.z[i] - z0) < std::abs(vp.z[iz0] - z0)) iz0 = static_cast<int>(i);
  }
  CHECK(vm.intensity_z[iz0] ==
        doctest::Approx(si::hbar * vp.omega / (4.0 * a) * u0).epsilon(1e-10));

  // In-plane std of the vacuum field at z0: sqrt(hbar omega/(2 eps0 a^3) Ex^2).
  const double ex0 = std::sqrt(u0);
  const double expect = std::sqrt(si::hbar * vp.omega / (2.0 * si::eps0 * a * a * a)) * ex0;
  CHECK(vm.e_std.at(1, 2) == doctest::Approx(expect).epsilon(1e-10));

  // Breaking the normalization contract reports the measured integral.
  auto bad = vp;
  for (auto& v : bad.ex) v *= 1.1;
  CHECK_THROWS_WITH_AS(vacuum_maps(bad, z0), doctest::Contains("normalization"),
                       std::runtime_error);
}

TEST_CASE("vacuum maps: dielectric weighting shifts the mean") {
  // Two equal field lobes; eps = 4 on the right lobe triples its weight share.
  VolumeProfile vp;
  vp.omega = si::two_pi * 0.4e12;
  vp.a = 100e-6;
  vp.nx = 2;
  vp.ny = 2;
  const int nz = 2001;
  const double zhi = 100e-6;
  for (int i = 0; i < nz; ++i) vp.z.push_back(zhi * i / (nz - 1));
  vp.ey.resize(static_cast<size_t>(vp.nx) * vp.ny * nz, 0.0);
  vp.eps.resize(vp.ey.size(), 1.0);
  // Left lobe on z in [20,30) um with eps 1, right lobe [70,80) um with eps 4;
  // choose field so total integral is 1: u_L * 10um + 4 u_R * 10um = a.
  for (int iz = 0; iz < nz; ++iz) {
    const double z = vp.z[iz];
    double e2 = 0.0, ep = 1.0;
    if (z >= 20e-6 && z < 30e-6) e2 = 1.0;
    if (z >= 70e-6 && z < 80e-6) {
      e2 = 1.0;
      ep = 4.0;
    }
    for (int i = 0; i < 4; ++i) {
      const size_t k = static_cast<size_t>(iz) * 4 + i;
      vp.ey[k] = std::sqrt(e2 * vp.a / 50e-6);
      vp.eps[k] = ep;
    }
  }
  const auto vm = vacuum_maps(vp, 0.0, 5e-3);
  // zbar = (1*25 + 4*75)/(1+4) um
  CHECK(vm.zbar == doctest::Approx(65e-6).epsilon(2e-3));
}
