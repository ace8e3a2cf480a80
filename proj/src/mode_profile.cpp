#include "polariton/mode_profile.hpp"

#include <cmath>
#include <stdexcept>

#include "polariton/params.hpp"

namespace polariton {

void ModeProfile::validate() const {
  if (omega <= 0) throw std::invalid_argument("ModeProfile: omega must be > 0");
  if (quality <= 0) throw std::invalid_argument("ModeProfile: Q must be > 0");
  if (a <= 0) throw std::invalid_argument("ModeProfile: lattice constant must be > 0");
  if (!has_grid() && !has_fourier()) {
    throw std::invalid_argument("ModeProfile: no field representation present");
  }
  if (!ex.empty() && !ey.empty() && (ex.nx != ey.nx || ex.ny != ey.ny)) {
    throw std::invalid_argument("ModeProfile: component grid shapes differ");
  }
}

double toy_default_omega(int p) {
  if (p == 1) return si::two_pi * 0.339e12;
  if (p == 2) return si::two_pi * 0.384e12;
  throw std::invalid_argument("toy_default_omega: p must be 1 or 2");
}

ModeProfile toy_mode_profile(int p, double eps, int grid_n, const ToyParams& tp) {
  if (p != 1 && p != 2) throw std::invalid_argument("toy_mode_profile: p must be 1 or 2");
  if (eps < 0.0 || eps > 1.0) {
    throw std::invalid_argument("toy_mode_profile: eps must lie in [0,1]");
  }
  if (grid_n < 4) throw std::invalid_argument("toy_mode_profile: grid too small");

  ModeProfile mp;
  mp.p = p;
  mp.sigma = tp.component;
  mp.a = tp.a;
  if (p == 1) {
    mp.omega = tp.omega1 > 0 ? tp.omega1 : toy_default_omega(1);
    mp.quality = tp.q1;
  } else {
    mp.omega = tp.omega2 > 0 ? tp.omega2 : toy_default_omega(2);
    mp.quality = tp.q2;
  }

  const double phi = (p == 2) ? (1.0 - eps) * si::pi / 2.0 : 0.0;
  Grid2D grid(grid_n, grid_n);
  for (int iy = 0; iy < grid_n; ++iy) {
    const double sy = std::sin(si::two_pi * iy / grid_n + phi);
    for (int ix = 0; ix < grid_n; ++ix) {
      grid.at(ix, iy) = std::sin(si::two_pi * ix / grid_n + phi) * sy;
    }
  }

  // sin(u+phi)sin(v+phi) has exactly four Fourier components:
  //   c(1,-1) = c(-1,1) = 1/4,  c(1,1) = -exp(2 i phi)/4,  c(-1,-1) = conj.
  FourierField ff;
  ff.insert({-1, -1}, -0.25 * std::exp(std::complex<double>(0.0, -2.0 * phi)));
  ff.insert({-1, 1}, 0.25);
  ff.insert({1, -1}, 0.25);
  ff.insert({1, 1}, -0.25 * std::exp(std::complex<double>(0.0, 2.0 * phi)));

  if (tp.component == Pol::y) {
    mp.ey = std::move(grid);
    mp.fy = std::move(ff);
  } else {
    mp.ex = std::move(grid);
    mp.fx = std::move(ff);
  }
  return mp;
}

void VolumeProfile::validate() const {
  if (omega <= 0 || a <= 0) throw std::invalid_argument("VolumeProfile: bad omega or a");
  if (nx <= 0 || ny <= 0 || z.size() < 2) {
    throw std::invalid_argument("VolumeProfile: needs nx,ny > 0 and >= 2 z samples");
  }
  for (size_t i = 1; i < z.size(); ++i) {
    if (z[i] <= z[i - 1]) throw std::invalid_argument("VolumeProfile: z not ascending");
  }
  const size_t n = static_cast<size_t>(nx) * ny * z.size();
  for (const auto* comp : {&ex, &ey, &ez, &eps}) {
    if (!comp->empty() && comp->size() != n) {
      throw std::invalid_argument("VolumeProfile: component size mismatch");
    }
  }
  if (ex.empty() && ey.empty() && ez.empty()) {
    throw std::invalid_argument("VolumeProfile: no field components");
  }
}

namespace {

inline size_t vidx(const VolumeProfile& vp, int ix, int iy, int iz) {
  return (static_cast<size_t>(iz) * vp.ny + iy) * vp.nx + ix;
}

inline double comp_at(const std::vector<double>& v, size_t i) {
  return v.empty() ? 0.0 : v[i];
}

}  // namespace

VacuumMaps vacuum_maps(const VolumeProfile& vp, double z_ref, double norm_tol) {
  vp.validate();
  const int nz = vp.nz();
  const double cellw = 1.0 / (static_cast<double>(vp.nx) * vp.ny);

  // u(z) = (1/a^2) \int eps |E|^2 dxdy, trapezoid weights along z.
  std::vector<double> u(nz, 0.0);
  for (int iz = 0; iz < nz; ++iz) {
    double s = 0.0;
    for (int iy = 0; iy < vp.ny; ++iy) {
      for (int ix = 0; ix < vp.nx; ++ix) {
        const size_t i = vidx(vp, ix, iy, iz);
        const double e2 = comp_at(vp.ex, i) * comp_at(vp.ex, i) +
                          comp_at(vp.ey, i) * comp_at(vp.ey, i) +
                          comp_at(vp.ez, i) * comp_at(vp.ez, i);
        s += (vp.eps.empty() ? 1.0 : vp.eps[i]) * e2;
      }
    }
    u[iz] = s * cellw;
  }

  auto trapz = [&](const std::vector<double>& f) {
    double s = 0.0;
    for (int iz = 0; iz + 1 < nz; ++iz) {
      s += 0.5 * (f[iz] + f[iz + 1]) * (vp.z[iz + 1] - vp.z[iz]);
    }
    return s;
  };

  VacuumMaps out;
  out.z = vp.z;
  out.norm = trapz(u) / vp.a;
  if (std::abs(out.norm - 1.0) > norm_tol) {
    throw std::runtime_error("vacuum_maps: profile normalization integral is " +
                             std::to_string(out.norm) + ", outside tolerance " +
                             std::to_string(norm_tol) + " of 1");
  }

  std::vector<double> zu(nz), z2u(nz);
  for (int iz = 0; iz < nz; ++iz) zu[iz] = vp.z[iz] * u[iz];
  out.zbar = trapz(zu) / vp.a / out.norm;
  for (int iz = 0; iz < nz; ++iz) {
    z2u[iz] = (vp.z[iz] - out.zbar) * (vp.z[iz] - out.zbar) * u[iz];
  }
  out.sigma_z = std::sqrt(trapz(z2u) / vp.a / out.norm);

  out.intensity_z.resize(nz);
  const double iscale = si::hbar * vp.omega / (4.0 * vp.a);
  for (int iz = 0; iz < nz; ++iz) out.intensity_z[iz] = iscale * u[iz];

  // In-plane standard deviation of the vacuum field at the slice nearest z_ref.
  int iz0 = 0;
  for (int iz = 1; iz < nz; ++iz) {
    if (std::abs(vp.z[iz] - z_ref) < std::abs(vp.z[iz0] - z_ref)) iz0 = iz;
  }
  out.e_std = Grid2D(vp.nx, vp.ny);
  const double escale = si::hbar * vp.omega / (2.0 * si::eps0 * vp.a * vp.a * vp.a);
  for (int iy = 0; iy < vp.ny; ++iy) {
    for (int ix = 0; ix < vp.nx; ++ix) {
      const size_t i = vidx(vp, ix, iy, iz0);
      const double e2 = comp_at(vp.ex, i) * comp_at(vp.ex, i) +
                        comp_at(vp.ey, i) * comp_at(vp.ey, i);
      out.e_std.at(ix, iy) = std::sqrt(escale * e2);
    }
  }
  return out;
}

}  // namespace polariton
