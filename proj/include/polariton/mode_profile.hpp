#pragma once

#include <string>
#include <vector>

#include "polariton/fourier.hpp"
#include "polariton/grid.hpp"

namespace polariton {

enum class Pol { x, y };

inline const char* pol_name(Pol s) { return s == Pol::x ? "x" : "y"; }

// One cavity mode: frequency, loss, and the in-plane electric field profile
// at the electron-gas plane, normalized so that the full-cell energy integral
// of the vacuum field is one (profiles here are the dimensionless envelopes).
// Either representation may be present; operations pick the grid when both are.
struct ModeProfile {
  int p = 1;               // mode index within its polarization family
  Pol sigma = Pol::y;      // polarization label
  double omega = 0.0;      // mode frequency [rad/s]
  double quality = 0.0;    // quality factor (dimensionless)
  double a = 0.0;          // lattice constant [m]

  Grid2D ex, ey;           // sampled envelope components (dimensionless)
  FourierField fx, fy;     // Fourier representation of the same components

  bool has_grid() const { return !ex.empty() || !ey.empty(); }
  bool has_fourier() const { return !fx.empty() || !fy.empty(); }
  void validate() const;
};

// Analytic two-mode test family on a square cell, linearly polarized along
// `component`:
//   p=1: E(x,y) = sin(2 pi x/a) sin(2 pi y/a)
//   p=2: E(x,y) = sin(2 pi x/a + phi) sin(2 pi y/a + phi),  phi = (1-eps) pi/2
// eps in [0,1] tunes the overlap between the two profiles from orthogonal
// (eps=0) to identical-pattern (eps=1). Both grid and Fourier representations
// are filled; the Fourier set has exactly four coefficients of magnitude 1/4.
struct ToyParams {
  double omega1 = 0.0;     // defaults applied in toy_mode_profile [rad/s]
  double omega2 = 0.0;
  double q1 = 72.0;
  double q2 = 70.0;
  double a = 333e-6;       // [m]
  Pol component = Pol::y;
};

ModeProfile toy_mode_profile(int p, double eps, int grid_n, const ToyParams& tp = {});

// Default toy frequencies, 2 pi x {0.339, 0.384} THz.
double toy_default_omega(int p);

// Volumetric profile for vacuum-field maps: field components and dielectric
// profile on an nx x ny x nz cell grid. Storage (iz*ny + iy)*nx + ix, x
// fastest. z samples ascending [m]; z integration uses the trapezoid rule.
// Empty component vectors mean identically zero; empty eps means 1.
struct VolumeProfile {
  double omega = 0.0;      // [rad/s]
  double a = 0.0;          // [m]
  int nx = 0, ny = 0;
  std::vector<double> z;   // [m]
  std::vector<double> ex, ey, ez;  // dimensionless envelopes
  std::vector<double> eps;         // relative permittivity

  int nz() const { return static_cast<int>(z.size()); }
  void validate() const;
};

// Vacuum expectation maps of one mode:
//   intensity_z(z) = (hbar omega / (4 a)) (1/a^2) \int eps |E|^2 dxdy   [J/m]
//   e_std(x,y)     = sqrt(hbar omega/(2 eps0 a^3) (Ex^2+Ey^2)) at z_ref [V/m]
//   zbar, sigma_z  = first and second moments of the energy density along z
// The profile must satisfy the normalization contract
//   \int (dxdy/a^2)(dz/a) eps |E|^2 = 1 within norm_tol, else this throws
// with the measured value in the message.
struct VacuumMaps {
  std::vector<double> z;           // [m]
  std::vector<double> intensity_z; // [J/m]
  Grid2D e_std;                    // [V/m]
  double zbar = 0.0;               // [m]
  double sigma_z = 0.0;            // [m]
  double norm = 0.0;               // measured normalization integral
};

VacuumMaps vacuum_maps(const VolumeProfile& vp, double z_ref, double norm_tol = 1e-3);

}  // namespace polariton
