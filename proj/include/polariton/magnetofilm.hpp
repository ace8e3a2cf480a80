#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "polariton/params.hpp"

namespace polariton {

// Drude magneto-plasma of a thin conducting sheet, e^{-i omega t} convention
// (absorption means Im eps >= 0). omega_pl stores sqrt(n_e e^2/(eps0 m_eff))
// built from the *sheet* density, so omega_pl^2/d (d = sheet thickness) is the
// usual 3D plasma frequency squared; the tensor formulas divide by d.
struct GyroParams {
  double eps_bg = 12.96;     // host permittivity
  double omega_pl = 0.0;     // [rad s^-1 m^(1/2)], see note above
  double gamma = 0.0;        // scattering rate [rad/s]
  double d = 2e-6;           // sheet thickness [m]
  double b_field = 0.0;      // signed [T]
  double m_eff = 0.067 * si::electron_mass;  // [kg]

  double omega_c_signed() const;  // e B / m_eff, sign of B kept
  void validate() const;
};

GyroParams gyro_from(const PhysParams& par, double b_field, double gamma,
                     double d, double eps_bg = 12.96);

// Full tensor, rows/cols (x,y,z):
//   eps_xx = eps_yy = eps_bg - omega_pl^2 (omega + i gamma) /
//            (omega d [(omega + i gamma)^2 - omega_c^2])
//   eps_xy = -eps_yx = +i omega_pl^2 omega_c /
//            (omega d [(omega + i gamma)^2 - omega_c^2])
//   eps_zz = eps_bg
// Odd in B through omega_c; eps_xy(B=0) = 0 identically.
Eigen::Matrix3cd permittivity_tensor(double omega, const GyroParams& gp);

// Circular eigenbasis e_pm = (x_hat pm i y_hat)/sqrt(2):
//   eps_pm = eps_xx -+ i eps_xy
// The cyclotron-resonant pole sits in eps_- for B > 0 (and swaps under B -> -B).
struct CircularPair {
  std::complex<double> plus;
  std::complex<double> minus;
};

CircularPair circular_eigenpermittivities(double omega, const GyroParams& gp);

// Normal-incidence stack: scalar dielectric layers plus exactly one
// gyrotropic sheet whose thickness is GyroParams.d. Vacuum on both sides.
struct Layer {
  double thickness = 0.0;   // [m]
  double eps = 1.0;         // relative permittivity (real, lossless host)
};

struct LayerStack {
  std::vector<Layer> layers;  // front to back; gyro sheet inserted at gyro_index
  int gyro_index = 0;         // position of the sheet within the stack order

  void validate() const;
};

// Complex amplitude transmission per circular channel plus the linear-basis
// reconstruction t_xx = (t_+ + t_-)/2, t_yx = i (t_+ - t_-)/2 (x-polarized
// input). Characteristic-matrix method per channel.
struct FilmSpectra {
  std::vector<double> freq;  // [Hz]
  std::vector<std::complex<double>> t_plus, t_minus;
  std::vector<std::complex<double>> t_xx, t_yx;

  std::vector<double> power_plus() const;   // |t_+|^2
  std::vector<double> power_minus() const;  // |t_-|^2
};

FilmSpectra film_transmission(const LayerStack& stack, const GyroParams& gp,
                              const std::vector<double>& freq_hz);

}  // namespace polariton
