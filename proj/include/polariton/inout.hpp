#pragma once

#include <Eigen/Dense>
#include <vector>

#include "polariton/hopfield.hpp"

namespace polariton {

// Loss channels entering the input-output equations. Photon modes are
// two-port (radiative decay split equally between input and output mirrors);
// matter modes decay at gamma_matter into a non-radiative bath.
struct DissipationSpec {
  std::vector<double> gamma_photon;  // per photon mode, omega_p/Q [rad/s]
  double gamma_matter = 0.0;         // [rad/s]

  void validate(int n_photon) const;
};

// gamma_photon from the stored Q factors, gamma_matter from par.gamma_c.
DissipationSpec dissipation_from(const HopfieldMatrix& hm, const PhysParams& par);

// Power transmission at one field configuration. Input drives all photon
// modes of polarization pol_in coherently with equal amplitude through their
// input port; output collects polarization pol_out at the output port:
//   T(omega) = sum_out (Gamma/2)|<a>|^2 / (N_in |s_in|^2).
// Steady state of d<Psi>/dt = -(i K M + Gamma/2)<Psi> + sqrt(Gamma/2) s e^{-i omega t}.
struct SpectrumSeries {
  std::vector<double> freq;  // drive frequency [Hz]
  std::vector<double> t;     // power transmission, dimensionless
  double b_field = 0.0;      // [T]
  Pol pol_in = Pol::y;
  Pol pol_out = Pol::y;
};

SpectrumSeries transmission_spectrum(const HopfieldMatrix& hm, const DissipationSpec& ds,
                                     const std::vector<double>& freq_hz, Pol pol_in,
                                     Pol pol_out);

// Transmission over a (B, frequency) raster; t(i,k) at b_grid[i], freq_hz[k].
// Rows are independent and computed in parallel when threads > 1.
struct TransmissionMap {
  std::vector<double> b_grid;   // [T]
  std::vector<double> freq;     // [Hz]
  Eigen::MatrixXd t;            // nB x nF
  Pol pol_in = Pol::y;
  Pol pol_out = Pol::y;
};

TransmissionMap transmission_map(const std::vector<ModeProfile>& profiles,
                                 const std::vector<double>& b_grid,
                                 const std::vector<double>& freq_hz,
                                 const PhysParams& par, const HamiltonianFlags& flags,
                                 Pol pol_in, Pol pol_out, int threads = 1);

}  // namespace polariton
