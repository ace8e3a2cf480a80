#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "polariton/mode_profile.hpp"
#include "polariton/params.hpp"

namespace polariton {

// Spatially resolved coupling field of one cavity mode to the cyclotron
// transition: g_j(rho) = E_j(rho) * prefactor, with
//   prefactor = sqrt(e^2 omega_c n_e / (4 eps0 m_eff omega_p a))   [rad/s]
// and the chiral combination gt = g_y - i s g_x (s = chirality, +1 for B>0).
// Both representations mirror the source profile.
struct ModeCoupling {
  int p = 1;
  Pol sigma = Pol::y;
  double omega = 0.0;      // mode frequency [rad/s]
  double quality = 0.0;
  double prefactor = 0.0;  // [rad/s]

  Grid2D gx, gy;           // sampled coupling components [rad/s]
  FourierField gx_f, gy_f; // Fourier coupling components [rad/s]
  FourierField gt_f;       // gt = gy_f - i s gx_f [rad/s]

  bool has_grid() const { return !gx.empty() || !gy.empty(); }
  bool has_fourier() const { return !gt_f.empty(); }
};

// All couplings of a mode family at one magnetic field.
struct CouplingSet {
  double omega_c = 0.0;    // cyclotron frequency [rad/s]
  double b_field = 0.0;    // signed [T]
  double chirality = 1.0;  // sign(B); enters gt = gy - i s gx
  double a = 0.0;          // [m]
  std::vector<ModeCoupling> modes;

  int n_modes() const { return static_cast<int>(modes.size()); }
};

ModeCoupling coupling_field(const ModeProfile& mp, double omega_c,
                            const PhysParams& par, double chirality = 1.0);

// Builds the full set at signed field B: omega_c = e|B|/m_eff, chirality
// sign(B). B = 0 is rejected (the quadratic-term coefficients diverge).
CouplingSet build_couplings(const std::vector<ModeProfile>& profiles, double b_field,
                            const PhysParams& par);

// (1/a^2) \int gt_i conj(gt_j) dxdy  [rad^2/s^2]. Uses the grid representation
// when both modes carry one, else the Fourier representation.
std::complex<double> gtilde_inner(const CouplingSet& cs, int i, int j);

// Omega_i = sqrt(<gt_i, gt_i>), the effective (area-averaged) coupling [rad/s].
double effective_coupling(const CouplingSet& cs, int i);

// xi_ij = <gt_i, gt_j> / (Omega_i Omega_j), dimensionless overlap; |xi| <= 1
// and xi_ii = 1. Complex in general; real for identical-phase profiles.
std::complex<double> overlap_xi(const CouplingSet& cs, int i, int j);

// Quadratic-term coefficient matrix, symmetrized to be real:
//   D_ij = Re sum_j-comp <g_i,j , g_j,j> / omega_c   [rad/s]
// Real symmetric positive semidefinite by construction.
Eigen::MatrixXd a2_coefficients(const CouplingSet& cs);

// Field-independent figure of merit between modes i and j:
//   eta_ij = sqrt( <gt_i, gt_j> / (omega_c (omega_i+omega_j)/2) )
// Principal square root; complex when the overlap is. eta_ii is the usual
// single-mode coupling ratio Omega_i/sqrt(omega_c omega_i)... evaluated as the
// same formula with i=j.
std::complex<double> fom_eta(const CouplingSet& cs, int i, int j);

// Inter-mode figure of merit within one polarization family:
//   Lambda_sigma = sqrt( <gt_1, gt_2> / (omega_c (omega_2 - omega_1)) )
// taken between the two lowest-p modes of family sigma. Throws if the family
// has fewer than two modes or the two frequencies are degenerate.
std::complex<double> fom_lambda(const CouplingSet& cs, Pol sigma);

}  // namespace polariton
