#pragma once

#include <stdexcept>

namespace polariton {

namespace si {
inline constexpr double electron_charge = 1.602176634e-19;  // C
inline constexpr double electron_mass = 9.1093837015e-31;   // kg
inline constexpr double hbar = 1.054571817e-34;             // J s
inline constexpr double eps0 = 8.8541878128e-12;            // F/m
inline constexpr double c0 = 299792458.0;                   // m/s
inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;
}  // namespace si

// Material and geometry parameters of the coupled cavity/2DEG system.
// All SI. n_e is the *total* sheet density summed over quantum wells;
// callers splitting per-well densities do so before constructing this.
struct PhysParams {
  double n_e = 3.08e16;                          // sheet density [1/m^2]
  double m_eff = 0.067 * si::electron_mass;      // effective mass [kg]
  double a = 333e-6;                             // lattice constant [m]
  double gamma_c = si::two_pi * 5.7e9;           // matter linewidth [rad/s]
  double hbar = si::hbar;                        // [J s]
  double e_charge = si::electron_charge;         // [C]
  double eps0 = si::eps0;                        // [F/m]

  void validate() const {
    if (n_e <= 0 || m_eff <= 0 || a <= 0 || gamma_c < 0 || hbar <= 0 ||
        e_charge <= 0 || eps0 <= 0) {
      throw std::invalid_argument("PhysParams: all parameters must be positive"
                                  " (gamma_c may be zero)");
    }
  }
};

// omega_c = e B / m_eff. B must be non-negative; callers modelling reversed
// fields carry the sign separately (see CouplingSet::chirality).
double cyclotron_frequency(double b_field, const PhysParams& p);

// l_c = sqrt(hbar / (e B)), B > 0.
double magnetic_length(double b_field, const PhysParams& p);

// nu = 2 pi n_e l_c^2 (spin-resolved Landau filling), B > 0.
double filling_factor(double b_field, const PhysParams& p);

}  // namespace polariton
