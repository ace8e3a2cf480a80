#include "polariton/params.hpp"

#include <cmath>

namespace polariton {

double cyclotron_frequency(double b_field, const PhysParams& p) {
  p.validate();
  if (b_field < 0) {
    throw std::invalid_argument("cyclotron_frequency: B must be >= 0; "
                                "carry field reversal via the chirality sign");
  }
  return p.e_charge * b_field / p.m_eff;
}

double magnetic_length(double b_field, const PhysParams& p) {
  p.validate();
  if (b_field <= 0) throw std::invalid_argument("magnetic_length: B must be > 0");
  return std::sqrt(p.hbar / (p.e_charge * b_field));
}

double filling_factor(double b_field, const PhysParams& p) {
  const double lc = magnetic_length(b_field, p);
  return si::two_pi * p.n_e * lc * lc;
}

}  // namespace polariton
