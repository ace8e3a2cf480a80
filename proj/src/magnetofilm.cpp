#include "polariton/magnetofilm.hpp"

#include <cmath>
#include <stdexcept>

namespace polariton {

double GyroParams::omega_c_signed() const {
  return si::electron_charge * b_field / m_eff;
}

void GyroParams::validate() const {
  if (eps_bg < 1.0) throw std::invalid_argument("GyroParams: eps_bg must be >= 1");
  if (omega_pl < 0) throw std::invalid_argument("GyroParams: omega_pl must be >= 0");
  if (gamma < 0) throw std::invalid_argument("GyroParams: gamma must be >= 0");
  if (d <= 0) throw std::invalid_argument("GyroParams: thickness must be > 0");
  if (m_eff <= 0) throw std::invalid_argument("GyroParams: m_eff must be > 0");
}

GyroParams gyro_from(const PhysParams& par, double b_field, double gamma, double d,
                     double eps_bg) {
  par.validate();
  GyroParams gp;
  gp.eps_bg = eps_bg;
  gp.omega_pl = std::sqrt(par.n_e * par.e_charge * par.e_charge / (par.eps0 * par.m_eff));
  gp.gamma = gamma;
  gp.d = d;
  gp.b_field = b_field;
  gp.m_eff = par.m_eff;
  gp.validate();
  return gp;
}

Eigen::Matrix3cd permittivity_tensor(double omega, const GyroParams& gp) {
  gp.validate();
  if (omega <= 0) throw std::invalid_argument("permittivity_tensor: omega must be > 0");
  const double wc = gp.omega_c_signed();
  const double wpl2_3d = gp.omega_pl * gp.omega_pl / gp.d;  // sheet -> bulk
  const std::complex<double> wg(omega, gp.gamma);           // omega + i gamma
  const std::complex<double> den = omega * (wg * wg - wc * wc);

  Eigen::Matrix3cd eps = Eigen::Matrix3cd::Zero();
  const std::complex<double> exx = gp.eps_bg - wpl2_3d * wg / den;
  const std::complex<double> exy =
      std::complex<double>(0.0, 1.0) * wpl2_3d * wc / den;
  eps(0, 0) = exx;
  eps(1, 1) = exx;
  eps(2, 2) = gp.eps_bg;
  eps(0, 1) = exy;
  eps(1, 0) = -exy;
  return eps;
}

CircularPair circular_eigenpermittivities(double omega, const GyroParams& gp) {
  const Eigen::Matrix3cd eps = permittivity_tensor(omega, gp);
  const std::complex<double> i(0.0, 1.0);
  // Eigenvalues for e_pm = (x_hat pm i y_hat)/sqrt(2). The cyclotron pole at
  // omega ~ omega_c lands in eps_- when B > 0.
  return {eps(0, 0) - i * eps(0, 1), eps(0, 0) + i * eps(0, 1)};
}

void LayerStack::validate() const {
  if (gyro_index < 0 || gyro_index > static_cast<int>(layers.size())) {
    throw std::invalid_argument("LayerStack: gyro_index out of range");
  }
  for (const auto& l : layers) {
    if (l.thickness <= 0 || l.eps < 1.0) {
      throw std::invalid_argument("LayerStack: layers need thickness > 0 and eps >= 1");
    }
  }
}

namespace {

// Characteristic matrix of one homogeneous layer at normal incidence:
//   M = [[cos delta, i sin delta / n], [i n sin delta, cos delta]],
// delta = n k0 t. Valid for complex n with Im n >= 0.
Eigen::Matrix2cd layer_matrix(std::complex<double> n, double k0, double t) {
  const std::complex<double> delta = n * k0 * t;
  const std::complex<double> c = std::cos(delta);
  const std::complex<double> s = std::sin(delta);
  const std::complex<double> i(0.0, 1.0);
  Eigen::Matrix2cd m;
  m << c, i * s / n, i * n * s, c;
  return m;
}

std::complex<double> sqrt_upper(std::complex<double> z) {
  std::complex<double> r = std::sqrt(z);
  if (r.imag() < 0) r = -r;  // decaying-wave branch for the e^{-i omega t} convention
  return r;
}

}  // namespace

FilmSpectra film_transmission(const LayerStack& stack, const GyroParams& gp,
                              const std::vector<double>& freq_hz) {
  stack.validate();
  gp.validate();
  if (freq_hz.empty()) throw std::invalid_argument("film_transmission: empty grid");

  FilmSpectra out;
  out.freq = freq_hz;
  out.t_plus.resize(freq_hz.size());
  out.t_minus.resize(freq_hz.size());
  out.t_xx.resize(freq_hz.size());
  out.t_yx.resize(freq_hz.size());

  for (size_t k = 0; k < freq_hz.size(); ++k) {
    const double omega = si::two_pi * freq_hz[k];
    const double k0 = omega / si::c0;
    const CircularPair ep = circular_eigenpermittivities(omega, gp);

    auto channel = [&](std::complex<double> eps_gyro) {
      Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();
      int idx = 0;
      for (int pos = 0; pos <= static_cast<int>(stack.layers.size()); ++pos) {
        if (pos == stack.gyro_index) {
          m = m * layer_matrix(sqrt_upper(eps_gyro), k0, gp.d);
        }
        if (pos < static_cast<int>(stack.layers.size())) {
          const auto& l = stack.layers[static_cast<size_t>(idx)];
          m = m * layer_matrix(sqrt_upper(std::complex<double>(l.eps, 0.0)), k0,
                               l.thickness);
          ++idx;
        }
      }
      // Vacuum on both sides: t = 2 / (m00 + m01 + m10 + m11).
      return 2.0 / (m(0, 0) + m(0, 1) + m(1, 0) + m(1, 1));
    };

    const std::complex<double> tp = channel(ep.plus);
    const std::complex<double> tm = channel(ep.minus);
    out.t_plus[k] = tp;
    out.t_minus[k] = tm;
    // Linear reconstruction for x-polarized input.
    out.t_xx[k] = 0.5 * (tp + tm);
    out.t_yx[k] = std::complex<double>(0.0, 0.5) * (tp - tm);
  }
  return out;
}

std::vector<double> FilmSpectra::power_plus() const {
  std::vector<double> p(t_plus.size());
  for (size_t i = 0; i < t_plus.size(); ++i) p[i] = std::norm(t_plus[i]);
  return p;
}

std::vector<double> FilmSpectra::power_minus() const {
  std::vector<double> p(t_minus.size());
  for (size_t i = 0; i < t_minus.size(); ++i) p[i] = std::norm(t_minus[i]);
  return p;
}

}  // namespace polariton
