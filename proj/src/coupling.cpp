#include "polariton/coupling.hpp"

#include <cmath>
#include <stdexcept>

namespace polariton {

namespace {

FourierField scaled(const FourierField& f, std::complex<double> s) {
  FourierField out = f;
  for (auto& z : out.c) z *= s;
  return out;
}

Grid2D scaled(const Grid2D& f, double s) {
  Grid2D out = f;
  for (auto& x : out.v) x *= s;
  return out;
}

}  // namespace

ModeCoupling coupling_field(const ModeProfile& mp, double omega_c,
                            const PhysParams& par, double chirality) {
  mp.validate();
  par.validate();
  if (omega_c <= 0) throw std::invalid_argument("coupling_field: omega_c must be > 0");
  if (chirality != 1.0 && chirality != -1.0) {
    throw std::invalid_argument("coupling_field: chirality must be +1 or -1");
  }

  ModeCoupling mc;
  mc.p = mp.p;
  mc.sigma = mp.sigma;
  mc.omega = mp.omega;
  mc.quality = mp.quality;
  mc.prefactor = std::sqrt(par.e_charge * par.e_charge * omega_c * par.n_e /
                           (4.0 * par.eps0 * par.m_eff * mp.omega * par.a));

  if (!mp.ex.empty()) mc.gx = scaled(mp.ex, mc.prefactor);
  if (!mp.ey.empty()) mc.gy = scaled(mp.ey, mc.prefactor);
  if (!mp.fx.empty()) mc.gx_f = scaled(mp.fx, mc.prefactor);
  if (!mp.fy.empty()) mc.gy_f = scaled(mp.fy, mc.prefactor);

  // gt = gy - i s gx combines the components into the cyclotron-active
  // circular channel; s flips with the field direction.
  mc.gt_f = mc.gy_f;
  const std::complex<double> mis(0.0, -chirality);
  for (size_t i = 0; i < mc.gx_f.size(); ++i) {
    mc.gt_f.insert(mc.gx_f.g[i], mis * mc.gx_f.c[i]);
  }
  return mc;
}

CouplingSet build_couplings(const std::vector<ModeProfile>& profiles, double b_field,
                            const PhysParams& par) {
  if (profiles.empty()) throw std::invalid_argument("build_couplings: no profiles");
  if (b_field == 0.0) {
    throw std::invalid_argument("build_couplings: B = 0 rejected "
                                "(quadratic-term coefficients diverge)");
  }
  CouplingSet cs;
  cs.b_field = b_field;
  cs.chirality = b_field > 0 ? 1.0 : -1.0;
  cs.omega_c = cyclotron_frequency(std::abs(b_field), par);
  cs.a = profiles.front().a;
  for (const auto& mp : profiles) {
    if (mp.a != cs.a) throw std::invalid_argument("build_couplings: mixed lattice constants");
    cs.modes.push_back(coupling_field(mp, cs.omega_c, par, cs.chirality));
  }
  return cs;
}

std::complex<double> gtilde_inner(const CouplingSet& cs, int i, int j) {
  const auto& mi = cs.modes.at(i);
  const auto& mj = cs.modes.at(j);
  if (mi.has_grid() && mj.has_grid()) {
    // <gt_i, gt_j> = <gy_i,gy_j> + <gx_i,gx_j> + i s (<gy_i,gx_j> - <gx_i,gy_j>)
    // for real sampled components.
    auto dot = [](const Grid2D& f, const Grid2D& g) {
      if (f.empty() || g.empty()) return 0.0;
      return cell_mean_product(f, g);
    };
    const double re = dot(mi.gy, mj.gy) + dot(mi.gx, mj.gx);
    const double im = cs.chirality * (dot(mi.gy, mj.gx) - dot(mi.gx, mj.gy));
    return {re, im};
  }
  if (mi.has_fourier() && mj.has_fourier()) return fourier_inner(mi.gt_f, mj.gt_f);
  throw std::invalid_argument("gtilde_inner: modes lack a common representation");
}

double effective_coupling(const CouplingSet& cs, int i) {
  return std::sqrt(std::real(gtilde_inner(cs, i, i)));
}

std::complex<double> overlap_xi(const CouplingSet& cs, int i, int j) {
  const double oi = effective_coupling(cs, i);
  const double oj = effective_coupling(cs, j);
  if (oi == 0.0 || oj == 0.0) {
    throw std::invalid_argument("overlap_xi: vanishing effective coupling");
  }
  return gtilde_inner(cs, i, j) / (oi * oj);
}

Eigen::MatrixXd a2_coefficients(const CouplingSet& cs) {
  if (cs.omega_c <= 0) throw std::invalid_argument("a2_coefficients: omega_c must be > 0");
  const int n = cs.n_modes();
  Eigen::MatrixXd d(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const auto& mi = cs.modes[i];
      const auto& mj = cs.modes[j];
      double s = 0.0;
      if (mi.has_grid() && mj.has_grid()) {
        auto dot = [](const Grid2D& f, const Grid2D& g) {
          if (f.empty() || g.empty()) return 0.0;
          return cell_mean_product(f, g);
        };
        s = dot(mi.gx, mj.gx) + dot(mi.gy, mj.gy);
      } else if (mi.has_fourier() && mj.has_fourier()) {
        // Re sum_G g_i(G) conj(g_j(G)) per component: the symmetrized
        // (Hermitian) coefficient, equal to the real-space integral for real
        // fields.
        s = std::real(fourier_inner(mi.gx_f, mj.gx_f) + fourier_inner(mi.gy_f, mj.gy_f));
      } else {
        throw std::invalid_argument("a2_coefficients: modes lack representations");
      }
      d(i, j) = s / cs.omega_c;
      d(j, i) = d(i, j);
    }
  }
  return d;
}

std::complex<double> fom_eta(const CouplingSet& cs, int i, int j) {
  const double wi = cs.modes.at(i).omega;
  const double wj = cs.modes.at(j).omega;
  const std::complex<double> radicand =
      gtilde_inner(cs, i, j) / (cs.omega_c * 0.5 * (wi + wj));
  return std::sqrt(radicand);  // principal branch; complex when overlap is
}

std::complex<double> fom_lambda(const CouplingSet& cs, Pol sigma) {
  int i1 = -1, i2 = -1;
  for (int k = 0; k < cs.n_modes(); ++k) {
    if (cs.modes[k].sigma != sigma) continue;
    if (i1 < 0 || cs.modes[k].p < cs.modes[i1].p) {
      i2 = i1;
      i1 = k;
    } else if (i2 < 0 || cs.modes[k].p < cs.modes[i2].p) {
      i2 = k;
    }
  }
  if (i2 < 0) {
    throw std::invalid_argument("fom_lambda: polarization family has fewer than two modes");
  }
  const double w1 = cs.modes[i1].omega;
  const double w2 = cs.modes[i2].omega;
  if (w1 == w2) throw std::invalid_argument("fom_lambda: degenerate mode frequencies");
  return std::sqrt(gtilde_inner(cs, i1, i2) / (cs.omega_c * (w2 - w1)));
}

}  // namespace polariton
