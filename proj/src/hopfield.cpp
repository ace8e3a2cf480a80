#include "polariton/hopfield.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "polariton/util.hpp"

namespace polariton {

Eigen::MatrixXcd HopfieldMatrix::doubled() const {
  const int l = dim();
  Eigen::MatrixXcd m(2 * l, 2 * l);
  m.topLeftCorner(l, l) = block_a;
  m.topRightCorner(l, l) = block_b;
  m.bottomLeftCorner(l, l) = block_b.conjugate();
  m.bottomRightCorner(l, l) = block_a.conjugate();
  return m;
}

HopfieldMatrix build_hamiltonian(const CouplingSet& cs, const HamiltonianFlags& flags) {
  if (flags.rwa_only && flags.antiresonant_only) {
    throw std::invalid_argument("build_hamiltonian: rwa_only and antiresonant_only"
                                " are mutually exclusive");
  }
  if (cs.omega_c <= 0) throw std::invalid_argument("build_hamiltonian: omega_c must be > 0");

  const int np = cs.n_modes();
  HopfieldMatrix hm;
  hm.flags = flags;
  hm.omega_c = cs.omega_c;
  hm.b_field = cs.b_field;
  hm.n_photon = np;
  for (const auto& m : cs.modes) hm.photons.push_back({m.p, m.sigma, m.omega, m.quality});

  if (flags.decoupled) {
    // Reference model: each photon mode couples to its own matter mode with
    // the area-averaged strength Omega_p; no cross-mode terms survive.
    hm.n_matter = np;
    const int l = 2 * np;
    hm.block_a = Eigen::MatrixXcd::Zero(l, l);
    hm.block_b = Eigen::MatrixXcd::Zero(l, l);
    for (int i = 0; i < np; ++i) {
      const double om = effective_coupling(cs, i);
      hm.block_a(i, i) = cs.modes[i].omega;
      hm.block_a(np + i, np + i) = cs.omega_c;
      if (flags.include_int) {
        hm.block_a(i, np + i) = om;
        hm.block_a(np + i, i) = om;
        hm.block_b(i, np + i) = om;
        hm.block_b(np + i, i) = om;
      }
      if (flags.include_a2) {
        const double d = om * om / cs.omega_c;
        hm.block_a(i, i) += 2.0 * d;
        hm.block_b(i, i) += 2.0 * d;
      }
    }
  } else {
    // Shared matter basis: one mode per reciprocal vector appearing in any
    // coupling field.
    std::set<GIndex> gset;
    for (const auto& m : cs.modes) {
      if (!m.has_fourier()) {
        throw std::invalid_argument("build_hamiltonian: Fourier representation"
                                    " required for the shared matter basis");
      }
      gset.insert(m.gt_f.g.begin(), m.gt_f.g.end());
    }
    hm.matter_g.assign(gset.begin(), gset.end());
    const int nm = static_cast<int>(hm.matter_g.size());
    hm.n_matter = nm;
    const int l = np + nm;
    hm.block_a = Eigen::MatrixXcd::Zero(l, l);
    hm.block_b = Eigen::MatrixXcd::Zero(l, l);

    for (int i = 0; i < np; ++i) hm.block_a(i, i) = cs.modes[i].omega;
    for (int k = 0; k < nm; ++k) hm.block_a(np + k, np + k) = cs.omega_c;

    if (flags.include_int) {
      // Photon p couples to the matter mode at G with amplitude
      // c_p(G) = conj(gt_p(-G)): H_int picks the Fourier component of the
      // coupling field that conserves in-plane momentum.
      for (int i = 0; i < np; ++i) {
        for (int k = 0; k < nm; ++k) {
          const std::complex<double> c =
              std::conj(cs.modes[i].gt_f.coeff(hm.matter_g[k].negated()));
          if (c == std::complex<double>(0.0, 0.0)) continue;
          hm.block_a(i, np + k) += std::conj(c);
          hm.block_a(np + k, i) += c;
          hm.block_b(i, np + k) += c;
          hm.block_b(np + k, i) += c;
        }
      }
    }
    if (flags.include_a2) {
      const Eigen::MatrixXd d = a2_coefficients(cs);
      for (int i = 0; i < np; ++i) {
        for (int j = 0; j < np; ++j) {
          hm.block_a(i, j) += 2.0 * d(i, j);
          hm.block_b(i, j) += 2.0 * d(i, j);
        }
      }
    }
  }

  if (flags.rwa_only) {
    hm.block_b.setZero();
  } else if (flags.antiresonant_only) {
    // Keep bare diagonal and counter-rotating terms only.
    Eigen::MatrixXcd bare = Eigen::MatrixXcd::Zero(hm.dim(), hm.dim());
    for (int i = 0; i < np; ++i) bare(i, i) = cs.modes[i].omega;
    for (int k = 0; k < hm.n_matter; ++k) bare(np + k, np + k) = cs.omega_c;
    hm.block_a = bare;
  }
  return hm;
}

namespace {

struct RawMode {
  std::complex<double> lambda;
  Eigen::VectorXcd t;   // (u; v)
  double knorm = 0.0;
  bool stable = true;
};

}  // namespace

PolaritonSolution diagonalize(const HopfieldMatrix& hm) {
  const int l = hm.dim();
  const Eigen::MatrixXcd m = hm.doubled();
  Eigen::VectorXd kdiag(2 * l);
  kdiag.head(l).setOnes();
  kdiag.tail(l).setConstant(-1.0);

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(kdiag.asDiagonal() * m);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("diagonalize: eigensolver failed to converge");
  }

  double scale = 0.0;
  for (int k = 0; k < 2 * l; ++k) scale = std::max(scale, std::abs(es.eigenvalues()(k)));
  const double im_tol = 1e-9 * std::max(scale, 1.0);

  std::vector<RawMode> phys;
  bool any_unstable = false;
  for (int k = 0; k < 2 * l; ++k) {
    RawMode rm;
    rm.lambda = es.eigenvalues()(k);
    rm.t = es.eigenvectors().col(k);
    rm.knorm = std::real(rm.t.dot(kdiag.asDiagonal() * rm.t));
    rm.stable = std::abs(rm.lambda.imag()) <= im_tol;
    if (!rm.stable) any_unstable = true;
    phys.push_back(std::move(rm));
  }

  std::vector<RawMode> sel;
  if (!any_unstable) {
    for (auto& rm : phys) {
      if (rm.knorm > 1e-10) sel.push_back(std::move(rm));
    }
    if (static_cast<int>(sel.size()) != l) {
      throw std::runtime_error("diagonalize: positive-norm mode count " +
                               std::to_string(sel.size()) + " != " + std::to_string(l));
    }
  } else {
    // Instability: complex frequencies come in quadruples with vanishing
    // symplectic norm. Keep the stable positive-norm modes plus the
    // right-half-plane unstable ones, flagged, so the caller still sees L
    // entries.
    for (const auto& rm : phys) {
      if (rm.stable && rm.knorm > 1e-10) sel.push_back(rm);
    }
    for (const auto& rm : phys) {
      if (rm.stable || static_cast<int>(sel.size()) >= l) continue;
      if (rm.lambda.real() > im_tol ||
          (std::abs(rm.lambda.real()) <= im_tol && rm.lambda.imag() > 0)) {
        sel.push_back(rm);
      }
    }
    if (static_cast<int>(sel.size()) != l) {
      throw std::runtime_error("diagonalize: unstable spectrum defeated mode pairing");
    }
  }

  std::sort(sel.begin(), sel.end(), [](const RawMode& a, const RawMode& b) {
    return a.lambda.real() < b.lambda.real();
  });

  // K-orthonormalize within numerically degenerate stable clusters so that
  // degenerate (e.g. uncoupled-matter) subspaces give a well-defined
  // resolution of identity in the correlation sums.
  const double ctol = 1e-8 * std::max(scale, 1.0);
  size_t c0 = 0;
  while (c0 < sel.size()) {
    size_t c1 = c0 + 1;
    while (c1 < sel.size() &&
           std::abs(sel[c1].lambda.real() - sel[c1 - 1].lambda.real()) <= ctol) {
      ++c1;
    }
    for (size_t i = c0; i < c1; ++i) {
      if (!sel[i].stable) continue;
      for (size_t j = c0; j < i; ++j) {
        if (!sel[j].stable) continue;
        const std::complex<double> proj = sel[j].t.dot(kdiag.asDiagonal() * sel[i].t);
        sel[i].t -= proj * sel[j].t;
      }
      const double s = std::real(sel[i].t.dot(kdiag.asDiagonal() * sel[i].t));
      if (s <= 1e-12) {
        sel[i].stable = false;
        any_unstable = true;
        continue;
      }
      sel[i].t /= std::sqrt(s);
    }
    c0 = c1;
  }

  PolaritonSolution sol;
  sol.n_photon = hm.n_photon;
  sol.n_matter = hm.n_matter;
  sol.omega.resize(l);
  sol.x.resize(l, hm.n_photon);
  sol.w.resize(l, hm.n_matter);
  sol.xt.resize(l, hm.n_photon);
  sol.wt.resize(l, hm.n_matter);
  sol.stable.resize(l);
  sol.all_stable = !any_unstable;
  for (int i = 0; i < l; ++i) {
    sol.omega(i) = sel[i].lambda.real();
    sol.stable[i] = sel[i].stable;
    const auto u = sel[i].t.head(l);
    const auto v = sel[i].t.tail(l);
    sol.x.row(i) = u.head(hm.n_photon).conjugate().transpose();
    sol.w.row(i) = u.tail(hm.n_matter).conjugate().transpose();
    sol.xt.row(i) = -v.head(hm.n_photon).conjugate().transpose();
    sol.wt.row(i) = -v.tail(hm.n_matter).conjugate().transpose();
  }
  return sol;
}

double PolaritonSolution::photon_weight(int lambda) const {
  return x.row(lambda).squaredNorm();
}

double PolaritonSolution::symplectic_norm(int lambda) const {
  return x.row(lambda).squaredNorm() + w.row(lambda).squaredNorm() -
         xt.row(lambda).squaredNorm() - wt.row(lambda).squaredNorm();
}

Eigen::MatrixXcd ground_state_correlations(const PolaritonSolution& sol,
                                           const Eigen::VectorXd& occupations) {
  if (!sol.all_stable) {
    throw std::runtime_error("ground_state_correlations: unstable normal modes");
  }
  if (occupations.size() != 0 && occupations.size() != sol.omega.size()) {
    throw std::invalid_argument("ground_state_correlations: occupation size mismatch");
  }
  const int np = sol.n_photon;
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(np, np);
  for (int lam = 0; lam < sol.n_modes(); ++lam) {
    const double n = occupations.size() ? occupations(lam) : 0.0;
    // <a_p^dag a_q> = sum_l conj(Xt_p) Xt_q (n_l + 1) + X_p conj(X_q) n_l
    c += (n + 1.0) * (sol.xt.row(lam).conjugate().transpose() * sol.xt.row(lam));
    if (n != 0.0) {
      c += n * (sol.x.row(lam).transpose() * sol.x.row(lam).conjugate());
    }
  }
  return c;
}

DispersionSweep dispersion_sweep(const std::vector<ModeProfile>& profiles,
                                 const std::vector<double>& b_grid,
                                 const PhysParams& par, const HamiltonianFlags& flags,
                                 int threads) {
  if (b_grid.empty()) throw std::invalid_argument("dispersion_sweep: empty field grid");

  // Dimensions are field-independent; probe once.
  const auto probe = build_hamiltonian(build_couplings(profiles, b_grid.front(), par), flags);
  const int l = probe.dim();
  const int nb = static_cast<int>(b_grid.size());

  DispersionSweep sw;
  sw.b_grid = b_grid;
  sw.n_photon = probe.n_photon;
  sw.branches.resize(nb, l);
  sw.omega_c.resize(nb, 1);
  sw.photon_weights.assign(nb, Eigen::MatrixXd());
  std::vector<char> unstable(nb, 0);

  parallel_for(nb, threads, [&](int i) {
    const auto cs = build_couplings(profiles, b_grid[i], par);
    const auto sol = diagonalize(build_hamiltonian(cs, flags));
    sw.branches.row(i) = sol.omega.transpose();
    sw.omega_c(i, 0) = cs.omega_c;
    Eigen::MatrixXd pw(l, sol.n_photon);
    for (int lam = 0; lam < l; ++lam) {
      for (int p = 0; p < sol.n_photon; ++p) pw(lam, p) = std::norm(sol.x(lam, p));
    }
    sw.photon_weights[i] = std::move(pw);
    if (!sol.all_stable) unstable[i] = 1;
  });
  for (int i = 0; i < nb; ++i) {
    if (unstable[i]) sw.unstable_points.push_back(i);
  }
  return sw;
}

double max_branch_jump(const DispersionSweep& sweep) {
  double j = 0.0;
  for (int i = 0; i + 1 < sweep.branches.rows(); ++i) {
    j = std::max(j, (sweep.branches.row(i + 1) - sweep.branches.row(i))
                        .cwiseAbs()
                        .maxCoeff());
  }
  return j;
}

MpCrossing mp_weights(const DispersionSweep& sweep, double bright_threshold,
                      double max_distance) {
  const int nb = static_cast<int>(sweep.b_grid.size());
  const int l = sweep.n_branches();
  if (max_distance < 0) {
    // Grid resolution: the largest omega_c step between adjacent field points.
    max_distance = 0.0;
    for (int i = 0; i + 1 < nb; ++i) {
      max_distance = std::max(max_distance,
                              std::abs(sweep.omega_c(i + 1, 0) - sweep.omega_c(i, 0)));
    }
  }

  MpCrossing out;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < nb; ++i) {
    for (int lam = 1; lam + 1 < l; ++lam) {  // strictly between LP and UP
      if (sweep.photon_weights[i].row(lam).sum() <= bright_threshold) continue;
      const double dist = std::abs(sweep.branches(i, lam) - sweep.omega_c(i, 0));
      if (dist < best) {
        best = dist;
        out.b_star = sweep.b_grid[i];
        out.branch = lam;
        out.distance = dist;
        // MP weights: total photonic weight of all interior branches, per mode.
        out.weights.assign(sweep.n_photon, 0.0);
        for (int k = 1; k + 1 < l; ++k) {
          for (int p = 0; p < sweep.n_photon; ++p) {
            out.weights[p] += sweep.photon_weights[i](k, p);
          }
        }
      }
    }
  }
  out.found = std::isfinite(best) && best <= max_distance;
  if (!out.found) out.weights.clear();
  return out;
}

}  // namespace polariton
