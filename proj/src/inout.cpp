#include "polariton/inout.hpp"

#include <cmath>
#include <stdexcept>

#include "polariton/util.hpp"

namespace polariton {

void DissipationSpec::validate(int n_photon) const {
  if (static_cast<int>(gamma_photon.size()) != n_photon) {
    throw std::invalid_argument("DissipationSpec: one photon rate per mode required");
  }
  for (double g : gamma_photon) {
    if (g <= 0) throw std::invalid_argument("DissipationSpec: photon rates must be > 0");
  }
  if (gamma_matter < 0) throw std::invalid_argument("DissipationSpec: negative matter rate");
}

DissipationSpec dissipation_from(const HopfieldMatrix& hm, const PhysParams& par) {
  DissipationSpec ds;
  for (const auto& ph : hm.photons) {
    if (ph.quality <= 0) {
      throw std::invalid_argument("dissipation_from: photon mode lacks a Q factor");
    }
    ds.gamma_photon.push_back(ph.omega / ph.quality);
  }
  ds.gamma_matter = par.gamma_c;
  return ds;
}

SpectrumSeries transmission_spectrum(const HopfieldMatrix& hm, const DissipationSpec& ds,
                                     const std::vector<double>& freq_hz, Pol pol_in,
                                     Pol pol_out) {
  ds.validate(hm.n_photon);
  if (freq_hz.empty()) throw std::invalid_argument("transmission_spectrum: empty grid");

  const int l = hm.dim();
  Eigen::VectorXd kdiag(2 * l);
  kdiag.head(l).setOnes();
  kdiag.tail(l).setConstant(-1.0);

  // Frequency-independent part of the response matrix: i K M + Gamma/2.
  Eigen::MatrixXcd base = std::complex<double>(0.0, 1.0) *
                          (kdiag.asDiagonal() * hm.doubled());
  Eigen::VectorXd gam(2 * l);
  for (int i = 0; i < hm.n_photon; ++i) {
    gam(i) = ds.gamma_photon[i];
    gam(l + i) = ds.gamma_photon[i];
  }
  for (int k = 0; k < hm.n_matter; ++k) {
    gam(hm.n_photon + k) = ds.gamma_matter;
    gam(l + hm.n_photon + k) = ds.gamma_matter;
  }
  base += (0.5 * gam).asDiagonal();

  // Unit-amplitude coherent drive through the input half of each two-port
  // photon mode of the requested polarization; annihilation sector only.
  Eigen::VectorXcd drive = Eigen::VectorXcd::Zero(2 * l);
  int n_in = 0;
  for (int i = 0; i < hm.n_photon; ++i) {
    if (hm.photons[i].sigma == pol_in) {
      drive(i) = std::sqrt(ds.gamma_photon[i] / 2.0);
      ++n_in;
    }
  }
  if (n_in == 0) {
    throw std::invalid_argument("transmission_spectrum: no photon mode has the"
                                " requested input polarization");
  }

  SpectrumSeries out;
  out.freq = freq_hz;
  out.t.resize(freq_hz.size());
  out.b_field = hm.b_field;
  out.pol_in = pol_in;
  out.pol_out = pol_out;

  Eigen::MatrixXcd sys(2 * l, 2 * l);
  for (size_t k = 0; k < freq_hz.size(); ++k) {
    const double w = si::two_pi * freq_hz[k];
    sys = base;
    sys.diagonal().array() -= std::complex<double>(0.0, w);
    const Eigen::VectorXcd psi = sys.partialPivLu().solve(drive);
    double t = 0.0;
    for (int i = 0; i < hm.n_photon; ++i) {
      if (hm.photons[i].sigma == pol_out) {
        t += 0.5 * ds.gamma_photon[i] * std::norm(psi(i));
      }
    }
    out.t[k] = t / n_in;
  }
  return out;
}

TransmissionMap transmission_map(const std::vector<ModeProfile>& profiles,
                                 const std::vector<double>& b_grid,
                                 const std::vector<double>& freq_hz,
                                 const PhysParams& par, const HamiltonianFlags& flags,
                                 Pol pol_in, Pol pol_out, int threads) {
  if (b_grid.empty() || freq_hz.empty()) {
    throw std::invalid_argument("transmission_map: empty axis");
  }
  TransmissionMap map;
  map.b_grid = b_grid;
  map.freq = freq_hz;
  map.pol_in = pol_in;
  map.pol_out = pol_out;
  map.t.resize(static_cast<int>(b_grid.size()), static_cast<int>(freq_hz.size()));

  parallel_for(static_cast<int>(b_grid.size()), threads, [&](int i) {
    const auto cs = build_couplings(profiles, b_grid[i], par);
    const auto hm = build_hamiltonian(cs, flags);
    const auto ds = dissipation_from(hm, par);
    const auto sp = transmission_spectrum(hm, ds, freq_hz, pol_in, pol_out);
    for (size_t k = 0; k < freq_hz.size(); ++k) {
      map.t(i, static_cast<int>(k)) = sp.t[k];
    }
  });
  return map;
}

}  // namespace polariton
