#include "scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <json.hpp>
#include <random>

#include "plot.hpp"
#include "polariton/coupling.hpp"
#include "polariton/hopfield.hpp"
#include "polariton/inout.hpp"
#include "polariton/magnetofilm.hpp"
#include "polariton/profile_io.hpp"
#include "polariton/spectro.hpp"
#include "polariton/util.hpp"

namespace polariton::cli {

using nlohmann::json;

namespace {

double ghz(double w_rad_s) { return units::ghz_from_rad_per_s(w_rad_s); }

HamiltonianFlags flags_from(const std::string& terms) {
  HamiltonianFlags f;
  if (terms == "decoupled") {
    f.decoupled = true;
  } else if (terms == "rwa") {
    f.rwa_only = true;
  } else if (terms == "antiresonant") {
    f.antiresonant_only = true;
  } else if (terms == "a2-only") {
    f.include_int = false;
  } else if (terms == "int-only") {
    f.include_a2 = false;
  }
  return f;
}

std::vector<ModeProfile> toy_profiles(const ToyConfig& t, const PhysParams& par,
                                      double omega1 = 0.0, double omega2 = 0.0,
                                      double eps_override = -1.0) {
  ToyParams tp;
  tp.a = par.a;
  tp.omega1 = omega1;
  tp.omega2 = omega2;
  const double eps = eps_override >= 0.0 ? eps_override : t.pattern_overlap;
  return {toy_mode_profile(1, eps, t.grid_n, tp), toy_mode_profile(2, eps, t.grid_n, tp)};
}

// Registers artifact names as they are opened so the caller can hash them.
struct Artifacts {
  std::filesystem::path dir;
  std::vector<std::filesystem::path> rel;

  std::filesystem::path file(const std::string& name) {
    rel.emplace_back(name);
    return dir / name;
  }
};

void write_json_file(const std::filesystem::path& p, const json& j) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << j.dump(2) << "\n";
}

// Total virtual photon population of the ground state.
double photon_trace(const PolaritonSolution& sol) {
  return ground_state_correlations(sol).trace().real();
}

void run_toy_dispersion(const RunConfig& cfg, const ToyConfig& toy, Artifacts& art,
                        const RunOptions& opt) {
  const auto b = toy.b_sweep_t.values();
  const auto profs = toy_profiles(toy, cfg.physical);
  const auto sweep =
      dispersion_sweep(profs, b, cfg.physical, flags_from(toy.terms), opt.threads);
  const int nl = sweep.n_branches();

  {
    CsvWriter csv(art.file("branches.csv"));
    std::vector<std::string> head = {"b_T", "omega_c_GHz"};
    for (int l = 0; l < nl; ++l) head.push_back("branch_" + std::to_string(l) + "_GHz");
    csv.header(head);
    for (size_t i = 0; i < b.size(); ++i) {
      std::vector<double> row = {b[i], ghz(sweep.omega_c(static_cast<int>(i)))};
      for (int l = 0; l < nl; ++l) row.push_back(ghz(sweep.branches(static_cast<int>(i), l)));
      csv.row(row);
    }
  }
  {
    CsvWriter csv(art.file("weights.csv"));
    std::vector<std::string> head = {"b_T"};
    for (int l = 0; l < nl; ++l) head.push_back("photon_weight_" + std::to_string(l));
    csv.header(head);
    for (size_t i = 0; i < b.size(); ++i) {
      std::vector<double> row = {b[i]};
      for (int l = 0; l < nl; ++l) row.push_back(sweep.photon_weights[i].row(l).sum());
      csv.row(row);
    }
  }

  const auto mp = mp_weights(sweep);
  json j;
  j["found"] = mp.found;
  j["b_star_T"] = mp.b_star;
  j["distance_GHz"] = ghz(mp.distance);
  j["branch"] = mp.branch;
  j["weights"] = mp.weights;
  j["unstable_points"] = sweep.unstable_points.size();
  write_json_file(art.file("crossing.json"), j);

  if (opt.plots) {
    std::vector<PlotSeries> series(static_cast<size_t>(nl) + 1);
    for (size_t i = 0; i < b.size(); ++i) {
      for (int l = 0; l < nl; ++l) {
        series[static_cast<size_t>(l)].x.push_back(b[i]);
        series[static_cast<size_t>(l)].y.push_back(ghz(sweep.branches(static_cast<int>(i), l)));
      }
      series.back().x.push_back(b[i]);
      series.back().y.push_back(ghz(sweep.omega_c(static_cast<int>(i))));
    }
    series.front().label = "branches";
    series.back().label = "cyclotron";
    write_svg_lines(art.file("dispersion.svg"), "Polariton dispersion", "B (T)",
                    "frequency (GHz)", series);
  }
}

void run_toy_collapse(const RunConfig& cfg, const ToyConfig& toy, Artifacts& art,
                      const RunOptions& opt) {
  // Three parameter paths scan the same dimensionless inter-mode coupling;
  // the intermode correlation depends on the parameters only through it.
  struct Sample {
    double value = 0.0, eta = 0.0, corr = 0.0;
  };
  const int n = toy.path_points;
  const double f_hi = 1800.0;  // GHz endpoint for both frequency paths

  const auto evaluate = [&](const std::vector<ModeProfile>& profs) {
    const auto cs = build_couplings(profs, toy.b_field_t, cfg.physical);
    const auto hm = build_hamiltonian(cs);
    const auto sol = diagonalize(hm);
    const Eigen::MatrixXcd corr = ground_state_correlations(sol);
    return std::pair<double, double>(fom_eta(cs, 0, 1).real(), std::abs(corr(0, 1)));
  };

  std::vector<std::vector<Sample>> paths(3, std::vector<Sample>(static_cast<size_t>(n)));
  parallel_for(3 * n, opt.threads, [&](int k) {
    const int path = k / n;
    const int i = k % n;
    const double f = static_cast<double>(i) / (n - 1);
    Sample s;
    std::vector<ModeProfile> profs;
    if (path == 0) {
      s.value = ghz(toy_default_omega(1)) + f * (f_hi - ghz(toy_default_omega(1)));
      profs = toy_profiles(toy, cfg.physical, units::rad_per_s_from_ghz(s.value), 0.0);
    } else if (path == 1) {
      s.value = ghz(toy_default_omega(2)) + f * (f_hi - ghz(toy_default_omega(2)));
      profs = toy_profiles(toy, cfg.physical, 0.0, units::rad_per_s_from_ghz(s.value));
    } else {
      s.value = f;  // pattern overlap from orthogonal to identical
      profs = toy_profiles(toy, cfg.physical, 0.0, 0.0, s.value);
    }
    std::tie(s.eta, s.corr) = evaluate(profs);
    paths[static_cast<size_t>(path)][static_cast<size_t>(i)] = s;
  });

  const char* names[] = {"omega1_GHz", "omega2_GHz", "pattern_overlap"};
  {
    CsvWriter csv(art.file("collapse.csv"));
    csv.header({"path", "parameter", "eta_12", "corr_12"});
    for (int p = 0; p < 3; ++p) {
      for (const auto& s : paths[static_cast<size_t>(p)]) {
        csv.raw_row({names[p], format_double(s.value), format_double(s.eta),
                     format_double(s.corr)});
      }
    }
  }
  if (opt.plots) {
    std::vector<PlotSeries> series(3);
    for (int p = 0; p < 3; ++p) {
      series[static_cast<size_t>(p)].label = names[p];
      for (const auto& s : paths[static_cast<size_t>(p)]) {
        series[static_cast<size_t>(p)].x.push_back(s.eta);
        series[static_cast<size_t>(p)].y.push_back(s.corr);
      }
    }
    write_svg_lines(art.file("collapse.svg"), "Correlation collapse", "eta_12",
                    "|<a1^dag a2>|", series);
  }
}

void run_toy_toggles(const RunConfig& cfg, const ToyConfig& toy, Artifacts& art,
                     const RunOptions& opt) {
  const auto b = toy.b_sweep_t.values();
  const auto profs = toy_profiles(toy, cfg.physical);
  const char* variants[] = {"full", "rwa", "antiresonant", "int-only"};
  Eigen::MatrixXd n_virt(static_cast<Eigen::Index>(b.size()), 4);

  parallel_for(static_cast<int>(b.size()), opt.threads, [&](int i) {
    const auto cs = build_couplings(profs, b[static_cast<size_t>(i)], cfg.physical);
    for (int v = 0; v < 4; ++v) {
      const auto hm = build_hamiltonian(cs, flags_from(variants[v]));
      n_virt(i, v) = photon_trace(diagonalize(hm));
    }
  });

  {
    CsvWriter csv(art.file("correlations.csv"));
    csv.header({"b_T", "n_full", "n_rwa", "n_antiresonant", "n_int_only"});
    for (size_t i = 0; i < b.size(); ++i) {
      csv.row({b[i], n_virt(static_cast<Eigen::Index>(i), 0),
               n_virt(static_cast<Eigen::Index>(i), 1),
               n_virt(static_cast<Eigen::Index>(i), 2),
               n_virt(static_cast<Eigen::Index>(i), 3)});
    }
  }
  if (opt.plots) {
    std::vector<PlotSeries> series(4);
    for (int v = 0; v < 4; ++v) {
      series[static_cast<size_t>(v)].label = variants[v];
      for (size_t i = 0; i < b.size(); ++i) {
        series[static_cast<size_t>(v)].x.push_back(b[i]);
        series[static_cast<size_t>(v)].y.push_back(n_virt(static_cast<Eigen::Index>(i), v));
      }
    }
    write_svg_lines(art.file("toggles.svg"), "Ground-state photon population",
                    "B (T)", "tr <a^dag a>", series);
  }
}

void run_toy_map(const RunConfig& cfg, const ToyConfig& toy, Artifacts& art,
                 const RunOptions& opt) {
  const auto b = toy.b_sweep_t.values();
  const auto f_ghz_axis = toy.frequency_ghz.values();
  std::vector<double> f_hz(f_ghz_axis.size());
  for (size_t k = 0; k < f_ghz_axis.size(); ++k) f_hz[k] = f_ghz_axis[k] * units::ghz;
  const auto profs = toy_profiles(toy, cfg.physical);
  const auto flags = flags_from(toy.terms);
  const Pol pin = toy.pol_in == "x" ? Pol::x : Pol::y;
  const Pol pout = toy.pol_out == "x" ? Pol::x : Pol::y;

  const auto map =
      transmission_map(profs, b, f_hz, cfg.physical, flags, pin, pout, opt.threads);
  const auto sweep = dispersion_sweep(profs, b, cfg.physical, flags, opt.threads);

  {
    CsvWriter csv(art.file("map.csv"));
    std::vector<std::string> head = {"b_T"};
    for (double f : f_ghz_axis) head.push_back(format_double(f));
    csv.header(head);
    for (size_t i = 0; i < b.size(); ++i) {
      std::vector<double> row = {b[i]};
      for (size_t k = 0; k < f_hz.size(); ++k) {
        row.push_back(map.t(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)));
      }
      csv.row(row);
    }
  }
  {
    CsvWriter csv(art.file("branches.csv"));
    std::vector<std::string> head = {"b_T", "omega_c_GHz"};
    for (int l = 0; l < sweep.n_branches(); ++l) {
      head.push_back("branch_" + std::to_string(l) + "_GHz");
    }
    csv.header(head);
    for (size_t i = 0; i < b.size(); ++i) {
      std::vector<double> row = {b[i], ghz(sweep.omega_c(static_cast<int>(i)))};
      for (int l = 0; l < sweep.n_branches(); ++l) {
        row.push_back(ghz(sweep.branches(static_cast<int>(i), l)));
      }
      csv.row(row);
    }
  }
  if (opt.plots) {
    // Image rows top-down = B descending, so the picture reads like a plot.
    Eigen::MatrixXd img(map.t.rows(), map.t.cols());
    for (Eigen::Index r = 0; r < map.t.rows(); ++r) {
      img.row(r) = map.t.row(map.t.rows() - 1 - r);
    }
    write_pgm_heatmap(art.file("map.pgm"), img);
  }
}

void run_ingest(const RunConfig& cfg, const IngestConfig& g, Artifacts& art) {
  std::vector<ModeProfile> profs;
  profs.reserve(g.manifests.size());
  for (const auto& m : g.manifests) profs.push_back(load_mode_profile(m, g.z_ref_um));

  const auto cs = build_couplings(profs, g.b_field_t, cfg.physical);
  {
    CsvWriter csv(art.file("modes.csv"));
    csv.header({"index", "p", "polarization", "omega_GHz", "Q", "prefactor_GHz",
                "Omega_GHz", "eta_ii"});
    for (int i = 0; i < cs.n_modes(); ++i) {
      const auto& m = cs.modes[static_cast<size_t>(i)];
      csv.raw_row({std::to_string(i), std::to_string(m.p), pol_name(m.sigma),
                   format_double(ghz(m.omega)), format_double(m.quality),
                   format_double(ghz(m.prefactor)),
                   format_double(ghz(effective_coupling(cs, i))),
                   format_double(fom_eta(cs, i, i).real())});
    }
  }
  {
    CsvWriter csv(art.file("overlaps.csv"));
    csv.header({"i", "j", "xi_re", "xi_im", "eta_re", "eta_im"});
    for (int i = 0; i < cs.n_modes(); ++i) {
      for (int j = i + 1; j < cs.n_modes(); ++j) {
        const auto xi = overlap_xi(cs, i, j);
        const auto eta = fom_eta(cs, i, j);
        csv.raw_row({std::to_string(i), std::to_string(j), format_double(xi.real()),
                     format_double(xi.imag()), format_double(eta.real()),
                     format_double(eta.imag())});
      }
    }
  }

  json j;
  j["b_field_T"] = g.b_field_t;
  j["omega_c_GHz"] = ghz(cs.omega_c);
  j["filling_factor"] = filling_factor(std::abs(g.b_field_t), cfg.physical);
  j["magnetic_length_um"] =
      magnetic_length(std::abs(g.b_field_t), cfg.physical) / units::um;
  for (Pol sigma : {Pol::x, Pol::y}) {
    int members = 0;
    for (const auto& m : cs.modes) members += m.sigma == sigma;
    if (members >= 2) {
      const auto lam = fom_lambda(cs, sigma);
      j[std::string("lambda_") + pol_name(sigma)] = {{"re", lam.real()},
                                                     {"im", lam.imag()}};
    }
  }
  write_json_file(art.file("summary.json"), j);
}

void run_film(const RunConfig& cfg, const FilmConfig& f, Artifacts& art,
              const RunOptions& opt) {
  const auto gp = gyro_from(cfg.physical, f.b_field_t,
                            units::rad_per_s_from_ghz(f.scattering_rate_ghz),
                            f.sheet_thickness_um * units::um, f.host_eps);
  LayerStack stack;
  if (f.substrate_thickness_um > 0.0) {
    stack.layers.push_back({f.substrate_thickness_um * units::um, f.substrate_eps});
  }
  stack.gyro_index = 0;  // sheet in front, substrate behind

  const auto f_ghz_axis = f.frequency_ghz.values();
  std::vector<double> f_hz(f_ghz_axis.size());
  for (size_t k = 0; k < f_ghz_axis.size(); ++k) f_hz[k] = f_ghz_axis[k] * units::ghz;

  {
    CsvWriter csv(art.file("permittivity.csv"));
    csv.header({"f_GHz", "eps_xx_re", "eps_xx_im", "eps_xy_re", "eps_xy_im",
                "eps_plus_re", "eps_plus_im", "eps_minus_re", "eps_minus_im"});
    for (size_t k = 0; k < f_hz.size(); ++k) {
      const double w = si::two_pi * f_hz[k];
      const auto t = permittivity_tensor(w, gp);
      const auto c = circular_eigenpermittivities(w, gp);
      csv.row({f_ghz_axis[k], t(0, 0).real(), t(0, 0).imag(), t(0, 1).real(),
               t(0, 1).imag(), c.plus.real(), c.plus.imag(), c.minus.real(),
               c.minus.imag()});
    }
  }

  const auto spectra = film_transmission(stack, gp, f_hz);
  const auto pp = spectra.power_plus();
  const auto pm = spectra.power_minus();
  {
    CsvWriter csv(art.file("transmission.csv"));
    csv.header({"f_GHz", "power_plus", "power_minus", "power_xx", "power_yx"});
    for (size_t k = 0; k < f_hz.size(); ++k) {
      csv.row({f_ghz_axis[k], pp[k], pm[k], std::norm(spectra.t_xx[k]),
               std::norm(spectra.t_yx[k])});
    }
  }

  const auto dip = std::min_element(pm.begin(), pm.end()) - pm.begin();
  json j;
  j["b_field_T"] = f.b_field_t;
  j["omega_c_GHz"] = std::abs(ghz(gp.omega_c_signed()));
  j["cr_dip_GHz"] = f_ghz_axis[static_cast<size_t>(dip)];
  j["cr_dip_transmission"] = pm[static_cast<size_t>(dip)];
  write_json_file(art.file("summary.json"), j);

  if (opt.plots) {
    PlotSeries plus{"plus", f_ghz_axis, pp};
    PlotSeries minus{"minus", f_ghz_axis, pm};
    write_svg_lines(art.file("film.svg"), "Circular-basis film transmission",
                    "frequency (GHz)", "|t|^2", {plus, minus});
  }
}

void run_spectro(const RunConfig& cfg, const SpectroConfig& s, Artifacts& art,
                 const RunOptions& opt) {
  const std::uint64_t seed = opt.seed.value_or(s.seed);
  const auto bs = s.b_fields_t.values();
  const int nb = static_cast<int>(bs.size());
  const double ps = 1e-12;

  // Stage 1: time-domain record at the middle field, windowed two ways. The
  // echo replica produces the periodic spectral dips whose B-independence the
  // tracking stage later exploits.
  {
    const double f0 = cyclotron_frequency(bs[static_cast<size_t>(nb / 2)], cfg.physical) /
                      si::two_pi;
    const double tau = s.decay_time_ps * ps;
    const double delay = s.echo_delay_ps * ps;
    Waveform w;
    for (int i = 0; i < s.n_samples; ++i) {
      const double t = i * s.dt_ps * ps;
      double e = std::exp(-t / tau) * std::cos(si::two_pi * f0 * t);
      if (t >= delay) {
        e += s.echo_amplitude * std::exp(-(t - delay) / tau) *
             std::cos(si::two_pi * f0 * (t - delay));
      }
      w.t.push_back(t);
      w.e.push_back(e);
    }
    {
      CsvWriter csv(art.file("waveform.csv"));
      csv.header({"t_ps", "field"});
      for (int i = 0; i < s.n_samples; ++i) {
        csv.row({w.t[static_cast<size_t>(i)] / ps, w.e[static_cast<size_t>(i)]});
      }
    }
    const auto rect = window_and_fft(w, s.t_cut_ps * ps, s.pad_factor, Taper::rect);
    const auto hann = window_and_fft(w, s.t_cut_ps * ps, s.pad_factor, Taper::hann);
    {
      CsvWriter csv(art.file("spectrum.csv"));
      csv.header({"f_GHz", "amp_rect", "amp_hann"});
      for (size_t k = 0; k < rect.freq.size(); ++k) {
        csv.row({rect.freq[k] / units::ghz, rect.amp[k], hann.amp[k]});
      }
    }
    if (opt.plots) {
      PlotSeries a{"rect", {}, {}}, b{"hann", {}, {}};
      for (size_t k = 0; k < rect.freq.size(); ++k) {
        a.x.push_back(rect.freq[k] / units::ghz);
        a.y.push_back(rect.amp[k]);
        b.x.push_back(hann.freq[k] / units::ghz);
        b.y.push_back(hann.amp[k]);
      }
      write_svg_lines(art.file("spectrum.svg"), "Windowed amplitude spectrum",
                      "frequency (GHz)", "amplitude", {a, b});
    }
  }

  // Stage 2: synthetic line-shape series (moving peak at the cyclotron
  // frequency, field-independent etalon dip, seeded noise), fitted and
  // tracked per channel, then an effective-mass scan over the residuals.
  const auto freq_ghz_axis = s.frequency_ghz.values();
  std::vector<double> freq_hz(freq_ghz_axis.size());
  for (size_t k = 0; k < freq_ghz_axis.size(); ++k) {
    freq_hz[k] = freq_ghz_axis[k] * units::ghz;
  }
  const auto truth_at = [&](double b) {
    FitModel m;
    m.center = cyclotron_frequency(b, cfg.physical) / si::two_pi;
    m.fwhm = s.fwhm_ghz * units::ghz;
    m.amp = s.amplitude;
    m.baseline = s.baseline;
    m.dips.push_back(
        {s.etalon_center_ghz * units::ghz, s.etalon_width_ghz * units::ghz,
         s.etalon_depth});
    return m;
  };

  constexpr int n_channels = 2;
  std::vector<std::vector<AmplitudeSpectrum>> spectra(
      n_channels, std::vector<AmplitudeSpectrum>(static_cast<size_t>(nb)));
  for (int ch = 0; ch < n_channels; ++ch) {
    for (int i = 0; i < nb; ++i) {
      const auto model = truth_at(bs[static_cast<size_t>(i)]);
      std::mt19937_64 rng(seed * 1000003ull +
                          static_cast<std::uint64_t>(i * n_channels + ch));
      std::normal_distribution<double> noise(0.0, s.noise_level * s.amplitude);
      AmplitudeSpectrum& sp = spectra[static_cast<size_t>(ch)][static_cast<size_t>(i)];
      sp.freq = freq_hz;
      sp.amp.reserve(freq_hz.size());
      for (double f : freq_hz) sp.amp.push_back(model.eval(f) + noise(rng));
    }
  }

  std::vector<PeakTrack> tracks;
  for (int ch = 0; ch < n_channels; ++ch) {
    tracks.push_back(
        track_peaks(bs, spectra[static_cast<size_t>(ch)], truth_at(bs[0]), {}));
  }
  {
    CsvWriter csv(art.file("fits.csv"));
    csv.header({"b_T", "channel", "center_GHz", "fwhm_GHz", "amp", "baseline",
                "dip_center_GHz", "dip_sigma_GHz", "dip_depth", "converged"});
    for (int ch = 0; ch < n_channels; ++ch) {
      for (const auto& pt : tracks[static_cast<size_t>(ch)].points) {
        const auto& m = pt.model;
        csv.row({pt.b_field, static_cast<double>(ch), m.center / units::ghz,
                 m.fwhm / units::ghz, m.amp, m.baseline, m.dips[0].center / units::ghz,
                 m.dips[0].width / units::ghz, m.dips[0].depth,
                 pt.converged ? 1.0 : 0.0});
      }
    }
  }

  // Residual of every fitted center against e B / (2 pi m) over a grid of
  // mass candidates; the pooled deviation is minimized at the true mass.
  const auto masses = s.mass_scan.values();
  std::vector<double> dev(masses.size());
  for (size_t k = 0; k < masses.size(); ++k) {
    PhysParams cand = cfg.physical;
    cand.m_eff = masses[k] * si::electron_mass;
    std::vector<double> residuals;
    for (const auto& track : tracks) {
      for (const auto& pt : track.points) {
        residuals.push_back(pt.model.center -
                            cyclotron_frequency(pt.b_field, cand) / si::two_pi);
      }
    }
    dev[k] = deviation_d(residuals, nb).d;
  }
  {
    CsvWriter csv(art.file("mass_scan.csv"));
    csv.header({"mass_ratio", "deviation_GHz"});
    for (size_t k = 0; k < masses.size(); ++k) {
      csv.row({masses[k], dev[k] / units::ghz});
    }
  }

  const int best = argmin_deviation(dev);
  json j;
  j["seed"] = seed;
  j["n_fields"] = nb;
  j["best_mass_ratio"] = masses[static_cast<size_t>(best)];
  j["deviation_min_GHz"] = dev[static_cast<size_t>(best)] / units::ghz;
  j["input_mass_ratio"] = cfg.physical.m_eff / si::electron_mass;
  for (int ch = 0; ch < n_channels; ++ch) {
    json flags = json::array();
    for (bool e : tracks[static_cast<size_t>(ch)].dip_is_etalon) flags.push_back(e);
    j["etalon_dips_channel_" + std::to_string(ch)] = flags;
    bool all = true;
    for (const auto& pt : tracks[static_cast<size_t>(ch)].points) all &= pt.converged;
    j["converged_channel_" + std::to_string(ch)] = all;
  }
  write_json_file(art.file("summary.json"), j);

  if (opt.plots) {
    std::vector<PlotSeries> centers(n_channels + 1);
    for (int ch = 0; ch < n_channels; ++ch) {
      centers[static_cast<size_t>(ch)].label = "channel " + std::to_string(ch);
      for (const auto& pt : tracks[static_cast<size_t>(ch)].points) {
        centers[static_cast<size_t>(ch)].x.push_back(pt.b_field);
        centers[static_cast<size_t>(ch)].y.push_back(pt.model.center / units::ghz);
      }
    }
    centers.back().label = "e B / (2 pi m)";
    for (double b : bs) {
      centers.back().x.push_back(b);
      centers.back().y.push_back(cyclotron_frequency(b, cfg.physical) / si::two_pi /
                                 units::ghz);
    }
    write_svg_lines(art.file("centers.svg"), "Tracked line centers", "B (T)",
                    "center (GHz)", centers);
    write_svg_lines(art.file("deviation.svg"), "Effective-mass scan", "m/m_e",
                    "deviation (GHz)",
                    {{"deviation", masses,
                      [&] {
                        std::vector<double> v(dev.size());
                        for (size_t k = 0; k < dev.size(); ++k) v[k] = dev[k] / units::ghz;
                        return v;
                      }()}});
  }
}

}  // namespace

const std::vector<ScenarioInfo>& scenario_catalog() {
  static const std::vector<ScenarioInfo> cat = {
      {"toy",
       "Analytic two-mode cavity family: dispersion sweeps, correlation collapse, "
       "term toggles, transmission maps.",
       "toy.mode; toy.b_sweep_T (all modes but collapse); toy.frequency_GHz "
       "(transmission-map)"},
      {"ingest-profiles",
       "Loads mode-profile manifests and reports couplings, overlaps, and figures "
       "of merit at one field.",
       "ingest.manifests; ingest.b_field_T"},
      {"magnetofilm",
       "Gyrotropic sheet permittivity tensor and circular-basis transmission "
       "through a layer stack.",
       "film.frequency_GHz; film.b_field_T"},
      {"spectro-pipeline",
       "Time record to spectrum to line-shape fits: windowing demo, peak tracking, "
       "effective-mass scan.",
       "spectro.b_fields_T; spectro.frequency_GHz; spectro.mass_scan"},
  };
  return cat;
}

std::vector<std::filesystem::path> run_scenario(const RunConfig& cfg,
                                                const std::filesystem::path& out_dir,
                                                const RunOptions& opt) {
  Artifacts art;
  art.dir = out_dir;
  RunOptions o = opt;
  o.plots = opt.plots && cfg.plots;

  if (cfg.scenario == "toy") {
    const auto& toy = *cfg.toy;
    if (toy.mode == "dispersion") {
      run_toy_dispersion(cfg, toy, art, o);
    } else if (toy.mode == "collapse") {
      run_toy_collapse(cfg, toy, art, o);
    } else if (toy.mode == "term-toggles") {
      run_toy_toggles(cfg, toy, art, o);
    } else {
      run_toy_map(cfg, toy, art, o);
    }
  } else if (cfg.scenario == "ingest-profiles") {
    run_ingest(cfg, *cfg.ingest, art);
  } else if (cfg.scenario == "magnetofilm") {
    run_film(cfg, *cfg.film, art, o);
  } else {
    run_spectro(cfg, *cfg.spectro, art, o);
  }
  return art.rel;
}

}  // namespace polariton::cli
