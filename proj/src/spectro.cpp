#include "polariton/spectro.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace polariton {

double Waveform::dt() const {
  if (t.size() < 2) throw std::invalid_argument("Waveform: needs >= 2 samples");
  return t[1] - t[0];
}

void Waveform::validate() const {
  if (t.size() != e.size()) throw std::invalid_argument("Waveform: axis/sample mismatch");
  const double step = dt();
  if (step <= 0) throw std::invalid_argument("Waveform: non-increasing time axis");
  for (size_t i = 1; i < t.size(); ++i) {
    if (std::abs((t[i] - t[i - 1]) - step) > 1e-6 * step) {
      throw std::invalid_argument("Waveform: non-uniform sampling");
    }
  }
}

AmplitudeSpectrum window_and_fft(const Waveform& w, double t_cut, int pad_factor,
                                 Taper taper) {
  w.validate();
  if (pad_factor < 1) throw std::invalid_argument("window_and_fft: pad_factor >= 1");
  size_t kept = 0;
  while (kept < w.t.size() && w.t[kept] <= t_cut) ++kept;
  if (kept < 2) throw std::invalid_argument("window_and_fft: t_cut keeps < 2 samples");

  const double step = w.dt();
  const size_t n_pad = kept * static_cast<size_t>(pad_factor);
  std::vector<double> in(n_pad, 0.0);
  for (size_t i = 0; i < kept; ++i) {
    double win = 1.0;
    if (taper == Taper::hann) {
      win = 0.5 * (1.0 - std::cos(2.0 * M_PI * i / (kept - 1)));
    }
    in[i] = w.e[i] * win;
  }

  std::vector<fftw_complex> spec(n_pad / 2 + 1);
  fftw_plan plan = fftw_plan_dft_r2c_1d(static_cast<int>(n_pad), in.data(), spec.data(),
                                        FFTW_ESTIMATE);
  if (!plan) throw std::runtime_error("window_and_fft: FFT planning failed");
  fftw_execute(plan);
  fftw_destroy_plan(plan);

  AmplitudeSpectrum out;
  out.freq.resize(n_pad / 2 + 1);
  out.amp.resize(n_pad / 2 + 1);
  for (size_t k = 0; k < out.freq.size(); ++k) {
    out.freq[k] = static_cast<double>(k) / (static_cast<double>(n_pad) * step);
    out.amp[k] = std::hypot(spec[k][0], spec[k][1]) * step;  // continuous-FT scale
  }
  return out;
}

double FitModel::eval(double f) const {
  const double hw = 0.5 * fwhm;
  double v = baseline + amp * hw * hw / ((f - center) * (f - center) + hw * hw);
  for (const auto& d : dips) {
    const double u = (f - d.center) / d.width;
    v -= d.depth * std::exp(-0.5 * u * u);
  }
  return v;
}

Eigen::VectorXd FitModel::pack() const {
  Eigen::VectorXd p(n_params());
  p(0) = center;
  p(1) = fwhm;
  p(2) = amp;
  p(3) = baseline;
  for (size_t k = 0; k < dips.size(); ++k) {
    p(4 + 3 * k) = dips[k].center;
    p(5 + 3 * k) = dips[k].width;
    p(6 + 3 * k) = dips[k].depth;
  }
  return p;
}

FitModel FitModel::unpack(const Eigen::VectorXd& p, int n_dips) {
  if (p.size() != 4 + 3 * n_dips) throw std::invalid_argument("FitModel: bad pack size");
  FitModel m;
  m.center = p(0);
  m.fwhm = p(1);
  m.amp = p(2);
  m.baseline = p(3);
  m.dips.resize(n_dips);
  for (int k = 0; k < n_dips; ++k) {
    m.dips[k] = {p(4 + 3 * k), p(5 + 3 * k), p(6 + 3 * k)};
  }
  return m;
}

namespace {

Eigen::VectorXd clamp_to_box(Eigen::VectorXd p, const FitOptions& opt) {
  if (opt.lower.size()) p = p.cwiseMax(opt.lower);
  if (opt.upper.size()) p = p.cwiseMin(opt.upper);
  return p;
}

}  // namespace

FitResult fit_composite(const std::vector<double>& freq, const std::vector<double>& amp,
                        const FitModel& start, const FitOptions& opt) {
  if (freq.size() != amp.size() || freq.empty()) {
    throw std::invalid_argument("fit_composite: bad data arrays");
  }
  const int n_dips = static_cast<int>(start.dips.size());
  const int np = start.n_params();
  const int m = static_cast<int>(freq.size());
  if (m < np) throw std::invalid_argument("fit_composite: fewer points than parameters");
  if (opt.lower.size() && opt.lower.size() != np) {
    throw std::invalid_argument("fit_composite: lower bound size mismatch");
  }
  if (opt.upper.size() && opt.upper.size() != np) {
    throw std::invalid_argument("fit_composite: upper bound size mismatch");
  }
  if (!opt.fixed.empty() && static_cast<int>(opt.fixed.size()) != np) {
    throw std::invalid_argument("fit_composite: fixed mask size mismatch");
  }

  auto residuals = [&](const Eigen::VectorXd& p) {
    const FitModel mod = FitModel::unpack(p, n_dips);
    Eigen::VectorXd r(m);
    for (int i = 0; i < m; ++i) r(i) = mod.eval(freq[i]) - amp[i];
    return r;
  };

  std::vector<int> free_idx;
  for (int j = 0; j < np; ++j) {
    if (opt.fixed.empty() || !opt.fixed[j]) free_idx.push_back(j);
  }
  const int nf = static_cast<int>(free_idx.size());
  if (nf == 0) throw std::invalid_argument("fit_composite: all parameters fixed");

  Eigen::VectorXd p = clamp_to_box(start.pack(), opt);
  Eigen::VectorXd r = residuals(p);
  double cost = r.squaredNorm();

  auto jacobian = [&](const Eigen::VectorXd& p0, const Eigen::VectorXd& r0) {
    Eigen::MatrixXd j(m, nf);
    for (int c = 0; c < nf; ++c) {
      const int jdx = free_idx[c];
      double scale = std::abs(p0(jdx));
      if (scale == 0.0 && opt.lower.size() && opt.upper.size()) {
        scale = std::abs(opt.upper(jdx) - opt.lower(jdx));
      }
      if (scale == 0.0) scale = 1.0;
      const double h = 1e-6 * scale;
      Eigen::VectorXd pp = p0;
      pp(jdx) += h;
      j.col(c) = (residuals(pp) - r0) / h;
    }
    return j;
  };

  FitResult out;
  double lambda = -1.0;
  int it = 0;
  for (; it < opt.max_iterations; ++it) {
    const Eigen::MatrixXd j = jacobian(p, r);
    const Eigen::MatrixXd jtj = j.transpose() * j;
    const Eigen::VectorXd g = j.transpose() * r;
    if (lambda < 0) lambda = 1e-3 * jtj.diagonal().maxCoeff();

    bool accepted = false;
    for (int tries = 0; tries < 40; ++tries) {
      Eigen::MatrixXd h = jtj;
      h.diagonal() += lambda * jtj.diagonal().cwiseMax(1e-30);
      const Eigen::VectorXd step = h.ldlt().solve(-g);
      Eigen::VectorXd pc = p;
      for (int c = 0; c < nf; ++c) pc(free_idx[c]) += step(c);
      pc = clamp_to_box(pc, opt);
      const Eigen::VectorXd rc = residuals(pc);
      const double cc = rc.squaredNorm();
      if (cc < cost) {
        const double drop = cost - cc;
        p = pc;
        r = rc;
        cost = cc;
        lambda = std::max(lambda / 3.0, 1e-30);
        accepted = true;
        if (drop <= opt.ftol * std::max(cost, 1e-300)) {
          out.converged = true;
        }
        break;
      }
      lambda *= 4.0;
      if (lambda > 1e30) break;
    }
    if (!accepted) {
      out.converged = true;  // stuck at a (possibly bound-constrained) minimum
      break;
    }
    if (out.converged) break;
  }

  out.model = FitModel::unpack(p, n_dips);
  out.iterations = it + 1;
  out.residual_norm = std::sqrt(cost);

  // Covariance diagnostics: s^2 (J^T J)^-1 on the free parameters.
  const Eigen::MatrixXd j = jacobian(p, r);
  const Eigen::MatrixXd jtj = j.transpose() * j;
  out.variance = Eigen::VectorXd::Zero(np);
  if (m > nf) {
    const double s2 = cost / (m - nf);
    const Eigen::MatrixXd cov = s2 * jtj.completeOrthogonalDecomposition().pseudoInverse();
    for (int c = 0; c < nf; ++c) out.variance(free_idx[c]) = cov(c, c);
  }
  return out;
}

PeakTrack track_peaks(const std::vector<double>& b_fields,
                      const std::vector<AmplitudeSpectrum>& spectra,
                      const FitModel& seed, const FitOptions& opt,
                      double drift_threshold) {
  if (b_fields.size() != spectra.size() || b_fields.empty()) {
    throw std::invalid_argument("track_peaks: series size mismatch");
  }
  const int n_dips = static_cast<int>(seed.dips.size());

  auto run_pass = [&](const FitModel& first_seed, const FitOptions& pass_opt) {
    std::vector<TrackPoint> pts;
    FitModel current = first_seed;
    for (size_t i = 0; i < b_fields.size(); ++i) {
      const auto res = fit_composite(spectra[i].freq, spectra[i].amp, current, pass_opt);
      pts.push_back({b_fields[i], res.model, res.converged});
      if (res.converged) current = res.model;  // seed the next field point
    }
    return pts;
  };

  PeakTrack track;
  track.points = run_pass(seed, opt);
  track.dip_is_etalon.assign(n_dips, false);
  if (n_dips == 0 || b_fields.size() < 2) return track;

  // Classify dips: near-zero center drift across the series marks an etalon
  // (field-independent) feature.
  FitModel frozen_seed = seed;
  bool any_frozen = false;
  for (int k = 0; k < n_dips; ++k) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo, mean = 0.0;
    int n = 0;
    for (const auto& pt : track.points) {
      if (!pt.converged) continue;
      const double c = pt.model.dips[k].center;
      lo = std::min(lo, c);
      hi = std::max(hi, c);
      mean += c;
      ++n;
    }
    if (n < 2) continue;
    mean /= n;
    if (mean != 0.0 && (hi - lo) / std::abs(mean) < drift_threshold) {
      track.dip_is_etalon[k] = true;
      frozen_seed.dips[k].center = mean;
      any_frozen = true;
    }
  }

  if (any_frozen) {
    // Second pass with etalon dip centers held fixed at their mean positions.
    FitOptions frozen_opt = opt;
    if (frozen_opt.fixed.empty()) frozen_opt.fixed.assign(seed.n_params(), false);
    for (int k = 0; k < n_dips; ++k) {
      if (track.dip_is_etalon[k]) frozen_opt.fixed[4 + 3 * k] = true;
    }
    track.points = run_pass(frozen_seed, frozen_opt);
  }
  return track;
}

DeviationReport deviation_d(const std::vector<double>& residuals, int n_per_family) {
  if (n_per_family <= 0) throw std::invalid_argument("deviation_d: N must be > 0");
  if (residuals.empty()) throw std::invalid_argument("deviation_d: no residuals");
  double s = 0.0;
  for (double r : residuals) s += r * r;
  DeviationReport rep;
  rep.residuals = residuals;
  rep.n_per_family = n_per_family;
  rep.d = std::sqrt(s / (2.0 * n_per_family));
  return rep;
}

int argmin_deviation(const std::vector<double>& d_values) {
  if (d_values.empty()) throw std::invalid_argument("argmin_deviation: empty scan");
  return static_cast<int>(std::min_element(d_values.begin(), d_values.end()) -
                          d_values.begin());
}

}  // namespace polariton
