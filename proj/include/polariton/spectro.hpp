#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

namespace polariton {

// Uniformly sampled time trace. dt inferred from the axis; construction
// validates uniform spacing.
struct Waveform {
  std::vector<double> t;  // [s], ascending, uniform
  std::vector<double> e;  // field samples, arbitrary units

  double dt() const;
  void validate() const;
};

enum class Taper { rect, hann };

// Amplitude spectrum after truncation and zero padding. Samples with
// t <= t_cut are kept (a hard rectangular window unless taper says
// otherwise), the record is zero padded to kept*pad_factor, and the one-sided
// magnitude spectrum is returned on the axis f_k = k/(n_pad dt). Doubling
// pad_factor exactly halves the bin spacing.
struct AmplitudeSpectrum {
  std::vector<double> freq;  // [Hz]
  std::vector<double> amp;   // |FT|, arbitrary units

  double bin() const { return freq.size() > 1 ? freq[1] - freq[0] : 0.0; }
};

AmplitudeSpectrum window_and_fft(const Waveform& w, double t_cut, int pad_factor,
                                 Taper taper = Taper::rect);

// Composite line-shape model on an amplitude spectrum: one Lorentzian peak,
// a constant baseline, and Gaussian dips (etalon artifacts) subtracted:
//   m(f) = baseline + amp (w/2)^2 / ((f-c)^2 + (w/2)^2)
//          - sum_k depth_k exp(-(f-c_k)^2 / (2 s_k^2))
struct GaussianDip {
  double center = 0.0;  // [Hz]
  double width = 0.0;   // gaussian sigma [Hz]
  double depth = 0.0;   // >= 0
};

struct FitModel {
  double center = 0.0;    // Lorentzian center [Hz]
  double fwhm = 0.0;      // Lorentzian FWHM [Hz]
  double amp = 0.0;       // Lorentzian height above baseline
  double baseline = 0.0;
  std::vector<GaussianDip> dips;

  double eval(double f) const;
  int n_params() const { return 4 + 3 * static_cast<int>(dips.size()); }
  Eigen::VectorXd pack() const;
  static FitModel unpack(const Eigen::VectorXd& p, int n_dips);
};

// Box bounds and fixed-parameter mask in pack() order
// [center, fwhm, amp, baseline, (c,s,depth) per dip].
struct FitOptions {
  Eigen::VectorXd lower, upper;   // empty = unbounded
  std::vector<bool> fixed;        // empty = all free
  int max_iterations = 500;
  double ftol = 1e-10;
};

struct FitResult {
  FitModel model;
  bool converged = false;
  int iterations = 0;
  double residual_norm = 0.0;       // sqrt(sum r^2)
  Eigen::VectorXd variance;         // diag of covariance estimate, pack() order
};

// Damped least squares (Levenberg-Marquardt) with numeric Jacobian and
// projection onto the box. Start point must satisfy the bounds.
FitResult fit_composite(const std::vector<double>& freq, const std::vector<double>& amp,
                        const FitModel& start, const FitOptions& opt = {});

// Peak evolution across a parameter series (magnetic field). Each step is
// seeded from the previous converged model. Dips whose fitted centers drift
// by less than drift_threshold (relative) across the series are classified as
// field-independent etalon features and held fixed in a second pass.
struct TrackPoint {
  double b_field = 0.0;    // [T]
  FitModel model;
  bool converged = false;
};

struct PeakTrack {
  std::vector<TrackPoint> points;
  std::vector<bool> dip_is_etalon;  // per dip of the seed model
};

PeakTrack track_peaks(const std::vector<double>& b_fields,
                      const std::vector<AmplitudeSpectrum>& spectra,
                      const FitModel& seed, const FitOptions& opt = {},
                      double drift_threshold = 0.01);

// Root-mean-square frequency deviation D = sqrt(sum_i delta_f_i^2 / (2 N)),
// residuals pooled over both polarization families, N points per family.
struct DeviationReport {
  std::vector<double> residuals;  // [Hz]
  int n_per_family = 0;
  double d = 0.0;                 // [Hz]
};

DeviationReport deviation_d(const std::vector<double>& residuals, int n_per_family);

// Index of the scan value minimizing D; ties resolved to the first minimum.
int argmin_deviation(const std::vector<double>& d_values);

}  // namespace polariton
