#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <vector>

#include "polariton/coupling.hpp"

namespace polariton {

// Term selection for the quadratic Hamiltonian. rwa_only keeps co-rotating
// (number-conserving) terms only; antiresonant_only keeps bare frequencies
// plus the counter-rotating terms only. The two flags are mutually exclusive.
// decoupled replaces the shared matter basis by one dedicated matter mode per
// photon mode with coupling Omega_p (the no-cross-talk reference model).
struct HamiltonianFlags {
  bool include_int = true;
  bool include_a2 = true;
  bool rwa_only = false;
  bool antiresonant_only = false;
  bool decoupled = false;
};

struct PhotonModeInfo {
  int p = 1;
  Pol sigma = Pol::y;
  double omega = 0.0;    // [rad/s]
  double quality = 0.0;
};

// Bosonic quadratic form H = 1/2 Psi^dag M Psi + const over
// Psi = (a_1..a_Np, b_1..b_Nm, a^dag..., b^dag...), stored through its blocks
//   M = [[A, B], [conj(B), conj(A)]],  A Hermitian, B symmetric.
// Photon entries come first; the matter basis is one mode per retained
// reciprocal vector (all at omega_c), or per photon mode when decoupled.
struct HopfieldMatrix {
  Eigen::MatrixXcd block_a;   // L x L [rad/s]
  Eigen::MatrixXcd block_b;   // L x L [rad/s]
  int n_photon = 0;
  int n_matter = 0;
  double omega_c = 0.0;       // [rad/s]
  double b_field = 0.0;       // [T]
  HamiltonianFlags flags;
  std::vector<PhotonModeInfo> photons;
  std::vector<GIndex> matter_g;  // empty when decoupled

  int dim() const { return n_photon + n_matter; }
  Eigen::MatrixXcd doubled() const;  // [[A,B],[B*,A*]], 2L x 2L
};

HopfieldMatrix build_hamiltonian(const CouplingSet& cs, const HamiltonianFlags& flags = {});

// Result of the symplectic (Bogoliubov) diagonalization. Rows are normal
// modes sorted by ascending frequency; the transformation reads
//   c_lambda = sum_p X_{lambda p} a_p + sum_k W_{lambda k} b_k
//            + sum_p Xt_{lambda p} a_p^dag + sum_k Wt_{lambda k} b_k^dag
// with the symplectic norm sum |X|^2+|W|^2-|Xt|^2-|Wt|^2 = 1 per mode.
// Modes whose dynamical-matrix eigenvalue acquired an imaginary part are
// flagged unstable and left unnormalized (their symplectic norm vanishes).
struct PolaritonSolution {
  Eigen::VectorXd omega;      // [rad/s], ascending
  Eigen::MatrixXcd x, w;      // L x n_photon, L x n_matter
  Eigen::MatrixXcd xt, wt;    // counter-rotating blocks
  std::vector<bool> stable;
  bool all_stable = true;
  int n_photon = 0;
  int n_matter = 0;

  int n_modes() const { return static_cast<int>(omega.size()); }
  // sum_p |X_{lambda p}|^2: photonic weight used for bright/dark classification.
  double photon_weight(int lambda) const;
  double symplectic_norm(int lambda) const;
};

// Diagonalizes via the dynamical matrix K M, K = diag(I,-I): physical modes
// are the positive-symplectic-norm eigenvectors, K-orthonormalized within
// degenerate clusters.
PolaritonSolution diagonalize(const HopfieldMatrix& hm);

// Ground-state (or thermal/driven, via per-mode occupations) photon
// correlations <a_p^dag a_q> = sum_l Xt* Xt (n_l+1) + X X* n_l.
// occupations empty means vacuum. Hermitian PSD; identically zero when the
// Hamiltonian was built rwa_only.
Eigen::MatrixXcd ground_state_correlations(const PolaritonSolution& sol,
                                           const Eigen::VectorXd& occupations = {});

// Branch data over a magnetic-field grid. branches(i,l) is the l-th sorted
// frequency at b_grid[i]; photon_weights[i](l,p) = |X_{l p}|^2 there.
struct DispersionSweep {
  std::vector<double> b_grid;              // [T]
  Eigen::MatrixXd branches;                // nB x L [rad/s]
  Eigen::MatrixXd omega_c;                 // nB x 1 [rad/s]
  std::vector<Eigen::MatrixXd> photon_weights;
  std::vector<int> unstable_points;        // indices into b_grid
  int n_photon = 0;

  int n_branches() const { return static_cast<int>(branches.cols()); }
};

DispersionSweep dispersion_sweep(const std::vector<ModeProfile>& profiles,
                                 const std::vector<double>& b_grid,
                                 const PhysParams& par,
                                 const HamiltonianFlags& flags = {},
                                 int threads = 1);

// Largest |omega(i+1,l) - omega(i,l)| step of any branch, for continuity
// checks against a caller-chosen threshold.
double max_branch_jump(const DispersionSweep& sweep);

// Middle-polariton analysis of a sweep. MPs are branches strictly between the
// lowest and highest branch; the crossing point is where a *bright* MP
// (photon weight > bright_threshold) meets omega_c most closely. Reports the
// per-photon-mode weights sum_{l in MP} |X_{l p}|^2 at that field. found is
// false when no bright MP approaches omega_c within max_distance (e.g. for
// decoupled-overlap geometries).
struct MpCrossing {
  bool found = false;
  double b_star = 0.0;             // [T]
  double distance = 0.0;           // min |omega_MP - omega_c| [rad/s]
  int branch = -1;
  std::vector<double> weights;     // per photon mode at b_star
};

MpCrossing mp_weights(const DispersionSweep& sweep, double bright_threshold = 1e-2,
                      double max_distance = -1.0);  // <0: grid resolution e dB/m

}  // namespace polariton
