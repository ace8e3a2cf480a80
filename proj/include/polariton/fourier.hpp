#pragma once

#include <complex>
#include <vector>

#include "polariton/grid.hpp"

namespace polariton {

// Reciprocal lattice index: G = (2 pi mx / a, 2 pi my / a).
struct GIndex {
  int mx = 0;
  int my = 0;

  friend bool operator==(GIndex a, GIndex b) { return a.mx == b.mx && a.my == b.my; }
  friend bool operator<(GIndex a, GIndex b) {
    return a.mx != b.mx ? a.mx < b.mx : a.my < b.my;
  }
  GIndex negated() const { return {-mx, -my}; }
};

// Sparse set of Fourier coefficients f(rho) = sum_G c_G exp(i G.rho).
// Entries are kept sorted by (mx,my) and unique; coeff() returns 0 for
// absent indices. A real field has c(-G) = conj(c(G)).
struct FourierField {
  std::vector<GIndex> g;
  std::vector<std::complex<double>> c;

  std::complex<double> coeff(GIndex k) const;
  void insert(GIndex k, std::complex<double> value);  // adds to existing entry
  size_t size() const { return g.size(); }
  bool empty() const { return g.empty(); }
};

// DFT of a sampled real field restricted to |mx|,|my| <= cutoff:
// c_G = (1/(nx ny)) sum f(x,y) exp(-i G.rho). Coefficients with
// |c| < drop_tol * max|c| are removed; the dropped spectral mass bounds the
// round-trip reconstruction error. Requires grid dimensions > 2*cutoff so the
// retained coefficients are alias-free.
FourierField fourier_decompose(const Grid2D& f, int cutoff, double drop_tol = 1e-8);

// Evaluate sum_G Re[c_G exp(i G.rho)] on an nx x ny cell grid. Exact inverse
// of fourier_decompose for band-limited real fields (up to dropped mass).
Grid2D fourier_reconstruct(const FourierField& f, int nx, int ny);

// sum_G a_G conj(b_G); equals the cell average of a(rho) conj(b(rho)).
std::complex<double> fourier_inner(const FourierField& a, const FourierField& b);

}  // namespace polariton
