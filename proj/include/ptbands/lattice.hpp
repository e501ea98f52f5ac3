#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

// PT-symmetric checkerboard permittivity and the Fourier coefficients of
// 1/eps on the reciprocal lattice.  The gain rod (n_r + delta_n + i n_i) is
// centered on the origin, the loss rod (conjugate index) at (1/2, 1/2);
// lengths are in units of the lattice constant.

namespace ptb {

struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LatticeConfig {
  double lattice_constant = 1.0;
  double d_x = 0.5;
  double d_y = 0.5;
  double n_r = 2.0;     // background (and rod, when delta_n = 0) real index
  double n_i = 0.05;    // non-Hermiticity: rods are n_r + delta_n +- i n_i
  double delta_n = 0.0; // real-index contrast of the rods over the background
  int truncation = 7;   // plane waves |m|, |n| <= truncation

  void validate() const;
  std::complex<double> gain_index() const { return {n_r + delta_n, n_i}; }
  std::complex<double> loss_index() const { return {n_r + delta_n, -n_i}; }

  static LatticeConfig from_json_text(const std::string& text);
  static LatticeConfig from_json_file(const std::string& path);
  std::string to_json() const;
};

// Plane waves K = (2 pi / Lambda)(m, n), |m|,|n| <= N, row-major by (m, n).
class ReciprocalSet {
 public:
  explicit ReciprocalSet(int N);
  int truncation() const { return n_; }
  int size() const { return static_cast<int>(idx_.size()); }
  std::array<int, 2> at(int i) const { return idx_[i]; }
  int index_of(int m, int n) const {
    if (std::abs(m) > n_ || std::abs(n) > n_) return -1;
    return (m + n_) * (2 * n_ + 1) + (n + n_);
  }

 private:
  int n_;
  std::vector<std::array<int, 2>> idx_;
};

// Exact Fourier coefficient of 1/eps at G = (2 pi / Lambda)(m, n).
std::complex<double> fourier_inv_eps(const LatticeConfig& cfg, int m, int n);

// eta[K, K'] = fourier_inv_eps(K - K').
Eigen::MatrixXcd build_inv_eps_matrix(const LatticeConfig& cfg, const ReciprocalSet& recips);

// Integral of exp(-i G.r) over an axis-aligned rectangle centered at c with
// half-widths (dx/2, dy/2); G = 2 pi (gm, gn).  Used by the rod terms and by
// the mode energy overlaps.
std::complex<double> rect_integral(double gm, double gn, double cx, double cy,
                                   double dx, double dy);

}  // namespace ptb
