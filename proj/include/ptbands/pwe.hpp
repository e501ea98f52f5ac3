#pragma once

#include "ptbands/lattice.hpp"

#include <complex>
#include <string>
#include <vector>

// TE plane-wave-expansion operator, dense non-Hermitian eigensolve, and band
// tracking along a k path.  Bloch vectors are passed in units of pi/Lambda
// (so X = (1,0) and M = (1,1)); eigenvalues of the operator are
// (omega Lambda / 2 pi c)^2, i.e. omega is reported in units Lambda/lambda_0.

namespace ptb {

struct solver_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TEOperator {
  double kx_pi = 0, ky_pi = 0;  // pi/Lambda units
  Eigen::MatrixXcd theta;
};

// Theta[K,K'] = eta(K - K') (k+K).(k+K'), with k, K in 2 pi/Lambda units.
TEOperator assemble(double kx_pi, double ky_pi, const Eigen::MatrixXcd& inv_eps,
                    const ReciprocalSet& recips);

struct BlochMode {
  double kx_pi = 0, ky_pi = 0;
  std::complex<double> omega;   // Lambda / lambda_0
  Eigen::VectorXcd coeffs;      // unit 2-norm
  double residual = 0;          // ||Theta h - omega^2 h|| / ||Theta||
};

// n_bands lowest-Re(omega) eigenpairs; omega is the principal square root of
// the operator eigenvalue.  Degenerate eigenspaces are orthonormalized and
// ties in Re(omega) are ordered by descending Im(omega).
std::vector<BlochMode> solve(const TEOperator& op, int n_bands);

// Convenience: assemble + solve at one k point.
std::vector<BlochMode> solve_at(const LatticeConfig& cfg, double kx_pi, double ky_pi,
                                int n_bands);

// All eigenfrequencies (principal square roots), sorted by Re then Im.
// Eigenvalues only; no residual or eigenvector processing.
std::vector<std::complex<double>> spectrum(const TEOperator& op);

struct PathSpec {
  struct Vertex {
    std::string name;  // "gamma", "x", "m"
    double kx_pi, ky_pi;
  };
  std::vector<Vertex> vertices;
  std::vector<int> samples_per_segment;  // size = vertices.size() - 1

  static PathSpec standard_cycle(int samples_per_segment = 64);  // G-X-M-G
};

struct BandStructure {
  struct Sample {
    int segment;          // index into path vertices
    int index;            // sample index within the segment
    double kx_pi, ky_pi;
    double abscissa;      // accumulated normalized path coordinate
  };
  std::vector<Sample> samples;
  std::vector<std::vector<BlochMode>> modes;   // per sample, sorted
  std::vector<std::vector<int>> connection;    // band b at sample j -> band at j+1
  std::vector<std::vector<int>> pair_partner;  // PT partner band index or -1
};

// Independent per-k solves (parallel over samples when threads != 1) followed
// by eigenvector-overlap band connection and PT-pair detection per sample.
BandStructure solve_path(const LatticeConfig& cfg, const PathSpec& path, int n_bands,
                         int threads = 0);

// Greedy conjugate pairing of modes at one k: partner[i] = j minimizing
// |omega_i - conj(omega_j)|; real modes (|Im| <= tol) stay unpaired.
// Throws when a non-real mode has no partner within tol.
std::vector<int> detect_pt_pairs(const std::vector<BlochMode>& modes, double tol = 1e-8);

}  // namespace ptb
