#pragma once

#include "ptbands/corep.hpp"
#include "ptbands/pwe.hpp"

#include <optional>

// Symmetry actions on Bloch coefficient vectors, degeneracy clustering,
// corepresentation label assignment, exceptional-point location, the
// star-reduction procedure and the M-point quartet check.
//
// Operator convention (fixed once): a unitary {R|t} acts on a field as
// (gH)(r) = H(R^-1 (r - t)) and an antiunitary T{R|t} as H*(R^-1 (r - t));
// on plane-wave coefficients this is a re-indexing with phase
// exp(-2 pi i (k+K').t) and, for antiunitary elements, conjugation.

namespace ptb {

struct classify_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Transform a coefficient vector by little-group element `elem`.  Components
// re-indexed outside the truncation window are dropped; vectors supported
// away from the window edge transform exactly.
Eigen::VectorXcd apply_action(const LittleGroup& g, int elem, const ReciprocalSet& recips,
                              const Eigen::VectorXcd& coeffs);

// Clusters of (complex-)degenerate modes: |omega_i - omega_j| < tol merges.
// Conjugate partners with Im != 0 land in distinct clusters by construction.
std::vector<std::vector<int>> degeneracy_cluster(const std::vector<BlochMode>& modes,
                                                 double tol = 1e-6);

struct ClusterLabel {
  std::vector<int> modes;        // indices into the classified mode list
  bool is_pair = false;          // PT conjugate pair rather than a real cluster
  int dim = 1;
  std::string label;             // catalog label, possibly decorated; "unclassified"
  std::string equivalent_to;     // other member of the label's equivalence class
  double confidence = 0;         // max character mismatch against the catalog row
  double max_im = 0;
};

struct ClassificationReport {
  PointKind kind = PointKind::Generic;
  double kx_pi = 0, ky_pi = 0;
  double window_lo = 0, window_hi = 0;
  std::vector<BlochMode> modes;        // modes inside the window, sorted
  std::vector<int> pair_partner;       // per mode, -1 when real
  std::vector<int> cluster_of;         // per mode
  std::vector<ClusterLabel> clusters;
};

struct ClassifyOptions {
  // Symmetry-protected degeneracies resolve to ~1e-9 while accidental
  // near-degeneracies of this lattice sit at ~1e-5, so 1e-6 separates them.
  double cluster_tol = 1e-6;   // on |omega_i - omega_j|, Lambda/lambda_0 units
  double pair_tol = 1e-8;      // on |omega_i - conj(omega_j)|
  double char_tol = 1e-3;      // catalog character match threshold
  int max_bands = 48;
};

// Solve at a named high-symmetry point and classify every cluster whose
// Re(omega) lies inside [window_lo, window_hi].
ClassificationReport classify_at_point(const LatticeConfig& cfg, PointKind kind,
                                       double window_lo, double window_hi,
                                       const ClassifyOptions& opt = {});

// Label one cluster (a real degenerate cluster or a PT pair) against the
// catalog: unitary-part characters are matched, the antiunitary part is
// verified structurally.
ClusterLabel classify_cluster(const std::vector<BlochMode>& modes,
                              const std::vector<int>& cluster, bool is_pair,
                              const CorepCatalog& catalog, const ReciprocalSet& recips,
                              double char_tol = 1e-3);

// ---------------------------------------------------------------------------
// Exceptional points

struct ExceptionalPoint {
  double kx_pi = 0, ky_pi = 0;   // located transition point
  double t = 0;                  // parameter along the segment [0, 1]
  double bracket_width = 0;      // in pi/Lambda units along the segment
  double n_i = 0;
};

// Bisects max|Im omega| of the band pair (band, band+1) along the straight
// segment from `from` to `to` (pi/Lambda units).  The pair must be real at
// `from` and complex at `to`.
ExceptionalPoint locate_exceptional_point(const LatticeConfig& cfg,
                                          std::array<double, 2> from,
                                          std::array<double, 2> to, int band,
                                          double tol_k = 1e-5, double tol_im = 1e-8);

// ---------------------------------------------------------------------------
// Reduction procedure (fixed-point counting over a star of equivalent
// reciprocal-space points, projected onto point-group irreps)

struct Star {
  std::string name;                          // e.g. "m_2"
  std::vector<std::array<int, 2>> points;    // units of pi/Lambda (exact)
  int radius2 = 0;                           // |k+K|^2 in (pi/Lambda)^2
};

// Profile P(R) = number of star points literally fixed by R.
std::vector<int> fixed_point_profile(const Star& star, const PointGroupTable& t);

// lambda_i = (1/h) sum_R P(R) chi_i(R); throws on non-integer counts.
std::vector<int> reduce_at_point(const Star& star, const PointGroupTable& t);

// Stars of Gamma- and M-equivalent points (C4v) and X-equivalent points
// (C2v little co-group) with |k+K|^2 <= max_radius2.
std::vector<Star> star_catalog(const std::string& base, int max_radius2);
Star named_star(const std::string& name);  // gamma_1, gamma_2, m_1, m_2, x_1

// ---------------------------------------------------------------------------
// M-point quartet structure (two coalesced PT pairs)

struct QuartetCheck {
  bool ok = false;
  std::string failure;              // offending element / condition when !ok
  std::vector<CMat> matrices;       // 4x4 per group element, paper ordering
  double max_violation = 0;
};

// Verifies the 4x4 block pattern on four modes forming two PT pairs with a
// common Re(omega): unitary elements act block-diagonally with two equal
// 2x2 blocks (diagonal blocks for E, C2, s_d, s_d'; antidiagonal for C4,
// C4^-1, s_x, s_y), antiunitary elements act block-antidiagonally with the
// same sub-pattern split.
QuartetCheck verify_quartet_structure(const std::vector<BlochMode>& modes,
                                      const std::vector<int>& quartet,
                                      const LittleGroup& g, const ReciprocalSet& recips,
                                      double tol = 1e-6);

// ---------------------------------------------------------------------------
// Energy overlap of a mode with one rod (|H|^2 integrated over the rod)

double rod_overlap(const BlochMode& mode, const ReciprocalSet& recips, double cx,
                   double cy, double dx, double dy);

}  // namespace ptb
