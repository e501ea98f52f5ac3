#pragma once

#include "ptbands/symmetry.hpp"

#include <Eigen/Dense>
#include <complex>
#include <optional>

// Corepresentations of the Heesh-Shubnikov little groups: classical matrix
// irreps of the unitary subgroup, Type (a) and Type (c) construction,
// equivalence under the antiunitary-twisted similarity rule, and the label
// decorations used by the band-structure figures.
//
// Convention: corep matrices compose in application order.  With uv denoting
// "u applied first, then v" the four multiplication rules read
//     G(u)G(v)  = G(uv)        G(u)G(a)  = G(ua)
//     G(a)G(u)* = G(au)        G(a)G(b)* = G(ab)
// for u, v unitary and a, b antiunitary; in terms of the right-to-left
// compose() of symmetry.hpp, uv = compose(v, u).  The published tables are
// consistent only under this reading (see check_corep_rules).

namespace ptb {

using Cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;

struct corep_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A matrix irreducible representation of the unitary subgroup.
struct MatrixIrrep {
  std::string name;
  int dim = 1;
  std::vector<CMat> mats;  // one per unitary element, in group storage order
};

// Matrix irrep by character-table row name.  1D rows come straight from the
// characters; the 2D rows ("E" at Gamma, "E_u" at M) are stored explicitly.
MatrixIrrep matrix_irrep(const LittleGroup& g, const CharacterTable& t,
                         const std::string& irrep_name);

struct Corepresentation {
  LittleGroup group;                // little groups are small; held by value
  std::string base_label;           // "G1".."G8"
  std::vector<std::string> decorations;  // subset of {"b","u","u1","u2"}
  char type_tag = 'a';
  int dim = 1;
  int dw_sum = 0;
  std::vector<CMat> mats;           // one per group element
  std::string source_irrep;         // irrep of N it was built from
  std::string source_irrep2;        // partner irrep (Type c)
  CMat beta;                        // Type (a) only

  std::string label() const;        // e.g. "G5^{b,u}"
  const CMat& at(const std::string& elem_label) const;
};

// Type (a): G(R) = D(R) on the unitary subgroup and G(R xi) = beta D(R) on
// the coset.  beta must satisfy beta beta* = D(A^2) and the antiunitary
// intertwining condition D(u) beta = beta D(A u A^-1); both are checked.
Corepresentation build_type_a(const LittleGroup& g, const MatrixIrrep& irrep,
                              const std::string& a_label, const CMat& beta);

// Type (c): doubled blocks from one irrep and its shift-conjugated partner,
//   G(u) = [D(u), 0; 0, D*(S^-1 u S)],   G(B) = [0, D*(A^-1 B); D(B A), 0]
// with A = S T the half-lattice antiunitary shift.
Corepresentation build_type_c(const LittleGroup& g, const CharacterTable& t,
                              const std::string& irrep_name,
                              const std::string& a_label = "xi");

// Max violation of the four multiplication rules over all element pairs.
double check_corep_rules(const Corepresentation& c);

// ---------------------------------------------------------------------------
// Equivalence under U G U^-1 (unitary) and U G (U*)^-1 (antiunitary).

struct EquivalenceWitness {
  bool equivalent = false;
  CMat U;
  std::optional<double> theta;  // filled when U is the antidiagonal family
};

// Verify a supplied witness.
bool corep_equivalent_with(const Corepresentation& a, const Corepresentation& b,
                           const CMat& U, double tol = 1e-12);

// Search the diagonal-phase and antidiagonal families for a witness.
EquivalenceWitness corep_equivalent(const Corepresentation& a,
                                    const Corepresentation& b);

// ---------------------------------------------------------------------------
// Decorations: "u" (diag(1,-1) similarity), "u1"/"u2" (diag(c, -+ i c*)),
// "b" (antiunitary matrices multiplied by the point's beta matrix).

Corepresentation apply_label_decoration(const Corepresentation& c,
                                        const std::string& decoration,
                                        Cplx u_constant = Cplx(1, 0));

// Trace of every matrix, keyed by element storage order.
std::vector<Cplx> character_row(const Corepresentation& c);

// ---------------------------------------------------------------------------
// Catalog of the published corepresentations at a named point.

struct CorepCatalog {
  LittleGroup group;
  CharacterTable table;
  std::vector<Corepresentation> rows;       // all published rows, G1, G2, ...
  std::vector<int> admissible;              // indices of physically applicable rows
  std::vector<std::pair<std::string, std::string>> equivalent_pairs;

  const Corepresentation& row(const std::string& base_label) const;
};

CorepCatalog corep_catalog(PointKind kind);

}  // namespace ptb
