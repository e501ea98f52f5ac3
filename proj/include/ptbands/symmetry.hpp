#pragma once

#include <array>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

// Magnetic (Heesh-Shubnikov) space-group algebra for the PT-symmetric
// checkerboard lattice: Seitz elements with exact half-integer translations,
// little groups at rational Bloch vectors, character tables and the
// Dimmock-Wheeler classification test.
//
// Group elements compose right-to-left: compose(a, b) applies b first,
// {Ra|ta}{Rb|tb} = {Ra Rb | ta + Ra tb}.  All arithmetic is exact; no
// floating point enters the group layer.

namespace ptb {

struct group_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Exact rationals (used for Bloch vectors in units of pi/Lambda)

struct Rat {
  long long num = 0;
  long long den = 1;

  Rat() = default;
  Rat(long long n) : num(n), den(1) {}
  Rat(long long n, long long d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw group_error("rational with zero denominator");
    if (den < 0) { num = -num; den = -den; }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
  }

  bool is_integer() const { return den == 1; }
  bool operator==(const Rat& o) const { return num == o.num && den == o.den; }
  bool operator!=(const Rat& o) const { return !(*this == o); }

  Rat operator+(const Rat& o) const { return Rat(num * o.den + o.num * den, den * o.den); }
  Rat operator-(const Rat& o) const { return Rat(num * o.den - o.num * den, den * o.den); }
  Rat operator*(long long s) const { return Rat(num * s, den); }
  Rat operator-() const { return Rat(-num, den); }

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  // Reduce modulo 2 into (-1, 1]  (Brillouin-zone folding in pi/Lambda units).
  Rat folded() const {
    long long two = 2 * den;
    long long n = ((num % two) + two) % two;  // now in [0, 2)
    if (n > den) n -= two;                    // into (-1, 1]
    return Rat(n, den);
  }
};

struct KPoint {
  Rat x, y;
  bool operator==(const KPoint& o) const { return x == o.x && y == o.y; }
};

inline KPoint k_gamma() { return {Rat(0), Rat(0)}; }
inline KPoint k_x()     { return {Rat(1), Rat(0)}; }
inline KPoint k_m()     { return {Rat(1), Rat(1)}; }

// ---------------------------------------------------------------------------
// Point parts (the C4v operations)

enum class PointOp : int { E = 0, C2, C4, C4inv, SigmaX, SigmaY, SigmaD, SigmaDp };
constexpr int kNumPointOps = 8;

using Mat2i = std::array<int, 4>;  // row-major 2x2, entries in {-1,0,1}

Mat2i point_matrix(PointOp op);
PointOp point_op_of(const Mat2i& m);
PointOp point_mul(PointOp a, PointOp b);  // a after b
PointOp point_inv(PointOp a);
const char* point_name(PointOp op);

inline std::array<long long, 2> apply_point(const Mat2i& m, long long x, long long y) {
  return {m[0] * x + m[1] * y, m[2] * x + m[3] * y};
}

// ---------------------------------------------------------------------------
// Seitz elements {R | tau} with an antiunitary (time-inversion) flag.
// Translations are in units of Lambda, stored as doubled integers so that
// half-lattice shifts stay exact.

struct SymmetryElement {
  PointOp op = PointOp::E;
  long long tx2 = 0;  // tau_x = tx2 / 2
  long long ty2 = 0;
  bool antiunitary = false;

  bool operator==(const SymmetryElement& o) const {
    return op == o.op && tx2 == o.tx2 && ty2 == o.ty2 && antiunitary == o.antiunitary;
  }
};

SymmetryElement compose(const SymmetryElement& a, const SymmetryElement& b);
SymmetryElement inverse(const SymmetryElement& g);

// The 16-element space group M = C4v + T{E|1/2,1/2} C4v.
std::vector<SymmetryElement> full_space_group();

// ---------------------------------------------------------------------------
// Little groups.  Elements are stored reduced: the fractional translation is
// (0,0) for unitary and (1/2,1/2) for antiunitary elements; what remains of
// the lattice translation is its class under exp(i k.t), tracked as `bar`
// (true means exp(i k.t) = -1, the overbar of the tables).

struct GroupElement {
  PointOp op = PointOp::E;
  bool bar = false;
  bool anti = false;

  bool operator==(const GroupElement& o) const {
    return op == o.op && bar == o.bar && anti == o.anti;
  }
};

enum class PointKind { Gamma, X, M, Generic };

class LittleGroup {
 public:
  KPoint k;
  PointKind kind = PointKind::Generic;
  std::vector<GroupElement> elems;      // unitary block first, then antiunitary coset
  int unitary_order = 0;
  std::vector<int> dw_order;            // antiunitary element indices, Supplement listing order
  std::vector<std::vector<int>> mult;   // mult[i][j] = index of compose(elems[i], elems[j])
  std::vector<int> invidx;
  std::vector<std::string> labels;

  int order() const { return static_cast<int>(elems.size()); }
  int antiunitary_order() const { return order() - unitary_order; }
  int index_of(const GroupElement& e) const;          // -1 if absent
  int product(int i, int j) const { return mult[i][j]; }
  int inverse_of(int i) const { return invidx[i]; }
  const std::string& label(int i) const { return labels[i]; }
  int index_of_label(const std::string& l) const;

  bool is_antiunitary(int i) const { return elems[i].anti; }

  // Representative Seitz element (bar contributes a (1,0) lattice shift).
  SymmetryElement representative(int i) const;

  // Reduce an arbitrary Seitz element into this group; -1 if not a member.
  int reduce(const SymmetryElement& g) const;
};

// Builds the Heesh-Shubnikov little group at k (units of pi/Lambda; k is
// folded into the first zone).  Unitary members satisfy R k = k + K, the
// antiunitary coset R k = -k + K.  Translation classes are doubled wherever
// exp(i k.t) takes the value -1 on products of members.
LittleGroup build_little_group(const KPoint& k);

// ---------------------------------------------------------------------------
// Character tables of the unitary subgroups (classical characters)

struct CharacterTable {
  std::string group_name;
  std::vector<std::string> class_names;
  std::vector<std::vector<int>> classes;  // unitary element indices per class
  struct Row {
    std::string name;
    int dim = 1;
    std::vector<int> chi;  // one per class
    bool physical = true;  // character flips sign between barred/unbarred classes
  };
  std::vector<Row> rows;

  int class_of(int elem_index) const;
  int chi_of_elem(int row, int elem_index) const { return rows[row].chi[class_of(elem_index)]; }
  int row_index(const std::string& name) const;
};

// Table for the unitary subgroup of a named little group (C4v at Gamma,
// D2h at X, D4h at M).  Throws for generic k.
CharacterTable character_table(const LittleGroup& g);

// ---------------------------------------------------------------------------
// Dimmock-Wheeler test

struct CorepType {
  char tag = 'a';  // 'a', 'b' or 'c'
  int dw_sum = 0;
};

// Sum of chi(B^2) over the antiunitary coset for one irrep row.
CorepType dimmock_wheeler(const LittleGroup& g, const CharacterTable& tab, int row);

// Labels of B^2 per antiunitary element, in the Supplement's listing order.
std::vector<std::string> squared_antiunitary_set(const LittleGroup& g);

// ---------------------------------------------------------------------------
// Abstract reference groups and isomorphism testing

struct MultTable {
  int n = 0;
  std::vector<std::vector<int>> t;
  int identity = 0;
};

struct IsoWitness {
  bool isomorphic = false;
  std::vector<int> map;  // g-index -> h-index when isomorphic
  std::string detail;    // diagnostic on failure
};

MultTable reference_group(const std::string& name);  // "C4v", "D2h", "D4h"
IsoWitness find_isomorphism(const MultTable& g, const MultTable& h);

// Multiplication table of the unitary subgroup of g, as a MultTable.
MultTable unitary_mult_table(const LittleGroup& g);

// True iff the unitary subgroup of g is isomorphic to the named reference.
IsoWitness verify_isomorphism(const LittleGroup& g, const std::string& reference);

// ---------------------------------------------------------------------------
// Plain point-group tables (reduction procedure; no translation classes)

struct PointGroupTable {
  std::string name;
  std::vector<PointOp> ops;
  struct Row {
    std::string name;
    int dim = 1;
    std::vector<int> chi;  // one per op
  };
  std::vector<Row> rows;
};

PointGroupTable c4v_point_table();
PointGroupTable c2v_point_table();

}  // namespace ptb
