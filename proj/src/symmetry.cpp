#include "ptbands/symmetry.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <tuple>
#include <optional>
#include <sstream>

namespace ptb {

// ---------------------------------------------------------------------------
// Point parts

Mat2i point_matrix(PointOp op) {
  switch (op) {
    case PointOp::E:       return { 1,  0,  0,  1};
    case PointOp::C2:      return {-1,  0,  0, -1};
    case PointOp::C4:      return { 0, -1,  1,  0};   // +90 degrees
    case PointOp::C4inv:   return { 0,  1, -1,  0};
    case PointOp::SigmaX:  return {-1,  0,  0,  1};   // mirror normal to x
    case PointOp::SigmaY:  return { 1,  0,  0, -1};
    case PointOp::SigmaD:  return { 0,  1,  1,  0};   // mirror along x+y
    case PointOp::SigmaDp: return { 0, -1, -1,  0};   // mirror along -x+y
  }
  throw group_error("bad point op");
}

PointOp point_op_of(const Mat2i& m) {
  for (int i = 0; i < kNumPointOps; ++i)
    if (point_matrix(static_cast<PointOp>(i)) == m) return static_cast<PointOp>(i);
  throw group_error("matrix is not a C4v operation");
}

PointOp point_mul(PointOp a, PointOp b) {
  Mat2i A = point_matrix(a), B = point_matrix(b), C{};
  C[0] = A[0] * B[0] + A[1] * B[2];
  C[1] = A[0] * B[1] + A[1] * B[3];
  C[2] = A[2] * B[0] + A[3] * B[2];
  C[3] = A[2] * B[1] + A[3] * B[3];
  return point_op_of(C);
}

PointOp point_inv(PointOp a) {
  if (a == PointOp::C4) return PointOp::C4inv;
  if (a == PointOp::C4inv) return PointOp::C4;
  return a;  // the rest are involutions
}

const char* point_name(PointOp op) {
  switch (op) {
    case PointOp::E:       return "E";
    case PointOp::C2:      return "C2";
    case PointOp::C4:      return "C4";
    case PointOp::C4inv:   return "C4^-1";
    case PointOp::SigmaX:  return "s_x";
    case PointOp::SigmaY:  return "s_y";
    case PointOp::SigmaD:  return "s_d";
    case PointOp::SigmaDp: return "s_d'";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Seitz elements

SymmetryElement compose(const SymmetryElement& a, const SymmetryElement& b) {
  Mat2i Ra = point_matrix(a.op);
  auto rt = apply_point(Ra, b.tx2, b.ty2);
  SymmetryElement r;
  r.op = point_mul(a.op, b.op);
  r.tx2 = a.tx2 + rt[0];
  r.ty2 = a.ty2 + rt[1];
  r.antiunitary = a.antiunitary != b.antiunitary;
  return r;
}

SymmetryElement inverse(const SymmetryElement& g) {
  SymmetryElement r;
  r.op = point_inv(g.op);
  Mat2i Ri = point_matrix(r.op);
  auto rt = apply_point(Ri, g.tx2, g.ty2);
  r.tx2 = -rt[0];
  r.ty2 = -rt[1];
  r.antiunitary = g.antiunitary;
  return r;
}

std::vector<SymmetryElement> full_space_group() {
  std::vector<SymmetryElement> g;
  g.reserve(16);
  for (int i = 0; i < kNumPointOps; ++i)
    g.push_back({static_cast<PointOp>(i), 0, 0, false});
  for (int i = 0; i < kNumPointOps; ++i)
    g.push_back({static_cast<PointOp>(i), 1, 1, true});  // T {R | 1/2, 1/2}
  return g;
}

// ---------------------------------------------------------------------------
// Little-group construction

namespace {

// k . t in units of pi, for integer t; must itself be an integer for t to
// have a well-defined +-1 class at this k.  Returns -1 when it does not.
int translation_class(const KPoint& k, long long tx, long long ty) {
  Rat v = k.x * tx + k.y * ty;
  if (!v.is_integer()) return -1;
  return static_cast<int>(((v.num % 2) + 2) % 2);
}

bool congruent_mod_recip(const Rat& a, const Rat& b) {
  Rat d = a - b;  // reciprocal vectors are even integers in pi/Lambda units
  return d.is_integer() && d.num % 2 == 0;
}

struct KeyLess {
  bool operator()(const GroupElement& a, const GroupElement& b) const {
    return std::tie(a.anti, a.op, a.bar) < std::tie(b.anti, b.op, b.bar);
  }
};

std::optional<GroupElement> reduce_at(const KPoint& k, const SymmetryElement& g,
                                      bool* class_ok) {
  *class_ok = true;
  int fx = static_cast<int>(((g.tx2 % 2) + 2) % 2);
  int fy = static_cast<int>(((g.ty2 % 2) + 2) % 2);
  int want = g.antiunitary ? 1 : 0;
  if (fx != want || fy != want) return std::nullopt;  // wrong coset shape
  long long tx = (g.tx2 - fx) / 2, ty = (g.ty2 - fy) / 2;
  int cls = translation_class(k, tx, ty);
  if (cls < 0) {
    *class_ok = false;
    return std::nullopt;
  }
  return GroupElement{g.op, cls == 1, g.antiunitary};
}

SymmetryElement lift_element(const GroupElement& e, bool have_bar_shift,
                             long long bx, long long by) {
  SymmetryElement s;
  s.op = e.op;
  s.antiunitary = e.anti;
  s.tx2 = e.anti ? 1 : 0;
  s.ty2 = e.anti ? 1 : 0;
  if (e.bar) {
    if (!have_bar_shift) throw group_error("bar class not representable at this k");
    s.tx2 += 2 * bx;
    s.ty2 += 2 * by;
  }
  return s;
}

struct NamedOrder {
  std::vector<GroupElement> elems;
  std::vector<int> dw_within_anti;  // indices into the antiunitary block
  std::vector<std::string> labels;
};

NamedOrder gamma_order() {
  NamedOrder o;
  const PointOp ops[] = {PointOp::E, PointOp::C2, PointOp::C4, PointOp::C4inv,
                         PointOp::SigmaX, PointOp::SigmaY, PointOp::SigmaD, PointOp::SigmaDp};
  for (PointOp p : ops) o.elems.push_back({p, false, false});
  for (PointOp p : ops) o.elems.push_back({p, false, true});
  o.labels = {"E", "C2", "C4", "C4^-1", "s_x", "s_y", "s_d", "s_d'",
              "xi", "gamma_2", "gamma_4", "gamma_4^-1", "mu_x", "mu_y", "mu_d", "mu_d'"};
  o.dw_within_anti = {0, 1, 4, 5, 6, 7, 2, 3};
  return o;
}

NamedOrder x_order() {
  NamedOrder o;
  // Column order of the D2h multiplication/character/corep tables.
  const PointOp ops[] = {PointOp::E, PointOp::C2, PointOp::SigmaY, PointOp::SigmaX};
  for (int bar = 0; bar < 2; ++bar)
    for (PointOp p : ops) o.elems.push_back({p, bar == 1, false});
  for (int bar = 0; bar < 2; ++bar)
    for (PointOp p : ops) o.elems.push_back({p, bar == 1, true});
  o.labels = {"e", "c", "m_y", "m_x", "~e", "~c", "~m_y", "~m_x",
              "xi", "zeta", "mu_y", "mu_x", "~xi", "~zeta", "~mu_y", "~mu_x"};
  // Supplement lists W^2 as (xi, ~xi, zeta, ~zeta, mu_x, ~mu_x, mu_y, ~mu_y).
  o.dw_within_anti = {0, 4, 1, 5, 3, 7, 2, 6};
  return o;
}

NamedOrder m_order() {
  NamedOrder o;
  const PointOp uops[] = {PointOp::E, PointOp::C4, PointOp::C4inv, PointOp::C2,
                          PointOp::SigmaX, PointOp::SigmaY, PointOp::SigmaD, PointOp::SigmaDp};
  for (PointOp p : uops)
    for (int bar = 0; bar < 2; ++bar) o.elems.push_back({p, bar == 1, false});
  const PointOp aops[] = {PointOp::E, PointOp::C4, PointOp::C4inv, PointOp::C2,
                          PointOp::SigmaX, PointOp::SigmaY, PointOp::SigmaD, PointOp::SigmaDp};
  for (PointOp p : aops)
    for (int bar = 0; bar < 2; ++bar) o.elems.push_back({p, bar == 1, true});
  o.labels = {"e",  "~e",  "C4",  "~C4",  "C4^-1", "~C4^-1", "C2",  "~C2",
              "m_x", "~m_x", "m_y", "~m_y", "s_d",  "~s_d",  "s_d'", "~s_d'",
              "xi", "~xi", "gamma", "~gamma", "gamma^-1", "~gamma^-1", "zeta", "~zeta",
              "mu_x", "~mu_x", "mu_y", "~mu_y", "mu_d", "~mu_d", "mu_d'", "~mu_d'"};
  o.dw_within_anti = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15};
  return o;
}

}  // namespace

int LittleGroup::index_of(const GroupElement& e) const {
  for (size_t i = 0; i < elems.size(); ++i)
    if (elems[i] == e) return static_cast<int>(i);
  return -1;
}

int LittleGroup::index_of_label(const std::string& l) const {
  for (size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == l) return static_cast<int>(i);
  return -1;
}

SymmetryElement LittleGroup::representative(int i) const {
  const GroupElement& e = elems[i];
  // Search a small shift realizing the bar class.
  if (e.bar) {
    for (auto [bx, by] : {std::pair<long long, long long>{1, 0}, {0, 1}, {1, 1}}) {
      if (translation_class(k, bx, by) == 1) return lift_element(e, true, bx, by);
    }
    throw group_error("bar class not representable at this k");
  }
  return lift_element(e, false, 0, 0);
}

int LittleGroup::reduce(const SymmetryElement& g) const {
  bool ok = true;
  auto r = reduce_at(k, g, &ok);
  if (!r) return -1;
  return index_of(*r);
}

LittleGroup build_little_group(const KPoint& k_in) {
  LittleGroup g;
  g.k = {k_in.x.folded(), k_in.y.folded()};
  const KPoint& k = g.k;

  if (k == k_gamma()) g.kind = PointKind::Gamma;
  else if (k == k_x()) g.kind = PointKind::X;
  else if (k == k_m()) g.kind = PointKind::M;
  else g.kind = PointKind::Generic;

  // Coset membership: R k = k + K (unitary), R k = -k + K (antiunitary).
  std::vector<GroupElement> members;
  for (const SymmetryElement& s : full_space_group()) {
    Mat2i R = point_matrix(s.op);
    Rat rx = k.x * R[0] + k.y * R[1];
    Rat ry = k.x * R[2] + k.y * R[3];
    bool in = s.antiunitary
                  ? (congruent_mod_recip(rx, -k.x) && congruent_mod_recip(ry, -k.y))
                  : (congruent_mod_recip(rx, k.x) && congruent_mod_recip(ry, k.y));
    if (in) members.push_back({s.op, false, s.antiunitary});
  }

  // Close under composition, adding barred classes as they appear.
  std::vector<GroupElement> set = members;
  auto contains = [&set](const GroupElement& e) {
    return std::find(set.begin(), set.end(), e) != set.end();
  };
  long long bx = 0, by = 0;
  bool have_bar = false;
  for (auto [cx, cy] : {std::pair<long long, long long>{1, 0}, {0, 1}, {1, 1}})
    if (translation_class(k, cx, cy) == 1) { bx = cx; by = cy; have_bar = true; break; }

  bool grew = true;
  while (grew) {
    grew = false;
    size_t n = set.size();
    for (size_t i = 0; i < n && !grew; ++i)
      for (size_t j = 0; j < n && !grew; ++j) {
        SymmetryElement p = compose(lift_element(set[i], have_bar, bx, by),
                                    lift_element(set[j], have_bar, bx, by));
        bool cls_ok = true;
        auto r = reduce_at(k, p, &cls_ok);
        if (!cls_ok)
          throw group_error("little-group product has a translation class outside +-1");
        if (!r) throw group_error("little-group product left the coset structure");
        if (!contains(*r)) {
          set.push_back(*r);
          grew = true;
        }
      }
  }

  // Canonical ordering.
  std::vector<int> dw_within_anti;
  if (g.kind != PointKind::Generic) {
    NamedOrder o = g.kind == PointKind::Gamma ? gamma_order()
                 : g.kind == PointKind::X     ? x_order()
                                              : m_order();
    if (o.elems.size() != set.size()) throw group_error("unexpected little-group order");
    for (const GroupElement& e : o.elems)
      if (std::find(set.begin(), set.end(), e) == set.end())
        throw group_error("constructed group does not match the canonical element set");
    g.elems = o.elems;
    g.labels = o.labels;
    dw_within_anti = o.dw_within_anti;
  } else {
    std::sort(set.begin(), set.end(), KeyLess{});
    std::stable_partition(set.begin(), set.end(),
                          [](const GroupElement& e) { return !e.anti; });
    g.elems = set;
    for (const GroupElement& e : g.elems) {
      std::string l = e.bar ? std::string("~") + point_name(e.op) : point_name(e.op);
      if (e.anti) l = "T:" + l;
      g.labels.push_back(l);
    }
  }

  g.unitary_order = static_cast<int>(
      std::count_if(g.elems.begin(), g.elems.end(),
                    [](const GroupElement& e) { return !e.anti; }));
  if (dw_within_anti.empty())
    for (int i = 0; i < g.order() - g.unitary_order; ++i) dw_within_anti.push_back(i);
  for (int i : dw_within_anti) g.dw_order.push_back(g.unitary_order + i);

  // Multiplication table and inverses.
  int n = g.order();
  g.mult.assign(n, std::vector<int>(n, -1));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      SymmetryElement p = compose(g.representative(i), g.representative(j));
      int idx = g.reduce(p);
      if (idx < 0) throw group_error("multiplication table entry missing (closure bug)");
      g.mult[i][j] = idx;
    }
  int id = g.index_of({PointOp::E, false, false});
  g.invidx.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j)
      if (g.mult[i][j] == id) { g.invidx[i] = j; break; }
    if (g.invidx[i] < 0) throw group_error("element without inverse");
  }
  return g;
}

// ---------------------------------------------------------------------------
// Character tables

int CharacterTable::class_of(int elem_index) const {
  for (size_t c = 0; c < classes.size(); ++c)
    for (int e : classes[c])
      if (e == elem_index) return static_cast<int>(c);
  throw group_error("element not in any class");
}

int CharacterTable::row_index(const std::string& name) const {
  for (size_t i = 0; i < rows.size(); ++i)
    if (rows[i].name == name) return static_cast<int>(i);
  throw group_error("no irrep named " + name);
}

CharacterTable character_table(const LittleGroup& g) {
  CharacterTable t;
  switch (g.kind) {
    case PointKind::Gamma:
      t.group_name = "C4v";
      t.class_names = {"E", "C2", "2C4", "2s_v", "2s_d"};
      t.classes = {{0}, {1}, {2, 3}, {4, 5}, {6, 7}};
      t.rows = {
          {"A1", 1, {1, 1, 1, 1, 1}, true},
          {"A2", 1, {1, 1, 1, -1, -1}, true},
          {"B1", 1, {1, 1, -1, 1, -1}, true},
          {"B2", 1, {1, 1, -1, -1, 1}, true},
          {"E", 2, {2, -2, 0, 0, 0}, true},
      };
      return t;
    case PointKind::X:
      t.group_name = "D2h";
      t.class_names = {"e", "c", "m_y", "m_x", "~e", "~c", "~m_y", "~m_x"};
      t.classes = {{0}, {1}, {2}, {3}, {4}, {5}, {6}, {7}};
      t.rows = {
          {"A_g", 1, {1, 1, 1, 1, 1, 1, 1, 1}, false},
          {"B_1g", 1, {1, 1, -1, -1, 1, 1, -1, -1}, false},
          {"B_2g", 1, {1, -1, 1, -1, 1, -1, 1, -1}, false},
          {"B_3g", 1, {1, -1, -1, 1, 1, -1, -1, 1}, false},
          {"A_u", 1, {1, 1, 1, 1, -1, -1, -1, -1}, true},
          {"B_1u", 1, {1, 1, -1, -1, -1, -1, 1, 1}, true},
          {"B_2u", 1, {1, -1, 1, -1, -1, 1, -1, 1}, true},
          {"B_3u", 1, {1, -1, -1, 1, -1, 1, 1, -1}, true},
      };
      return t;
    case PointKind::M:
      t.group_name = "D4h";
      t.class_names = {"e", "2C4", "C2", "2~m", "2~s_d", "~e", "2~C4", "~C2", "2m", "2s_d"};
      t.classes = {{0}, {2, 4}, {6}, {9, 11}, {13, 15}, {1}, {3, 5}, {7}, {8, 10}, {12, 14}};
      t.rows = {
          {"A_1g", 1, {1, 1, 1, 1, 1, 1, 1, 1, 1, 1}, false},
          {"A_2g", 1, {1, 1, 1, -1, -1, 1, 1, 1, -1, -1}, false},
          {"B_1g", 1, {1, -1, 1, 1, -1, 1, -1, 1, 1, -1}, false},
          {"B_2g", 1, {1, -1, 1, -1, 1, 1, -1, 1, -1, 1}, false},
          {"E_g", 2, {2, 0, -2, 0, 0, 2, 0, -2, 0, 0}, false},
          {"A_1u", 1, {1, 1, 1, 1, 1, -1, -1, -1, -1, -1}, true},
          {"A_2u", 1, {1, 1, 1, -1, -1, -1, -1, -1, 1, 1}, true},
          {"B_1u", 1, {1, -1, 1, 1, -1, -1, 1, -1, -1, 1}, true},
          {"B_2u", 1, {1, -1, 1, -1, 1, -1, 1, -1, 1, -1}, true},
          {"E_u", 2, {2, 0, -2, 0, 0, -2, 0, 2, 0, 0}, true},
      };
      return t;
    default:
      throw group_error("no stored character table at a generic k point");
  }
}

// ---------------------------------------------------------------------------
// Dimmock-Wheeler

CorepType dimmock_wheeler(const LittleGroup& g, const CharacterTable& tab, int row) {
  if (g.antiunitary_order() == 0) throw group_error("group has no antiunitary coset");
  int sum = 0;
  for (int i = g.unitary_order; i < g.order(); ++i) {
    int b2 = g.mult[i][i];
    if (b2 >= g.unitary_order)
      throw group_error("square of an antiunitary element is not unitary");
    sum += tab.chi_of_elem(row, b2);
  }
  CorepType r;
  r.dw_sum = sum;
  int n = g.unitary_order;
  if (sum == n) r.tag = 'a';
  else if (sum == -n) r.tag = 'b';
  else if (sum == 0) r.tag = 'c';
  else throw group_error("Dimmock-Wheeler sum outside {+n, 0, -n}");
  return r;
}

std::vector<std::string> squared_antiunitary_set(const LittleGroup& g) {
  if (g.antiunitary_order() == 0) throw group_error("group has no antiunitary coset");
  std::vector<std::string> out;
  for (int i : g.dw_order) out.push_back(g.labels[g.mult[i][i]]);
  return out;
}

// ---------------------------------------------------------------------------
// Abstract references and isomorphism search

MultTable reference_group(const std::string& name) {
  MultTable m;
  if (name == "C4v") {
    m.n = 8;
    m.t.assign(8, std::vector<int>(8));
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j)
        m.t[i][j] = static_cast<int>(point_mul(static_cast<PointOp>(i), static_cast<PointOp>(j)));
    m.identity = 0;
    return m;
  }
  if (name == "D2h") {  // the 2D slice relevant here: Z2 x Z2 x Z2
    m.n = 8;
    m.t.assign(8, std::vector<int>(8));
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) m.t[i][j] = i ^ j;
    m.identity = 0;
    return m;
  }
  if (name == "D4h") {  // D4 x Z2
    m.n = 16;
    m.t.assign(16, std::vector<int>(16));
    for (int i = 0; i < 16; ++i)
      for (int j = 0; j < 16; ++j) {
        int op = static_cast<int>(point_mul(static_cast<PointOp>(i % 8), static_cast<PointOp>(j % 8)));
        int s = (i / 8) ^ (j / 8);
        m.t[i][j] = op + 8 * s;
      }
    m.identity = 0;
    return m;
  }
  throw group_error("unknown reference group " + name);
}

namespace {

int element_order(const MultTable& m, int e) {
  int x = e, n = 1;
  while (x != m.identity) {
    x = m.t[x][e];
    ++n;
    if (n > m.n) throw group_error("order computation ran away");
  }
  return n;
}

std::vector<int> generators_of(const MultTable& m) {
  std::vector<int> gens;
  std::vector<char> in(m.n, 0);
  in[m.identity] = 1;
  int covered = 1;
  for (int e = 0; e < m.n && covered < m.n; ++e) {
    if (in[e]) continue;
    gens.push_back(e);
    // regenerate closure
    std::fill(in.begin(), in.end(), 0);
    in[m.identity] = 1;
    std::vector<int> frontier = {m.identity};
    while (!frontier.empty()) {
      std::vector<int> next;
      for (int x : frontier)
        for (int ge : gens) {
          int y = m.t[x][ge];
          if (!in[y]) { in[y] = 1; next.push_back(y); }
        }
      frontier = std::move(next);
    }
    covered = static_cast<int>(std::count(in.begin(), in.end(), 1));
  }
  return gens;
}

// Extend generator images to a full homomorphism by closure; empty on clash.
std::vector<int> extend_map(const MultTable& g, const MultTable& h,
                            const std::vector<int>& gens, const std::vector<int>& imgs) {
  std::vector<int> map(g.n, -1);
  map[g.identity] = h.identity;
  bool grew = true;
  while (grew) {
    grew = false;
    for (int x = 0; x < g.n; ++x) {
      if (map[x] < 0) continue;
      for (size_t gi = 0; gi < gens.size(); ++gi) {
        int y = g.t[x][gens[gi]];
        int hy = h.t[map[x]][imgs[gi]];
        if (map[y] < 0) { map[y] = hy; grew = true; }
        else if (map[y] != hy) return {};
      }
    }
  }
  for (int x = 0; x < g.n; ++x)
    if (map[x] < 0) return {};
  // bijection + homomorphism check
  std::vector<char> hit(h.n, 0);
  for (int x = 0; x < g.n; ++x) {
    if (hit[map[x]]) return {};
    hit[map[x]] = 1;
  }
  for (int a = 0; a < g.n; ++a)
    for (int b = 0; b < g.n; ++b)
      if (map[g.t[a][b]] != h.t[map[a]][map[b]]) return {};
  return map;
}

}  // namespace

IsoWitness find_isomorphism(const MultTable& g, const MultTable& h) {
  IsoWitness w;
  if (g.n != h.n) {
    w.detail = "orders differ: " + std::to_string(g.n) + " vs " + std::to_string(h.n);
    return w;
  }
  std::map<int, int> prof_g, prof_h;
  for (int e = 0; e < g.n; ++e) prof_g[element_order(g, e)]++;
  for (int e = 0; e < h.n; ++e) prof_h[element_order(h, e)]++;
  if (prof_g != prof_h) {
    std::ostringstream os;
    os << "element-order profiles differ:";
    for (auto& [o, c] : prof_g) os << " g[" << o << "]=" << c;
    os << " vs";
    for (auto& [o, c] : prof_h) os << " h[" << o << "]=" << c;
    w.detail = os.str();
    return w;
  }
  std::vector<int> gens = generators_of(g);
  std::vector<int> imgs(gens.size(), -1);
  std::vector<std::vector<int>> candidates;
  for (int ge : gens) {
    std::vector<int> c;
    int og = element_order(g, ge);
    for (int he = 0; he < h.n; ++he)
      if (element_order(h, he) == og) c.push_back(he);
    candidates.push_back(std::move(c));
  }

  std::vector<int> result;
  std::function<bool(size_t)> dfs = [&](size_t i) {
    if (i == gens.size()) {
      result = extend_map(g, h, gens, imgs);
      return !result.empty();
    }
    for (int cand : candidates[i]) {
      imgs[i] = cand;
      if (dfs(i + 1)) return true;
    }
    return false;
  };
  if (dfs(0)) {
    w.isomorphic = true;
    w.map = result;
    return w;
  }
  // Same order profile but no isomorphism: report a structural probe.
  for (int a = 0; a < g.n; ++a)
    for (int b = 0; b < g.n; ++b)
      if (g.t[a][b] != g.t[b][a]) {
        w.detail = "no consistent bijection; e.g. g has noncommuting pair (" +
                   std::to_string(a) + "," + std::to_string(b) + ")";
        return w;
      }
  w.detail = "no consistent bijection found";
  return w;
}

MultTable unitary_mult_table(const LittleGroup& g) {
  MultTable m;
  m.n = g.unitary_order;
  m.t.assign(m.n, std::vector<int>(m.n));
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) {
      int p = g.mult[i][j];
      if (p >= m.n) throw group_error("unitary subgroup not closed");
      m.t[i][j] = p;
    }
  m.identity = g.index_of({PointOp::E, false, false});
  return m;
}

IsoWitness verify_isomorphism(const LittleGroup& g, const std::string& reference) {
  return find_isomorphism(unitary_mult_table(g), reference_group(reference));
}

// ---------------------------------------------------------------------------
// Plain point-group tables for the reduction procedure

PointGroupTable c4v_point_table() {
  PointGroupTable t;
  t.name = "C4v";
  t.ops = {PointOp::E, PointOp::C2, PointOp::C4, PointOp::C4inv,
           PointOp::SigmaX, PointOp::SigmaY, PointOp::SigmaD, PointOp::SigmaDp};
  t.rows = {
      {"A1", 1, {1, 1, 1, 1, 1, 1, 1, 1}},
      {"A2", 1, {1, 1, 1, 1, -1, -1, -1, -1}},
      {"B1", 1, {1, 1, -1, -1, 1, 1, -1, -1}},
      {"B2", 1, {1, 1, -1, -1, -1, -1, 1, 1}},
      {"E", 2, {2, -2, 0, 0, 0, 0, 0, 0}},
  };
  return t;
}

PointGroupTable c2v_point_table() {
  PointGroupTable t;
  t.name = "C2v";
  t.ops = {PointOp::E, PointOp::C2, PointOp::SigmaX, PointOp::SigmaY};
  t.rows = {
      {"A1", 1, {1, 1, 1, 1}},
      {"A2", 1, {1, 1, -1, -1}},
      {"B1", 1, {1, -1, 1, -1}},
      {"B2", 1, {1, -1, -1, 1}},
  };
  return t;
}

}  // namespace ptb
