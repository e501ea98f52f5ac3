#include "doctest.h"
#include "ptbands/symmetry.hpp"

#include <algorithm>
#include <set>

using namespace ptb;

namespace {

SymmetryElement unit(PointOp op) { return {op, 0, 0, false}; }
SymmetryElement anti(PointOp op) { return {op, 1, 1, true}; }  // T {R | 1/2,1/2}

}  // namespace

TEST_CASE("Seitz composition basics") {
  // m_x . m_y = c
  SymmetryElement p = compose(unit(PointOp::SigmaX), unit(PointOp::SigmaY));
  CHECK(p.op == PointOp::C2);
  CHECK(p.tx2 == 0);
  CHECK(p.ty2 == 0);
  CHECK_FALSE(p.antiunitary);

  // identity is neutral
  for (const SymmetryElement& g : full_space_group()) {
    CHECK(compose(unit(PointOp::E), g) == g);
    CHECK(compose(g, unit(PointOp::E)) == g);
  }

  // xi . xi = {E | 1, 1}, an even translation
  SymmetryElement xi2 = compose(anti(PointOp::E), anti(PointOp::E));
  CHECK(xi2.op == PointOp::E);
  CHECK(xi2.tx2 == 2);
  CHECK(xi2.ty2 == 2);
  CHECK_FALSE(xi2.antiunitary);

  // inverse really inverts
  for (const SymmetryElement& g : full_space_group()) {
    SymmetryElement e = compose(g, inverse(g));
    CHECK(e.op == PointOp::E);
    CHECK(e.tx2 == 0);
    CHECK(e.ty2 == 0);
    CHECK_FALSE(e.antiunitary);
  }
}

TEST_CASE("little group orders at the high-symmetry points") {
  LittleGroup gg = build_little_group(k_gamma());
  CHECK(gg.kind == PointKind::Gamma);
  CHECK(gg.order() == 16);
  CHECK(gg.unitary_order == 8);

  LittleGroup gx = build_little_group(k_x());
  CHECK(gx.kind == PointKind::X);
  CHECK(gx.order() == 16);
  CHECK(gx.unitary_order == 8);

  LittleGroup gm = build_little_group(k_m());
  CHECK(gm.kind == PointKind::M);
  CHECK(gm.order() == 32);
  CHECK(gm.unitary_order == 16);
}

TEST_CASE("little group at an interior point of Gamma-X") {
  LittleGroup g = build_little_group({Rat(3, 10), Rat(0)});
  CHECK(g.kind == PointKind::Generic);
  REQUIRE(g.order() == 4);
  CHECK(g.unitary_order == 2);
  std::set<PointOp> uops, aops;
  for (int i = 0; i < g.order(); ++i) {
    if (g.elems[i].anti) aops.insert(g.elems[i].op);
    else uops.insert(g.elems[i].op);
    CHECK_FALSE(g.elems[i].bar);
  }
  CHECK(uops == std::set<PointOp>{PointOp::E, PointOp::SigmaY});
  CHECK(aops == std::set<PointOp>{PointOp::C2, PointOp::SigmaX});
}

TEST_CASE("little group at an interior point of X-M carries translation classes") {
  LittleGroup g = build_little_group({Rat(1), Rat(1, 3)});
  CHECK(g.order() == 8);
  CHECK(g.unitary_order == 4);
  std::set<PointOp> uops, aops;
  for (int i = 0; i < g.order(); ++i)
    (g.elems[i].anti ? aops : uops).insert(g.elems[i].op);
  CHECK(uops == std::set<PointOp>{PointOp::E, PointOp::SigmaX});
  CHECK(aops == std::set<PointOp>{PointOp::C2, PointOp::SigmaY});
}

TEST_CASE("group axioms hold exhaustively") {
  for (KPoint k : {k_gamma(), k_x(), k_m(), KPoint{Rat(3, 10), Rat(0)},
                   KPoint{Rat(1), Rat(2, 5)}, KPoint{Rat(1, 2), Rat(1, 2)}}) {
    LittleGroup g = build_little_group(k);
    int n = g.order();
    int id = g.index_of({PointOp::E, false, false});
    REQUIRE(id >= 0);
    for (int i = 0; i < n; ++i) {
      CHECK(g.mult[i][id] == i);
      CHECK(g.mult[id][i] == i);
      CHECK(g.mult[i][g.inverse_of(i)] == id);
      for (int j = 0; j < n; ++j) {
        int p = g.mult[i][j];
        REQUIRE(p >= 0);
        REQUIRE(p < n);
        // antiunitary flags XOR
        CHECK(g.elems[p].anti == (g.elems[i].anti != g.elems[j].anti));
      }
    }
    // every antiunitary element squares into the unitary subgroup
    for (int i = g.unitary_order; i < n; ++i) CHECK(g.mult[i][i] < g.unitary_order);
    // associativity (full check is cheap at these sizes)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          CHECK(g.mult[g.mult[a][b]][c] == g.mult[a][g.mult[b][c]]);
  }
}

TEST_CASE("Dimmock-Wheeler sums match the published tables") {
  LittleGroup gg = build_little_group(k_gamma());
  CharacterTable tg = character_table(gg);
  for (size_t r = 0; r < tg.rows.size(); ++r) {
    CorepType ct = dimmock_wheeler(gg, tg, static_cast<int>(r));
    CHECK(ct.dw_sum == 8);
    CHECK(ct.tag == 'a');
  }

  LittleGroup gx = build_little_group(k_x());
  CharacterTable tx = character_table(gx);
  const int expected_x[8] = {8, 8, 8, 8, 0, 0, 0, 0};
  const char tags_x[8] = {'a', 'a', 'a', 'a', 'c', 'c', 'c', 'c'};
  for (int r = 0; r < 8; ++r) {
    CorepType ct = dimmock_wheeler(gx, tx, r);
    CHECK(ct.dw_sum == expected_x[r]);
    CHECK(ct.tag == tags_x[r]);
  }

  LittleGroup gm = build_little_group(k_m());
  CharacterTable tm = character_table(gm);
  for (const char* name : {"A_1u", "A_2u", "B_1u", "B_2u"}) {
    CorepType ct = dimmock_wheeler(gm, tm, tm.row_index(name));
    CHECK(ct.dw_sum == 0);
    CHECK(ct.tag == 'c');
  }
  CorepType eu = dimmock_wheeler(gm, tm, tm.row_index("E_u"));
  CHECK(eu.dw_sum == 16);
  CHECK(eu.tag == 'a');
}

TEST_CASE("Dimmock-Wheeler trichotomy at every stored point") {
  for (KPoint k : {k_gamma(), k_x(), k_m()}) {
    LittleGroup g = build_little_group(k);
    CharacterTable t = character_table(g);
    int n = g.unitary_order;
    for (size_t r = 0; r < t.rows.size(); ++r) {
      CorepType ct = dimmock_wheeler(g, t, static_cast<int>(r));
      bool ok = ct.dw_sum == n || ct.dw_sum == -n || ct.dw_sum == 0;
      CHECK(ok);
    }
  }
}

TEST_CASE("W^2 lists match the published listings verbatim") {
  using V = std::vector<std::string>;
  CHECK(squared_antiunitary_set(build_little_group(k_gamma())) ==
        V{"E", "E", "E", "E", "E", "E", "C2", "C2"});
  CHECK(squared_antiunitary_set(build_little_group(k_x())) ==
        V{"~e", "~e", "e", "e", "e", "e", "~e", "~e"});
  CHECK(squared_antiunitary_set(build_little_group(k_m())) ==
        V{"e", "e", "~C2", "~C2", "~C2", "~C2", "e", "e",
          "~e", "~e", "~e", "~e", "e", "e", "e", "e"});
}

TEST_CASE("physical-mask rows flip sign between barred and unbarred classes") {
  for (KPoint k : {k_x(), k_m()}) {
    LittleGroup g = build_little_group(k);
    CharacterTable t = character_table(g);
    for (const auto& row : t.rows) {
      bool flips = true;
      for (int i = 0; i < g.unitary_order; ++i) {
        GroupElement e = g.elems[i];
        if (!e.bar) continue;
        GroupElement plain{e.op, false, false};
        int j = g.index_of(plain);
        REQUIRE(j >= 0);
        int ci = t.class_of(i), cj = t.class_of(j);
        if (row.chi[ci] != -row.chi[cj]) flips = false;
      }
      CHECK(flips == row.physical);
    }
  }
}

TEST_CASE("character table orthogonality") {
  for (KPoint k : {k_gamma(), k_x(), k_m()}) {
    LittleGroup g = build_little_group(k);
    CharacterTable t = character_table(g);
    int n = g.unitary_order;
    int dimsum = 0;
    for (const auto& r : t.rows) dimsum += r.dim * r.dim;
    CHECK(dimsum == n);
    for (size_t a = 0; a < t.rows.size(); ++a)
      for (size_t b = 0; b < t.rows.size(); ++b) {
        int dot = 0;
        for (size_t c = 0; c < t.classes.size(); ++c)
          dot += static_cast<int>(t.classes[c].size()) * t.rows[a].chi[c] * t.rows[b].chi[c];
        CHECK(dot == (a == b ? n : 0));
      }
  }
}

TEST_CASE("conjugation by the half-lattice shift reproduces the published tables") {
  SymmetryElement S{PointOp::E, 1, 1, false};
  SymmetryElement Sinv = inverse(S);

  LittleGroup gx = build_little_group(k_x());
  const std::pair<const char*, const char*> x_rows[] = {
      {"e", "e"},     {"~e", "~e"},   {"c", "~c"},   {"~c", "c"},
      {"m_x", "~m_x"}, {"~m_x", "m_x"}, {"m_y", "m_y"}, {"~m_y", "~m_y"}};
  for (auto [from, to] : x_rows) {
    int i = gx.index_of_label(from);
    REQUIRE(i >= 0);
    SymmetryElement conj = compose(compose(Sinv, gx.representative(i)), S);
    int j = gx.reduce(conj);
    REQUIRE(j >= 0);
    CHECK(gx.labels[j] == to);
  }

  LittleGroup gm = build_little_group(k_m());
  const std::pair<const char*, const char*> m_rows[] = {
      {"e", "e"},         {"~e", "~e"},        {"C4", "~C4"},     {"~C4", "C4"},
      {"C4^-1", "~C4^-1"}, {"~C4^-1", "C4^-1"}, {"C2", "C2"},      {"~C2", "~C2"},
      {"m_x", "~m_x"},    {"~m_x", "m_x"},     {"m_y", "~m_y"},   {"~m_y", "m_y"},
      {"s_d", "s_d"},     {"~s_d", "~s_d"},    {"s_d'", "s_d'"},  {"~s_d'", "~s_d'"}};
  for (auto [from, to] : m_rows) {
    int i = gm.index_of_label(from);
    REQUIRE(i >= 0);
    SymmetryElement conj = compose(compose(Sinv, gm.representative(i)), S);
    int j = gm.reduce(conj);
    REQUIRE(j >= 0);
    CHECK(gm.labels[j] == to);
  }
}

TEST_CASE("multiplication table spot checks against the published tables") {
  LittleGroup gm = build_little_group(k_m());
  auto prod = [&gm](const char* a, const char* b) {
    return gm.labels[gm.mult[gm.index_of_label(a)][gm.index_of_label(b)]];
  };
  CHECK(prod("C4", "m_x") == "s_d'");
  CHECK(prod("s_d", "C4") == "m_y");
  CHECK(prod("C4", "C4") == "C2");
  CHECK(prod("~e", "~e") == "e");
  CHECK(prod("m_x", "~m_y") == "~C2");

  LittleGroup gx = build_little_group(k_x());
  auto prodx = [&gx](const char* a, const char* b) {
    return gx.labels[gx.mult[gx.index_of_label(a)][gx.index_of_label(b)]];
  };
  CHECK(prodx("m_y", "~c") == "~m_x");
  CHECK(prodx("m_x", "m_y") == "c");
  CHECK(prodx("m_y", "~m_x") == "~c");  // the printed table has a typo in this cell
  // the unitary subgroup at X is abelian
  for (int i = 0; i < gx.unitary_order; ++i)
    for (int j = 0; j < gx.unitary_order; ++j)
      CHECK(gx.mult[i][j] == gx.mult[j][i]);
}

TEST_CASE("isomorphism of unitary subgroups to the named references") {
  LittleGroup gx = build_little_group(k_x());
  IsoWitness wx = verify_isomorphism(gx, "D2h");
  CHECK(wx.isomorphic);

  LittleGroup gm = build_little_group(k_m());
  IsoWitness wm = verify_isomorphism(gm, "D4h");
  CHECK(wm.isomorphic);
  // witness really is an isomorphism
  MultTable a = unitary_mult_table(gm), b = reference_group("D4h");
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j)
      CHECK(wm.map[a.t[i][j]] == b.t[wm.map[i]][wm.map[j]]);

  IsoWitness bad = verify_isomorphism(gx, "C4v");
  CHECK_FALSE(bad.isomorphic);
  CHECK_FALSE(bad.detail.empty());

  LittleGroup gg = build_little_group(k_gamma());
  CHECK(verify_isomorphism(gg, "C4v").isomorphic);
}

TEST_CASE("Brillouin-zone folding") {
  LittleGroup g = build_little_group({Rat(5, 2), Rat(-3)});  // folds to (1/2, 1)
  CHECK(g.k.x == Rat(1, 2));
  CHECK(g.k.y == Rat(1));
  CHECK_THROWS_AS(build_little_group({Rat(1, 0), Rat(0)}), group_error);
}
