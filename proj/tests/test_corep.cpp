#include "doctest.h"
#include "ptbands/corep.hpp"

using namespace ptb;

namespace {

CMat m2(double a, double b, double c, double d) {
  CMat m(2, 2);
  m << Cplx(a), Cplx(b), Cplx(c), Cplx(d);
  return m;
}

CMat s1(double v) {
  CMat m(1, 1);
  m(0, 0) = v;
  return m;
}

bool same(const CMat& a, const CMat& b, double tol = 1e-12) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         (a - b).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace

TEST_CASE("every catalog corep satisfies the multiplication rules exhaustively") {
  for (PointKind kind : {PointKind::Gamma, PointKind::X, PointKind::M}) {
    CorepCatalog cat = corep_catalog(kind);
    for (const Corepresentation& c : cat.rows) {
      CAPTURE(c.base_label);
      CHECK(check_corep_rules(c) < 1e-12);
    }
  }
}

TEST_CASE("Gamma-point Type (a) rows match the published tables") {
  CorepCatalog cat = corep_catalog(PointKind::Gamma);

  // G1+ is the all-ones row
  const Corepresentation& g1p = cat.row("G1+");
  for (const CMat& m : g1p.mats) CHECK(same(m, s1(1)));

  // G3- (B1 with beta = -1): xi -> -1, gamma_4 -> +1, mu_x -> -1, mu_d -> +1
  const Corepresentation& g3m = cat.row("G3-");
  CHECK(same(g3m.at("xi"), s1(-1)));
  CHECK(same(g3m.at("gamma_4"), s1(1)));
  CHECK(same(g3m.at("mu_x"), s1(-1)));
  CHECK(same(g3m.at("mu_d"), s1(1)));

  // the +- pattern: the two variants differ exactly by the antiunitary sign
  for (const char* base : {"G1", "G2", "G3", "G4"}) {
    const Corepresentation& p = cat.row(std::string(base) + "+");
    const Corepresentation& m = cat.row(std::string(base) + "-");
    for (int e = 0; e < cat.group.order(); ++e) {
      if (cat.group.is_antiunitary(e)) CHECK(same(p.mats[e], -m.mats[e]));
      else CHECK(same(p.mats[e], m.mats[e]));
    }
  }

  // 2D row with beta = I
  const Corepresentation& g5 = cat.row("G5");
  CHECK(same(g5.at("E"), m2(1, 0, 0, 1)));
  CHECK(same(g5.at("C2"), m2(-1, 0, 0, -1)));
  CHECK(same(g5.at("C4"), m2(0, 1, -1, 0)));
  CHECK(same(g5.at("s_x"), m2(0, -1, -1, 0)));
  CHECK(same(g5.at("s_y"), m2(0, 1, 1, 0)));
  CHECK(same(g5.at("xi"), m2(1, 0, 0, 1)));
  CHECK(same(g5.at("gamma_4"), m2(0, 1, -1, 0)));
  CHECK(same(g5.at("mu_x"), m2(0, -1, -1, 0)));
}

TEST_CASE("X-point Type (c) rows match the published tables") {
  CorepCatalog cat = corep_catalog(PointKind::X);

  const Corepresentation& g5 = cat.row("G5");
  CHECK(g5.type_tag == 'c');
  CHECK(g5.dim == 2);
  CHECK(g5.source_irrep == "A_u");
  CHECK(same(g5.at("c"), m2(1, 0, 0, -1)));
  CHECK(same(g5.at("m_y"), m2(1, 0, 0, 1)));
  CHECK(same(g5.at("~e"), m2(-1, 0, 0, -1)));
  CHECK(same(g5.at("xi"), m2(0, 1, -1, 0)));
  CHECK(same(g5.at("zeta"), m2(0, 1, 1, 0)));
  CHECK(same(g5.at("~mu_x"), m2(0, -1, -1, 0)));

  const Corepresentation& g6 = cat.row("G6");
  CHECK(same(g6.at("m_x"), m2(-1, 0, 0, 1)));
  CHECK(same(g6.at("mu_y"), m2(0, -1, 1, 0)));

  // Type (a) rows at X carry the plain character patterns
  const Corepresentation& g2 = cat.row("G2");
  CHECK(same(g2.at("zeta"), s1(1)));
  CHECK(same(g2.at("mu_y"), s1(-1)));
  CHECK(same(g2.at("mu_x"), s1(-1)));
  CHECK(same(g2.at("~xi"), s1(1)));
}

TEST_CASE("M-point Type (c) rows match the published tables") {
  CorepCatalog cat = corep_catalog(PointKind::M);

  const Corepresentation& g1 = cat.row("G1");
  CHECK(g1.source_irrep == "A_1u");
  CHECK(same(g1.at("C4"), m2(1, 0, 0, -1)));
  CHECK(same(g1.at("~C4"), m2(-1, 0, 0, 1)));
  CHECK(same(g1.at("xi"), m2(0, 1, 1, 0)));
  CHECK(same(g1.at("gamma"), m2(0, 1, -1, 0)));
  CHECK(same(g1.at("mu_x"), m2(0, -1, 1, 0)));

  const Corepresentation& g4 = cat.row("G4");
  CHECK(same(g4.at("~xi"), m2(0, -1, -1, 0)));
  CHECK(same(g4.at("C4"), m2(-1, 0, 0, 1)));

  // the shift-conjugated partner of A_1u is B_2u (hence G1 ~ G4)
  CHECK(g1.source_irrep2 == "B_2u");
}

TEST_CASE("M-point 2D Type (a) corep uses the valid beta") {
  CorepCatalog cat = corep_catalog(PointKind::M);
  const Corepresentation& g5 = cat.row("G5");
  CHECK(g5.type_tag == 'a');
  CHECK(g5.source_irrep == "E_u");
  // unitary part as published
  CHECK(same(g5.at("C4"), m2(0, -1, 1, 0)));
  CHECK(same(g5.at("m_x"), m2(0, 1, 1, 0)));
  CHECK(same(g5.at("~m_x"), m2(0, -1, -1, 0)));
  CHECK(same(g5.at("s_d"), m2(-1, 0, 0, 1)));
  CHECK(same(g5.at("~e"), m2(-1, 0, 0, -1)));
  // antiunitary part carries beta = diag(1, -1); beta = 1 is inconsistent
  // with gamma^2 = ~C2 (see build_type_a validation below)
  CHECK(same(g5.at("xi"), m2(1, 0, 0, -1)));
  CHECK(same(g5.at("zeta"), m2(-1, 0, 0, 1)));
  CHECK(check_corep_rules(g5) < 1e-12);

  LittleGroup g = build_little_group(k_m());
  CharacterTable t = character_table(g);
  CHECK_THROWS_AS(build_type_a(g, matrix_irrep(g, t, "E_u"), "xi", CMat::Identity(2, 2)),
                  corep_error);
}

TEST_CASE("build_type_a rejects invalid input") {
  LittleGroup gx = build_little_group(k_x());
  CharacterTable tx = character_table(gx);
  // A_u is Type (c): no scalar beta satisfies beta beta* = D(~e) = -1
  CHECK_THROWS_AS(build_type_a(gx, matrix_irrep(gx, tx, "A_u"), "xi", s1(1)), corep_error);
  CHECK_THROWS_AS(build_type_a(gx, matrix_irrep(gx, tx, "A_g"), "nonsense", s1(1)),
                  corep_error);
  // A must be antiunitary
  CHECK_THROWS_AS(build_type_a(gx, matrix_irrep(gx, tx, "A_g"), "e", s1(1)), corep_error);
  // bad beta magnitude
  CHECK_THROWS_AS(build_type_a(gx, matrix_irrep(gx, tx, "A_g"), "xi", s1(2)), corep_error);
}

TEST_CASE("build_type_c rejects Type (a) rows") {
  LittleGroup gx = build_little_group(k_x());
  CharacterTable tx = character_table(gx);
  CHECK_THROWS_AS(build_type_c(gx, tx, "A_g"), corep_error);
}

TEST_CASE("published equivalences hold with explicit witnesses") {
  CorepCatalog x = corep_catalog(PointKind::X);

  // Gamma5 ~ Gamma7 and Gamma6 ~ Gamma8 via [[0, -e^{-i t}],[e^{i t}, 0]]
  for (auto [a, b] : {std::pair<const char*, const char*>{"G5", "G7"}, {"G6", "G8"}}) {
    EquivalenceWitness w = corep_equivalent(x.row(a), x.row(b));
    CHECK(w.equivalent);
    CHECK(corep_equivalent_with(x.row(a), x.row(b), w.U));
    // the explicit published family at theta = 0
    CMat u = m2(0, -1, 1, 0);
    CHECK(corep_equivalent_with(x.row(a), x.row(b), u));
  }
  // inequivalent classes
  CHECK_FALSE(corep_equivalent(x.row("G5"), x.row("G6")).equivalent);
  CHECK_FALSE(corep_equivalent(x.row("G5"), x.row("G8")).equivalent);

  CorepCatalog m = corep_catalog(PointKind::M);
  for (auto [a, b] : {std::pair<const char*, const char*>{"G1", "G4"}, {"G2", "G3"}}) {
    EquivalenceWitness w = corep_equivalent(m.row(a), m.row(b));
    CHECK(w.equivalent);
    // published witness [[0, c],[c*, 0]] with c = 1
    CHECK(corep_equivalent_with(m.row(a), m.row(b), m2(0, 1, 1, 0)));
  }
  CHECK_FALSE(corep_equivalent(m.row("G1"), m.row("G2")).equivalent);

  // reflexive with the identity witness
  CHECK(corep_equivalent_with(x.row("G5"), x.row("G5"), CMat::Identity(2, 2)));
}

TEST_CASE("equivalence is symmetric and transitive on the constructed sets") {
  CorepCatalog x = corep_catalog(PointKind::X);
  EquivalenceWitness w57 = corep_equivalent(x.row("G5"), x.row("G7"));
  EquivalenceWitness w75 = corep_equivalent(x.row("G7"), x.row("G5"));
  CHECK(w57.equivalent);
  CHECK(w75.equivalent);
  // transitivity through a decorated middle member
  Corepresentation mid = apply_label_decoration(x.row("G5"), "u1");
  CHECK(corep_equivalent(x.row("G5"), mid).equivalent);
  CHECK(corep_equivalent(mid, x.row("G7")).equivalent);
}

TEST_CASE("label decorations") {
  CorepCatalog gamma = corep_catalog(PointKind::Gamma);
  const Corepresentation& g5 = gamma.row("G5");

  // u is an involution
  Corepresentation uu = apply_label_decoration(apply_label_decoration(g5, "u"), "u");
  for (int e = 0; e < g5.group.order(); ++e) CHECK(same(uu.mats[e], g5.mats[e]));

  // beta at Gamma negates the antiunitary matrices only
  Corepresentation b = apply_label_decoration(g5, "b");
  CHECK(b.label() == "G5^b");
  for (int e = 0; e < g5.group.order(); ++e) {
    if (g5.group.is_antiunitary(e)) CHECK(same(b.mats[e], -g5.mats[e]));
    else CHECK(same(b.mats[e], g5.mats[e]));
  }
  CHECK(check_corep_rules(b) < 1e-12);

  Corepresentation bu = apply_label_decoration(apply_label_decoration(g5, "u"), "b");
  CHECK(bu.label() == "G5^{u,b}");
  CHECK(check_corep_rules(bu) < 1e-12);

  // u1 with c = 1 transforms the X-point G5 by diag(1, -i)
  CorepCatalog x = corep_catalog(PointKind::X);
  Corepresentation u1 = apply_label_decoration(x.row("G5"), "u1");
  CMat U(2, 2);
  U << Cplx(1), Cplx(0), Cplx(0), Cplx(0, -1);
  for (int e = 0; e < u1.group.order(); ++e) {
    CMat expect = u1.group.is_antiunitary(e)
                      ? CMat(U * x.row("G5").mats[e] * U.conjugate().inverse())
                      : CMat(U * x.row("G5").mats[e] * U.inverse());
    CHECK(same(u1.mats[e], expect));
  }
  CHECK(check_corep_rules(u1) < 1e-12);

  // beta at M is the valid sign flip of beta
  CorepCatalog m = corep_catalog(PointKind::M);
  Corepresentation mb = apply_label_decoration(m.row("G5"), "b");
  CHECK(same(mb.at("xi"), m2(-1, 0, 0, 1)));
  CHECK(check_corep_rules(mb) < 1e-12);

  // decorations are undefined for 1D coreps
  CHECK_THROWS_AS(apply_label_decoration(gamma.row("G1+"), "u"), corep_error);
  // beta decoration undefined at X
  CHECK_THROWS_AS(apply_label_decoration(x.row("G5"), "b"), corep_error);
}

TEST_CASE("character rows") {
  CorepCatalog gamma = corep_catalog(PointKind::Gamma);
  const LittleGroup& g = gamma.group;
  std::vector<Cplx> chi = character_row(gamma.row("G5"));
  CHECK(chi[g.index_of_label("E")] == Cplx(2));
  CHECK(chi[g.index_of_label("C2")] == Cplx(-2));
  CHECK(chi[g.index_of_label("C4")] == Cplx(0));

  CorepCatalog x = corep_catalog(PointKind::X);
  std::vector<Cplx> chix = character_row(x.row("G5"));
  CHECK(chix[x.group.index_of_label("c")] == Cplx(0));
  // every Type (c) corep has vanishing antiunitary characters
  for (const char* lbl : {"G5", "G6", "G7", "G8"}) {
    std::vector<Cplx> c = character_row(x.row(lbl));
    for (int e = x.group.unitary_order; e < x.group.order(); ++e)
      CHECK(std::abs(c[e]) < 1e-14);
  }
  // equivalent coreps share unitary characters
  std::vector<Cplx> c5 = character_row(x.row("G5"));
  std::vector<Cplx> c7 = character_row(x.row("G7"));
  for (int e = 0; e < x.group.unitary_order; ++e) CHECK(std::abs(c5[e] - c7[e]) < 1e-14);
}

TEST_CASE("admissible rows per point") {
  CorepCatalog x = corep_catalog(PointKind::X);
  std::vector<std::string> adm;
  for (int i : x.admissible) adm.push_back(x.rows[i].base_label);
  CHECK(adm == std::vector<std::string>{"G5", "G6", "G7", "G8"});

  CorepCatalog m = corep_catalog(PointKind::M);
  CHECK(m.admissible.size() == 5);

  CorepCatalog gamma = corep_catalog(PointKind::Gamma);
  CHECK(gamma.admissible.size() == gamma.rows.size());
}
