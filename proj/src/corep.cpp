#include "ptbands/corep.hpp"

#include <algorithm>
#include <cmath>

namespace ptb {

namespace {

CMat mat2(double a, double b, double c, double d) {
  CMat m(2, 2);
  m << Cplx(a), Cplx(b), Cplx(c), Cplx(d);
  return m;
}

CMat scalar(double v) {
  CMat m(1, 1);
  m(0, 0) = Cplx(v);
  return m;
}

// 2D irrep matrices as published, keyed by point part.  Both sets compose in
// application order, matching the corep convention in the header.
CMat gamma_e_matrix(PointOp op) {
  switch (op) {
    case PointOp::E:       return mat2(1, 0, 0, 1);
    case PointOp::C2:      return mat2(-1, 0, 0, -1);
    case PointOp::C4:      return mat2(0, 1, -1, 0);
    case PointOp::C4inv:   return mat2(0, -1, 1, 0);
    case PointOp::SigmaX:  return mat2(0, -1, -1, 0);
    case PointOp::SigmaY:  return mat2(0, 1, 1, 0);
    case PointOp::SigmaD:  return mat2(-1, 0, 0, 1);
    case PointOp::SigmaDp: return mat2(1, 0, 0, -1);
  }
  throw corep_error("bad op");
}

CMat m_eu_matrix(PointOp op) {
  switch (op) {
    case PointOp::E:       return mat2(1, 0, 0, 1);
    case PointOp::C2:      return mat2(-1, 0, 0, -1);
    case PointOp::C4:      return mat2(0, -1, 1, 0);
    case PointOp::C4inv:   return mat2(0, 1, -1, 0);
    case PointOp::SigmaX:  return mat2(0, 1, 1, 0);
    case PointOp::SigmaY:  return mat2(0, -1, -1, 0);
    case PointOp::SigmaD:  return mat2(-1, 0, 0, 1);
    case PointOp::SigmaDp: return mat2(1, 0, 0, -1);
  }
  throw corep_error("bad op");
}

bool approx_eq(const CMat& a, const CMat& b, double tol = 1e-12) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return (a - b).cwiseAbs().maxCoeff() <= tol;
}

int require_label(const LittleGroup& g, const std::string& l) {
  int i = g.index_of_label(l);
  if (i < 0) throw corep_error("no element labeled " + l + " in this group");
  return i;
}

}  // namespace

MatrixIrrep matrix_irrep(const LittleGroup& g, const CharacterTable& t,
                         const std::string& irrep_name) {
  int row = t.row_index(irrep_name);
  MatrixIrrep ir;
  ir.name = irrep_name;
  ir.dim = t.rows[row].dim;
  if (ir.dim == 1) {
    for (int i = 0; i < g.unitary_order; ++i)
      ir.mats.push_back(scalar(t.chi_of_elem(row, i)));
    return ir;
  }
  if (g.kind == PointKind::Gamma && irrep_name == "E") {
    for (int i = 0; i < g.unitary_order; ++i)
      ir.mats.push_back(gamma_e_matrix(g.elems[i].op));
    return ir;
  }
  if (g.kind == PointKind::M && irrep_name == "E_u") {
    for (int i = 0; i < g.unitary_order; ++i) {
      CMat m = m_eu_matrix(g.elems[i].op);
      if (g.elems[i].bar) m = -m;
      ir.mats.push_back(m);
    }
    return ir;
  }
  throw corep_error("no stored matrix irrep for " + irrep_name);
}

std::string Corepresentation::label() const {
  if (decorations.empty()) return base_label;
  std::string d;
  for (size_t i = 0; i < decorations.size(); ++i) {
    if (i) d += ",";
    d += decorations[i];
  }
  if (decorations.size() == 1) return base_label + "^" + d;
  return base_label + "^{" + d + "}";
}

const CMat& Corepresentation::at(const std::string& elem_label) const {
  return mats[require_label(group, elem_label)];
}

Corepresentation build_type_a(const LittleGroup& g, const MatrixIrrep& irrep,
                              const std::string& a_label, const CMat& beta) {
  int A = require_label(g, a_label);
  if (!g.is_antiunitary(A)) throw corep_error("A must be antiunitary");
  int Ainv = g.inverse_of(A);
  int A2 = g.mult[A][A];
  if (A2 >= g.unitary_order) throw corep_error("A^2 not unitary");

  const double tol = 1e-12;
  if (!approx_eq(beta * beta.conjugate(), irrep.mats[A2], tol))
    throw corep_error("beta beta* != D(A^2)");
  for (int u = 0; u < g.unitary_order; ++u) {
    int conj = g.mult[g.mult[A][u]][Ainv];  // A u A^-1
    if (conj >= g.unitary_order) throw corep_error("A u A^-1 not unitary");
    if (!approx_eq(irrep.mats[u] * beta, beta * irrep.mats[conj], tol))
      throw corep_error("beta violates the antiunitary intertwining condition for irrep " +
                        irrep.name);
  }

  Corepresentation c;
  c.group = g;
  c.type_tag = 'a';
  c.dim = irrep.dim;
  c.source_irrep = irrep.name;
  c.beta = beta;
  c.mats.resize(g.order());
  for (int u = 0; u < g.unitary_order; ++u) c.mats[u] = irrep.mats[u];
  for (int b = g.unitary_order; b < g.order(); ++b) {
    int r = g.mult[b][Ainv];  // B = compose(R, A)
    if (r >= g.unitary_order) throw corep_error("coset decomposition failed");
    c.mats[b] = beta * irrep.mats[r];
  }
  return c;
}

Corepresentation build_type_c(const LittleGroup& g, const CharacterTable& t,
                              const std::string& irrep_name,
                              const std::string& a_label) {
  int row = t.row_index(irrep_name);
  CorepType dw = dimmock_wheeler(g, t, row);
  if (dw.tag != 'c')
    throw corep_error("irrep " + irrep_name + " is Type (" + std::string(1, dw.tag) +
                      "), not Type (c)");
  if (t.rows[row].dim != 1)
    throw corep_error("Type (c) construction implemented for 1D irreps only");

  int A = require_label(g, a_label);
  int Ainv = g.inverse_of(A);

  // S is the half-lattice shift {E | 1/2, 1/2}; it lives in the space group
  // but not in the little group, so conjugation is done on raw elements.
  SymmetryElement S{PointOp::E, 1, 1, false};
  SymmetryElement Sinv = inverse(S);

  auto chi = [&](int elem) { return static_cast<double>(t.chi_of_elem(row, elem)); };

  Corepresentation c;
  c.group = g;
  c.type_tag = 'c';
  c.dim = 2;
  c.dw_sum = dw.dw_sum;
  c.source_irrep = irrep_name;
  c.mats.resize(g.order());
  for (int u = 0; u < g.unitary_order; ++u) {
    int conj = g.reduce(compose(compose(Sinv, g.representative(u)), S));
    if (conj < 0 || conj >= g.unitary_order)
      throw corep_error("S^-1 u S left the unitary subgroup");
    c.mats[u] = mat2(chi(u), 0, 0, chi(conj));  // characters are real here
  }
  for (int b = g.unitary_order; b < g.order(); ++b) {
    int ainv_b = g.mult[Ainv][b];
    int b_a = g.mult[b][A];
    if (ainv_b >= g.unitary_order || b_a >= g.unitary_order)
      throw corep_error("antiunitary block decomposition failed");
    c.mats[b] = mat2(0, chi(ainv_b), chi(b_a), 0);
  }
  // partner irrep: the one whose characters are chi(S^-1 u S)*
  for (size_t r2 = 0; r2 < t.rows.size(); ++r2) {
    bool match = true;
    for (int u = 0; u < g.unitary_order && match; ++u) {
      int conj = g.reduce(compose(compose(Sinv, g.representative(u)), S));
      if (t.chi_of_elem(static_cast<int>(r2), u) != t.chi_of_elem(row, conj)) match = false;
    }
    if (match) { c.source_irrep2 = t.rows[r2].name; break; }
  }
  return c;
}

double check_corep_rules(const Corepresentation& c) {
  const LittleGroup& g = c.group;
  double worst = 0;
  for (int x = 0; x < g.order(); ++x)
    for (int y = 0; y < g.order(); ++y) {
      // "x applied first, then y": product element is compose(y, x).
      int p = g.mult[y][x];
      CMat rhs = c.mats[p];
      CMat lhs = g.is_antiunitary(x) ? CMat(c.mats[x] * c.mats[y].conjugate())
                                     : CMat(c.mats[x] * c.mats[y]);
      worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
    }
  return worst;
}

bool corep_equivalent_with(const Corepresentation& a, const Corepresentation& b,
                           const CMat& U, double tol) {
  if (a.dim != b.dim) throw corep_error("dimension mismatch");
  if (a.group.order() != b.group.order() || !(a.group.k == b.group.k))
    throw corep_error("coreps live on different groups");
  CMat Ui = U.inverse();
  CMat Uci = U.conjugate().inverse();
  for (int i = 0; i < a.group.order(); ++i) {
    CMat lhs = a.group.is_antiunitary(i) ? CMat(U * a.mats[i] * Uci)
                                         : CMat(U * a.mats[i] * Ui);
    if (!approx_eq(lhs, b.mats[i], tol)) return false;
  }
  return true;
}

EquivalenceWitness corep_equivalent(const Corepresentation& a,
                                    const Corepresentation& b) {
  EquivalenceWitness w;
  if (a.dim != b.dim) throw corep_error("dimension mismatch");

  auto try_U = [&](const CMat& U, std::optional<double> theta = std::nullopt) {
    if (corep_equivalent_with(a, b, U, 1e-12)) {
      w.equivalent = true;
      w.U = U;
      w.theta = theta;
      return true;
    }
    return false;
  };

  if (a.dim == 1) {
    // unitary parts must match; the antiunitary parts may differ by a phase u^2
    std::vector<Cplx> cands = {Cplx(1, 0), Cplx(0, 1)};
    for (int i = 0; i < a.group.order(); ++i) {
      if (a.group.is_antiunitary(i) && std::abs(a.mats[i](0, 0)) > 0.5) {
        Cplx r = b.mats[i](0, 0) / a.mats[i](0, 0);
        cands.push_back(std::sqrt(r));
        cands.push_back(-std::sqrt(r));
      }
    }
    for (Cplx u : cands) {
      CMat U(1, 1);
      U(0, 0) = u;
      if (try_U(U)) return w;
    }
    return w;
  }

  if (try_U(CMat::Identity(2, 2), 0.0)) return w;

  // diagonal phase family diag(1, z)
  std::vector<Cplx> zs = {Cplx(1, 0), Cplx(-1, 0), Cplx(0, 1), Cplx(0, -1)};
  for (int i = 0; i < a.group.order(); ++i) {
    const CMat& A = a.mats[i];
    const CMat& B = b.mats[i];
    if (!a.group.is_antiunitary(i)) {
      if (std::abs(A(1, 0)) > 0.5) zs.push_back(B(1, 0) / A(1, 0));
      if (std::abs(A(0, 1)) > 0.5) zs.push_back(A(0, 1) / B(0, 1));
    } else {
      if (std::abs(A(0, 1)) > 0.5) zs.push_back(B(0, 1) / A(0, 1));
      if (std::abs(A(1, 0)) > 0.5) zs.push_back(B(1, 0) / A(1, 0));
    }
  }
  for (Cplx z : zs) {
    if (std::abs(std::abs(z) - 1.0) > 1e-9) continue;
    CMat U = CMat::Zero(2, 2);
    U(0, 0) = 1;
    U(1, 1) = z;
    if (try_U(U)) return w;
  }

  // antidiagonal family [[0, w],[z, 0]] with |w| = |z| = 1, including the
  // published theta-form [[0, -e^{-i theta}],[e^{i theta}, 0]].
  std::vector<std::pair<Cplx, Cplx>> wz = {
      {Cplx(-1, 0), Cplx(1, 0)}, {Cplx(1, 0), Cplx(1, 0)},
      {Cplx(0, -1), Cplx(0, 1)}, {Cplx(0, 1), Cplx(0, 1)}};
  for (int i = 0; i < a.group.order(); ++i) {
    if (!a.group.is_antiunitary(i)) continue;
    const CMat& A = a.mats[i];
    const CMat& B = b.mats[i];
    if (std::abs(A(1, 0)) > 0.5 && std::abs(B(0, 1)) > 0.5) {
      // (U G Ubar^-1)(0,1) = w z G(1,0)
      Cplx prod = B(0, 1) / A(1, 0);
      for (Cplx wv : {Cplx(1, 0), Cplx(-1, 0), Cplx(0, 1), Cplx(0, -1)})
        wz.push_back({wv, prod / wv});
    }
  }
  for (auto [wv, zv] : wz) {
    if (std::abs(std::abs(wv) - 1.0) > 1e-9 || std::abs(std::abs(zv) - 1.0) > 1e-9) continue;
    CMat U = CMat::Zero(2, 2);
    U(0, 1) = wv;
    U(1, 0) = zv;
    std::optional<double> theta;
    if (std::abs(wv + std::conj(zv)) < 1e-12) theta = std::arg(zv);
    if (try_U(U, theta)) return w;
  }
  return w;
}

Corepresentation apply_label_decoration(const Corepresentation& c,
                                        const std::string& decoration,
                                        Cplx u_constant) {
  if (c.dim != 2) throw corep_error("decoration '" + decoration + "' needs a 2D corep");
  Corepresentation out = c;
  out.decorations.push_back(decoration);

  auto transform = [&out](const CMat& U) {
    CMat Ui = U.inverse();
    CMat Uci = U.conjugate().inverse();
    for (int i = 0; i < out.group.order(); ++i)
      out.mats[i] = out.group.is_antiunitary(i) ? CMat(U * out.mats[i] * Uci)
                                                : CMat(U * out.mats[i] * Ui);
  };

  if (decoration == "u") {
    transform(mat2(1, 0, 0, -1));
    return out;
  }
  if (decoration == "u1" || decoration == "u2") {
    Cplx cc = u_constant;
    if (std::abs(std::abs(cc) - 1.0) > 1e-12)
      throw corep_error("u1/u2 constant must have unit modulus");
    CMat U = CMat::Zero(2, 2);
    U(0, 0) = cc;
    U(1, 1) = (decoration == "u1" ? Cplx(0, -1) : Cplx(0, 1)) * std::conj(cc);
    transform(U);
    return out;
  }
  if (decoration == "b") {
    // Flips the sign of beta.  Relative to the published beta = 1 row at M
    // this is the table's "multiply antiunitary matrices by diag(-1, 1)".
    if (c.group.kind != PointKind::Gamma && c.group.kind != PointKind::M)
      throw corep_error("beta decoration is defined at Gamma and M only");
    for (int i = 0; i < out.group.order(); ++i)
      if (out.group.is_antiunitary(i)) out.mats[i] = -out.mats[i];
    return out;
  }
  throw corep_error("unknown decoration " + decoration);
}

std::vector<Cplx> character_row(const Corepresentation& c) {
  std::vector<Cplx> chi;
  chi.reserve(c.mats.size());
  for (const CMat& m : c.mats) chi.push_back(m.trace());
  return chi;
}

const Corepresentation& CorepCatalog::row(const std::string& base_label) const {
  for (const Corepresentation& c : rows)
    if (c.base_label == base_label) return c;
  throw corep_error("no catalog row " + base_label);
}

CorepCatalog corep_catalog(PointKind kind) {
  CorepCatalog cat;
  switch (kind) {
    case PointKind::Gamma: cat.group = build_little_group(k_gamma()); break;
    case PointKind::X:     cat.group = build_little_group(k_x()); break;
    case PointKind::M:     cat.group = build_little_group(k_m()); break;
    default: throw corep_error("no corep catalog at a generic k point");
  }
  cat.table = character_table(cat.group);
  const LittleGroup& g = cat.group;
  const CharacterTable& t = cat.table;

  if (kind == PointKind::Gamma) {
    const char* irreps[] = {"A1", "A2", "B1", "B2"};
    for (int i = 0; i < 4; ++i) {
      for (int sign = 0; sign < 2; ++sign) {
        Corepresentation c = build_type_a(g, matrix_irrep(g, t, irreps[i]), "xi",
                                          scalar(sign == 0 ? 1 : -1));
        c.base_label = "G" + std::to_string(i + 1) + (sign == 0 ? "+" : "-");
        c.dw_sum = dimmock_wheeler(g, t, t.row_index(irreps[i])).dw_sum;
        cat.rows.push_back(std::move(c));
      }
    }
    Corepresentation e2 =
        build_type_a(g, matrix_irrep(g, t, "E"), "xi", CMat::Identity(2, 2));
    e2.base_label = "G5";
    e2.dw_sum = dimmock_wheeler(g, t, t.row_index("E")).dw_sum;
    cat.rows.push_back(std::move(e2));
    for (size_t i = 0; i < cat.rows.size(); ++i) cat.admissible.push_back(static_cast<int>(i));
    return cat;
  }

  if (kind == PointKind::X) {
    const char* arows[] = {"A_g", "B_1g", "B_2g", "B_3g"};
    for (int i = 0; i < 4; ++i) {
      Corepresentation c = build_type_a(g, matrix_irrep(g, t, arows[i]), "xi", scalar(1));
      c.base_label = "G" + std::to_string(i + 1);
      c.dw_sum = dimmock_wheeler(g, t, t.row_index(arows[i])).dw_sum;
      cat.rows.push_back(std::move(c));
    }
    const char* crows[] = {"A_u", "B_1u", "B_2u", "B_3u"};
    for (int i = 0; i < 4; ++i) {
      Corepresentation c = build_type_c(g, t, crows[i]);
      c.base_label = "G" + std::to_string(i + 5);
      cat.rows.push_back(std::move(c));
      cat.admissible.push_back(static_cast<int>(cat.rows.size()) - 1);
    }
    cat.equivalent_pairs = {{"G5", "G7"}, {"G6", "G8"}};
    return cat;
  }

  // M point
  const char* crows[] = {"A_1u", "A_2u", "B_1u", "B_2u"};
  for (int i = 0; i < 4; ++i) {
    Corepresentation c = build_type_c(g, t, crows[i]);
    c.base_label = "G" + std::to_string(i + 1);
    cat.rows.push_back(std::move(c));
    cat.admissible.push_back(i);
  }
  // The 2D Type (a) corep: the intertwining condition at M forces
  // beta = diag(b, -b); the published row uses beta = 1, which violates the
  // multiplication rules (gamma^2 = ~C2 fixes the sign).  We take b = +1.
  Corepresentation eu = build_type_a(g, matrix_irrep(g, t, "E_u"), "xi", mat2(1, 0, 0, -1));
  eu.base_label = "G5";
  eu.dw_sum = dimmock_wheeler(g, t, t.row_index("E_u")).dw_sum;
  cat.rows.push_back(std::move(eu));
  cat.admissible.push_back(4);
  cat.equivalent_pairs = {{"G1", "G4"}, {"G2", "G3"}};
  return cat;
}

}  // namespace ptb
