#include "ptbands/classify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>

namespace ptb {

namespace {

constexpr double kPi = 3.14159265358979323846;

long long exact_half(const Rat& r, const char* what) {
  // r (pi/Lambda units) must be an even integer; returns r/2.
  if (!r.is_integer() || r.num % 2 != 0) throw classify_error(std::string(what) + " is not a reciprocal vector");
  return r.num / 2;
}

}  // namespace

Eigen::VectorXcd apply_action(const LittleGroup& g, int elem, const ReciprocalSet& recips,
                              const Eigen::VectorXcd& coeffs) {
  if (elem < 0 || elem >= g.order()) throw classify_error("element index out of range");
  if (coeffs.size() != recips.size()) throw classify_error("coefficient vector size mismatch");
  SymmetryElement s = g.representative(elem);
  Mat2i R = point_matrix(s.op);

  Rat rkx = g.k.x * R[0] + g.k.y * R[1];
  Rat rky = g.k.x * R[2] + g.k.y * R[3];
  // reciprocal shift G (2 pi / Lambda units) folding R k (or -R k) back onto k
  long long Gx, Gy;
  if (!s.antiunitary) {
    Gx = exact_half(rkx - g.k.x, "R k - k");
    Gy = exact_half(rky - g.k.y, "R k - k");
  } else {
    Gx = exact_half(-(rkx + g.k.x), "-R k - k");
    Gy = exact_half(-(rky + g.k.y), "-R k - k");
  }

  double taux = s.tx2 / 2.0, tauy = s.ty2 / 2.0;
  double kbx = 0.5 * g.k.x.value(), kby = 0.5 * g.k.y.value();
  int sgn = s.antiunitary ? -1 : 1;

  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(coeffs.size());
  for (int i = 0; i < recips.size(); ++i) {
    Cplx c = coeffs[i];
    if (c == Cplx(0, 0)) continue;
    auto [m, n] = recips.at(i);
    long long tm = sgn * (R[0] * m + R[1] * n) + Gx;
    long long tn = sgn * (R[2] * m + R[3] * n) + Gy;
    int j = recips.index_of(static_cast<int>(tm), static_cast<int>(tn));
    if (j < 0) continue;  // left the truncation window
    if (s.antiunitary) c = std::conj(c);
    double arg = -2.0 * kPi * ((kbx + tm) * taux + (kby + tn) * tauy);
    out[j] += c * std::polar(1.0, arg);
  }
  return out;
}

std::vector<std::vector<int>> degeneracy_cluster(const std::vector<BlochMode>& modes,
                                                 double tol) {
  int n = static_cast<int>(modes.size());
  std::vector<int> root(n);
  std::iota(root.begin(), root.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (root[x] != x) x = root[x] = root[root[x]];
    return x;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(modes[i].omega - modes[j].omega) < tol) root[find(i)] = find(j);
  std::vector<std::vector<int>> clusters;
  std::vector<int> where(n, -1);
  for (int i = 0; i < n; ++i) {
    int r = find(i);
    if (where[r] < 0) {
      where[r] = static_cast<int>(clusters.size());
      clusters.push_back({});
    }
    clusters[where[r]].push_back(i);
  }
  return clusters;
}

namespace {

// Representation matrix of element `elem` on the span of `basis` columns,
// via least squares; `residual` reports how far the span is from invariant.
CMat rep_matrix(const LittleGroup& g, int elem, const ReciprocalSet& recips,
                const Eigen::MatrixXcd& basis, double* residual) {
  Eigen::MatrixXcd transformed(basis.rows(), basis.cols());
  for (int j = 0; j < basis.cols(); ++j)
    transformed.col(j) = apply_action(g, elem, recips, basis.col(j));
  CMat m = basis.colPivHouseholderQr().solve(transformed);
  if (residual) {
    double denom = std::max(1e-300, transformed.norm());
    *residual = (basis * m - transformed).norm() / denom;
  }
  return m;
}

Eigen::MatrixXcd cluster_basis(const std::vector<BlochMode>& modes,
                               const std::vector<int>& cluster) {
  Eigen::MatrixXcd h(modes[cluster[0]].coeffs.size(), cluster.size());
  for (size_t j = 0; j < cluster.size(); ++j) h.col(j) = modes[cluster[j]].coeffs;
  return h;
}

std::string strip_sign(const std::string& label) {
  if (!label.empty() && (label.back() == '+' || label.back() == '-'))
    return label.substr(0, label.size() - 1);
  return label;
}

}  // namespace

ClusterLabel classify_cluster(const std::vector<BlochMode>& modes,
                              const std::vector<int>& cluster, bool is_pair,
                              const CorepCatalog& catalog, const ReciprocalSet& recips,
                              double char_tol) {
  const LittleGroup& g = catalog.group;
  ClusterLabel out;
  out.modes = cluster;
  out.is_pair = is_pair;
  out.dim = static_cast<int>(cluster.size());
  for (int i : cluster) out.max_im = std::max(out.max_im, std::abs(modes[i].omega.imag()));

  Eigen::MatrixXcd basis = cluster_basis(modes, cluster);

  // measured unitary characters
  std::vector<Cplx> chi_meas(g.unitary_order);
  double worst_invariance = 0;
  for (int u = 0; u < g.unitary_order; ++u) {
    double res = 0;
    CMat m = rep_matrix(g, u, recips, basis, &res);
    worst_invariance = std::max(worst_invariance, res);
    chi_meas[u] = m.trace();
  }
  if (worst_invariance > 1e-3) {
    out.label = "unclassified";
    out.confidence = worst_invariance;
    return out;
  }

  // catalog matching on unitary characters
  double best = 1e300;
  int best_row = -1;
  for (int r : catalog.admissible) {
    const Corepresentation& c = catalog.rows[r];
    if (c.dim != out.dim) continue;
    if (is_pair != (c.type_tag == 'c')) continue;
    std::vector<Cplx> chi_cat = character_row(c);
    double score = 0;
    for (int u = 0; u < g.unitary_order; ++u)
      score = std::max(score, std::abs(chi_meas[u] - chi_cat[u]));
    if (score < best) {
      best = score;
      best_row = r;
    }
  }
  if (best_row < 0 || best > char_tol) {
    out.label = "unclassified";
    out.confidence = best_row < 0 ? 1e300 : best;
    return out;
  }
  out.confidence = best;
  std::string base = catalog.rows[best_row].base_label;
  out.label = (g.kind == PointKind::Gamma && out.dim == 1) ? strip_sign(base) : base;
  for (const auto& [a, b] : catalog.equivalent_pairs) {
    if (a == base) out.equivalent_to = b;
    if (b == base) out.equivalent_to = a;
  }

  // antiunitary structure: PT pairs swap partners, real clusters map to themselves
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(basis);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(basis.rows(), basis.cols());
  double structure_dev = 1e300;
  if (is_pair) {
    // best antiunitary gain -> loss overlap (modes ordered gain first)
    const Eigen::VectorXcd& hg = modes[cluster[0]].coeffs;
    const Eigen::VectorXcd& hl = modes[cluster[1]].coeffs;
    double best_swap = 0;
    for (int a = g.unitary_order; a < g.order(); ++a) {
      Eigen::VectorXcd t = apply_action(g, a, recips, hg);
      best_swap = std::max(best_swap, std::abs(hl.dot(t)));
    }
    structure_dev = 1.0 - best_swap;
  } else {
    double worst = 0;
    for (int a = g.unitary_order; a < g.order(); ++a)
      for (int j = 0; j < basis.cols(); ++j) {
        Eigen::VectorXcd t = apply_action(g, a, recips, basis.col(j));
        double in_span = (q * (q.adjoint() * t)).norm();
        worst = std::max(worst, 1.0 - in_span);
      }
    structure_dev = worst;
  }
  out.confidence = std::max(out.confidence, structure_dev);

  // decoration fit for the 2D Type (a) clusters at Gamma and M
  if (!is_pair && out.dim == 2 &&
      (g.kind == PointKind::Gamma || g.kind == PointKind::M)) {
    int sd = g.index_of_label("s_d");
    CMat msd = rep_matrix(g, sd, recips, basis, nullptr);
    Eigen::ComplexEigenSolver<CMat> es(msd);
    if (es.info() == Eigen::Success) {
      // order the sigma_d eigenbasis as (-1, +1), matching the catalog row
      Eigen::MatrixXcd v = es.eigenvectors();
      if (es.eigenvalues()(0).real() > es.eigenvalues()(1).real()) {
        v.col(0).swap(v.col(1));
      }
      Eigen::MatrixXcd canon = basis * v;
      for (int j = 0; j < 2; ++j) {
        int imax = 0;
        canon.col(j).cwiseAbs().maxCoeff(&imax);
        Cplx ph = canon(imax, j) / std::abs(canon(imax, j));
        canon.col(j) /= ph * canon.col(j).norm();
      }
      std::vector<Corepresentation> variants;
      const Corepresentation& plain = catalog.row(out.label);
      variants.push_back(plain);
      variants.push_back(apply_label_decoration(plain, "b"));
      variants.push_back(apply_label_decoration(plain, "u"));
      variants.push_back(apply_label_decoration(apply_label_decoration(plain, "u"), "b"));
      std::vector<CMat> measured(g.order());
      for (int e = 0; e < g.order(); ++e) measured[e] = rep_matrix(g, e, recips, canon, nullptr);
      double best_dev = 1e300;
      int best_var = 0;
      for (size_t vi = 0; vi < variants.size(); ++vi) {
        double dev = 0;
        // catalog matrices compose in application order; measured ones in
        // operator order, so compare against the inverse element
        for (int e = 0; e < g.order(); ++e)
          dev = std::max(dev,
                         (measured[e] - variants[vi].mats[g.inverse_of(e)]).cwiseAbs().maxCoeff());
        if (dev < best_dev - 1e-9) {
          best_dev = dev;
          best_var = static_cast<int>(vi);
        }
      }
      if (best_var != 0 && best_dev < 1e-6) out.label = variants[best_var].label();
    }
  }
  return out;
}

ClassificationReport classify_at_point(const LatticeConfig& cfg, PointKind kind,
                                       double window_lo, double window_hi,
                                       const ClassifyOptions& opt) {
  KPoint k;
  switch (kind) {
    case PointKind::Gamma: k = k_gamma(); break;
    case PointKind::X:     k = k_x(); break;
    case PointKind::M:     k = k_m(); break;
    default: throw classify_error("classification catalog exists at Gamma, X, M only");
  }
  ClassificationReport rep;
  rep.kind = kind;
  rep.kx_pi = k.x.value();
  rep.ky_pi = k.y.value();
  rep.window_lo = window_lo;
  rep.window_hi = window_hi;

  ReciprocalSet recips(cfg.truncation);
  Eigen::MatrixXcd eta = build_inv_eps_matrix(cfg, recips);
  int nb = std::min(opt.max_bands, recips.size());
  std::vector<BlochMode> all = solve(assemble(rep.kx_pi, rep.ky_pi, eta, recips), nb);
  if (!all.empty() && all.back().omega.real() < window_hi)
    throw classify_error("max_bands too small to cover the requested window");

  for (const BlochMode& m : all)
    if (m.omega.real() >= window_lo && m.omega.real() <= window_hi)
      rep.modes.push_back(m);

  rep.pair_partner = detect_pt_pairs(rep.modes, opt.pair_tol);
  CorepCatalog catalog = corep_catalog(kind);

  std::vector<std::vector<int>> clusters = degeneracy_cluster(rep.modes, opt.cluster_tol);
  rep.cluster_of.assign(rep.modes.size(), -1);

  for (const std::vector<int>& cl : clusters) {
    bool is_pair = false;
    std::vector<int> unit = cl;
    if (cl.size() == 1 && rep.pair_partner[cl[0]] >= 0) {
      int p = rep.pair_partner[cl[0]];
      if (p < cl[0]) continue;  // the partner's cluster already handled this pair
      is_pair = true;
      unit = {cl[0], p};
      if (rep.modes[unit[0]].omega.imag() < rep.modes[unit[1]].omega.imag())
        std::swap(unit[0], unit[1]);  // gain first
    } else if (cl.size() == 2 && rep.pair_partner[cl[0]] == cl[1]) {
      // a conjugate pair inside the cluster tolerance (tiny Im)
      is_pair = true;
      unit = cl;
      if (rep.modes[unit[0]].omega.imag() < rep.modes[unit[1]].omega.imag())
        std::swap(unit[0], unit[1]);
    }
    ClusterLabel cl_label =
        classify_cluster(rep.modes, unit, is_pair, catalog, recips, opt.char_tol);
    int id = static_cast<int>(rep.clusters.size());
    for (int i : cl_label.modes) rep.cluster_of[i] = id;
    rep.clusters.push_back(std::move(cl_label));
  }
  return rep;
}

ExceptionalPoint locate_exceptional_point(const LatticeConfig& cfg,
                                          std::array<double, 2> from,
                                          std::array<double, 2> to, int band,
                                          double tol_k, double tol_im) {
  ReciprocalSet recips(cfg.truncation);
  Eigen::MatrixXcd eta = build_inv_eps_matrix(cfg, recips);
  auto is_complex = [&](double t) {
    double kx = from[0] + t * (to[0] - from[0]);
    double ky = from[1] + t * (to[1] - from[1]);
    std::vector<BlochMode> m = solve(assemble(kx, ky, eta, recips), band + 2);
    return std::max(std::abs(m[band].omega.imag()), std::abs(m[band + 1].omega.imag())) >
           tol_im;
  };
  bool a = is_complex(0.0), b = is_complex(1.0);
  if (a || !b)
    throw classify_error(
        "no sign change: the pair must be real at the segment start and complex at the end");
  double lo = 0.0, hi = 1.0;
  double seg_len = std::hypot(to[0] - from[0], to[1] - from[1]);
  while ((hi - lo) * seg_len > tol_k) {
    double mid = 0.5 * (lo + hi);
    if (is_complex(mid)) hi = mid;
    else lo = mid;
  }
  ExceptionalPoint ep;
  ep.t = 0.5 * (lo + hi);
  ep.kx_pi = from[0] + ep.t * (to[0] - from[0]);
  ep.ky_pi = from[1] + ep.t * (to[1] - from[1]);
  ep.bracket_width = (hi - lo) * seg_len;
  ep.n_i = cfg.n_i;
  return ep;
}

// ---------------------------------------------------------------------------
// Reduction procedure

std::vector<int> fixed_point_profile(const Star& star, const PointGroupTable& t) {
  std::vector<int> profile;
  profile.reserve(t.ops.size());
  for (PointOp op : t.ops) {
    Mat2i r = point_matrix(op);
    int count = 0;
    for (auto [x, y] : star.points) {
      auto rp = apply_point(r, x, y);
      if (rp[0] == x && rp[1] == y) ++count;
    }
    profile.push_back(count);
  }
  return profile;
}

std::vector<int> reduce_at_point(const Star& star, const PointGroupTable& t) {
  std::vector<int> p = fixed_point_profile(star, t);
  int h = static_cast<int>(t.ops.size());
  std::vector<int> lambda;
  for (const auto& row : t.rows) {
    long long acc = 0;
    for (size_t i = 0; i < t.ops.size(); ++i) acc += static_cast<long long>(p[i]) * row.chi[i];
    if (acc % h != 0)
      throw classify_error("non-integer instance count for " + row.name +
                           " (star is not invariant under " + t.name + ")");
    lambda.push_back(static_cast<int>(acc / h));
  }
  long long total = 0;
  for (size_t i = 0; i < lambda.size(); ++i) total += static_cast<long long>(lambda[i]) * t.rows[i].dim;
  if (total != static_cast<long long>(star.points.size()))
    throw classify_error("reduction sum rule violated");
  return lambda;
}

std::vector<Star> star_catalog(const std::string& base, int max_radius2) {
  int bx, by;
  if (base == "gamma") { bx = 0; by = 0; }
  else if (base == "x") { bx = 1; by = 0; }
  else if (base == "m") { bx = 1; by = 1; }
  else throw classify_error("unknown star base " + base);

  std::map<int, Star> shells;
  int span = static_cast<int>(std::sqrt(static_cast<double>(max_radius2))) / 2 + 2;
  for (int m = -span; m <= span; ++m)
    for (int n = -span; n <= span; ++n) {
      int x = bx + 2 * m, y = by + 2 * n;
      int r2 = x * x + y * y;
      if (r2 > max_radius2) continue;
      Star& s = shells[r2];
      s.radius2 = r2;
      s.points.push_back({x, y});
    }
  std::vector<Star> out;
  for (auto& [r2, s] : shells) {
    std::sort(s.points.begin(), s.points.end());
    s.name = base + "_r" + std::to_string(r2);
    out.push_back(std::move(s));
  }
  return out;
}

Star named_star(const std::string& name) {
  // Superscripts follow the published reciprocal-lattice diagram; the
  // second Gamma star there is the diagonal shell (the one with two
  // sigma_d- and two sigma_d'-invariant points).
  struct Alias { const char* name; const char* base; int r2; };
  const Alias aliases[] = {{"gamma_1", "gamma", 0}, {"gamma_2", "gamma", 8},
                           {"m_1", "m", 2},         {"m_2", "m", 10},
                           {"x_1", "x", 1}};
  for (const Alias& a : aliases)
    if (name == a.name) {
      for (Star& s : star_catalog(a.base, a.r2))
        if (s.radius2 == a.r2) {
          s.name = name;
          return s;
        }
    }
  throw classify_error("unknown star " + name);
}

// ---------------------------------------------------------------------------
// Quartet structure at M

namespace {

bool is_inner_diag_op(PointOp op) {
  return op == PointOp::E || op == PointOp::C2 || op == PointOp::SigmaD ||
         op == PointOp::SigmaDp;
}

}  // namespace

QuartetCheck verify_quartet_structure(const std::vector<BlochMode>& modes,
                                      const std::vector<int>& quartet,
                                      const LittleGroup& g, const ReciprocalSet& recips,
                                      double tol) {
  QuartetCheck qc;
  if (quartet.size() != 4) {
    qc.failure = "need exactly four modes";
    return qc;
  }
  std::vector<int> gains, losses;
  for (int i : quartet)
    (modes[i].omega.imag() >= 0 ? gains : losses).push_back(i);
  if (gains.size() != 2 || losses.size() != 2) {
    qc.failure = "modes do not form two conjugate pairs";
    return qc;
  }
  double re_spread = 0;
  for (int i : quartet)
    re_spread = std::max(re_spread,
                         std::abs(modes[i].omega.real() - modes[quartet[0]].omega.real()));
  if (re_spread > 1e-4) {
    qc.failure = "modes do not share Re(omega)";
    return qc;
  }
  for (int i : gains)
    if (std::abs(modes[i].omega.imag()) < 1e-12) {
      qc.failure = "quartet is not in the complex-conjugate regime";
      return qc;
    }

  // Orthonormal gain basis, rotated to the sigma_d eigenbasis.
  Eigen::MatrixXcd gb(modes[gains[0]].coeffs.size(), 2);
  gb.col(0) = modes[gains[0]].coeffs;
  gb.col(1) = modes[gains[1]].coeffs;
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(gb);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(gb.rows(), 2);

  int sd = g.index_of_label("s_d");
  int xi = g.index_of_label("xi");
  if (sd < 0 || xi < 0) {
    qc.failure = "group is not the M-point little group";
    return qc;
  }
  double res = 0;
  CMat msd = rep_matrix(g, sd, recips, q, &res);
  if (res > tol) {
    qc.failure = "gain doublet is not invariant under s_d";
    return qc;
  }
  Eigen::ComplexEigenSolver<CMat> es(msd);
  Eigen::MatrixXcd v = es.eigenvectors();
  Eigen::MatrixXcd gain = q * v;
  gain.col(0) /= gain.col(0).norm();
  gain.col(1) /= gain.col(1).norm();

  // Loss basis: transport the gain basis with xi (norm-preserving).
  Eigen::MatrixXcd full(gb.rows(), 4);
  full.col(0) = gain.col(0);
  full.col(1) = gain.col(1);
  full.col(2) = apply_action(g, xi, recips, gain.col(0));
  full.col(3) = apply_action(g, xi, recips, gain.col(1));

  // Verify the loss columns live in the loss eigenspace.
  Eigen::MatrixXcd lb(gb.rows(), 2);
  lb.col(0) = modes[losses[0]].coeffs;
  lb.col(1) = modes[losses[1]].coeffs;
  Eigen::HouseholderQR<Eigen::MatrixXcd> lqr(lb);
  Eigen::MatrixXcd lq = lqr.householderQ() * Eigen::MatrixXcd::Identity(lb.rows(), 2);
  for (int j = 2; j < 4; ++j) {
    double in_span = (lq * (lq.adjoint() * full.col(j))).norm() / full.col(j).norm();
    if (1.0 - in_span > 1e-6) {
      qc.failure = "antiunitary shift does not map gain modes onto loss modes";
      return qc;
    }
  }

  std::vector<CMat> mats(g.order());
  for (int e = 0; e < g.order(); ++e) {
    double r = 0;
    mats[e] = rep_matrix(g, e, recips, full, &r);
    if (r > tol) {
      qc.failure = "quartet span is not invariant under " + g.labels[e];
      return qc;
    }
  }

  // Block pattern, sub-pattern, and two-equal-blocks check with the one
  // remaining gauge freedom (relative phase delta between the two gain
  // basis vectors; the transported loss pair carries the opposite phase).
  auto block = [](const CMat& m, int r, int c) { return m.block<2, 2>(2 * r, 2 * c); };
  std::vector<Cplx> e2d_cands;  // candidates for exp(2 i delta)
  for (int e = 0; e < g.order(); ++e) {
    bool anti = g.is_antiunitary(e);
    CMat zero1 = anti ? CMat(block(mats[e], 0, 0)) : CMat(block(mats[e], 0, 1));
    CMat zero2 = anti ? CMat(block(mats[e], 1, 1)) : CMat(block(mats[e], 1, 0));
    double off = std::max(zero1.cwiseAbs().maxCoeff(), zero2.cwiseAbs().maxCoeff());
    if (off > tol) {
      qc.failure = (anti ? "antiunitary " : "unitary ") + g.labels[e] +
                   ": wrong block-diagonal/antidiagonal structure";
      return qc;
    }
    CMat btop = anti ? CMat(block(mats[e], 0, 1)) : CMat(block(mats[e], 0, 0));
    CMat bbot = anti ? CMat(block(mats[e], 1, 0)) : CMat(block(mats[e], 1, 1));
    bool want_diag = is_inner_diag_op(g.elems[e].op);
    double pat = want_diag
                     ? std::max(std::abs(btop(0, 1)), std::abs(btop(1, 0)))
                     : std::max(std::abs(btop(0, 0)), std::abs(btop(1, 1)));
    if (pat > tol) {
      qc.failure = g.labels[e] + ": inner block is not " +
                   (want_diag ? "diagonal" : "antidiagonal");
      return qc;
    }
    // equal-blocks, diagonal part is phase-free
    double d_diff = std::max(std::abs(btop(0, 0) - bbot(0, 0)),
                             std::abs(btop(1, 1) - bbot(1, 1)));
    if (d_diff > tol) {
      qc.failure = g.labels[e] + ": diagonal entries of the two blocks differ";
      return qc;
    }
    if (std::abs(btop(0, 1)) > tol) e2d_cands.push_back(bbot(0, 1) / btop(0, 1));
  }
  // consistency of exp(2 i delta) across elements
  for (const Cplx& c : e2d_cands) {
    if (std::abs(std::abs(c) - 1.0) > tol) {
      qc.failure = "off-diagonal magnitudes of the two blocks differ";
      return qc;
    }
    if (std::abs(c - e2d_cands[0]) > 10 * tol) {
      qc.failure = "no common gauge makes the two blocks equal";
      return qc;
    }
  }
  if (!e2d_cands.empty()) {
    Cplx ph = std::sqrt(e2d_cands[0]);  // gain.col(1) -> ph * gain.col(1)
    Eigen::VectorXcd scale(4);
    scale << 1.0, ph, 1.0, std::conj(ph);
    double worst = 0;
    for (int e = 0; e < g.order(); ++e) {
      CMat m = mats[e];
      // basis change by diag(scale); antiunitary elements see the conjugate
      for (int rI = 0; rI < 4; ++rI)
        for (int cI = 0; cI < 4; ++cI) {
          Cplx cs = g.is_antiunitary(e) ? std::conj(scale(cI)) : scale(cI);
          m(rI, cI) = m(rI, cI) * cs / scale(rI);
        }
      CMat btop = g.is_antiunitary(e) ? CMat(m.block<2, 2>(0, 2)) : CMat(m.block<2, 2>(0, 0));
      CMat bbot = g.is_antiunitary(e) ? CMat(m.block<2, 2>(2, 0)) : CMat(m.block<2, 2>(2, 2));
      worst = std::max(worst, (btop - bbot).cwiseAbs().maxCoeff());
      mats[e] = m;
    }
    qc.max_violation = worst;
    if (worst > 10 * tol) {
      qc.failure = "the two 2x2 blocks are not identical in any common gauge";
      return qc;
    }
  }
  qc.matrices = std::move(mats);
  qc.ok = true;
  return qc;
}

double rod_overlap(const BlochMode& mode, const ReciprocalSet& recips, double cx,
                   double cy, double dx, double dy) {
  Cplx acc(0, 0);
  for (int i = 0; i < recips.size(); ++i) {
    if (mode.coeffs[i] == Cplx(0, 0)) continue;
    auto [mi, ni] = recips.at(i);
    for (int j = 0; j < recips.size(); ++j) {
      auto [mj, nj] = recips.at(j);
      acc += mode.coeffs[i] * std::conj(mode.coeffs[j]) *
             rect_integral(-(mi - mj), -(ni - nj), cx, cy, dx, dy);
    }
  }
  return acc.real();
}

}  // namespace ptb
