#include "ptbands/pwe.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include <lapacke.h>

namespace ptb {

TEOperator assemble(double kx_pi, double ky_pi, const Eigen::MatrixXcd& inv_eps,
                    const ReciprocalSet& recips) {
  int sz = recips.size();
  if (inv_eps.rows() != sz || inv_eps.cols() != sz)
    throw solver_error("inv_eps matrix does not match the reciprocal set");
  double kx = 0.5 * kx_pi, ky = 0.5 * ky_pi;  // to 2 pi / Lambda units
  TEOperator op;
  op.kx_pi = kx_pi;
  op.ky_pi = ky_pi;
  op.theta.resize(sz, sz);
  for (int i = 0; i < sz; ++i) {
    auto [mi, ni] = recips.at(i);
    double qix = kx + mi, qiy = ky + ni;
    for (int j = 0; j < sz; ++j) {
      auto [mj, nj] = recips.at(j);
      double dot = qix * (kx + mj) + qiy * (ky + nj);
      op.theta(i, j) = inv_eps(i, j) * dot;
    }
  }
  return op;
}

namespace {

// Dense complex eigensolve (LAPACK zgeev), eigenvalues + right eigenvectors.
void eig_dense(const Eigen::MatrixXcd& a, Eigen::VectorXcd& w, Eigen::MatrixXcd& v) {
  lapack_int n = static_cast<lapack_int>(a.rows());
  Eigen::MatrixXcd work = a;  // overwritten
  w.resize(n);
  v.resize(n, n);
  lapack_int info = LAPACKE_zgeev(
      LAPACK_COL_MAJOR, 'N', 'V', n,
      reinterpret_cast<lapack_complex_double*>(work.data()), n,
      reinterpret_cast<lapack_complex_double*>(w.data()), nullptr, 1,
      reinterpret_cast<lapack_complex_double*>(v.data()), n);
  if (info != 0)
    throw solver_error("zgeev failed to converge (info=" + std::to_string(info) + ")");
}

std::complex<double> principal_sqrt(std::complex<double> z) {
  std::complex<double> r = std::sqrt(z);
  if (r.real() < 0) r = -r;
  return r;
}

}  // namespace

std::vector<BlochMode> solve(const TEOperator& op, int n_bands) {
  int sz = static_cast<int>(op.theta.rows());
  if (n_bands < 1 || n_bands > sz) throw solver_error("n_bands out of range");

  Eigen::VectorXcd w;
  Eigen::MatrixXcd v;
  try {
    eig_dense(op.theta, w, v);
  } catch (const solver_error& e) {
    throw solver_error(std::string(e.what()) + " at k = (" + std::to_string(op.kx_pi) +
                       ", " + std::to_string(op.ky_pi) + ") pi/Lambda");
  }

  std::vector<std::complex<double>> omega(sz);
  for (int i = 0; i < sz; ++i) omega[i] = principal_sqrt(w[i]);

  std::vector<int> order(sz);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&omega](int a, int b) {
    return omega[a].real() < omega[b].real();
  });
  // ties in Re(omega): gain partner (larger Im) first
  const double tie = 1e-12;
  for (int i = 0; i < sz;) {
    int j = i + 1;
    while (j < sz && omega[order[j]].real() - omega[order[i]].real() < tie) ++j;
    std::stable_sort(order.begin() + i, order.begin() + j, [&omega](int a, int b) {
      return omega[a].imag() > omega[b].imag();
    });
    i = j;
  }

  double theta_norm = op.theta.cwiseAbs().rowwise().sum().maxCoeff();

  std::vector<BlochMode> out;
  out.reserve(n_bands);
  for (int b = 0; b < n_bands; ++b) {
    int i = order[b];
    BlochMode m;
    m.kx_pi = op.kx_pi;
    m.ky_pi = op.ky_pi;
    m.omega = omega[i];
    m.coeffs = v.col(i);
    out.push_back(std::move(m));
  }

  // Orthonormalize within degenerate omega^2 clusters (zgeev vectors in a
  // repeated eigenvalue's subspace are not orthogonal in general).
  double cluster_tol = 1e-9 * std::max(1.0, theta_norm);
  for (int b0 = 0; b0 < n_bands;) {
    int b1 = b0 + 1;
    while (b1 < n_bands &&
           std::abs(w[order[b1]] - w[order[b0]]) < cluster_tol) ++b1;
    for (int b = b0; b < b1; ++b) {
      for (int c = b0; c < b; ++c)
        out[b].coeffs -= out[c].coeffs.dot(out[b].coeffs) * out[c].coeffs;
      double nrm = out[b].coeffs.norm();
      if (nrm < 1e-12) throw solver_error("degenerate eigenspace collapse");
      out[b].coeffs /= nrm;
    }
    b0 = b1;
  }
  for (BlochMode& m : out) m.coeffs /= m.coeffs.norm();

  for (BlochMode& m : out) {
    double res = (op.theta * m.coeffs - m.omega * m.omega * m.coeffs).norm();
    m.residual = res / theta_norm;
    if (m.residual > 1e-8)
      throw solver_error("eigenpair residual " + std::to_string(m.residual) +
                         " exceeds tolerance at k = (" + std::to_string(m.kx_pi) + ", " +
                         std::to_string(m.ky_pi) + ")");
  }
  return out;
}

std::vector<BlochMode> solve_at(const LatticeConfig& cfg, double kx_pi, double ky_pi,
                                int n_bands) {
  ReciprocalSet recips(cfg.truncation);
  Eigen::MatrixXcd eta = build_inv_eps_matrix(cfg, recips);
  return solve(assemble(kx_pi, ky_pi, eta, recips), n_bands);
}

std::vector<std::complex<double>> spectrum(const TEOperator& op) {
  lapack_int n = static_cast<lapack_int>(op.theta.rows());
  Eigen::MatrixXcd work = op.theta;
  Eigen::VectorXcd w(n);
  lapack_int info = LAPACKE_zgeev(
      LAPACK_COL_MAJOR, 'N', 'N', n,
      reinterpret_cast<lapack_complex_double*>(work.data()), n,
      reinterpret_cast<lapack_complex_double*>(w.data()), nullptr, 1, nullptr, 1);
  if (info != 0)
    throw solver_error("zgeev failed (info=" + std::to_string(info) + ") at k = (" +
                       std::to_string(op.kx_pi) + ", " + std::to_string(op.ky_pi) + ")");
  std::vector<std::complex<double>> out(n);
  for (lapack_int i = 0; i < n; ++i) out[i] = principal_sqrt(w[i]);
  std::sort(out.begin(), out.end(), [](std::complex<double> a, std::complex<double> b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return out;
}

PathSpec PathSpec::standard_cycle(int samples_per_segment) {
  PathSpec p;
  p.vertices = {{"gamma", 0, 0}, {"x", 1, 0}, {"m", 1, 1}, {"gamma", 0, 0}};
  p.samples_per_segment = {samples_per_segment, samples_per_segment, samples_per_segment};
  return p;
}

namespace {

// Greedy conjugate pairing; unmatched non-real modes are tolerated only in
// the top `lenient_top` slots (a pair can straddle the tracked-band cut).
std::vector<int> pair_greedy(const std::vector<BlochMode>& modes, double tol,
                             int lenient_top) {
  int n = static_cast<int>(modes.size());
  std::vector<int> partner(n, -1);
  std::vector<int> complex_ids;
  for (int i = 0; i < n; ++i)
    if (std::abs(modes[i].omega.imag()) > tol) complex_ids.push_back(i);

  struct Cand {
    double cost;
    int i, j;
  };
  std::vector<Cand> cands;
  for (size_t a = 0; a < complex_ids.size(); ++a)
    for (size_t b = a + 1; b < complex_ids.size(); ++b) {
      int i = complex_ids[a], j = complex_ids[b];
      double cost = std::abs(modes[i].omega - std::conj(modes[j].omega));
      if (cost <= tol) cands.push_back({cost, i, j});
    }
  std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
    if (a.cost != b.cost) return a.cost < b.cost;
    return std::tie(a.i, a.j) < std::tie(b.i, b.j);
  });
  for (const Cand& c : cands)
    if (partner[c.i] < 0 && partner[c.j] < 0) {
      partner[c.i] = c.j;
      partner[c.j] = c.i;
    }
  for (int i : complex_ids)
    if (partner[i] < 0) {
      if (i >= n - lenient_top) {
        partner[i] = -2;  // partner above the tracked window
        continue;
      }
      throw solver_error("PT closure violation: mode with Im(omega) = " +
                         std::to_string(modes[i].omega.imag()) + " has no conjugate partner");
    }
  return partner;
}

}  // namespace

std::vector<int> detect_pt_pairs(const std::vector<BlochMode>& modes, double tol) {
  return pair_greedy(modes, tol, 0);
}

BandStructure solve_path(const LatticeConfig& cfg, const PathSpec& path, int n_bands,
                         int threads) {
  if (path.vertices.size() < 2 ||
      path.samples_per_segment.size() != path.vertices.size() - 1)
    throw solver_error("malformed path spec");

  BandStructure bs;
  double abscissa = 0;
  for (size_t s = 0; s + 1 < path.vertices.size(); ++s) {
    const auto& a = path.vertices[s];
    const auto& b = path.vertices[s + 1];
    int count = path.samples_per_segment[s];
    if (count < 1) throw solver_error("segment sample count must be >= 1");
    double seg_len = std::hypot(b.kx_pi - a.kx_pi, b.ky_pi - a.ky_pi);
    int first = (s == 0) ? 0 : 1;  // avoid duplicating shared vertices
    for (int i = first; i <= count; ++i) {
      double t = static_cast<double>(i) / count;
      BandStructure::Sample sm;
      sm.segment = static_cast<int>(s);
      sm.index = i;
      sm.kx_pi = a.kx_pi + t * (b.kx_pi - a.kx_pi);
      sm.ky_pi = a.ky_pi + t * (b.ky_pi - a.ky_pi);
      sm.abscissa = abscissa + t * seg_len;
      bs.samples.push_back(sm);
    }
    abscissa += seg_len;
  }

  ReciprocalSet recips(cfg.truncation);
  Eigen::MatrixXcd eta = build_inv_eps_matrix(cfg, recips);

  int nsamp = static_cast<int>(bs.samples.size());
  bs.modes.assign(nsamp, {});
  unsigned hw = std::thread::hardware_concurrency();
  int nthreads = threads > 0 ? threads : static_cast<int>(hw ? hw : 1);
  nthreads = std::min(nthreads, nsamp);

  std::vector<std::exception_ptr> errors(nthreads);
  auto worker = [&](int tid) {
    try {
      for (int i = tid; i < nsamp; i += nthreads) {
        const auto& sm = bs.samples[i];
        bs.modes[i] = solve(assemble(sm.kx_pi, sm.ky_pi, eta, recips), n_bands);
      }
    } catch (...) {
      errors[tid] = std::current_exception();
    }
  };
  if (nthreads <= 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  // Band connection by maximal eigenvector overlap between adjacent samples.
  bs.connection.assign(nsamp > 0 ? nsamp - 1 : 0, {});
  for (int j = 0; j + 1 < nsamp; ++j) {
    const auto& cur = bs.modes[j];
    const auto& nxt = bs.modes[j + 1];
    int nb = static_cast<int>(cur.size());
    struct Cand {
      double overlap;
      int a, b;
    };
    std::vector<Cand> cands;
    for (int a = 0; a < nb; ++a)
      for (int b = 0; b < nb; ++b)
        cands.push_back({std::abs(cur[a].coeffs.dot(nxt[b].coeffs)), a, b});
    std::sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) {
      if (x.overlap != y.overlap) return x.overlap > y.overlap;
      return std::tie(x.a, x.b) < std::tie(y.a, y.b);
    });
    std::vector<int> conn(nb, -1), taken(nb, 0);
    for (const Cand& c : cands)
      if (conn[c.a] < 0 && !taken[c.b]) {
        conn[c.a] = c.b;
        taken[c.b] = 1;
      }
    bs.connection[j] = std::move(conn);
  }

  bs.pair_partner.assign(nsamp, {});
  for (int j = 0; j < nsamp; ++j) bs.pair_partner[j] = pair_greedy(bs.modes[j], 1e-8, 1);
  return bs;
}

}  // namespace ptb
