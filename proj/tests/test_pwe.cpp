#include "doctest.h"
#include "ptbands/pwe.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

using namespace ptb;
using Cd = std::complex<double>;

namespace {

// empty-lattice oracle: omega = |k/2 + K| / n_r over the truncated window
std::vector<double> empty_lattice_omegas(double kx_pi, double ky_pi, double n_r, int N) {
  std::vector<double> out;
  for (int m = -N; m <= N; ++m)
    for (int n = -N; n <= N; ++n)
      out.push_back(std::hypot(0.5 * kx_pi + m, 0.5 * ky_pi + n) / n_r);
  std::sort(out.begin(), out.end());
  return out;
}

LatticeConfig empty_cfg(int N = 7) {
  LatticeConfig cfg;
  cfg.n_i = 0;
  cfg.delta_n = 0;
  cfg.truncation = N;
  return cfg;
}

BlochMode fake_mode(Cd omega) {
  BlochMode m;
  m.omega = omega;
  return m;
}

}  // namespace

TEST_CASE("assemble produces the diagonal operator for a homogeneous medium") {
  LatticeConfig cfg = empty_cfg(3);
  ReciprocalSet recips(3);
  Eigen::MatrixXcd eta = build_inv_eps_matrix(cfg, recips);
  TEOperator op = assemble(0.6, 0.2, eta, recips);
  for (int i = 0; i < recips.size(); ++i) {
    auto [m, n] = recips.at(i);
    double q2 = std::pow(0.3 + m, 2) + std::pow(0.1 + n, 2);
    CHECK(std::abs(op.theta(i, i) - Cd(q2 / 4.0)) < 1e-14);
    for (int j = 0; j < recips.size(); ++j)
      if (i != j) CHECK(std::abs(op.theta(i, j)) < 1e-15);
  }
}

TEST_CASE("1x1 operator") {
  ReciprocalSet r0(0);
  LatticeConfig cfg = empty_cfg(0);
  Eigen::MatrixXcd eta = build_inv_eps_matrix(cfg, r0);
  TEOperator op = assemble(0.5, 0.0, eta, r0);
  std::vector<BlochMode> modes = solve(op, 1);
  CHECK(modes.size() == 1);
  CHECK(std::abs(modes[0].omega - std::sqrt(op.theta(0, 0))) < 1e-14);
}

TEST_CASE("empty-lattice spectrum matches the folded light lines to 1e-10") {
  LatticeConfig cfg = empty_cfg();
  for (auto [kx, ky] : {std::pair<double, double>{0, 0}, {1, 0}, {1, 1}}) {
    std::vector<double> oracle = empty_lattice_omegas(kx, ky, cfg.n_r, cfg.truncation);
    std::vector<Cd> omegas = spectrum(assemble(kx, ky, build_inv_eps_matrix(cfg, ReciprocalSet(cfg.truncation)), ReciprocalSet(cfg.truncation)));
    REQUIRE(omegas.size() == oracle.size());
    for (size_t i = 0; i < oracle.size(); ++i) {
      CHECK(std::abs(omegas[i].imag()) < 1e-10);
      CHECK(std::abs(omegas[i].real() - oracle[i]) < 1e-10);
    }
  }
}

TEST_CASE("published empty-lattice shell frequencies and multiplicities") {
  LatticeConfig cfg = empty_cfg();
  auto count_near = [](const std::vector<BlochMode>& ms, double w) {
    int c = 0;
    for (const auto& m : ms)
      if (std::abs(m.omega.real() - w) < 1e-9) ++c;
    return c;
  };
  std::vector<BlochMode> at_x = solve_at(cfg, 1, 0, 8);
  CHECK(count_near(at_x, 0.25) == 2);
  CHECK(count_near(at_x, std::sqrt(1.25) / 2) == 4);  // 0.55902
  std::vector<BlochMode> at_m = solve_at(cfg, 1, 1, 12);
  CHECK(count_near(at_m, std::sqrt(0.5) / 2) == 4);   // 0.35355
  CHECK(count_near(at_m, std::sqrt(2.5) / 2) == 8);   // 0.79057
  std::vector<BlochMode> at_g = solve_at(cfg, 0, 0, 5);
  CHECK(count_near(at_g, 0.5) == 4);
}

TEST_CASE("PT spectrum is closed under conjugation") {
  LatticeConfig cfg;
  cfg.truncation = 5;
  ReciprocalSet recips(5);
  Eigen::MatrixXcd eta = build_inv_eps_matrix(cfg, recips);
  for (auto [kx, ky] : {std::pair<double, double>{1, 0}, {1, 1}, {0.52, 0}, {1, 0.36}}) {
    std::vector<Cd> w = spectrum(assemble(kx, ky, eta, recips));
    std::vector<Cd> wc;
    for (Cd z : w) wc.push_back(std::conj(z));
    std::sort(wc.begin(), wc.end(), [](Cd a, Cd b) {
      if (a.real() != b.real()) return a.real() < b.real();
      return a.imag() < b.imag();
    });
    for (size_t i = 0; i < w.size(); ++i) CHECK(std::abs(w[i] - wc[i]) < 1e-8);
  }
}

TEST_CASE("Hermitian limit has a real spectrum") {
  LatticeConfig cfg = empty_cfg(5);
  cfg.delta_n = 0.3;  // real contrast, still Hermitian
  ReciprocalSet recips(5);
  Eigen::MatrixXcd eta = build_inv_eps_matrix(cfg, recips);
  for (auto [kx, ky] : {std::pair<double, double>{0.3, 0}, {1, 0.7}}) {
    for (Cd z : spectrum(assemble(kx, ky, eta, recips)))
      CHECK(std::abs(z.imag()) < 1e-10);
  }
}

TEST_CASE("solving at k and k+K gives the same low bands") {
  LatticeConfig cfg;
  cfg.truncation = 7;
  ReciprocalSet recips(7);
  Eigen::MatrixXcd eta = build_inv_eps_matrix(cfg, recips);
  std::vector<BlochMode> a = solve(assemble(0.34, 0.0, eta, recips), 6);
  std::vector<BlochMode> b = solve(assemble(0.34 + 2.0, 0.0, eta, recips), 6);
  for (int i = 0; i < 6; ++i) CHECK(std::abs(a[i].omega - b[i].omega) < 1e-10);
}

TEST_CASE("truncation convergence N=6 to N=7") {
  for (auto [kx, ky] : {std::pair<double, double>{0, 0}, {1, 0}, {1, 1}}) {
    LatticeConfig c6;
    c6.truncation = 6;
    LatticeConfig c7;
    c7.truncation = 7;
    std::vector<BlochMode> a = solve_at(c6, kx, ky, 10);
    std::vector<BlochMode> b = solve_at(c7, kx, ky, 10);
    for (int i = 0; i < 10; ++i)
      CHECK(std::abs(a[i].omega - b[i].omega) < 1e-4);
  }
}

TEST_CASE("modes are normalized with small residuals and sorted") {
  LatticeConfig cfg;
  cfg.truncation = 5;
  std::vector<BlochMode> modes = solve_at(cfg, 1, 0, 10);
  for (size_t i = 0; i < modes.size(); ++i) {
    CHECK(std::abs(modes[i].coeffs.norm() - 1.0) < 1e-12);
    CHECK(modes[i].residual <= 1e-8);
    if (i > 0) CHECK(modes[i].omega.real() >= modes[i - 1].omega.real() - 1e-12);
  }
  // the lowest X pair is a conjugate pair with the gain partner first
  CHECK(modes[0].omega.imag() > 1e-4);
  CHECK(std::abs(modes[0].omega - std::conj(modes[1].omega)) < 1e-10);
}

TEST_CASE("degenerate eigenspaces come out orthonormal") {
  LatticeConfig cfg = empty_cfg(4);
  std::vector<BlochMode> modes = solve_at(cfg, 0, 0, 5);
  // modes 1..4 are the degenerate 0.5 shell
  for (int i = 1; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j)
      CHECK(std::abs(modes[i].coeffs.dot(modes[j].coeffs)) < 1e-10);
}

TEST_CASE("detect_pt_pairs") {
  std::vector<BlochMode> modes = {fake_mode({1.0, 0.1}), fake_mode({1.0, -0.1}),
                                  fake_mode({2.0, 0.0})};
  std::vector<int> p = detect_pt_pairs(modes, 1e-8);
  CHECK(p == std::vector<int>{1, 0, -1});

  // Hermitian spectrum: no pairs
  std::vector<BlochMode> real_modes = {fake_mode({1.0, 0.0}), fake_mode({1.5, 0.0})};
  CHECK(detect_pt_pairs(real_modes) == std::vector<int>{-1, -1});

  // unmatched non-real mode is a hard diagnostic
  std::vector<BlochMode> bad = {fake_mode({1.0, 0.1}), fake_mode({2.0, 0.0})};
  CHECK_THROWS_AS(detect_pt_pairs(bad), solver_error);
}

TEST_CASE("solve_path on the homogeneous lattice follows the light line") {
  LatticeConfig cfg = empty_cfg(4);
  PathSpec path;
  path.vertices = {{"gamma", 0, 0}, {"x", 1, 0}};
  path.samples_per_segment = {16};
  BandStructure bs = solve_path(cfg, path, 3, 1);
  REQUIRE(bs.samples.size() == 17);
  for (size_t s = 0; s < bs.samples.size(); ++s) {
    double k = bs.samples[s].kx_pi;
    double expect = std::min(k, 2.0 - k) / 4.0;  // folded light line, n_r = 2
    CHECK(std::abs(bs.modes[s][0].omega.real() - expect) < 1e-10);
  }
}

TEST_CASE("solve_path tracks bands and links pairs") {
  LatticeConfig cfg;
  cfg.truncation = 5;
  PathSpec path;
  path.vertices = {{"gamma", 0, 0}, {"x", 1, 0}};
  path.samples_per_segment = {10};
  BandStructure bs = solve_path(cfg, path, 4, 2);
  // connections are bijections on the tracked window
  for (const auto& conn : bs.connection) {
    std::vector<int> seen(conn.size(), 0);
    for (int c : conn) {
      REQUIRE(c >= 0);
      REQUIRE(c < static_cast<int>(conn.size()));
      seen[c]++;
    }
    for (int s : seen) CHECK(s == 1);
  }
  // at the X endpoint the lowest two modes are a linked pair
  const auto& last_pairs = bs.pair_partner.back();
  CHECK(last_pairs[0] == 1);
  CHECK(last_pairs[1] == 0);
  // midway along the segment the lowest band is real
  CHECK(std::abs(bs.modes[5][0].omega.imag()) < 1e-10);
}

TEST_CASE("solver input validation") {
  LatticeConfig cfg = empty_cfg(2);
  ReciprocalSet recips(2);
  Eigen::MatrixXcd eta = build_inv_eps_matrix(cfg, recips);
  TEOperator op = assemble(0, 0, eta, recips);
  CHECK_THROWS_AS(solve(op, 0), solver_error);
  CHECK_THROWS_AS(solve(op, 26), solver_error);
  PathSpec bad;
  bad.vertices = {{"gamma", 0, 0}};
  CHECK_THROWS_AS(solve_path(cfg, bad, 2, 1), solver_error);
}
