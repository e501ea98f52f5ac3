#include "ptbands/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace ptb {

void LatticeConfig::validate() const {
  if (!(lattice_constant > 0)) throw config_error("lattice_constant must be positive");
  if (!(d_x > 0 && d_x <= 0.5) || !(d_y > 0 && d_y <= 0.5))
    throw config_error("rod sizes must lie in (0, 1/2]");
  if (!(n_r > 0)) throw config_error("n_r must be positive");
  if (n_i < 0) throw config_error("n_i must be >= 0");
  if (delta_n < 0) throw config_error("delta_n must be >= 0");
  if (truncation < 0 || truncation > 40) throw config_error("truncation out of range");
}

LatticeConfig LatticeConfig::from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw config_error(std::string("config is not valid JSON: ") + e.what());
  }
  LatticeConfig cfg;
  const std::vector<std::string> known = {"lattice_constant", "d_x", "d_y", "n_r",
                                          "n_i", "delta_n", "truncation"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::find(known.begin(), known.end(), it.key()) == known.end())
      throw config_error("unknown config key: " + it.key());
  try {
    cfg.lattice_constant = j.value("lattice_constant", cfg.lattice_constant);
    cfg.d_x = j.value("d_x", cfg.d_x);
    cfg.d_y = j.value("d_y", cfg.d_y);
    cfg.n_r = j.value("n_r", cfg.n_r);
    cfg.n_i = j.value("n_i", cfg.n_i);
    cfg.delta_n = j.value("delta_n", cfg.delta_n);
    cfg.truncation = j.value("truncation", cfg.truncation);
  } catch (const nlohmann::json::exception& e) {
    throw config_error(std::string("bad config value: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

LatticeConfig LatticeConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

std::string LatticeConfig::to_json() const {
  nlohmann::json j;
  j["lattice_constant"] = lattice_constant;
  j["d_x"] = d_x;
  j["d_y"] = d_y;
  j["n_r"] = n_r;
  j["n_i"] = n_i;
  j["delta_n"] = delta_n;
  j["truncation"] = truncation;
  return j.dump();
}

ReciprocalSet::ReciprocalSet(int N) : n_(N) {
  if (N < 0) throw config_error("truncation must be >= 0");
  idx_.reserve((2 * N + 1) * (2 * N + 1));
  for (int m = -N; m <= N; ++m)
    for (int n = -N; n <= N; ++n) idx_.push_back({m, n});
}

namespace {

double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

}  // namespace

std::complex<double> rect_integral(double gm, double gn, double cx, double cy,
                                   double dx, double dy) {
  const double pi = 3.14159265358979323846;
  double phase = -2.0 * pi * (gm * cx + gn * cy);
  return std::polar(dx * dy * sinc(pi * gm * dx) * sinc(pi * gn * dy), phase);
}

std::complex<double> fourier_inv_eps(const LatticeConfig& cfg, int m, int n) {
  std::complex<double> nb2 = cfg.n_r * cfg.n_r;
  std::complex<double> n1 = cfg.gain_index();
  std::complex<double> n2 = cfg.loss_index();
  std::complex<double> inv_bg = 1.0 / nb2;

  std::complex<double> eta = (m == 0 && n == 0) ? inv_bg : std::complex<double>(0.0);
  std::complex<double> f = rect_integral(m, n, 0.0, 0.0, cfg.d_x, cfg.d_y);
  double sign = ((m + n) % 2 == 0) ? 1.0 : -1.0;  // exp(-i G . (1/2,1/2))
  eta += (1.0 / (n1 * n1) - inv_bg) * f;
  eta += (1.0 / (n2 * n2) - inv_bg) * f * sign;
  return eta;
}

Eigen::MatrixXcd build_inv_eps_matrix(const LatticeConfig& cfg, const ReciprocalSet& recips) {
  int N = recips.truncation();
  int span = 4 * N + 1;
  Eigen::MatrixXcd table(span, span);
  for (int dm = -2 * N; dm <= 2 * N; ++dm)
    for (int dn = -2 * N; dn <= 2 * N; ++dn)
      table(dm + 2 * N, dn + 2 * N) = fourier_inv_eps(cfg, dm, dn);

  int sz = recips.size();
  Eigen::MatrixXcd eta(sz, sz);
  for (int i = 0; i < sz; ++i) {
    auto [mi, ni] = recips.at(i);
    for (int j = 0; j < sz; ++j) {
      auto [mj, nj] = recips.at(j);
      eta(i, j) = table(mi - mj + 2 * N, ni - nj + 2 * N);
    }
  }
  return eta;
}

}  // namespace ptb
