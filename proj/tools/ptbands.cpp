// Command-line front end: band structures, mode classification, group-theory
// table dumps, non-Hermiticity sweeps and the Dimmock-Wheeler test, with a
// run manifest (config snapshot + output digests) for reproducibility.

#include "ptbands/report.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <openssl/evp.h>

#include "CLI11.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace ptb;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr))
    throw std::runtime_error("sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 0xf]);
  }
  return out;
}

class OutputWriter {
 public:
  OutputWriter(fs::path dir, std::string command, json arguments, const LatticeConfig& cfg)
      : dir_(std::move(dir)), command_(std::move(command)),
        arguments_(std::move(arguments)), config_(json::parse(cfg.to_json())) {
    fs::create_directories(dir_);
  }

  void write(const std::string& name, const std::string& content) {
    fs::path p = dir_ / name;
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    out << content;
    outputs_.push_back({name, sha256_hex(content)});
  }

  void finish() {
    json m;
    m["tool"] = "ptbands";
    m["version"] = kVersion;
    m["command"] = command_;
    m["arguments"] = arguments_;
    m["config"] = config_;
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    m["timestamp"] = buf;
    json files = json::array();
    for (const auto& [name, digest] : outputs_)
      files.push_back({{"file", name}, {"sha256", digest}});
    m["outputs"] = files;
    fs::path p = dir_ / "manifest.json";
    std::ofstream out(p, std::ios::binary);
    out << m.dump(2) << "\n";
  }

 private:
  fs::path dir_;
  std::string command_;
  json arguments_;
  json config_;
  std::vector<std::pair<std::string, std::string>> outputs_;
};

Rat rat_from_decimal(const std::string& s) {
  // exact rational from a decimal literal like "-0.25"
  std::string t = s;
  bool neg = false;
  if (!t.empty() && (t[0] == '+' || t[0] == '-')) {
    neg = t[0] == '-';
    t = t.substr(1);
  }
  auto dot = t.find('.');
  std::string ip = dot == std::string::npos ? t : t.substr(0, dot);
  std::string fp = dot == std::string::npos ? "" : t.substr(dot + 1);
  if (ip.empty() && fp.empty()) throw config_error("bad number: " + s);
  for (char c : ip + fp)
    if (!std::isdigit(static_cast<unsigned char>(c))) throw config_error("bad number: " + s);
  long long den = 1;
  for (size_t i = 0; i < fp.size(); ++i) den *= 10;
  long long num = (ip.empty() ? 0 : std::stoll(ip)) * den + (fp.empty() ? 0 : std::stoll(fp));
  return Rat(neg ? -num : num, den);
}

KPoint parse_kpoint(const std::string& s) {
  if (s == "gamma" || s == "g") return k_gamma();
  if (s == "x") return k_x();
  if (s == "m") return k_m();
  auto comma = s.find(',');
  if (comma == std::string::npos)
    throw config_error("k must be gamma|x|m or 'kx,ky' in pi/Lambda units");
  return {rat_from_decimal(s.substr(0, comma)), rat_from_decimal(s.substr(comma + 1))};
}

PointKind parse_named_point(const std::string& s) {
  if (s == "gamma" || s == "g") return PointKind::Gamma;
  if (s == "x") return PointKind::X;
  if (s == "m") return PointKind::M;
  throw config_error("expected one of gamma, x, m");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep)) out.push_back(tok);
  return out;
}

LatticeConfig load_config(const std::string& path) {
  if (path.empty()) return LatticeConfig{};
  return LatticeConfig::from_json_file(path);
}

json args_json(const std::vector<std::string>& argv) {
  json a = json::array();
  for (const auto& s : argv) a.push_back(s);
  return a;
}

// ---------------------------------------------------------------------------

int cmd_bands(const LatticeConfig& cfg, const std::string& out_dir,
              const std::string& path_str, const std::string& samples_str, int n_bands,
              bool with_vectors, bool with_labels, int threads, bool quiet,
              const std::vector<std::string>& argv) {
  PathSpec path;
  for (const std::string& tok : split(path_str, ':')) {
    KPoint k = parse_kpoint(tok);
    path.vertices.push_back({tok, k.x.value(), k.y.value()});
  }
  if (path.vertices.size() < 2) throw config_error("path needs at least two vertices");
  std::vector<std::string> counts = split(samples_str, ',');
  for (size_t s = 0; s + 1 < path.vertices.size(); ++s) {
    const std::string& c = counts[std::min(s, counts.size() - 1)];
    path.samples_per_segment.push_back(std::stoi(c));
  }

  BandStructure bs = solve_path(cfg, path, n_bands, threads);

  std::vector<std::vector<std::string>> labels(bs.samples.size());
  if (with_labels) {
    for (size_t s = 0; s < bs.samples.size(); ++s) {
      const auto& sm = bs.samples[s];
      PointKind kind;
      if (sm.kx_pi == 0 && sm.ky_pi == 0) kind = PointKind::Gamma;
      else if (sm.kx_pi == 1 && sm.ky_pi == 0) kind = PointKind::X;
      else if (sm.kx_pi == 1 && sm.ky_pi == 1) kind = PointKind::M;
      else continue;
      double hi = bs.modes[s].back().omega.real() + 1e-6;
      ClassificationReport rep = classify_at_point(cfg, kind, -1.0, hi);
      labels[s].resize(bs.modes[s].size());
      for (size_t b = 0; b < bs.modes[s].size() && b < rep.modes.size(); ++b)
        labels[s][b] = rep.clusters[rep.cluster_of[b]].label;
    }
  }

  OutputWriter w(out_dir, "bands", args_json(argv), cfg);
  w.write("bands.csv", bands_csv(bs, labels));
  w.write("bands.json", bands_json(bs, with_vectors));

  // gnuplot-friendly: one block per band, blank-line separated
  for (const char* part : {"re", "im"}) {
    std::ostringstream os;
    for (size_t b = 0; b < static_cast<size_t>(n_bands); ++b) {
      for (size_t s = 0; s < bs.samples.size(); ++s) {
        double v = part == std::string("re") ? bs.modes[s][b].omega.real()
                                             : bs.modes[s][b].omega.imag();
        os << fmt17(bs.samples[s].abscissa) << " " << fmt17(v) << "\n";
      }
      os << "\n";
    }
    w.write(std::string("bands_") + part + ".dat", os.str());
  }
  w.finish();
  if (!quiet)
    std::cout << "bands: " << bs.samples.size() << " k-points, " << n_bands
              << " bands -> " << out_dir << "\n";
  return 0;
}

int cmd_classify(const LatticeConfig& cfg, const std::string& out_dir,
                 const std::string& k_str, const std::string& window_str, bool quiet,
                 const std::vector<std::string>& argv) {
  PointKind kind = parse_named_point(k_str);
  std::vector<std::string> w = split(window_str, ':');
  if (w.size() != 2) throw config_error("window must be lo:hi");
  double lo = std::stod(w[0]), hi = std::stod(w[1]);

  ClassificationReport rep = classify_at_point(cfg, kind, lo, hi);

  // flag coalesced PT-pair quartets (two pairs with common Re(omega))
  json quartets = json::array();
  std::string quartet_text;
  if (kind == PointKind::M) {
    LittleGroup g = build_little_group(k_m());
    ReciprocalSet recips(cfg.truncation);
    std::vector<int> reps;
    for (size_t i = 0; i < rep.modes.size(); ++i)
      if (rep.pair_partner[i] >= 0 && static_cast<int>(i) < rep.pair_partner[i])
        reps.push_back(static_cast<int>(i));
    for (size_t a = 0; a < reps.size(); ++a)
      for (size_t b = a + 1; b < reps.size(); ++b) {
        if (std::abs(rep.modes[reps[a]].omega.real() - rep.modes[reps[b]].omega.real()) >
            1e-6)
          continue;
        std::vector<int> quartet = {reps[a], rep.pair_partner[reps[a]], reps[b],
                                    rep.pair_partner[reps[b]]};
        QuartetCheck qc = verify_quartet_structure(rep.modes, quartet, g, recips);
        json q;
        q["modes"] = quartet;
        q["re_omega"] = fmt17(rep.modes[reps[a]].omega.real());
        q["structure_ok"] = qc.ok;
        if (!qc.ok) q["failure"] = qc.failure;
        quartets.push_back(q);
        quartet_text += "quartet at Re(omega) = " + fmt17(rep.modes[reps[a]].omega.real()) +
                        (qc.ok ? ": block structure verified" : ": FAILED (" + qc.failure + ")") +
                        "\n";
      }
  }

  OutputWriter w2(out_dir, "classify", args_json(argv), cfg);
  std::string js = classification_json(rep);
  if (!quartets.empty()) {
    json j = json::parse(js);
    j["quartets"] = quartets;
    js = j.dump(2);
  }
  w2.write("classification.json", js);
  std::string text = classification_text(rep) + quartet_text;
  w2.write("classification.txt", text);
  w2.finish();
  if (!quiet) std::cout << text;
  return 0;
}

int cmd_tables(const LatticeConfig& cfg, const std::string& out_dir,
               const std::string& name, bool quiet, const std::vector<std::string>& argv) {
  PointKind kind;
  if (name == "c4v" || name == "gamma" || name == "g") kind = PointKind::Gamma;
  else if (name == "d2h" || name == "x") kind = PointKind::X;
  else if (name == "d4h" || name == "m") kind = PointKind::M;
  else throw config_error("unknown group/point name: " + name);

  CorepCatalog cat = corep_catalog(kind);
  OutputWriter w(out_dir, "tables", args_json(argv), cfg);
  w.write("group.json", group_json(cat.group));
  w.write("character_table.json", character_table_json(cat.group, cat.table));
  w.write("character_table.txt", character_table_text(cat.group, cat.table));
  w.write("coreps.json", corep_table_json(cat));
  w.write("coreps.txt", corep_table_text(cat));
  w.write("dw.json", dw_report_json(cat.group));
  w.write("dw.txt", dw_report_text(cat.group));
  w.finish();
  if (!quiet) {
    std::cout << character_table_text(cat.group, cat.table) << "\n"
              << dw_report_text(cat.group) << "\n"
              << corep_table_text(cat);
  }
  return 0;
}

int cmd_sweep_ni(const LatticeConfig& cfg, const std::string& out_dir,
                 const std::string& k_str, int band, const std::string& ni_str,
                 bool quiet, const std::vector<std::string>& argv) {
  PointKind kind = parse_named_point(k_str);
  double kx = kind == PointKind::Gamma ? 0 : 1;
  double ky = kind == PointKind::M ? 1 : 0;
  std::vector<std::string> toks = split(ni_str, ',');
  if (toks.empty()) throw config_error("empty n_i list");
  std::vector<double> nis;
  for (const auto& t : toks) nis.push_back(std::stod(t));

  std::ostringstream os;
  os << "n_i,im_omega,kstar_kx,kstar_ky\n";
  std::string text;
  for (double ni : nis) {
    LatticeConfig c = cfg;
    c.n_i = ni;
    c.validate();
    std::vector<BlochMode> modes = solve_at(c, kx, ky, band + 2);
    double im = std::max(std::abs(modes[band].omega.imag()),
                         std::abs(modes[band + 1].omega.imag()));
    std::string kxs, kys;
    if (im > 1e-8 && kind != PointKind::Gamma) {
      ExceptionalPoint ep = locate_exceptional_point(c, {0.8 * kx, 0.8 * ky}, {kx, ky}, band);
      kxs = fmt17(ep.kx_pi);
      kys = fmt17(ep.ky_pi);
    }
    os << fmt17(ni) << "," << fmt17(im) << "," << kxs << "," << kys << "\n";
    text += "n_i = " + fmt17(ni) + "  |Im omega| = " + fmt17(im) +
            (kxs.empty() ? std::string("  (no transition located)")
                         : "  k* = (" + kxs + ", " + kys + ") pi/Lambda") +
            "\n";
  }
  OutputWriter w(out_dir, "sweep-ni", args_json(argv), cfg);
  w.write("sweep_ni.csv", os.str());
  w.finish();
  if (!quiet) std::cout << text;
  return 0;
}

int cmd_dw_test(const LatticeConfig& cfg, const std::string& out_dir,
                const std::string& k_str, bool quiet, const std::vector<std::string>& argv) {
  LittleGroup g = build_little_group(parse_kpoint(k_str));
  OutputWriter w(out_dir, "dw-test", args_json(argv), cfg);
  w.write("dw.json", dw_report_json(g));
  w.write("dw.txt", dw_report_text(g));
  w.finish();
  if (!quiet) std::cout << dw_report_text(g);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  setenv("OPENBLAS_NUM_THREADS", "1", 0);

  CLI::App app{"PT-symmetric photonic lattice band structures and antiunitary mode classification"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "out";
  int threads = 0;
  bool quiet = false;
  app.add_option("--config", config_path, "JSON lattice config");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--threads", threads, "worker threads (0 = auto)");
  app.add_flag("--quiet", quiet, "suppress stdout report");

  auto* bands = app.add_subcommand("bands", "band structure along a k path");
  std::string path_str = "gamma:x:m:gamma", samples_str = "64";
  int n_bands = 12;
  bool with_vectors = false, no_labels = false;
  bands->add_option("--path", path_str, "colon-separated vertices (names or kx,ky)");
  bands->add_option("--samples", samples_str, "samples per segment (int or comma list)");
  bands->add_option("--bands", n_bands, "number of tracked bands");
  bands->add_flag("--with-vectors", with_vectors, "include coefficient vectors in JSON");
  bands->add_flag("--no-labels", no_labels, "skip corep labels at high-symmetry vertices");

  auto* classify = app.add_subcommand("classify", "classify modes at a high-symmetry point");
  std::string k_str = "gamma", window_str = "0.0:1.0";
  classify->add_option("--k", k_str, "gamma|x|m")->required();
  classify->add_option("--window", window_str, "Re(omega) window lo:hi")->required();

  auto* tables = app.add_subcommand("tables", "character/corep table dump");
  std::string table_name;
  tables->add_option("name", table_name, "c4v|d2h|d4h");
  std::string table_k;
  tables->add_option("--k", table_k, "gamma|x|m");

  auto* sweep = app.add_subcommand("sweep-ni", "Im(omega) and transition point vs n_i");
  std::string sweep_k = "x", ni_list;
  int sweep_band = 0;
  sweep->add_option("--k", sweep_k, "gamma|x|m");
  sweep->add_option("--band", sweep_band, "lower band index of the pair");
  sweep->add_option("--ni", ni_list, "comma-separated n_i values")->required();

  auto* dw = app.add_subcommand("dw-test", "Dimmock-Wheeler test at a k point");
  std::string dw_k = "gamma";
  dw->add_option("--k", dw_k, "gamma|x|m or kx,ky (pi/Lambda)");

  std::vector<std::string> raw(argv + 1, argv + argc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    LatticeConfig cfg = load_config(config_path);
    if (bands->parsed())
      return cmd_bands(cfg, out_dir, path_str, samples_str, n_bands, with_vectors,
                       !no_labels, threads, quiet, raw);
    if (classify->parsed()) return cmd_classify(cfg, out_dir, k_str, window_str, quiet, raw);
    if (tables->parsed()) {
      std::string name = !table_name.empty() ? table_name : table_k;
      if (name.empty()) throw config_error("tables needs a group name or --k");
      return cmd_tables(cfg, out_dir, name, quiet, raw);
    }
    if (sweep->parsed())
      return cmd_sweep_ni(cfg, out_dir, sweep_k, sweep_band, ni_list, quiet, raw);
    if (dw->parsed()) return cmd_dw_test(cfg, out_dir, dw_k, quiet, raw);
    return 2;
  } catch (const config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
