#include "ptbands/report.hpp"

#include <cstdio>
#include <sstream>
#include <iomanip>

#include "json.hpp"

namespace ptb {

using nlohmann::json;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

namespace {

json mat_json(const CMat& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c)
      row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(row);
  }
  return rows;
}

std::string mat_text(const CMat& m) {
  auto num = [](Cplx z) {
    std::ostringstream os;
    if (std::abs(z.imag()) < 1e-12) {
      double re = z.real();
      if (std::abs(re - std::round(re)) < 1e-12) os << static_cast<long long>(std::llround(re));
      else os << re;
    } else {
      os << z.real() << (z.imag() >= 0 ? "+" : "") << z.imag() << "i";
    }
    return os.str();
  };
  if (m.rows() == 1 && m.cols() == 1) return num(m(0, 0));
  std::ostringstream os;
  os << "[";
  for (int r = 0; r < m.rows(); ++r) {
    if (r) os << "; ";
    for (int c = 0; c < m.cols(); ++c) {
      if (c) os << " ";
      os << num(m(r, c));
    }
  }
  os << "]";
  return os.str();
}

json element_json(const LittleGroup& g, int i) {
  SymmetryElement s = g.representative(i);
  Mat2i r = point_matrix(s.op);
  json e;
  e["label"] = g.labels[i];
  e["point_matrix"] = {{r[0], r[1]}, {r[2], r[3]}};
  e["translation_halves"] = {s.tx2, s.ty2};  // tau = (tx2/2, ty2/2) Lambda
  e["antiunitary"] = s.antiunitary;
  e["bar"] = g.elems[i].bar;
  return e;
}

const char* kind_name(PointKind k) {
  switch (k) {
    case PointKind::Gamma: return "gamma";
    case PointKind::X: return "x";
    case PointKind::M: return "m";
    default: return "generic";
  }
}

}  // namespace

std::string group_json(const LittleGroup& g) {
  json j;
  j["k_pi_units"] = {{"num", g.k.x.num}, {"den", g.k.x.den},
                     {"num_y", g.k.y.num}, {"den_y", g.k.y.den}};
  j["kind"] = kind_name(g.kind);
  j["order"] = g.order();
  j["unitary_order"] = g.unitary_order;
  j["elements"] = json::array();
  for (int i = 0; i < g.order(); ++i) j["elements"].push_back(element_json(g, i));
  j["multiplication_table"] = g.mult;
  return j.dump(2);
}

std::string character_table_json(const LittleGroup& g, const CharacterTable& t) {
  json j;
  j["group"] = t.group_name;
  j["classes"] = t.class_names;
  j["class_members"] = json::array();
  for (const auto& cl : t.classes) {
    json names = json::array();
    for (int e : cl) names.push_back(g.labels[e]);
    j["class_members"].push_back(names);
  }
  j["rows"] = json::array();
  for (size_t r = 0; r < t.rows.size(); ++r) {
    json row;
    row["irrep"] = t.rows[r].name;
    row["dim"] = t.rows[r].dim;
    row["chi"] = t.rows[r].chi;
    row["physical"] = t.rows[r].physical;
    CorepType ct = dimmock_wheeler(g, t, static_cast<int>(r));
    row["dw_sum"] = ct.dw_sum;
    row["corep_type"] = std::string(1, ct.tag);
    j["rows"].push_back(row);
  }
  return j.dump(2);
}

std::string character_table_text(const LittleGroup& g, const CharacterTable& t) {
  std::ostringstream os;
  os << "Character table of " << t.group_name << " (unitary subgroup at "
     << kind_name(g.kind) << ")\n";
  os << std::left << std::setw(8) << "";
  for (const auto& c : t.class_names) os << std::setw(8) << c;
  os << std::setw(8) << "alpha" << "type\n";
  for (size_t r = 0; r < t.rows.size(); ++r) {
    os << std::setw(8) << t.rows[r].name;
    for (int chi : t.rows[r].chi) os << std::setw(8) << chi;
    CorepType ct = dimmock_wheeler(g, t, static_cast<int>(r));
    os << std::setw(8) << ct.dw_sum << "(" << ct.tag << ")";
    if (!t.rows[r].physical) os << "  [not physical]";
    os << "\n";
  }
  return os.str();
}

std::string corep_table_json(const CorepCatalog& cat) {
  json j;
  j["k"] = kind_name(cat.group.kind);
  j["rows"] = json::array();
  for (const auto& c : cat.rows) {
    json row;
    row["label"] = c.label();
    row["type"] = std::string(1, c.type_tag);
    row["dim"] = c.dim;
    row["source_irrep"] = c.source_irrep;
    if (!c.source_irrep2.empty()) row["conjugate_irrep"] = c.source_irrep2;
    row["dw_sum"] = c.dw_sum;
    json mats;
    for (int e = 0; e < cat.group.order(); ++e)
      mats[cat.group.labels[e]] = mat_json(c.mats[e]);
    row["matrices"] = mats;
    j["rows"].push_back(row);
  }
  json eq = json::array();
  for (const auto& [a, b] : cat.equivalent_pairs) eq.push_back({a, b});
  j["equivalent_pairs"] = eq;
  return j.dump(2);
}

std::string corep_table_text(const CorepCatalog& cat) {
  std::ostringstream os;
  const LittleGroup& g = cat.group;
  os << "Corepresentations at " << kind_name(g.kind) << "\n";
  auto emit = [&](bool anti) {
    os << (anti ? "antiunitary elements\n" : "unitary elements\n");
    int from = anti ? g.unitary_order : 0;
    int to = anti ? g.order() : g.unitary_order;
    os << std::left << std::setw(10) << "";
    for (int e = from; e < to; ++e) os << std::setw(14) << g.labels[e];
    os << "\n";
    for (const auto& c : cat.rows) {
      os << std::setw(10) << (c.label() + " (" + c.type_tag + ")");
      for (int e = from; e < to; ++e) os << std::setw(14) << mat_text(c.mats[e]);
      os << "\n";
    }
  };
  emit(false);
  emit(true);
  if (!cat.equivalent_pairs.empty()) {
    os << "equivalent pairs:";
    for (const auto& [a, b] : cat.equivalent_pairs) os << " " << a << "~" << b;
    os << "\n";
  }
  return os.str();
}

std::string dw_report_json(const LittleGroup& g) {
  json j;
  j["k"] = kind_name(g.kind);
  j["unitary_order"] = g.unitary_order;
  json sq = json::array();
  for (const std::string& s : squared_antiunitary_set(g)) sq.push_back(s);
  j["squared_antiunitary_set"] = sq;
  if (g.kind != PointKind::Generic) {
    CharacterTable t = character_table(g);
    j["rows"] = json::array();
    for (size_t r = 0; r < t.rows.size(); ++r) {
      CorepType ct = dimmock_wheeler(g, t, static_cast<int>(r));
      j["rows"].push_back({{"irrep", t.rows[r].name},
                           {"dw_sum", ct.dw_sum},
                           {"type", std::string(1, ct.tag)},
                           {"physical", t.rows[r].physical}});
    }
  }
  return j.dump(2);
}

std::string dw_report_text(const LittleGroup& g) {
  std::ostringstream os;
  os << "Dimmock-Wheeler test at " << kind_name(g.kind) << " (n = " << g.unitary_order
     << ")\n";
  os << "W^2 = (";
  auto sq = squared_antiunitary_set(g);
  for (size_t i = 0; i < sq.size(); ++i) os << (i ? ", " : "") << sq[i];
  os << ")\n";
  if (g.kind != PointKind::Generic) {
    CharacterTable t = character_table(g);
    for (size_t r = 0; r < t.rows.size(); ++r) {
      CorepType ct = dimmock_wheeler(g, t, static_cast<int>(r));
      os << std::left << std::setw(8) << t.rows[r].name << " sum = " << std::setw(5)
         << ct.dw_sum << " type (" << ct.tag << ")"
         << (t.rows[r].physical ? "" : "  [not physical]") << "\n";
    }
  }
  return os.str();
}

std::string bands_csv(const BandStructure& bs,
                      const std::vector<std::vector<std::string>>& labels) {
  std::ostringstream os;
  os << "segment,k_index,kx,ky,band,re_omega,im_omega,pair_id,corep_label\n";
  for (size_t s = 0; s < bs.samples.size(); ++s) {
    const auto& sm = bs.samples[s];
    for (size_t b = 0; b < bs.modes[s].size(); ++b) {
      const BlochMode& m = bs.modes[s][b];
      int partner = bs.pair_partner[s][b];
      int pair_id = partner >= 0 ? std::min<int>(static_cast<int>(b), partner) : partner;
      std::string label;
      if (s < labels.size() && b < labels[s].size()) label = labels[s][b];
      os << sm.segment << "," << sm.index << "," << fmt17(sm.kx_pi) << ","
         << fmt17(sm.ky_pi) << "," << b << "," << fmt17(m.omega.real()) << ","
         << fmt17(m.omega.imag()) << "," << pair_id << "," << label << "\n";
    }
  }
  return os.str();
}

std::string bands_json(const BandStructure& bs, bool with_vectors) {
  json j;
  j["samples"] = json::array();
  for (size_t s = 0; s < bs.samples.size(); ++s) {
    const auto& sm = bs.samples[s];
    json sample_j;
    sample_j["segment"] = sm.segment;
    sample_j["k_index"] = sm.index;
    sample_j["kx_pi"] = fmt17(sm.kx_pi);
    sample_j["ky_pi"] = fmt17(sm.ky_pi);
    sample_j["abscissa"] = fmt17(sm.abscissa);
    json bands = json::array();
    for (size_t b = 0; b < bs.modes[s].size(); ++b) {
      const BlochMode& m = bs.modes[s][b];
      json mb;
      mb["band"] = b;
      mb["re_omega"] = fmt17(m.omega.real());
      mb["im_omega"] = fmt17(m.omega.imag());
      mb["pair_partner"] = bs.pair_partner[s][b];
      if (with_vectors) {
        json v = json::array();
        for (int i = 0; i < m.coeffs.size(); ++i)
          v.push_back({fmt17(m.coeffs[i].real()), fmt17(m.coeffs[i].imag())});
        mb["coefficients"] = v;
      }
      bands.push_back(mb);
    }
    sample_j["modes"] = bands;
    j["samples"].push_back(sample_j);
  }
  return j.dump();
}

std::string classification_json(const ClassificationReport& rep) {
  json arr = json::array();
  for (size_t i = 0; i < rep.modes.size(); ++i) {
    json e;
    e["k"] = {fmt17(rep.kx_pi), fmt17(rep.ky_pi)};
    e["omega_re"] = fmt17(rep.modes[i].omega.real());
    e["omega_im"] = fmt17(rep.modes[i].omega.imag());
    e["cluster_id"] = rep.cluster_of[i];
    e["pair_id"] = rep.pair_partner[i] >= 0
                       ? std::min<int>(static_cast<int>(i), rep.pair_partner[i])
                       : -1;
    const ClusterLabel& cl = rep.clusters[rep.cluster_of[i]];
    e["label"] = cl.label;
    if (!cl.equivalent_to.empty()) e["equivalent_to"] = cl.equivalent_to;
    e["confidence"] = fmt17(cl.confidence);
    arr.push_back(e);
  }
  json j;
  j["point"] = kind_name(rep.kind);
  j["window"] = {fmt17(rep.window_lo), fmt17(rep.window_hi)};
  j["modes"] = arr;
  return j.dump(2);
}

std::string classification_text(const ClassificationReport& rep) {
  std::ostringstream os;
  os << "classification at " << kind_name(rep.kind) << ", window [" << rep.window_lo
     << ", " << rep.window_hi << "]\n";
  os << std::left << std::setw(6) << "mode" << std::setw(24) << "re_omega"
     << std::setw(24) << "im_omega" << std::setw(9) << "cluster" << std::setw(8)
     << "pair" << std::setw(12) << "label" << "confidence\n";
  for (size_t i = 0; i < rep.modes.size(); ++i) {
    const ClusterLabel& cl = rep.clusters[rep.cluster_of[i]];
    os << std::setw(6) << i << std::setw(24) << fmt17(rep.modes[i].omega.real())
       << std::setw(24) << fmt17(rep.modes[i].omega.imag()) << std::setw(9)
       << rep.cluster_of[i] << std::setw(8) << rep.pair_partner[i] << std::setw(12)
       << cl.label << cl.confidence << "\n";
  }
  int pairs = 0, clusters2d = 0;
  for (const auto& cl : rep.clusters) {
    if (cl.is_pair) ++pairs;
    else if (cl.dim == 2) ++clusters2d;
  }
  os << "summary: " << pairs << " PT pair(s), " << clusters2d
     << " 2D real cluster(s), " << rep.clusters.size() << " cluster(s) total\n";
  return os.str();
}

}  // namespace ptb
