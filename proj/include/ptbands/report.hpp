#pragma once

#include "ptbands/classify.hpp"

#include <string>

// Deterministic text/CSV/JSON rendering of groups, tables, bands and
// classification reports.  All floating-point output goes through fmt17
// (17 significant digits, lowercase e-notation) so identical runs produce
// byte-identical files.

namespace ptb {

std::string fmt17(double v);

// --- group-theory dumps ---------------------------------------------------
std::string group_json(const LittleGroup& g);
std::string character_table_json(const LittleGroup& g, const CharacterTable& t);
std::string character_table_text(const LittleGroup& g, const CharacterTable& t);
std::string corep_table_json(const CorepCatalog& cat);
std::string corep_table_text(const CorepCatalog& cat);
std::string dw_report_json(const LittleGroup& g);
std::string dw_report_text(const LittleGroup& g);

// --- band structures --------------------------------------------------------
// columns: segment,k_index,kx,ky,band,re_omega,im_omega,pair_id,corep_label
std::string bands_csv(const BandStructure& bs,
                      const std::vector<std::vector<std::string>>& labels = {});
std::string bands_json(const BandStructure& bs, bool with_vectors);

// --- classification ----------------------------------------------------------
std::string classification_json(const ClassificationReport& rep);
std::string classification_text(const ClassificationReport& rep);

}  // namespace ptb
