#pragma once

#include <string>
#include <string_view>

#include "hdcat/eqrel.hpp"
#include "hdcat/fincat.hpp"
#include "hdcat/hd.hpp"
#include "hdcat/multisimp.hpp"
#include "hdcat/nfold.hpp"
#include "hdcat/space.hpp"

/// JSON text formats. Every parser throws ParseError on malformed input;
/// semantic checks are left to the validators.
namespace hdcat::io {

/// {"objects": [...], "morphisms": [{"id","src","tgt"}], "compose": [{"g","f","gf"}]}
RawCategory parse_fincat(std::string_view text);
/// Identities are omitted, as they are implicit in the input format;
/// composites that are identities are written as "id:<object>".
std::string fincat_to_json(const FinCat& c);

/// {"n", "cells": {"k1,...,kn": [...]}, "faces"/"degens": [{"axis","i","at","map": {x: y}}]}
RawMSS parse_mss(std::string_view text);
/// Adds "segal": "verified" when `verified`.
std::string mss_to_json(const TruncMSSet& x, bool verified = false);

/// {"dom": mss, "cod": mss, "maps": {"k": {x: y}}}; both ends are
/// validated and promoted, and the map is checked.
NFoldMap parse_nfold_map(std::string_view text);
std::string nfold_map_to_json(const NFoldMap& f);

/// {"sets": [[...], ...], "maps": [[{"from","to"}], ...]}; checked.
SurjTower parse_tower(std::string_view text);
std::string tower_to_json(const SurjTower& t);

/// {"hd", "failure", "discretization", "gamma"}; gamma is a map document.
std::string hd_report_json(const HdResult& r, const DiscretizationData* d);

/// {"pi0": {"size", "bijection"}, "h1": {"free_rank", "torsion"}, "zero_type_necessary"}
std::string zero_type_report_json(const ZeroTypeReport& r);

/// Which document a text holds, judged by its keys.
enum class Document { FinCat, Mss, Map, Tower, Report, Unknown };
Document classify(std::string_view text);

/// Extracts the "gamma" map document from a report.
std::string extract_gamma(std::string_view report);

}  // namespace hdcat::io
