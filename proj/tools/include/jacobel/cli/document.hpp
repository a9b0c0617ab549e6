#pragma once

// The on-disk curve document: a JSON object describing a curve, a
// polarization, a line bundle, a marked point and run options.

#include <cstddef>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "jacobel/abel.hpp"
#include "jacobel/curve.hpp"
#include "jacobel/stability.hpp"
#include "jacobel/twister.hpp"

namespace jacobel::cli {

struct DocumentOptions {
  TwisterSearchOptions twister;
  std::size_t enumerate_cap = 5'000'000;
  std::size_t choice_cap = 4096;
  bool connected_only = false;
  std::size_t table_max_components = 12;
};

struct CurveDocument {
  std::string name;
  CurveDescription description;
  NodalCurve curve;
  Polarization polarization;
  SheafClass line_bundle;
  ComponentIndex marked_point;
  DesingularizationChoice choice;
  DocumentOptions options;
};

/// Throws Error (kMalformedDocument or a curve validation code) on bad input.
CurveDocument parse_document(std::string_view text);
CurveDocument load_document(const std::string& path);

/// Parses a per-component multidegree: either a JSON object keyed by
/// component name covering every component once, or an array in component order.
SheafClass parse_multidegree(const NodalCurve& curve, const nlohmann::json& value, std::string_view what);

/// The document's inputs in a canonical, deterministic form.
nlohmann::ordered_json echo(const CurveDocument& document);

}  // namespace jacobel::cli
