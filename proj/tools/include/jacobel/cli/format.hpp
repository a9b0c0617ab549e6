#pragma once

// JSON and text renderings of library results. Every array and object is
// emitted in a fixed order so certificates are reproducible byte for byte.

#include <string>

#include <nlohmann/json.hpp>

#include "jacobel/abel.hpp"
#include "jacobel/curve.hpp"
#include "jacobel/stability.hpp"
#include "jacobel/twister.hpp"

namespace jacobel::cli {

using Json = nlohmann::ordered_json;

/// "p/q", or "p" for integers.
std::string format_rational(const Rational& value);
/// "(d_1, ..., d_p)".
std::string format_multidegree(const SheafClass& d);

Json to_json(const NodalCurve& curve, const SheafClass& d);
Json to_json(const NodalCurve& curve, const Subcurve& y);
Json to_json(const NodalCurve& curve, const StabilityReport& report);
Json to_json(const NodalCurve& curve, const QuasistableTwist& twist);
Json to_json(const NodalCurve& curve, const TwisterDifferenceResult& result);
Json to_json(const NodalCurve& curve, const PushforwardDescriptor& descriptor);
Json to_json(const NodalCurve& curve, const FiberRecord& record);

}  // namespace jacobel::cli
