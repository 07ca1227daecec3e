#pragma once

// Versioned JSON envelope and serializers for the library reports. Lists are sorted
// and floating-point values are rounded to 12 significant digits so identical inputs
// give byte-identical documents.

#include <string>

#include <json.hpp>

#include "kgraph/fock.hpp"
#include "kgraph/gelfand.hpp"
#include "kgraph/structure.hpp"
#include "kgraph/validate.hpp"

namespace kgraph {

using Json = nlohmann::json;

inline constexpr const char* kReportSchema = "kgraph-report";
inline constexpr int kReportVersion = 1;

Json envelope(const std::string& kind, bool ok, Json report);

Json to_json(const KGraph& g, const ValidationReport& r);
Json to_json(const KGraph& g, const StructureReport& r);
Json to_json(const KGraph& g, const RadicalReport& r);
Json to_json(const ResidualReport& r);
Json to_json(const OrthogonalIsometries& r);
Json to_json(const CycleBlockReport& r);
Json to_json(const NormCheck& r);
Json to_json(const EigenCheck& r);
Json to_json(const MultiplicativityReport& r);
Json to_json(const BallPoint& alpha);

/// Rounds every float to 12 significant digits, in place.
void round_floats(Json& j);

/// round_floats + dump with two-space indentation and a trailing newline.
std::string render(Json j);

}  // namespace kgraph
