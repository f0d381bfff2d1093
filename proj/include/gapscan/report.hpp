#pragma once

#include <string>

#include "gapscan/boundary_probe.hpp"
#include "gapscan/composition.hpp"
#include "gapscan/gap_analysis.hpp"
#include "gapscan/io.hpp"
#include "gapscan/pole_bound.hpp"
#include "gapscan/series.hpp"

namespace gapscan {

inline constexpr const char* kSchemaVersion = "1";

/// Report skeleton: schema_version, input {path, sha256, length, label},
/// empty sections and caveats. The timestamp is added by finalize_report.
Json make_report(const std::string& path, const std::string& file_bytes, const CoefficientSeries& series);
/// Appends generated_at (UTC, ISO 8601) and returns the pretty-printed text.
std::string finalize_report(Json report);

Json to_json(const RadiusEstimate& estimate);
Json section_json(const PoleBoundReport& report, const Json& config);
Json to_json(const PoleBoundConfig& cfg);
Json to_json(const CertificateVerdict& verdict, const VerifyOptions& options);
Json to_json(const ProbeThresholds& thresholds);
Json section_json(const ProbeReport& report, const Json& config);
Json section_json(const BoundaryScanReport& report, const Json& config);
Json section_json(const SectorDiagnostic& diagnostic, const Json& config);
Json to_json(const CompositionResult& result);

}  // namespace gapscan
