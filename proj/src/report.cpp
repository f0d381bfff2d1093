#include "gapscan/report.hpp"

#include <ctime>

namespace gapscan {

Json make_report(const std::string& path, const std::string& file_bytes, const CoefficientSeries& series) {
  Json report;
  report["schema_version"] = kSchemaVersion;
  report["input"] = {{"path", path},
                     {"sha256", sha256_hex(file_bytes)},
                     {"length", series.size()},
                     {"label", series.label()}};
  report["sections"] = Json::object();
  report["caveats"] = Json::array();
  return report;
}

std::string finalize_report(Json report) {
  const std::time_t now = std::time(nullptr);
  std::tm utc{};
  gmtime_r(&now, &utc);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &utc);
  report["generated_at"] = stamp;
  return report.dump(2) + "\n";
}

Json to_json(const RadiusEstimate& estimate) {
  return {{"value", json_number(estimate.value)},
          {"method", std::string(to_string(estimate.method))},
          {"window", estimate.window},
          {"tail_fraction", estimate.tail_fraction}};
}

Json to_json(const PoleBoundConfig& cfg) {
  return {{"rho", json_number(cfg.rho)},
          {"rho1", json_number(cfg.rho1)},
          {"epsilon", cfg.epsilon},
          {"tail_fraction", cfg.tail_fraction}};
}

Json section_json(const PoleBoundReport& report, const Json& config) {
  Json out;
  out["config"] = config;
  out["mode"] = std::string(to_string(report.mode));
  out["status"] = std::string(to_string(report.status));
  out["bound"] = report.bound ? Json(*report.bound) : Json(nullptr);
  out["argmax"] = report.argmax ? Json(*report.argmax) : Json(nullptr);
  out["tail_fraction"] = report.tail_fraction;
  out["v_final"] = report.v_counts.empty() ? 0 : report.v_counts.back();
  return out;
}

Json to_json(const CertificateVerdict& verdict, const VerifyOptions& options) {
  Json out;
  out["config"] = {{"divergence_floor", options.divergence_floor}, {"term_floor", options.term_floor}};
  out["accepted"] = verdict.accepted;
  Json failed = Json::array();
  for (const auto& f : verdict.failed_conditions) {
    failed.push_back({{"condition", f.condition},
                      {"index", f.index},
                      {"measured", json_number(f.measured)},
                      {"required", json_number(f.required)}});
  }
  out["failed_conditions"] = std::move(failed);
  out["prefix_caveat"] = verdict.prefix_caveat;
  if (verdict.anchor_sup) out["anchor_sup"] = json_number(*verdict.anchor_sup);
  out["notes"] = verdict.notes;
  return out;
}

Json to_json(const ProbeThresholds& thresholds) {
  return {{"convergence", thresholds.convergence},
          {"growth_log", thresholds.growth_log},
          {"conditioning", thresholds.conditioning}};
}

Json section_json(const ProbeReport& report, const Json& config) {
  Json out;
  out["config"] = config;
  out["thresholds"] = to_json(report.thresholds);
  out["verdict"] = std::string(to_string(report.verdict));
  out["point_count"] = report.points.size();
  Json sections = Json::array();
  for (std::size_t s = 0; s < report.section_indices.size(); ++s) {
    double max_log = kZeroLogMagnitude;
    std::size_t resolved = 0;
    for (const auto& v : report.values[s]) {
      if (!v.resolved) continue;
      ++resolved;
      max_log = std::max(max_log, v.log_magnitude());
    }
    sections.push_back({{"m", report.section_indices[s]},
                        {"max_log_magnitude", json_number(max_log)},
                        {"resolved_points", resolved}});
  }
  out["sections"] = std::move(sections);
  Json cauchy = Json::array();
  for (std::size_t v = 0; v < report.cauchy_table.size(); ++v) {
    cauchy.push_back({{"m", report.section_indices[v + 1]},
                      {"difference", json_number(report.cauchy_table[v])},
                      {"resolved", static_cast<bool>(report.cauchy_resolved[v])}});
  }
  out["cauchy_table"] = std::move(cauchy);
  // Last resolved value at each sample point.
  Json finals = Json::array();
  for (std::size_t i = 0; i < report.points.size(); ++i) {
    Json entry = {{"z", complex_to_json(report.points[i])}};
    for (std::size_t s = report.values.size(); s-- > 0;) {
      const auto& v = report.values[s][i];
      if (!v.resolved) continue;
      entry["m"] = report.section_indices[s];
      entry["value"] = complex_to_json(v.value());
      entry["log_magnitude"] = json_number(v.log_magnitude());
      break;
    }
    finals.push_back(std::move(entry));
  }
  out["final_resolved_values"] = std::move(finals);
  out["max_section_magnitude"] = json_number(report.max_section_magnitude);
  out["notes"] = report.notes;
  return out;
}

Json section_json(const BoundaryScanReport& report, const Json& config) {
  Json out = section_json(report.probe, config);
  out["radius_factor"] = report.radius_factor;
  out["angle_samples"] = report.angle_samples;
  std::size_t growing = 0;
  for (bool g : report.growth_at_angle) growing += g ? 1 : 0;
  out["angles_with_growth"] = growing;
  Json gaps;
  gaps["anchors"] = report.gap_sums.anchors;
  Json measured = Json::array();
  Json bounds = Json::array();
  for (double x : report.gap_sums.measured) measured.push_back(json_number(x));
  for (double x : report.gap_sums.family_bounds) bounds.push_back(json_number(x));
  gaps["measured"] = std::move(measured);
  gaps["family_bounds"] = std::move(bounds);
  gaps["measured_within_bounds"] = report.gap_sums.measured_within_bounds;
  gaps["bounds_nonincreasing"] = report.gap_sums.bounds_nonincreasing;
  out["gap_sums"] = std::move(gaps);
  return out;
}

Json section_json(const SectorDiagnostic& diagnostic, const Json& config) {
  Json out;
  out["config"] = config;
  out["z1"] = complex_to_json(diagnostic.z1);
  out["z2"] = complex_to_json(diagnostic.z2);
  out["w1"] = complex_to_json(diagnostic.w1);
  out["w2"] = complex_to_json(diagnostic.w2);
  out["s"] = diagnostic.s;
  out["a"] = diagnostic.a;
  Json rows = Json::array();
  for (const auto& r : diagnostic.rows) {
    rows.push_back({{"n", r.n},
                    {"arc_error", json_number(r.arc_error)},
                    {"g_norm", json_number(r.g_norm)},
                    {"scaled_g_norm", json_number(r.scaled_g_norm)},
                    {"holds", r.holds}});
  }
  out["rows"] = std::move(rows);
  out["all_hold"] = diagnostic.all_hold;
  return out;
}

Json to_json(const CompositionResult& result) {
  Json out;
  out["section_index"] = result.section_index;
  out["section"] = result.section;
  out["r_max"] = result.r_max;
  out["low_range_max_error"] = json_number(result.low_range_max_error);
  out["low_range_equal"] = result.low_range_equal;
  out["bounds_hold"] = result.bounds_hold;
  out["passed"] = result.passed;
  out["first_violation"] = result.first_violation ? Json(*result.first_violation) : Json(nullptr);
  out["aggregate_bound"] = json_number(result.aggregate_bound);
  return out;
}

}  // namespace gapscan
