#pragma once

#include <filesystem>
#include <string>

#include "gapscan/gap_analysis.hpp"
#include "gapscan/generators.hpp"
#include "gapscan/series.hpp"
#include "json.hpp"

namespace gapscan {

using Json = nlohmann::ordered_json;

/// Non-finite doubles become the strings "inf", "-inf" and "nan".
Json json_number(double x);
/// Accepts numbers and the strings written by json_number.
double number_from_json(const Json& j);
Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);

/// Whole file as bytes; ParseError when it cannot be opened.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& contents);
/// Lowercase hex SHA-256 of `bytes`.
std::string sha256_hex(const std::string& bytes);

/// JSON {label, coefficients: [[re, im], ...]}.
CoefficientSeries parse_coefficients_json(const std::string& text);
/// CSV with header index,re,im and dense indices from 0.
CoefficientSeries parse_coefficients_csv(const std::string& text, std::string label = {});
/// By extension: .csv is CSV, anything else JSON. Throws ParseError.
CoefficientSeries read_coefficients(const std::filesystem::path& path);
Json coefficients_to_json(const CoefficientSeries& series);

Json to_json(const BoundingFamily& family);
BoundingFamily bounding_family_from_json(const Json& j);
Json to_json(const GapCertificate& cert);
GapCertificate certificate_from_json(const Json& j);
GapCertificate read_certificate(const std::filesystem::path& path);

Json to_json(const GeneratorSpec& spec);
/// Also accepts a ground-truth document and uses its "spec" member.
GeneratorSpec generator_spec_from_json(const Json& j);
Json to_json(const GeneratorSpec& spec, const GroundTruth& truth);

/// Parses text as JSON, mapping failures to ParseError.
Json parse_json(const std::string& text);

}  // namespace gapscan
