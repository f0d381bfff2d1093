#include "gapscan/io.hpp"

#include <openssl/evp.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "gapscan/errors.hpp"

namespace gapscan {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

template <typename T>
T parse_field(std::string_view field, std::size_t line) {
  field = trim(field);
  T value{};
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw ParseError("line " + std::to_string(line) + ": cannot parse '" + std::string(field) + "'");
  }
  return value;
}

template <typename F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw ParseError(e.what());
  }
}

std::vector<Complex> complex_list(const Json& j) {
  std::vector<Complex> out;
  for (const auto& e : j) out.push_back(complex_from_json(e));
  return out;
}

Json complex_list_to_json(const std::vector<Complex>& values) {
  Json out = Json::array();
  for (Complex z : values) out.push_back(complex_to_json(z));
  return out;
}

}  // namespace

Json json_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double number_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw ParseError("expected a number, got " + j.dump());
}

Json complex_to_json(Complex z) { return Json::array({json_number(z.real()), json_number(z.imag())}); }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw ParseError("expected [re, im], got " + j.dump());
  return {number_from_json(j[0]), number_from_json(j[1])};
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path.string());
  out << contents;
  if (!out) throw ParseError("failed writing " + path.string());
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < length; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

Json parse_json(const std::string& text) {
  if (trim(text).empty()) throw ParseError("empty input");
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(e.what());
  }
}

CoefficientSeries parse_coefficients_json(const std::string& text) {
  const Json j = parse_json(text);
  return guarded([&] {
    if (!j.is_object() || !j.contains("coefficients")) throw ParseError("missing 'coefficients'");
    const Json& list = j.at("coefficients");
    if (!list.is_array()) throw ParseError("'coefficients' must be an array");
    if (list.empty()) throw ParseError("empty coefficient list");
    std::vector<Complex> values;
    values.reserve(list.size());
    for (const auto& e : list) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        throw ParseError("coefficient entries must be [re, im] pairs, got " + e.dump());
      }
      values.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    std::string label = j.value("label", std::string{});
    return CoefficientSeries(std::move(values), std::move(label));
  });
}

CoefficientSeries parse_coefficients_csv(const std::string& text, std::string label) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  std::vector<Complex> values;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view row = trim(line);
    if (row.empty()) continue;
    if (!header) {
      std::string compact;
      for (char c : row)
        if (!std::isspace(static_cast<unsigned char>(c))) compact.push_back(c);
      if (compact != "index,re,im") throw ParseError("CSV header must be index,re,im");
      header = true;
      continue;
    }
    const auto c1 = row.find(',');
    const auto c2 = c1 == std::string_view::npos ? c1 : row.find(',', c1 + 1);
    if (c2 == std::string_view::npos || row.find(',', c2 + 1) != std::string_view::npos) {
      throw ParseError("line " + std::to_string(line_no) + ": expected three fields");
    }
    const auto index = parse_field<std::size_t>(row.substr(0, c1), line_no);
    if (index != values.size()) {
      throw ParseError("line " + std::to_string(line_no) + ": index " + std::to_string(index) + " breaks dense order");
    }
    values.emplace_back(parse_field<double>(row.substr(c1 + 1, c2 - c1 - 1), line_no),
                        parse_field<double>(row.substr(c2 + 1), line_no));
  }
  if (!header) throw ParseError("empty input");
  if (values.empty()) throw ParseError("empty coefficient list");
  for (Complex z : values)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw ParseError("non-finite coefficient");
  return CoefficientSeries(std::move(values), std::move(label));
}

CoefficientSeries read_coefficients(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  if (path.extension() == ".csv") return parse_coefficients_csv(text, path.stem().string());
  return parse_coefficients_json(text);
}

Json coefficients_to_json(const CoefficientSeries& series) {
  Json out;
  out["label"] = series.label();
  Json list = Json::array();
  for (Complex z : series.coefficients()) list.push_back(Json::array({z.real(), z.imag()}));
  out["coefficients"] = std::move(list);
  return out;
}

Json to_json(const BoundingFamily& family) {
  Json out;
  switch (family.kind) {
    case BoundingKind::power_law:
      out["kind"] = "power_law";
      out["scale"] = family.scale;
      out["exponent"] = family.exponent;
      break;
    case BoundingKind::explicit_list:
      out["kind"] = "explicit_list";
      out["values"] = family.values;
      break;
    case BoundingKind::zero:
      out["kind"] = "zero";
      break;
  }
  return out;
}

BoundingFamily bounding_family_from_json(const Json& j) {
  return guarded([&] {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "power_law") return BoundingFamily::power_law(j.value("scale", 1.0), j.value("exponent", 2.0));
    if (kind == "explicit_list") return BoundingFamily::explicit_list(j.at("values").get<std::vector<double>>());
    if (kind == "zero") return BoundingFamily::zero();
    throw ParseError("unknown bounding family kind '" + kind + "'");
  });
}

Json to_json(const GapCertificate& cert) {
  Json out;
  out["class"] = std::string(to_string(cert.series_class));
  out["m"] = cert.m_seq;
  if (!cert.n_seq.empty()) out["n"] = cert.n_seq;
  out["delta"] = cert.delta;
  if (cert.bounds) out["bounds"] = to_json(*cert.bounds);
  if (cert.series_class == SeriesClass::quasi_lacunary) out["p"] = cert.summability_exponent;
  return out;
}

GapCertificate certificate_from_json(const Json& j) {
  return guarded([&] {
    GapCertificate cert;
    const auto name = j.at("class").get<std::string>();
    const auto cls = parse_series_class(name);
    if (!cls) throw ParseError("unknown series class '" + name + "'");
    cert.series_class = *cls;
    cert.m_seq = j.at("m").get<std::vector<std::size_t>>();
    if (j.contains("n")) cert.n_seq = j.at("n").get<std::vector<std::size_t>>();
    cert.delta = j.value("delta", 0.0);
    if (j.contains("bounds")) cert.bounds = bounding_family_from_json(j.at("bounds"));
    cert.summability_exponent = j.value("p", 2.0);
    return cert;
  });
}

GapCertificate read_certificate(const std::filesystem::path& path) {
  return certificate_from_json(parse_json(read_file(path)));
}

Json to_json(const GeneratorSpec& spec) {
  Json out;
  out["kind"] = std::string(to_string(spec.kind));
  switch (spec.kind) {
    case GeneratorKind::rational:
      out["length"] = spec.length;
      out["denominator"] = complex_list_to_json(spec.denominator);
      if (!spec.numerator.empty()) out["numerator"] = complex_list_to_json(spec.numerator);
      break;
    case GeneratorKind::hadamard_gap:
      out["length"] = spec.length;
      out["base"] = spec.base;
      out["slack"] = spec.slack;
      break;
    case GeneratorKind::power_log:
      out["length"] = spec.length;
      out["power"] = spec.power;
      break;
    case GeneratorKind::ostrowski_composed:
      out["length"] = spec.length;
      out["growth"] = spec.growth;
      break;
    case GeneratorKind::perturbed:
      if (spec.base_spec) out["base_spec"] = to_json(*spec.base_spec);
      out["family"] = to_json(spec.family);
      out["amplitude"] = spec.amplitude;
      out["seed"] = spec.seed;
      break;
  }
  return out;
}

GeneratorSpec generator_spec_from_json(const Json& j) {
  if (j.is_object() && j.contains("spec")) return generator_spec_from_json(j.at("spec"));
  return guarded([&] {
    GeneratorSpec spec;
    const auto name = j.at("kind").get<std::string>();
    const auto kind = parse_generator_kind(name);
    if (!kind) throw ParseError("unknown generator kind '" + name + "'");
    spec.kind = *kind;
    spec.length = j.value("length", spec.length);
    if (j.contains("denominator")) spec.denominator = complex_list(j.at("denominator"));
    if (j.contains("numerator")) spec.numerator = complex_list(j.at("numerator"));
    spec.base = j.value("base", spec.base);
    spec.slack = j.value("slack", spec.slack);
    spec.power = j.value("power", spec.power);
    spec.growth = j.value("growth", spec.growth);
    if (j.contains("base_spec")) {
      spec.base_spec = std::make_shared<const GeneratorSpec>(generator_spec_from_json(j.at("base_spec")));
    }
    if (j.contains("family")) spec.family = bounding_family_from_json(j.at("family"));
    spec.amplitude = j.value("amplitude", spec.amplitude);
    spec.seed = j.value("seed", spec.seed);
    return spec;
  });
}

Json to_json(const GeneratorSpec& spec, const GroundTruth& truth) {
  Json out;
  out["spec"] = to_json(spec);
  out["radius"] = json_number(truth.radius);
  if (!truth.poles.empty()) {
    Json poles = Json::array();
    for (const Pole& p : truth.poles) {
      poles.push_back({{"location", complex_to_json(p.location)}, {"multiplicity", p.multiplicity}});
    }
    out["poles"] = std::move(poles);
  }
  if (truth.certificate) out["certificate"] = to_json(*truth.certificate);
  if (truth.closed_form) out["closed_form"] = std::string(to_string(*truth.closed_form));
  if (truth.composition) {
    out["composition"] = {{"boundary_point", complex_to_json(truth.composition->boundary_point)},
                          {"degree", truth.composition->degree}};
  }
  return out;
}

}  // namespace gapscan
