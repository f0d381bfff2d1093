#include <gtest/gtest.h>

#include <filesystem>
#include <limits>

#include "gapscan/errors.hpp"
#include "gapscan/io.hpp"
#include "gapscan/report.hpp"

using namespace gapscan;

TEST(CoefficientJson, RoundTrip) {
  const CoefficientSeries s({{1.0, 0.0}, {0.5, -2.0}, {0.0, 0.0}}, "sample");
  const auto back = parse_coefficients_json(coefficients_to_json(s).dump());
  ASSERT_EQ(back.size(), 3u);
  EXPECT_EQ(back.label(), "sample");
  for (std::size_t n = 0; n < 3; ++n) EXPECT_EQ(back[n], s[n]);
}

TEST(CoefficientJson, Malformed) {
  EXPECT_THROW(parse_coefficients_json(""), ParseError);
  EXPECT_THROW(parse_coefficients_json("   \n"), ParseError);
  EXPECT_THROW(parse_coefficients_json("{"), ParseError);
  EXPECT_THROW(parse_coefficients_json(R"({"label": "x"})"), ParseError);
  EXPECT_THROW(parse_coefficients_json(R"({"coefficients": []})"), ParseError);
  EXPECT_THROW(parse_coefficients_json(R"({"coefficients": [[1, 2, 3]]})"), ParseError);
  EXPECT_THROW(parse_coefficients_json(R"({"coefficients": [["1", 0]]})"), ParseError);
  EXPECT_THROW(parse_coefficients_json(R"({"coefficients": [[1, 0]], "label": 5})"), ParseError);
}

TEST(CoefficientCsv, DenseRows) {
  const auto s = parse_coefficients_csv("index,re,im\n0,1,0\n1, 2.5 ,-1\r\n2,0,0\n", "csv");
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s[1], Complex(2.5, -1.0));
  EXPECT_EQ(s.label(), "csv");
}

TEST(CoefficientCsv, Malformed) {
  EXPECT_THROW(parse_coefficients_csv(""), ParseError);
  EXPECT_THROW(parse_coefficients_csv("index,re,im\n"), ParseError);
  EXPECT_THROW(parse_coefficients_csv("i,r\n0,1\n"), ParseError);
  EXPECT_THROW(parse_coefficients_csv("index,re,im\n0,1,0\n2,1,0\n"), ParseError);
  EXPECT_THROW(parse_coefficients_csv("index,re,im\n0,1,0\n0,1,0\n"), ParseError);
  EXPECT_THROW(parse_coefficients_csv("index,re,im\n0,abc,0\n"), ParseError);
  EXPECT_THROW(parse_coefficients_csv("index,re,im\n0,1\n"), ParseError);
}

TEST(Numbers, NonFiniteAsStrings) {
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_EQ(json_number(inf), "inf");
  EXPECT_EQ(json_number(-inf), "-inf");
  EXPECT_EQ(number_from_json(json_number(inf)), inf);
  EXPECT_EQ(number_from_json(Json(2.5)), 2.5);
  EXPECT_THROW(number_from_json(Json("big")), ParseError);
  EXPECT_EQ(complex_from_json(Json::array({1.0, -1.0})), Complex(1.0, -1.0));
  EXPECT_THROW(complex_from_json(Json::array({1.0})), ParseError);
}

TEST(CertificateJson, RoundTrip) {
  GapCertificate cert;
  cert.series_class = SeriesClass::quasi_ostrowski;
  cert.m_seq = {2, 8};
  cert.n_seq = {4, 16};
  cert.delta = 0.9;
  cert.bounds = BoundingFamily::power_law(0.5, 2.0);
  const auto back = certificate_from_json(to_json(cert));
  EXPECT_EQ(back.series_class, cert.series_class);
  EXPECT_EQ(back.m_seq, cert.m_seq);
  EXPECT_EQ(back.n_seq, cert.n_seq);
  EXPECT_EQ(back.delta, 0.9);
  ASSERT_TRUE(back.bounds.has_value());
  EXPECT_EQ(back.bounds->scale, 0.5);

  cert.bounds = BoundingFamily::explicit_list({1.0, 0.5});
  EXPECT_EQ(certificate_from_json(to_json(cert)).bounds->values, (std::vector<double>{1.0, 0.5}));
  cert.bounds = BoundingFamily::zero();
  EXPECT_TRUE(certificate_from_json(to_json(cert)).bounds->is_zero());

  EXPECT_THROW(certificate_from_json(Json::parse(R"({"class": "weird", "m": [1]})")), ParseError);
  EXPECT_THROW(certificate_from_json(Json::parse(R"({"class": "hadamard"})")), ParseError);
  EXPECT_THROW(certificate_from_json(Json::parse(R"({"class": "hadamard", "m": [1],
    "bounds": {"kind": "cubic"}})")),
               ParseError);
}

TEST(GeneratorSpecJson, RoundTripNested) {
  GeneratorSpec base;
  base.kind = GeneratorKind::rational;
  base.length = 50;
  base.denominator = {1.0, {0.0, -1.0}};
  GeneratorSpec spec;
  spec.kind = GeneratorKind::perturbed;
  spec.base_spec = std::make_shared<const GeneratorSpec>(base);
  spec.family = BoundingFamily::power_law(1.0, 3.0);
  spec.amplitude = 0.25;
  spec.seed = 77;
  const auto back = generator_spec_from_json(to_json(spec));
  EXPECT_EQ(back.kind, GeneratorKind::perturbed);
  EXPECT_EQ(back.seed, 77u);
  EXPECT_EQ(back.amplitude, 0.25);
  EXPECT_EQ(back.family.exponent, 3.0);
  ASSERT_TRUE(back.base_spec);
  EXPECT_EQ(back.base_spec->denominator[1], Complex(0.0, -1.0));
  EXPECT_EQ(to_json(back).dump(), to_json(spec).dump());

  GroundTruth truth;
  const auto via_truth = generator_spec_from_json(to_json(spec, truth));
  EXPECT_EQ(via_truth.kind, GeneratorKind::perturbed);
}

TEST(Digest, KnownVector) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Report, SkeletonAndTimestamp) {
  const CoefficientSeries s({1.0, 2.0}, "x");
  Json report = make_report("in.json", "abc", s);
  EXPECT_EQ(report["schema_version"], "1");
  EXPECT_EQ(report["input"]["length"], 2);
  EXPECT_EQ(report["input"]["sha256"], sha256_hex("abc"));
  const auto text = finalize_report(report);
  const auto parsed = Json::parse(text);
  EXPECT_TRUE(parsed.contains("generated_at"));
  EXPECT_EQ(parsed["generated_at"].get<std::string>().size(), 20u);
}

TEST(Files, MissingFileIsParseError) {
  EXPECT_THROW(read_file("/nonexistent/path/coeffs.json"), ParseError);
  EXPECT_THROW(read_coefficients("/nonexistent/path/coeffs.csv"), ParseError);
}
