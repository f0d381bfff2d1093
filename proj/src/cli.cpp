#include "gapscan/cli.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <limits>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "CLI11.hpp"
#include "gapscan/boundary_probe.hpp"
#include "gapscan/errors.hpp"
#include "gapscan/gap_analysis.hpp"
#include "gapscan/generators.hpp"
#include "gapscan/io.hpp"
#include "gapscan/pole_bound.hpp"
#include "gapscan/report.hpp"
#include "gapscan/series.hpp"

namespace gapscan {

namespace {

namespace fs = std::filesystem;

double parse_double(std::string_view text, std::string_view what) {
  if (text == "inf" || text == "+inf") return std::numeric_limits<double>::infinity();
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw PreconditionError("cannot read " + std::string(what) + " from '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

/// "re,im" or "re".
Complex parse_complex(std::string_view text) {
  const auto parts = split(text, ',');
  if (parts.size() == 1) return {parse_double(parts[0], "complex number"), 0.0};
  if (parts.size() == 2) return {parse_double(parts[0], "complex number"), parse_double(parts[1], "complex number")};
  throw PreconditionError("complex numbers are written re,im; got '" + std::string(text) + "'");
}

std::vector<Complex> parse_real_list(std::string_view text) {
  std::vector<Complex> out;
  for (auto part : split(text, ',')) out.emplace_back(parse_double(part, "coefficient"), 0.0);
  return out;
}

std::size_t parse_index(std::string_view text) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw PreconditionError("cannot read an index from '" + std::string(text) + "'");
  }
  return value;
}

/// "m" (the certificate's sequence), "a..b" (inclusive range) or "i,j,k".
std::vector<std::size_t> parse_sections(std::string_view text, const std::vector<std::size_t>& m_seq) {
  if (text == "m") return m_seq;
  std::vector<std::size_t> out;
  if (const auto dots = text.find(".."); dots != std::string_view::npos) {
    const std::size_t lo = parse_index(text.substr(0, dots));
    const std::size_t hi = parse_index(text.substr(dots + 2));
    if (hi < lo) throw PreconditionError("empty section range");
    for (std::size_t n = lo; n <= hi; ++n) out.push_back(n);
    return out;
  }
  for (auto part : split(text, ',')) out.push_back(parse_index(part));
  return out;
}

struct LoadedInput {
  std::string bytes;
  CoefficientSeries series;
};

LoadedInput load_input(const std::string& path) {
  std::string bytes = read_file(path);
  if (fs::path(path).extension() == ".csv") {
    auto series = parse_coefficients_csv(bytes, fs::path(path).stem().string());
    return {std::move(bytes), std::move(series)};
  }
  auto series = parse_coefficients_json(bytes);
  return {std::move(bytes), std::move(series)};
}

void emit(const std::string& text, const std::string& output, std::ostream& out) {
  if (output.empty()) {
    out << text;
  } else {
    write_file(output, text);
  }
}

fs::path sibling(const fs::path& path, const std::string& suffix) {
  fs::path stem = path;
  if (stem.extension() == ".json") stem.replace_extension();
  return fs::path(stem.string() + suffix);
}

struct VerifyArgs {
  double divergence_floor = 5.0;
  double term_floor = 1e-4;

  void add(CLI::App* app) {
    app->add_option("--divergence-floor", divergence_floor, "Quasi-Hadamard: sum |a_{m_v}| must exceed this")
        ->capture_default_str();
    app->add_option("--term-floor", term_floor, "Quasi-Hadamard: last |a_{m_v}| must exceed this")
        ->capture_default_str();
  }
  VerifyOptions options() const { return {divergence_floor, term_floor}; }
};

struct AnalyzeArgs {
  std::string input;
  bool radius = false;
  std::size_t window = 1;
  double tail = kDefaultTailFraction;
  bool polebound = false;
  std::optional<double> rho;
  std::string rho1 = "inf";
  double eps = 0.05;
  bool classical = false;
  double zero_tol = 0.0;
  std::string cert;
  std::string output;
  VerifyArgs verify;
};

struct GenerateArgs {
  std::string kind = "hadamard_gap";
  std::size_t length = 256;
  std::string den;
  std::string num;
  std::size_t base = 2;
  double slack = 0.1;
  unsigned power = 1;
  std::size_t growth = 4;
  std::string base_spec;
  double alpha = 2.0;
  double scale = 1.0;
  double amplitude = 0.5;
  std::uint64_t seed = 0;
  std::string spec;
  std::string output;
};

struct ProbeArgs {
  std::string input;
  std::string cert;
  std::optional<std::tuple<double, double, double>> arc;
  std::size_t samples = 64;
  std::string spacing = "chebyshev";
  std::optional<double> exterior;
  std::vector<std::string> points;
  double radius = 1.0;
  std::size_t radial_samples = 4;
  std::size_t angular_samples = 32;
  std::string exclude;
  double exclude_radius = 0.1;
  std::optional<std::pair<double, std::size_t>> scan;
  bool force = false;
  ProbeThresholds thresholds;
  std::string sections = "m";
  std::optional<std::pair<std::string, std::string>> sector;
  std::string extension = "geometric";
  std::size_t boundary_samples = 64;
  std::string output;
  VerifyArgs verify;
};

struct CertifyArgs {
  std::string input;
  std::string cert;
  std::string output;
  VerifyArgs verify;
};

int run_analyze(const AnalyzeArgs& args, std::ostream& out) {
  const auto input = load_input(args.input);
  const auto& series = input.series;
  Json report = make_report(args.input, input.bytes, series);
  auto& sections = report["sections"];
  auto& caveats = report["caveats"];

  const RadiusEstimate estimate = args.window > 1 ? radius_windowed(series, args.window, args.tail)
                                                  : radius_cauchy_hadamard(series, args.tail);
  sections["radius"] = {{"config", {{"window", args.window}, {"tail_fraction", args.tail}}},
                        {"estimate", to_json(estimate)}};
  caveats.push_back("radius: limsup replaced by the maximum over the trailing prefix fraction");

  if (args.polebound || args.rho) {
    Json config;
    PoleBoundReport pb;
    if (args.classical) {
      config = {{"mode", "classical_nonzero"}, {"zero_tolerance", args.zero_tol}, {"tail_fraction", args.tail}};
      pb = count_nonzero(series, args.zero_tol, args.tail);
    } else {
      PoleBoundConfig cfg;
      cfg.rho = args.rho.value_or(estimate.value);
      if (!std::isfinite(cfg.rho)) throw PreconditionError("no finite radius estimate to use as rho; pass --rho");
      cfg.rho1 = parse_double(args.rho1, "rho1");
      cfg.epsilon = args.eps;
      cfg.tail_fraction = args.tail;
      cfg.validate();
      config = to_json(cfg);
      config["mode"] = "relaxed";
      config["rho_source"] = args.rho ? "flag" : "radius_estimate";
      pb = count_exceeding(series, cfg);
    }
    sections["pole_bound"] = section_json(pb, config);
    caveats.push_back("pole_bound: tail maximum of n / v_n over the prefix");
  }

  if (!args.cert.empty()) {
    const auto cert = read_certificate(args.cert);
    const auto verdict = verify_certificate(series, cert, args.verify.options());
    Json section = to_json(verdict, args.verify.options());
    section["certificate"] = to_json(cert);
    sections["certificate"] = std::move(section);
    if (verdict.prefix_caveat) caveats.push_back("certificate: asymptotic conditions checked on the prefix only");
  }

  emit(finalize_report(std::move(report)), args.output, out);
  return 0;
}

GeneratorSpec spec_from_flags(const GenerateArgs& args) {
  const auto kind = parse_generator_kind(args.kind);
  if (!kind) throw PreconditionError("unknown generator kind '" + args.kind + "'");
  GeneratorSpec spec;
  spec.kind = *kind;
  spec.length = args.length;
  if (!args.den.empty()) spec.denominator = parse_real_list(args.den);
  if (!args.num.empty()) spec.numerator = parse_real_list(args.num);
  spec.base = args.base;
  spec.slack = args.slack;
  spec.power = args.power;
  spec.growth = args.growth;
  spec.family = BoundingFamily::power_law(args.scale, args.alpha);
  spec.amplitude = args.amplitude;
  spec.seed = args.seed;
  if (spec.kind == GeneratorKind::perturbed) {
    if (args.base_spec.empty()) throw PreconditionError("perturbed generation needs --base-spec");
    Json base = parse_json(read_file(args.base_spec));
    // A generated coefficient file stands for the spec in its truth sibling.
    if (base.is_object() && base.contains("coefficients")) {
      base = parse_json(read_file(sibling(args.base_spec, ".truth.json")));
    }
    spec.base_spec = std::make_shared<const GeneratorSpec>(generator_spec_from_json(base));
  }
  return spec;
}

int run_generate(const GenerateArgs& args, std::ostream& out) {
  const GeneratorSpec spec =
      args.spec.empty() ? spec_from_flags(args) : generator_spec_from_json(parse_json(read_file(args.spec)));
  const auto generated = generate(spec);
  const fs::path output = args.output.empty() ? fs::path(std::string(to_string(spec.kind)) + ".json") : fs::path(args.output);

  write_file(output, coefficients_to_json(generated.series).dump() + "\n");
  const fs::path truth_path = sibling(output, ".truth.json");
  write_file(truth_path, to_json(spec, generated.truth).dump(2) + "\n");
  out << output.string() << "\n" << truth_path.string() << "\n";
  if (generated.truth.certificate) {
    const fs::path cert_path = sibling(output, ".cert.json");
    write_file(cert_path, to_json(*generated.truth.certificate).dump(2) + "\n");
    out << cert_path.string() << "\n";
  }
  return 0;
}

int run_probe(const ProbeArgs& args, std::ostream& out, std::ostream& err) {
  const bool want_arc = args.arc.has_value() && !args.cert.empty();
  const bool want_exterior = args.exterior.has_value();
  const bool want_scan = args.scan.has_value();
  const bool want_sector = args.sector.has_value();
  if (!want_arc && !want_exterior && !want_scan && !want_sector) {
    throw PreconditionError("no probe selected (use --arc, --exterior, --scan or --sector)");
  }
  if ((want_exterior || want_scan || (args.arc && !want_sector)) && args.cert.empty()) {
    throw PreconditionError("this probe needs a certificate file");
  }

  const auto input = load_input(args.input);
  const auto& series = input.series;
  Json report = make_report(args.input, input.bytes, series);
  auto& sections = report["sections"];
  auto& caveats = report["caveats"];

  std::optional<GapCertificate> cert;
  if (!args.cert.empty()) {
    cert = read_certificate(args.cert);
    const auto verdict = verify_certificate(series, *cert, args.verify.options());
    Json section = to_json(verdict, args.verify.options());
    section["certificate"] = to_json(*cert);
    sections["certificate"] = std::move(section);
    if (!verdict.accepted) {
      if (!args.force) {
        for (const auto& f : verdict.failed_conditions) {
          err << "certificate condition failed: " << f.condition << " at " << f.index << "\n";
        }
        throw PreconditionError("certificate rejected (pass --force to probe anyway)");
      }
      caveats.push_back("certificate rejected; probes forced");
    }
    if (verdict.prefix_caveat) caveats.push_back("certificate: asymptotic conditions checked on the prefix only");
    if (args.sections != "m") cert->m_seq = parse_sections(args.sections, cert->m_seq);
  }

  Spacing spacing = Spacing::chebyshev;
  if (args.spacing == "uniform") {
    spacing = Spacing::uniform;
  } else if (args.spacing != "chebyshev") {
    throw PreconditionError("spacing must be uniform or chebyshev");
  }
  std::optional<ArcSpec> arc;
  if (args.arc) {
    const auto [r, t0, t1] = *args.arc;
    arc = ArcSpec{r, t0, t1, args.samples, spacing};
  }
  const Json arc_config = arc ? Json{{"radius", arc->radius},
                                     {"angle_start", arc->angle_start},
                                     {"angle_end", arc->angle_end},
                                     {"sample_count", arc->sample_count},
                                     {"spacing", std::string(to_string(arc->spacing))}}
                              : Json(nullptr);

  if (want_arc) {
    const auto probe = arc_convergence_probe(series, *cert, *arc, args.thresholds);
    Json config = {{"arc", arc_config}, {"sections", cert->m_seq}};
    sections["arc_convergence"] = section_json(probe, config);
    caveats.push_back("arc_convergence: sampled evidence on finitely many sections");
  }

  if (want_exterior) {
    ExteriorRegion region;
    region.radius = args.radius;
    region.eta = *args.exterior / args.radius - 1.0;
    if (!(region.eta > 0.0)) throw PreconditionError("--exterior must exceed --radius");
    region.radial_samples = args.radial_samples;
    region.angular_samples = args.angular_samples;
    for (const auto& p : args.points) region.points.push_back(parse_complex(p));
    if (!args.exclude.empty()) region.excluded_point = parse_complex(args.exclude);
    region.exclusion_radius = args.exclude_radius;
    const auto probe = overconvergence_probe(series, *cert, region, args.thresholds);
    Json config = {{"radius", region.radius},
                   {"eta", region.eta},
                   {"radial_samples", region.radial_samples},
                   {"angular_samples", region.angular_samples},
                   {"explicit_points", args.points},
                   {"excluded_point", region.excluded_point ? complex_to_json(*region.excluded_point) : Json(nullptr)},
                   {"exclusion_radius", region.exclusion_radius},
                   {"sections", cert->m_seq}};
    sections["overconvergence"] = section_json(probe, config);
    caveats.push_back("overconvergence: pointwise evidence at sampled exterior points");
  }

  if (want_scan) {
    ScanOptions options;
    options.radius = args.radius;
    options.require_accepted_certificate = !args.force;
    options.verify = args.verify.options();
    const auto [factor, angles] = *args.scan;
    const auto scan = natural_boundary_scan(series, *cert, factor, angles, options, args.thresholds);
    Json config = {{"radius", options.radius},
                   {"radius_factor", factor},
                   {"angle_samples", angles},
                   {"forced", args.force},
                   {"sections", cert->m_seq}};
    sections["natural_boundary_scan"] = section_json(scan, config);
    caveats.push_back("natural_boundary_scan: growth at sampled directions only");
  }

  if (want_sector) {
    if (!arc) throw PreconditionError("--sector needs --arc for the arc L");
    if (args.sections == "m") throw PreconditionError("--sector needs explicit --sections (a..b or a list)");
    const auto form = parse_closed_form(args.extension);
    if (!form) throw PreconditionError("unknown extension '" + args.extension + "'");
    const Complex z1 = parse_complex(args.sector->first);
    const Complex z2 = parse_complex(args.sector->second);
    const auto ns = parse_sections(args.sections, {});
    const auto diagnostic = sector_diagnostic(series, evaluator(*form), z1, z2, *arc, ns, args.boundary_samples);
    Json config = {{"arc", arc_config},
                   {"extension", args.extension},
                   {"boundary_samples", args.boundary_samples},
                   {"holds_relative_slack", 1e-12}};
    sections["sector"] = section_json(diagnostic, config);
  }

  emit(finalize_report(std::move(report)), args.output, out);
  return 0;
}

int run_certify(const CertifyArgs& args, std::ostream& out, std::ostream& err) {
  const auto input = load_input(args.input);
  Json report = make_report(args.input, input.bytes, input.series);
  const auto cert = read_certificate(args.cert);
  const auto verdict = verify_certificate(input.series, cert, args.verify.options());
  Json section = to_json(verdict, args.verify.options());
  section["certificate"] = to_json(cert);
  report["sections"]["certificate"] = std::move(section);
  if (verdict.prefix_caveat) {
    report["caveats"].push_back("certificate: asymptotic conditions checked on the prefix only");
  }
  emit(finalize_report(std::move(report)), args.output, out);
  if (!verdict.accepted) {
    err << "certificate rejected\n";
    return 2;
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gap-series and pole-count analysis of Taylor coefficient prefixes", "gapscan"};
  app.require_subcommand(1);

  AnalyzeArgs analyze;
  auto* a = app.add_subcommand("analyze", "Radius estimate, pole bound and certificate check");
  a->add_option("input", analyze.input, "Coefficient file (.json or .csv)")->required();
  a->add_flag("--radius", analyze.radius, "Report the radius estimate (always computed)");
  a->add_option("--window", analyze.window, "Window q of the windowed-maximum estimate (1: Cauchy-Hadamard)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  a->add_option("--tail", analyze.tail, "Trailing fraction of indices used for limsup surrogates")
      ->capture_default_str();
  a->add_flag("--polebound", analyze.polebound, "Compute the pole-count bound");
  a->add_option("--rho", analyze.rho, "rho (default: the radius estimate)");
  a->add_option("--rho1", analyze.rho1, "rho_1 or inf")->capture_default_str();
  a->add_option("--eps", analyze.eps, "epsilon")->capture_default_str();
  a->add_flag("--classical", analyze.classical, "Count nonzero coefficients instead of the relaxed threshold");
  a->add_option("--zero-tol", analyze.zero_tol, "Zero tolerance of the classical count")->capture_default_str();
  a->add_option("--cert", analyze.cert, "Certificate file to verify");
  a->add_option("-o,--output", analyze.output, "Report path (default: stdout)");
  analyze.verify.add(a);
  a->set_config("--config", "", "Read options from a TOML/INI file");

  GenerateArgs generate_args;
  auto* g = app.add_subcommand("generate", "Write a corpus series with its ground truth");
  g->add_option("--kind", generate_args.kind, "rational|hadamard_gap|power_log|ostrowski_composed|perturbed")
      ->capture_default_str();
  g->add_option("--length", generate_args.length, "Prefix length")->capture_default_str();
  g->add_option("--den", generate_args.den, "Denominator coefficients, ascending, comma separated");
  g->add_option("--num", generate_args.num, "Numerator coefficients, ascending, comma separated");
  g->add_option("--base", generate_args.base, "Gap base b")->capture_default_str();
  g->add_option("--slack", generate_args.slack, "delta = b - 1 - slack")->capture_default_str();
  g->add_option("--power", generate_args.power, "power_log exponent (1 or 2)")->capture_default_str();
  g->add_option("--growth", generate_args.growth, "Block growth of ostrowski_composed")->capture_default_str();
  g->add_option("--base-spec", generate_args.base_spec, "Spec or truth file of the series to perturb");
  g->add_option("--alpha", generate_args.alpha, "Bounding family exponent: c_j = scale / j^alpha")
      ->capture_default_str();
  g->add_option("--scale", generate_args.scale, "Bounding family scale")->capture_default_str();
  g->add_option("--amplitude", generate_args.amplitude, "Gap fill amplitude in [0, 1]")->capture_default_str();
  g->add_option("--seed", generate_args.seed, "Seed of the gap fill phases")->capture_default_str();
  g->add_option("--spec", generate_args.spec, "Full generator spec (JSON); overrides the flags");
  g->add_option("-o,--output", generate_args.output, "Output path (default: <kind>.json)");

  ProbeArgs probe;
  auto* p = app.add_subcommand("probe", "Partial-sum probes on arcs, exterior points and circles");
  p->add_option("input", probe.input, "Coefficient file")->required();
  p->add_option("cert", probe.cert, "Certificate file");
  p->add_option("--arc", probe.arc, "Arc: radius angle_start angle_end");
  p->add_option("--samples", probe.samples, "Arc samples")->capture_default_str();
  p->add_option("--spacing", probe.spacing, "uniform|chebyshev")->capture_default_str();
  p->add_option("--exterior", probe.exterior, "Outer radius of the exterior region");
  p->add_option("--point", probe.points, "Explicit exterior point re,im (repeatable)");
  p->add_option("--radius", probe.radius, "Radius of convergence r")->capture_default_str();
  p->add_option("--radial-samples", probe.radial_samples)->capture_default_str();
  p->add_option("--angular-samples", probe.angular_samples)->capture_default_str();
  p->add_option("--exclude", probe.exclude, "Excluded point re,im");
  p->add_option("--exclude-radius", probe.exclude_radius)->capture_default_str();
  p->add_option("--scan", probe.scan, "Natural boundary scan: radius_factor angle_count");
  p->add_flag("--force", probe.force, "Probe even when the certificate is rejected");
  p->add_option("--convergence-threshold", probe.thresholds.convergence)->capture_default_str();
  p->add_option("--growth-log", probe.thresholds.growth_log)->capture_default_str();
  p->add_option("--conditioning", probe.thresholds.conditioning)->capture_default_str();
  p->add_option("--sections", probe.sections, "m (certificate), a..b or a comma list")->capture_default_str();
  p->add_option("--sector", probe.sector, "Sector corners z1 z2 (re,im each)");
  p->add_option("--extension", probe.extension, "geometric|neg_log|dilog")->capture_default_str();
  p->add_option("--boundary-samples", probe.boundary_samples)->capture_default_str();
  p->add_option("-o,--output", probe.output, "Report path (default: stdout)");
  probe.verify.add(p);

  CertifyArgs certify;
  auto* c = app.add_subcommand("certify", "Verify a gap certificate (exit 2 when rejected)");
  c->add_option("input", certify.input, "Coefficient file")->required();
  c->add_option("cert", certify.cert, "Certificate file")->required();
  c->add_option("-o,--output", certify.output, "Report path (default: stdout)");
  certify.verify.add(c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (a->parsed()) return run_analyze(analyze, out);
    if (g->parsed()) return run_generate(generate_args, out);
    if (p->parsed()) return run_probe(probe, out, err);
    if (c->parsed()) return run_certify(certify, out, err);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 3;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const IndexError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ConvergenceError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace gapscan
