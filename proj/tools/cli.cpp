#include "cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "apnforge/apn.hpp"
#include "apnforge/bounds.hpp"
#include "apnforge/campaign.hpp"
#include "apnforge/report.hpp"
#include "apnforge/surface.hpp"

namespace apnforge::cli {
namespace {

struct Options {
  int m = 0;
  std::uint64_t d = 0;
  int threads = 0;
  std::string poly;
  std::string field_poly;
  bool plus_inverse = false;
  bool isolated = false;

  std::string kind;
  std::string config;
  std::string checkpoint;
  std::string output;
  std::string format;
  std::optional<std::uint64_t> seed;
  bool allow_large = false;
  std::uint64_t stop_after = 0;
};

// --field-poly takes a file of "m:hex" lines, a comma list of "m:hex", or a
// bare hex polynomial applying to -m.
std::map<int, std::uint32_t> field_overrides(const Options& o) {
  std::map<int, std::uint32_t> out;
  if (o.field_poly.empty()) return out;
  if (std::filesystem::exists(o.field_poly)) return load_poly_overrides(o.field_poly);
  auto parse_hex = [](std::string s) {
    if (s.rfind("0x", 0) == 0 || s.rfind("0X", 0) == 0) s = s.substr(2);
    std::size_t used = 0;
    const unsigned long v = std::stoul(s, &used, 16);
    if (used != s.size()) throw std::invalid_argument("bad hex polynomial '" + s + "'");
    return static_cast<std::uint32_t>(v);
  };
  if (o.field_poly.find(':') == std::string::npos) {
    if (o.m == 0) throw std::invalid_argument("bare --field-poly needs -m");
    out[o.m] = Field(o.m, parse_hex(o.field_poly)).red_poly();
    return out;
  }
  std::size_t pos = 0;
  while (pos <= o.field_poly.size()) {
    const std::size_t comma = std::min(o.field_poly.find(',', pos), o.field_poly.size());
    const std::string item = o.field_poly.substr(pos, comma - pos);
    const std::size_t colon = item.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("bad --field-poly item '" + item + "'");
    const int m = std::stoi(item.substr(0, colon));
    out[m] = Field(m, parse_hex(item.substr(colon + 1))).red_poly();
    pos = comma + 1;
  }
  return out;
}

Field field_for(const Options& o) { return make_field(o.m, field_overrides(o)); }

SparsePoly function_poly(const Field& f, const Options& o) {
  SparsePoly p = parse_poly(o.poly);
  if (o.plus_inverse) p = p + SparsePoly::monomial(f.q() - 2);
  require_fits(f, p);
  return p;
}

void print(std::ostream& out, const ojson& j) { out << j.dump(2) << '\n'; }

int cmd_field_info(const Options& o, std::ostream& out) {
  const Field f = field_for(o);
  ojson j;
  j["m"] = f.m();
  j["q"] = f.q();
  j["red_poly"] = hex_string(f.red_poly());
  j["generator"] = hex_string(f.generator());
  j["log_tables"] = f.has_log_tables();
  ojson primes = ojson::array();
  for (auto p : f.order_prime_factors()) primes.push_back(p);
  j["order_prime_factors"] = primes;
  print(out, j);
  return kExitClean;
}

int cmd_apn_check(const Options& o, std::ostream& out) {
  const Field f = field_for(o);
  const SparsePoly p = function_poly(f, o);
  const DeltaReport r = differential_uniformity(f, table_of(f, p), o.threads);
  ojson j;
  j["m"] = f.m();
  j["field_poly"] = hex_string(f.red_poly());
  j["f"] = p.to_string();
  const ojson du = to_json(r);
  for (const auto& [k, v] : du.items()) j[k] = v;
  print(out, j);
  return kExitClean;
}

int cmd_apn_spectrum(const Options& o, std::ostream& out) {
  const Field f = field_for(o);
  const SparsePoly p = function_poly(f, o);
  ojson spec = ojson::object();
  for (auto [count, mult] : differential_spectrum(f, table_of(f, p), o.threads))
    spec[std::to_string(count)] = mult;
  ojson j;
  j["m"] = f.m();
  j["field_poly"] = hex_string(f.red_poly());
  j["f"] = p.to_string();
  j["spectrum"] = spec;
  print(out, j);
  return kExitClean;
}

int cmd_surface_count(const Options& o, std::ostream& out) {
  const Field f = field_for(o);
  const SparsePoly g = parse_poly(o.poly);
  require_fits(f, g);
  const SurfaceReport r = make_surface_report(f, g, false, o.threads);
  ojson j = to_json(r);
  j.erase("singular_points");
  j["bounds"] = to_json(bound_profile(r.d, f.m()));
  print(out, j);
  return kExitClean;
}

// Normal form a6 x^6 + a5 x^5 + a3 x^3 with a3 in {0, 1}; nullopt otherwise.
std::optional<NormalCoeffs> as_normal_form(const SparsePoly& g) {
  NormalCoeffs c;
  for (const Term& t : g.terms()) {
    if (t.exp == 3 && t.coeff == 1) c.a3 = 1;
    else if (t.exp == 5) c.a5 = t.coeff;
    else if (t.exp == 6) c.a6 = t.coeff;
    else return std::nullopt;
  }
  if (c.a5 == 0 && c.a6 == 0) return std::nullopt;
  return c;
}

int cmd_surface_singular(const Options& o, std::ostream& out) {
  const Field f = field_for(o);
  const SparsePoly g = parse_poly(o.poly);
  require_fits(f, g);
  const auto pts = enumerate_singular(f, homogenize(g), o.threads);
  const auto normal = as_normal_form(g);
  ojson list = ojson::array();
  bool unclassified = false;
  for (const ProjPoint& p : pts) {
    ojson e{{"point", to_json(p)}};
    if (normal) {
      const CaseSet cs = classify_singular(f, p, *normal);
      e["case"] = case_name(cs.primary());
      unclassified = unclassified || cs.primary() == SingularCase::NoCase;
    }
    list.push_back(e);
  }
  ojson j;
  j["m"] = f.m();
  j["field_poly"] = hex_string(f.red_poly());
  j["g"] = g.to_string();
  j["d"] = effective_degree(g);
  j["classified"] = normal.has_value();
  j["singular_points"] = list;
  print(out, j);
  return unclassified ? kExitFindings : kExitClean;
}

int cmd_bounds_profile(const Options& o, std::ostream& out) {
  print(out, to_json(bound_profile(o.d, o.m)));
  return kExitClean;
}

int cmd_bounds_crossover(const Options& o, std::ostream& out) {
  ojson j;
  j["d"] = o.d;
  j["isolated"] = o.isolated;
  j["m"] = crossover_exponent(o.d, o.isolated);
  print(out, j);
  return kExitClean;
}

int cmd_campaign(const Options& o, std::ostream& out, std::ostream& err) {
  // The kind on the command line wins; it also picks the default m_range.
  ojson j = ojson::object();
  if (!o.config.empty()) {
    std::ifstream in(o.config);
    try {
      j = ojson::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw std::runtime_error("bad config " + o.config + ": " + e.what());
    }
  }
  j["kind"] = o.kind;
  CampaignConfig cfg = config_from_json(j);
  if (o.threads > 0) cfg.threads = o.threads;
  if (!o.checkpoint.empty()) cfg.checkpoint = o.checkpoint;
  if (!o.output.empty()) cfg.output = o.output;
  if (o.format == "csv") cfg.format = ReportFormat::Csv;
  else if (o.format == "json") cfg.format = ReportFormat::Json;
  if (o.seed) cfg.seed = *o.seed;
  if (o.allow_large) cfg.allow_large = true;
  for (auto [m, bits] : field_overrides(o)) cfg.field_polys[m] = bits;
  if (o.stop_after > 0) cfg.stop_after = o.stop_after;

  const auto t0 = std::chrono::steady_clock::now();
  const CampaignOutcome res = run_campaign(cfg);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  err << kind_name(cfg.kind) << ": " << res.units_run << " units run, " << res.units_total
      << " total, " << secs << " s\n";
  if (!res.complete) {
    err << "stopped before completion; rerun with the same checkpoint to resume\n";
    return kExitClean;
  }
  const std::string text = render_report(res.report, cfg.format);
  if (cfg.output) {
    std::ofstream f(*cfg.output, std::ios::binary | std::ios::trunc);
    f << text;
    if (!f) throw std::runtime_error("cannot write " + *cfg.output);
  } else {
    out << text;
  }
  for (const auto& finding : res.findings) err << "finding: " << finding << '\n';
  return res.findings.empty() ? kExitClean : kExitFindings;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"APN function search and surface point counting over GF(2^m)", "apnforge"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  Options o;
  std::function<int()> action;

  app.add_option("--threads", o.threads, "Worker threads (0 = OpenMP default)")->check(CLI::NonNegativeNumber);
  app.add_option("--field-poly", o.field_poly,
                 "Reduction polynomial override: file of m:hex lines, m:hex[,m:hex], or hex for -m");

  auto* field = app.add_subcommand("field", "Field information")->require_subcommand(1);
  auto* info = field->add_subcommand("info", "Reduction polynomial, generator, tables");
  info->add_option("-m", o.m, "Extension degree")->required();
  info->callback([&] { action = [&] { return cmd_field_info(o, out); }; });

  auto* apn = app.add_subcommand("apn", "Differential properties")->require_subcommand(1);
  for (const char* name : {"check", "spectrum"}) {
    const bool check = std::string(name) == "check";
    auto* sub = apn->add_subcommand(name, check ? "Differential uniformity with witness"
                                                : "Distribution of DDT entries");
    sub->add_option("poly", o.poly, "Polynomial, e.g. x^6+x^3 (hex coefficients)")->required();
    sub->add_option("-m", o.m, "Extension degree")->required();
    sub->add_flag("--plus-inverse", o.plus_inverse, "Add x^(q-2) to the polynomial");
    sub->callback([&, check] {
      action = [&, check] { return check ? cmd_apn_check(o, out) : cmd_apn_spectrum(o, out); };
    });
  }

  auto* surface = app.add_subcommand("surface", "The surface attached to x^(q-2)+g")->require_subcommand(1);
  for (const char* name : {"count", "singular"}) {
    const bool count = std::string(name) == "count";
    auto* sub = surface->add_subcommand(name, count ? "Affine, infinity and projective point counts"
                                                    : "Singular points, classified for degree <= 6 normal forms");
    sub->add_option("g", o.poly, "Polynomial g")->required();
    sub->add_option("-m", o.m, "Extension degree")->required();
    sub->callback([&, count] {
      action = [&, count] { return count ? cmd_surface_count(o, out) : cmd_surface_singular(o, out); };
    });
  }

  auto* bounds = app.add_subcommand("bounds", "Point-count bounds")->require_subcommand(1);
  auto* profile = bounds->add_subcommand("profile", "All bounds for (d, m)");
  profile->add_option("-d", o.d, "Degree of g")->required();
  profile->add_option("-m", o.m, "Extension degree")->required();
  profile->callback([&] { action = [&] { return cmd_bounds_profile(o, out); }; });
  auto* cross = bounds->add_subcommand("crossover", "Smallest m from which non-APN is guaranteed");
  cross->add_option("-d", o.d, "Degree of g")->required();
  cross->add_flag("--isolated", o.isolated, "Use the isolated-singularities bound");
  cross->callback([&] { action = [&] { return cmd_bounds_crossover(o, out); }; });

  auto* camp = app.add_subcommand("campaign", "Run a search campaign");
  camp->add_option("kind", o.kind, "binomial | deg6 | surface-census | singular-scan")
      ->required()
      ->check(CLI::IsMember({"binomial", "deg6", "surface-census", "singular-scan"}));
  camp->add_option("--config", o.config, "JSON config file")->check(CLI::ExistingFile);
  camp->add_option("--checkpoint", o.checkpoint, "Append-only checkpoint file (resumes if present)");
  camp->add_option("--output", o.output, "Report path (default stdout)");
  camp->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  camp->add_option("--seed", o.seed, "RNG seed for random catalog entries and sampling");
  camp->add_flag("--allow-large", o.allow_large, "Permit m above the desk-scale limits");
  camp->add_option("--stop-after", o.stop_after)->group("");
  camp->callback([&] { action = [&] { return cmd_campaign(o, out, err); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    app.exit(e, out, err);
    return kExitClean;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitError;
  }
  try {
    return action();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace apnforge::cli
