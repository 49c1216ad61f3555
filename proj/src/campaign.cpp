#include "apnforge/campaign.hpp"

#include <algorithm>
#include <exception>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include <omp.h>

#include "apnforge/apn.hpp"
#include "apnforge/bounds.hpp"
#include "apnforge/checkpoint.hpp"
#include "apnforge/report.hpp"
#include "apnforge/surface.hpp"

namespace apnforge {

const char* kind_name(CampaignKind k) noexcept {
  switch (k) {
    case CampaignKind::Binomial: return "binomial";
    case CampaignKind::Deg6: return "deg6";
    case CampaignKind::SurfaceCensus: return "surface-census";
    case CampaignKind::SingularScan: return "singular-scan";
  }
  return "?";
}

CampaignKind parse_kind(const std::string& s) {
  for (auto k : {CampaignKind::Binomial, CampaignKind::Deg6, CampaignKind::SurfaceCensus,
                 CampaignKind::SingularScan})
    if (s == kind_name(k)) return k;
  throw std::invalid_argument("unknown campaign kind '" + s +
                              "' (binomial, deg6, surface-census, singular-scan)");
}

int desk_scale_limit(CampaignKind k) noexcept {
  switch (k) {
    case CampaignKind::Binomial: return 12;
    case CampaignKind::Deg6: return 8;
    case CampaignKind::SurfaceCensus: return 8;
    case CampaignKind::SingularScan: return 6;
  }
  return 0;
}

IntRange default_m_range(CampaignKind k) noexcept {
  switch (k) {
    case CampaignKind::Binomial: return {4, 12};
    case CampaignKind::Deg6: return {4, 8};
    case CampaignKind::SurfaceCensus: return {2, 8};
    case CampaignKind::SingularScan: return {2, 6};
  }
  return {};
}

void validate(const CampaignConfig& cfg) {
  const IntRange& r = cfg.m_range;
  if (r.lo > r.hi) throw std::invalid_argument("empty m_range");
  if (r.lo < kMinDegree || r.hi > kMaxDegree)
    throw std::invalid_argument("m_range must lie within [2, 25]");
  if (!cfg.allow_large && r.hi > desk_scale_limit(cfg.kind))
    throw std::invalid_argument(std::string(kind_name(cfg.kind)) + " campaigns above m = " +
                                std::to_string(desk_scale_limit(cfg.kind)) +
                                " need --allow-large");
  if (cfg.kind == CampaignKind::Binomial && (cfg.d_range.lo < 3 || cfg.d_range.lo > cfg.d_range.hi))
    throw std::invalid_argument("d_range must be nonempty with entries >= 3");
  if (cfg.kind == CampaignKind::SingularScan && cfg.samples < 1)
    throw std::invalid_argument("samples must be positive");
  if (cfg.threads < 0) throw std::invalid_argument("threads must be >= 0");
}

namespace {

IntRange range_from_json(const ojson& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("range must be [lo, hi]");
  return {j[0].get<int>(), j[1].get<int>()};
}

ojson range_to_json(const IntRange& r) { return ojson::array({r.lo, r.hi}); }

}  // namespace

CampaignConfig config_from_json(const ojson& j) {
  CampaignConfig c;
  if (j.contains("kind")) c.kind = parse_kind(j["kind"].get<std::string>());
  c.m_range = j.contains("m_range") ? range_from_json(j["m_range"]) : default_m_range(c.kind);
  if (j.contains("d_range")) c.d_range = range_from_json(j["d_range"]);
  if (j.contains("prune_orbits")) c.prune_orbits = j["prune_orbits"].get<bool>();
  if (j.contains("full_delta")) c.full_delta = j["full_delta"].get<bool>();
  if (j.contains("catalog")) c.catalog = j["catalog"].get<std::vector<std::string>>();
  if (j.contains("random_catalog")) c.random_catalog = j["random_catalog"].get<int>();
  if (j.contains("max_catalog_degree")) c.max_catalog_degree = j["max_catalog_degree"].get<int>();
  if (j.contains("sample_from_m")) c.sample_from_m = j["sample_from_m"].get<int>();
  if (j.contains("samples")) c.samples = j["samples"].get<int>();
  if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("threads")) c.threads = j["threads"].get<int>();
  if (j.contains("checkpoint")) c.checkpoint = j["checkpoint"].get<std::string>();
  if (j.contains("output")) c.output = j["output"].get<std::string>();
  if (j.contains("format")) {
    const auto f = j["format"].get<std::string>();
    if (f == "json") c.format = ReportFormat::Json;
    else if (f == "csv") c.format = ReportFormat::Csv;
    else throw std::invalid_argument("format must be json or csv");
  }
  if (j.contains("allow_large")) c.allow_large = j["allow_large"].get<bool>();
  if (j.contains("field_polys"))
    for (const auto& [k, v] : j["field_polys"].items()) {
      const int m = std::stoi(k);
      const auto bits = static_cast<std::uint32_t>(std::stoul(v.get<std::string>(), nullptr, 16));
      c.field_polys[m] = Field(m, bits).red_poly();
    }
  if (j.contains("field_poly")) {
    for (auto [m, bits] : load_poly_overrides(j["field_poly"].get<std::string>()))
      c.field_polys[m] = bits;
  }
  return c;
}

CampaignConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path);
  try {
    return config_from_json(ojson::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("bad config " + path + ": " + e.what());
  }
}

ojson canonical_config(const CampaignConfig& cfg) {
  ojson j;
  j["kind"] = kind_name(cfg.kind);
  j["m_range"] = range_to_json(cfg.m_range);
  switch (cfg.kind) {
    case CampaignKind::Binomial:
      j["d_range"] = range_to_json(cfg.d_range);
      j["prune_orbits"] = cfg.prune_orbits;
      j["full_delta"] = cfg.full_delta;
      break;
    case CampaignKind::Deg6:
      j["full_delta"] = cfg.full_delta;
      break;
    case CampaignKind::SurfaceCensus: {
      ojson cat = ojson::array();
      for (const SparsePoly& g : census_catalog(cfg)) cat.push_back(g.to_string());
      j["catalog"] = cat;
      j["seed"] = cfg.seed;
      break;
    }
    case CampaignKind::SingularScan:
      j["sample_from_m"] = cfg.sample_from_m;
      j["samples"] = cfg.samples;
      j["seed"] = cfg.seed;
      break;
  }
  ojson polys = ojson::object();
  for (int m = cfg.m_range.lo; m <= cfg.m_range.hi; ++m)
    polys[std::to_string(m)] = hex_string(make_field(m, cfg.field_polys).red_poly());
  j["field_polys"] = polys;
  return j;
}

std::string campaign_id(const CampaignConfig& cfg) {
  return fnv1a_hex(canonical_config(cfg).dump());
}

std::vector<SparsePoly> census_catalog(const CampaignConfig& cfg) {
  std::vector<SparsePoly> out;
  if (!cfg.catalog.empty()) {
    for (const auto& s : cfg.catalog) out.push_back(parse_poly(s));
  } else {
    for (const char* s : {"x^3", "x^5", "x^5+x^3", "x^6+x^5+x^3", "x^7"}) out.push_back(parse_poly(s));
    // Coefficients below 4 are elements of every field in range.
    std::mt19937_64 rng(cfg.seed);
    for (int i = 0; i < cfg.random_catalog; ++i) {
      std::vector<Term> terms;
      for (std::uint64_t e = 0; e < 9; ++e) terms.push_back({e, static_cast<Elem>(rng() % 4)});
      terms.push_back({9, static_cast<Elem>(1 + rng() % 3)});
      out.emplace_back(std::move(terms));
    }
  }
  if (cfg.max_catalog_degree > 0)
    std::erase_if(out, [&](const SparsePoly& g) {
      return effective_degree(g) > static_cast<std::uint64_t>(cfg.max_catalog_degree);
    });
  return out;
}

namespace {

struct Unit {
  std::string key;
  std::function<ojson()> run;
};

struct Summary {
  ojson summary;
  std::vector<std::string> findings;
};

using Summarize = std::function<Summary(const std::vector<ojson>&)>;

int resolve_threads(int threads) { return threads > 0 ? threads : omp_get_max_threads(); }

std::map<int, Field> build_fields(const CampaignConfig& cfg) {
  std::map<int, Field> fields;
  for (int m = cfg.m_range.lo; m <= cfg.m_range.hi; ++m)
    fields.emplace(m, make_field(m, cfg.field_polys));
  return fields;
}

// Runs the pending units (in parallel when parallel_units, else one by one
// with the kernels themselves threaded), checkpointing after each batch.
CampaignOutcome execute(const CampaignConfig& cfg, const std::vector<Unit>& units,
                        bool parallel_units, const Summarize& summarize) {
  const std::string id = campaign_id(cfg);
  std::optional<Checkpoint> ckpt;
  if (cfg.checkpoint) ckpt.emplace(*cfg.checkpoint, id);

  std::vector<std::optional<ojson>> results(units.size());
  std::vector<std::size_t> pending;
  {
    std::set<std::string> keys;
    for (std::size_t i = 0; i < units.size(); ++i) {
      if (!keys.insert(units[i].key).second)
        throw std::logic_error("duplicate unit key " + units[i].key);
      if (ckpt) {
        auto it = ckpt->completed().find(units[i].key);
        if (it != ckpt->completed().end()) {
          results[i] = it->second;
          continue;
        }
      }
      pending.push_back(i);
    }
  }

  CampaignOutcome out;
  out.units_total = units.size();
  const int threads = resolve_threads(cfg.threads);
  const std::size_t batch = parallel_units ? std::max<std::size_t>(64, 16 * static_cast<std::size_t>(threads)) : 1;

  for (std::size_t start = 0; start < pending.size(); start += batch) {
    const std::size_t end = std::min(pending.size(), start + batch);
    std::vector<std::exception_ptr> errors(end - start);
    const auto n = static_cast<std::int64_t>(end - start);
    if (parallel_units) {
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
      for (std::int64_t k = 0; k < n; ++k) {
        const std::size_t i = pending[start + static_cast<std::size_t>(k)];
        try {
          results[i] = units[i].run();
        } catch (...) {
          errors[static_cast<std::size_t>(k)] = std::current_exception();
        }
      }
    } else {
      for (std::int64_t k = 0; k < n; ++k) {
        const std::size_t i = pending[start + static_cast<std::size_t>(k)];
        results[i] = units[i].run();
      }
    }
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);

    out.units_run += static_cast<std::uint64_t>(n);
    if (ckpt) {
      std::vector<std::pair<std::string, ojson>> lines;
      for (std::size_t k = start; k < end; ++k) lines.emplace_back(units[pending[k]].key, *results[pending[k]]);
      ckpt->append(lines);
    }
    if (cfg.stop_after && out.units_run >= *cfg.stop_after && end < pending.size()) return out;
  }

  if (ckpt) ckpt->seal(units.size());
  std::vector<ojson> records;
  records.reserve(units.size());
  for (auto& r : results) records.push_back(std::move(*r));
  Summary s = summarize(records);

  out.complete = true;
  out.findings = s.findings;
  ojson rep;
  rep["schema"] = kReportSchema;
  rep["kind"] = kind_name(cfg.kind);
  rep["campaign_id"] = id;
  rep["config"] = canonical_config(cfg);
  rep["units"] = records;
  s.summary["findings"] = s.findings;
  rep["summary"] = s.summary;
  out.report = std::move(rep);
  return out;
}

std::string pad(std::uint64_t v, int width) {
  std::string s = std::to_string(v);
  return std::string(width > static_cast<int>(s.size()) ? width - s.size() : 0, '0') + s;
}

// Exponent class of x^d as a function on F_q.
std::string degeneracy(std::uint64_t d, std::uint32_t q) {
  const std::uint64_t n = q - 1;
  const std::uint64_t r = d % n == 0 ? n : d % n;
  if (r == n) return "constant-on-units";
  if (is_power_of_two(r)) return "power-of-two";
  if (r == q - 2) return "inverse-exponent";
  return "none";
}

ojson delta_fields(const Field& f, const FuncTable& table, bool full_delta, ojson rec) {
  const bool apn = is_apn(f, table);
  rec["is_apn"] = apn;
  if (full_delta) {
    const DeltaReport du = differential_uniformity(f, table, 1);
    if (du.is_apn != apn) throw std::logic_error("is_apn and differential_uniformity disagree");
    rec["delta"] = du.delta;
  } else {
    rec["delta"] = nullptr;
  }
  return rec;
}

}  // namespace

CampaignOutcome run_binomial_campaign(const CampaignConfig& cfg) {
  validate(cfg);
  const auto fields = build_fields(cfg);
  std::vector<Unit> units;
  for (int m = cfg.m_range.lo; m <= cfg.m_range.hi; ++m) {
    const Field& f = fields.at(m);
    for (int d = cfg.d_range.lo; d <= cfg.d_range.hi; ++d) {
      const auto du = static_cast<std::uint64_t>(d);
      if (is_power_of_two(du)) continue;
      std::vector<Elem> coeffs;
      if (cfg.prune_orbits) {
        coeffs = binomial_orbits(f, du);
      } else {
        coeffs.resize(f.q() - 1);
        std::iota(coeffs.begin(), coeffs.end(), Elem{1});
      }
      for (Elem a : coeffs) {
        units.push_back({"b/" + pad(m, 2) + "/" + pad(du, 3) + "/" + std::to_string(a),
                         [&f, m, du, a, full = cfg.full_delta] {
                           ojson rec;
                           rec["m"] = m;
                           rec["d"] = du;
                           rec["a"] = a;
                           rec["reduced_degree"] = du % f.order() == 0 ? f.order() : du % f.order();
                           rec["degeneracy"] = degeneracy(du, f.q());
                           const FuncTable t = inverse_plus_g(f, SparsePoly::monomial(du, a));
                           return delta_fields(f, t, full, std::move(rec));
                         }});
      }
    }
  }

  auto summarize = [&cfg, &fields](const std::vector<ojson>& recs) {
    Summary s;
    ojson found = ojson::array();
    std::uint64_t degenerate = 0;
    for (const ojson& r : recs) {
      if (r["degeneracy"] != "none") ++degenerate;
      if (!r["is_apn"].get<bool>()) continue;
      ojson hit;
      hit["m"] = r["m"];
      hit["d"] = r["d"];
      hit["a"] = r["a"];
      hit["delta"] = r["delta"];
      found.push_back(hit);
      const int m = r["m"].get<int>();
      if (m >= 4)
        s.findings.push_back("x^(q-2)+" + std::to_string(r["a"].get<Elem>()) + "*x^" +
                             std::to_string(r["d"].get<std::uint64_t>()) + " is APN over GF(2^" +
                             std::to_string(m) + ")");
      if (!r["delta"].is_null() && r["delta"].get<std::uint32_t>() != 2)
        s.findings.push_back("APN verdict not confirmed by full DDT at " + hit.dump());
    }
    ojson orbits = ojson::array();
    for (int m = cfg.m_range.lo; m <= cfg.m_range.hi; ++m) {
      const Field& f = fields.at(m);
      for (int d = cfg.d_range.lo; d <= cfg.d_range.hi; ++d) {
        const auto du = static_cast<std::uint64_t>(d);
        if (is_power_of_two(du)) continue;
        ojson o;
        o["m"] = m;
        o["d"] = du;
        o["orbits"] = binomial_orbits(f, du).size();
        o["gcd_d_q1"] = std::gcd<std::uint64_t>(du, f.order());
        o["gcd_d1_q1"] = std::gcd<std::uint64_t>(du + 1, f.order());
        orbits.push_back(o);
      }
    }
    s.summary["units"] = recs.size();
    s.summary["apn_found"] = found;
    s.summary["degenerate_units"] = degenerate;
    s.summary["orbit_counts"] = orbits;
    return s;
  };
  return execute(cfg, units, true, summarize);
}

CampaignOutcome run_deg6_campaign(const CampaignConfig& cfg) {
  validate(cfg);
  const auto fields = build_fields(cfg);
  std::vector<Unit> units;
  ojson skipped = ojson::array();
  for (int m = cfg.m_range.lo; m <= cfg.m_range.hi; ++m) {
    const Field& f = fields.at(m);
    for (Elem a3 = 0; a3 <= 1; ++a3)
      for (Elem a5 = 0; a5 < f.q(); ++a5)
        for (Elem a6 = 0; a6 < f.q(); ++a6) {
          const std::string key = "g6/" + pad(m, 2) + "/" + std::to_string(a3) + "/" +
                                  std::to_string(a5) + "/" + std::to_string(a6);
          const NormalCoeffs c{a3, a5, a6};
          if (is_affine_like(c.to_poly())) {
            skipped.push_back(ojson{{"m", m}, {"a3", a3}, {"a5", a5}, {"a6", a6}, {"reason", "affine-g"}});
            continue;
          }
          units.push_back({key, [&f, m, c, full = cfg.full_delta] {
                             ojson rec;
                             rec["m"] = m;
                             rec["a3"] = c.a3;
                             rec["a5"] = c.a5;
                             rec["a6"] = c.a6;
                             const SparsePoly g = c.to_poly();
                             rec["g"] = g.to_string();
                             return delta_fields(f, inverse_plus_g(f, g), full, std::move(rec));
                           }});
        }
  }
  auto summarize = [skipped](const std::vector<ojson>& recs) {
    Summary s;
    ojson found = ojson::array();
    for (const ojson& r : recs) {
      if (!r["is_apn"].get<bool>()) continue;
      ojson hit{{"m", r["m"]}, {"g", r["g"]}, {"delta", r["delta"]}};
      found.push_back(hit);
      if (r["m"].get<int>() >= 4)
        s.findings.push_back("x^(q-2)+" + r["g"].get<std::string>() + " is APN over GF(2^" +
                             std::to_string(r["m"].get<int>()) + ")");
      if (!r["delta"].is_null() && r["delta"].get<std::uint32_t>() != 2)
        s.findings.push_back("APN verdict not confirmed by full DDT at " + hit.dump());
    }
    s.summary["units"] = recs.size();
    s.summary["skipped_affine_g"] = skipped.size();
    s.summary["skipped"] = skipped;
    s.summary["apn_found"] = found;
    return s;
  };
  return execute(cfg, units, true, summarize);
}

CampaignOutcome run_surface_census(const CampaignConfig& cfg) {
  validate(cfg);
  const auto fields = build_fields(cfg);
  const auto catalog = census_catalog(cfg);
  const int threads = cfg.threads;
  std::vector<Unit> units;
  for (std::size_t gi = 0; gi < catalog.size(); ++gi) {
    const SparsePoly& g = catalog[gi];
    if (is_affine_like(g)) throw std::invalid_argument("census entry " + g.to_string() + " is affine");
    for (int m = cfg.m_range.lo; m <= cfg.m_range.hi; ++m) {
      const Field& f = fields.at(m);
      units.push_back({"s/" + pad(gi, 3) + "/" + pad(m, 2), [&f, &g, m, threads] {
                         require_fits(f, g);
                         const std::uint64_t d = effective_degree(g);
                         const PointCounts c = count_projective_points(f, g, threads);
                         const BoundProfile b = bound_profile(d, m);
                         const BigInt count = c.projective;
                         ojson rec;
                         rec["g"] = g.to_string();
                         rec["d"] = d;
                         rec["m"] = m;
                         rec["field_poly"] = hex_string(f.red_poly());
                         rec["affine_count"] = c.affine;
                         rec["infinity_count"] = c.infinity;
                         rec["projective_count"] = c.projective;
                         rec["bounds"] = to_json(b);
                         ojson chk;
                         chk["lw_ok"] = b.lw.contains(count);
                         chk["betti_checked"] = d <= 6;
                         chk["betti_ok"] = d > 6 || b.betti.contains(count);
                         const bool above = count > b.apn_upper;
                         chk["above_apn_upper"] = above;
                         if (above) chk["is_apn"] = is_apn(f, inverse_plus_g(f, g));
                         rec["checks"] = chk;
                         return rec;
                       }});
    }
  }
  auto summarize = [](const std::vector<ojson>& recs) {
    Summary s;
    std::uint64_t betti = 0, contra = 0;
    for (const ojson& r : recs) {
      const ojson& c = r["checks"];
      const std::string where = r["g"].get<std::string>() + " m=" + std::to_string(r["m"].get<int>());
      if (!c["lw_ok"].get<bool>()) s.findings.push_back("count outside Lang-Weil interval: " + where);
      if (c["betti_checked"].get<bool>()) {
        ++betti;
        if (!c["betti_ok"].get<bool>()) s.findings.push_back("count outside betti interval: " + where);
      }
      if (c["above_apn_upper"].get<bool>()) {
        ++contra;
        if (c["is_apn"].get<bool>())
          s.findings.push_back("count exceeds 4dq+4q+8 but function is APN: " + where);
      }
    }
    s.summary["units"] = recs.size();
    s.summary["betti_checked"] = betti;
    s.summary["contrapositive_checked"] = contra;
    return s;
  };
  return execute(cfg, units, false, summarize);
}

namespace {

struct GridPoint {
  AppendixCase which;
  NormalCoeffs c;
};

std::vector<GridPoint> singular_grid(const Field& f, AppendixCase which) {
  std::vector<GridPoint> out;
  for (Elem a3 = 0; a3 <= 1; ++a3) {
    if (which == AppendixCase::Degree5) {
      for (Elem a5 = 1; a5 < f.q(); ++a5) out.push_back({which, {a3, a5, 0}});
    } else {
      for (Elem a5 = 0; a5 < f.q(); ++a5)
        for (Elem a6 = 1; a6 < f.q(); ++a6) out.push_back({which, {a3, a5, a6}});
    }
  }
  return out;
}

// Seeded subset of the grid; (a3, a5, a6) = (1, 1, 0) resp. (1, 1, 1) always kept.
std::vector<GridPoint> sample_grid(std::vector<GridPoint> grid, int samples, std::uint64_t seed) {
  if (static_cast<std::size_t>(samples) >= grid.size()) return grid;
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> idx(grid.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::set<std::size_t> keep;
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (grid[i].c.a3 == 1 && grid[i].c.a5 == 1 && grid[i].c.a6 <= 1) keep.insert(i);
  for (std::size_t i = 0; i < idx.size() && keep.size() < static_cast<std::size_t>(samples); ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng() % (idx.size() - i));
    std::swap(idx[i], idx[j]);
    keep.insert(idx[i]);
  }
  std::vector<GridPoint> out;
  for (std::size_t i : keep) out.push_back(grid[i]);
  return out;
}

}  // namespace

CampaignOutcome run_singular_scan(const CampaignConfig& cfg) {
  validate(cfg);
  const auto fields = build_fields(cfg);
  std::vector<Unit> units;
  for (int m = cfg.m_range.lo; m <= cfg.m_range.hi; ++m) {
    const Field& f = fields.at(m);
    for (AppendixCase which : {AppendixCase::Degree5, AppendixCase::Degree6}) {
      auto grid = singular_grid(f, which);
      if (m >= cfg.sample_from_m)
        grid = sample_grid(std::move(grid), cfg.samples,
                           cfg.seed ^ (static_cast<std::uint64_t>(m) << 8) ^
                               (which == AppendixCase::Degree6 ? 1u : 0u));
      const char* tag = which == AppendixCase::Degree5 ? "deg5" : "deg6";
      for (const GridPoint& gp : grid) {
        const NormalCoeffs c = gp.c;
        units.push_back({std::string("sg/") + pad(m, 2) + "/" + tag + "/" + std::to_string(c.a3) + "/" +
                             std::to_string(c.a5) + "/" + std::to_string(c.a6),
                         [&f, m, c, tag] {
                           const SparsePoly g = c.to_poly();
                           const auto pts = enumerate_singular(f, homogenize(g), 1);
                           ojson rec;
                           rec["m"] = m;
                           rec["case"] = tag;
                           rec["a3"] = c.a3;
                           rec["a5"] = c.a5;
                           rec["a6"] = c.a6;
                           rec["g"] = g.to_string();
                           ojson list = ojson::array();
                           std::uint64_t no_case = 0;
                           for (const ProjPoint& p : pts) {
                             const CaseSet cs = classify_singular(f, p, c);
                             ojson tags = ojson::array();
                             for (auto k : {SingularCase::CoordZero, SingularCase::AllEqual,
                                            SingularCase::PairEqual, SingularCase::SumZero,
                                            SingularCase::QRoot})
                               if (cs.has(k)) tags.push_back(case_name(k));
                             if (cs.primary() == SingularCase::NoCase) ++no_case;
                             list.push_back(ojson{{"point", to_json(p)},
                                                  {"case", case_name(cs.primary())},
                                                  {"tags", tags}});
                           }
                           rec["points"] = list;
                           rec["no_case"] = no_case;
                           return rec;
                         }});
      }
    }
  }
  auto summarize = [](const std::vector<ojson>& recs) {
    Summary s;
    std::uint64_t points = 0, no_case = 0;
    ojson named = ojson::array();
    for (const ojson& r : recs) {
      points += r["points"].size();
      no_case += r["no_case"].get<std::uint64_t>();
      if (r["no_case"].get<std::uint64_t>() > 0)
        s.findings.push_back("unclassified singular point on " + r["g"].get<std::string>() +
                             " m=" + std::to_string(r["m"].get<int>()));
      if (r["case"] == "deg5" && r["a3"] == 1 && r["a5"] == 1) {
        bool p1111 = false, p1110 = false;
        for (const ojson& p : r["points"]) {
          p1111 = p1111 || p["point"] == ojson::array({1, 1, 1, 1});
          p1110 = p1110 || p["point"] == ojson::array({1, 1, 1, 0});
        }
        named.push_back(ojson{{"m", r["m"]}, {"has_1111", p1111}, {"has_1110", p1110}});
        if (!p1111 || !p1110)
          s.findings.push_back("deg5 a3=a5=1 m=" + std::to_string(r["m"].get<int>()) +
                               " misses (1,1,1,1) or (1,1,1,0)");
      }
    }
    s.summary["units"] = recs.size();
    s.summary["singular_points"] = points;
    s.summary["no_case"] = no_case;
    s.summary["named_points"] = named;
    return s;
  };
  return execute(cfg, units, true, summarize);
}

CampaignOutcome run_campaign(const CampaignConfig& cfg) {
  switch (cfg.kind) {
    case CampaignKind::Binomial: return run_binomial_campaign(cfg);
    case CampaignKind::Deg6: return run_deg6_campaign(cfg);
    case CampaignKind::SurfaceCensus: return run_surface_census(cfg);
    case CampaignKind::SingularScan: return run_singular_scan(cfg);
  }
  throw std::logic_error("unreachable");
}

namespace {

void flatten(const std::string& prefix, const ojson& v, std::vector<std::pair<std::string, std::string>>& out) {
  if (v.is_object()) {
    for (const auto& [k, x] : v.items()) flatten(prefix.empty() ? k : prefix + "." + k, x, out);
  } else if (v.is_array()) {
    std::string joined;
    for (const auto& x : v) {
      if (!joined.empty()) joined += ';';
      joined += x.is_string() ? x.get<std::string>() : x.dump();
    }
    out.emplace_back(prefix, joined);
  } else if (v.is_string()) {
    out.emplace_back(prefix, v.get<std::string>());
  } else if (v.is_null()) {
    out.emplace_back(prefix, "");
  } else {
    out.emplace_back(prefix, v.dump());
  }
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

}  // namespace

std::string render_report(const ojson& report, ReportFormat format) {
  if (format == ReportFormat::Json) return report.dump(2) + "\n";
  std::ostringstream os;
  std::vector<std::string> header;
  for (const ojson& unit : report["units"]) {
    std::vector<std::pair<std::string, std::string>> cells;
    flatten("", unit, cells);
    if (header.empty()) {
      for (const auto& [k, v] : cells) header.push_back(k);
      for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << csv_cell(header[i]);
      os << '\n';
    }
    std::map<std::string, std::string> row(cells.begin(), cells.end());
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << csv_cell(row[header[i]]);
    os << '\n';
  }
  return os.str();
}

}  // namespace apnforge
