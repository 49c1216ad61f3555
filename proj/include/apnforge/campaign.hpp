// Search campaigns: binomial and degree-6 APN scans, surface census and
// singular-point scan.  Units are pure and independent; results are always
// emitted in canonical unit order, so reports are byte-identical across
// thread counts and checkpoint interruptions.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "apnforge/gf2m.hpp"
#include "apnforge/polyfun.hpp"

namespace apnforge {

using ojson = nlohmann::ordered_json;

enum class CampaignKind { Binomial, Deg6, SurfaceCensus, SingularScan };
enum class ReportFormat { Json, Csv };

const char* kind_name(CampaignKind k) noexcept;
CampaignKind parse_kind(const std::string& s);

struct IntRange {
  int lo = 0;
  int hi = -1;
  bool contains(int v) const noexcept { return lo <= v && v <= hi; }
};

struct CampaignConfig {
  CampaignKind kind = CampaignKind::Binomial;
  IntRange m_range{4, 12};
  IntRange d_range{3, 29};        // binomial
  bool prune_orbits = true;       // binomial: one unit per orbit representative
  bool full_delta = true;         // binomial/deg6: compute delta, not just the verdict
  std::vector<std::string> catalog;  // census; empty selects the default catalog
  int random_catalog = 3;         // census: seeded random degree-9 entries
  int max_catalog_degree = 0;     // census: drop entries of higher degree (0 = keep all)
  int sample_from_m = 5;          // singular: sample grids for m >= this
  int samples = 16;               // singular: units per grid and m when sampling
  std::uint64_t seed = 20090917;
  int threads = 0;                // 0 = OpenMP default
  std::optional<std::string> checkpoint;
  std::optional<std::string> output;
  ReportFormat format = ReportFormat::Json;
  bool allow_large = false;
  std::map<int, std::uint32_t> field_polys;
  /// Stop once this many new units have been checkpointed (batch granular).
  std::optional<std::uint64_t> stop_after;
};

/// Highest m allowed without allow_large.
int desk_scale_limit(CampaignKind k) noexcept;

/// m_range used when a config does not name one.
IntRange default_m_range(CampaignKind k) noexcept;

/// Throws std::invalid_argument on inconsistent settings.
void validate(const CampaignConfig& cfg);

/// Reads the JSON config file format (see README).  A missing m_range
/// defaults per kind.
CampaignConfig load_config(const std::string& path);
CampaignConfig config_from_json(const ojson& j);

/// Settings that determine the results (no threads, paths or formats).
ojson canonical_config(const CampaignConfig& cfg);
std::string campaign_id(const CampaignConfig& cfg);

/// Default census catalog; the random entries depend only on `seed`.
std::vector<SparsePoly> census_catalog(const CampaignConfig& cfg);

struct CampaignOutcome {
  bool complete = false;       // false when stopped by stop_after
  std::uint64_t units_total = 0;
  std::uint64_t units_run = 0;  // units computed in this invocation
  std::vector<std::string> findings;
  ojson report;                 // full report when complete
};

CampaignOutcome run_campaign(const CampaignConfig& cfg);
CampaignOutcome run_binomial_campaign(const CampaignConfig& cfg);
CampaignOutcome run_deg6_campaign(const CampaignConfig& cfg);
CampaignOutcome run_surface_census(const CampaignConfig& cfg);
CampaignOutcome run_singular_scan(const CampaignConfig& cfg);

std::string render_report(const ojson& report, ReportFormat format);

}  // namespace apnforge
