// JSON shapes shared by the CLI and the campaign reports.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "apnforge/apn.hpp"
#include "apnforge/bounds.hpp"
#include "apnforge/surface.hpp"

namespace apnforge {

using ojson = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "apn-forge/1";

/// Integer when it fits in int64, decimal string otherwise.
ojson big_to_json(const BigInt& v);
std::string hex_string(std::uint64_t v);

ojson to_json(const DeltaReport& r);
ojson to_json(const BoundProfile& p);
ojson to_json(const ProjPoint& p);

struct SurfaceReport {
  int m = 0;
  std::uint32_t field_poly = 0;
  SparsePoly g;
  std::uint64_t d = 0;
  PointCounts counts;
  std::optional<std::vector<ProjPoint>> singular_points;
  std::optional<double> elapsed_ms;
};

SurfaceReport make_surface_report(const Field& f, const SparsePoly& g, bool with_singular,
                                  int threads);
ojson to_json(const SurfaceReport& r);

}  // namespace apnforge
