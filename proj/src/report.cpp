#include "apnforge/report.hpp"

#include <chrono>
#include <limits>

namespace apnforge {

ojson big_to_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return ojson(static_cast<std::int64_t>(v));
  return ojson(v.str());
}

std::string hex_string(std::uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "0x%llx", static_cast<unsigned long long>(v));
  return buf;
}

ojson to_json(const DeltaReport& r) {
  ojson j;
  j["delta"] = r.delta;
  j["witness_a"] = r.witness_a;
  j["witness_b"] = r.witness_b;
  j["is_apn"] = r.is_apn;
  return j;
}

ojson to_json(const BoundProfile& p) {
  ojson j;
  j["d"] = p.d;
  j["m"] = p.m;
  j["q"] = big_to_json(p.q);
  j["apn_upper"] = big_to_json(p.apn_upper);
  j["lw_lo"] = big_to_json(p.lw.lo);
  j["lw_hi"] = big_to_json(p.lw.hi);
  j["betti_lo"] = big_to_json(p.betti.lo);
  j["betti_hi"] = big_to_json(p.betti.hi);
  j["not_apn_general"] = p.not_apn_general;
  j["not_apn_isolated"] = p.not_apn_isolated;
  return j;
}

ojson to_json(const ProjPoint& p) {
  return ojson::array({p[0], p[1], p[2], p[3]});
}

SurfaceReport make_surface_report(const Field& f, const SparsePoly& g, bool with_singular,
                                  int threads) {
  const auto t0 = std::chrono::steady_clock::now();
  SurfaceReport r;
  r.m = f.m();
  r.field_poly = f.red_poly();
  r.g = g;
  r.d = effective_degree(g);
  r.counts = count_projective_points(f, g, threads);
  if (with_singular) r.singular_points = enumerate_singular(f, homogenize(g), threads);
  r.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

ojson to_json(const SurfaceReport& r) {
  ojson j;
  j["m"] = r.m;
  j["field_poly"] = hex_string(r.field_poly);
  j["g"] = r.g.to_string();
  j["d"] = r.d;
  j["affine_count"] = r.counts.affine;
  j["infinity_count"] = r.counts.infinity;
  j["projective_count"] = r.counts.projective;
  ojson pts = ojson::array();
  if (r.singular_points)
    for (const ProjPoint& p : *r.singular_points) pts.push_back(to_json(p));
  j["singular_points"] = pts;
  if (r.elapsed_ms) j["elapsed_ms"] = static_cast<std::int64_t>(*r.elapsed_ms + 0.5);
  return j;
}

}  // namespace apnforge
