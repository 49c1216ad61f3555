// Point-count bounds for X' and the derived "cannot be APN" thresholds.
//
// Every verdict is computed in exact integer arithmetic.  Terms with q^(3/2)
// at odd m are irrational; interval endpoints round them outward and
// inequalities isolate the radical term, check signs and square.
#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace apnforge {

using BigInt = boost::multiprecision::cpp_int;

struct Interval {
  BigInt lo;
  BigInt hi;
  bool contains(const BigInt& v) const { return lo <= v && v <= hi; }
};

/// 4dq + 4q + 8: most points X' can have when x^(q-2) + g is APN.
BigInt upper_bound_apn(std::uint64_t d, int m);

/// q^2 + q + 1 -/+ (d(d-1) q^(3/2) + 18 (d+4)^4 q), lower end clamped at 0.
Interval lw_interval(std::uint64_t d, int m);

/// q^2 + q + 1 -/+ (d(d-1) q^(3/2) + (2 + d - d^2 + d^3) q), lower end
/// clamped at 0.  Valid when X' has only isolated singular points.
Interval betti_interval(std::uint64_t d, int m);

/// isolated = false: d >= 5 and q^2 - d(d-1) q^(3/2) - (18(d+4)^4 + 4d + 3) q + 1 > 0.
/// isolated = true:  q^2 + q + 1 - T' > 4dq + 4q + 8, T' the betti half-width.
bool not_apn_guaranteed(std::uint64_t d, int m, bool isolated);

/// Smallest m such that not_apn_guaranteed(d, m', isolated) holds for all
/// m' >= m (checked on a window of 64 exponents past the first hit).
int crossover_exponent(std::uint64_t d, bool isolated);

// Sufficient conditions quoted with decimal constants, evaluated exactly as
// rationals.  Reference predicates only; the verdicts above are authoritative.

/// sqrt(q) > 70 + 33.15 d + 4.773 d^2
bool decimal_sqrt_condition(std::uint64_t d, int m);
/// d >= 5 and d < 0.45 q^(1/4) - 3.5
bool decimal_degree_condition(std::uint64_t d, int m);
/// q > d^4
bool quartic_condition(std::uint64_t d, int m);

struct BoundProfile {
  std::uint64_t d = 0;
  int m = 0;
  BigInt q;
  BigInt apn_upper;
  Interval lw;
  Interval betti;
  bool not_apn_general = false;
  bool not_apn_isolated = false;
};

BoundProfile bound_profile(std::uint64_t d, int m);

}  // namespace apnforge
