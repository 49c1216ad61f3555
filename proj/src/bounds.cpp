#include "apnforge/bounds.hpp"

#include <stdexcept>

namespace apnforge {
namespace {

constexpr int kMaxExponent = 1 << 14;
constexpr int kMonotoneWindow = 64;

void check_args(std::uint64_t d, int m) {
  if (d < 3) throw std::invalid_argument("bounds need d >= 3 (g non-affine)");
  if (m < 1 || m > kMaxExponent) throw std::invalid_argument("bounds need 1 <= m <= 16384");
}

BigInt pow2(unsigned e) { return BigInt(1) << e; }

// ceil(coef * q^(3/2)) for q = 2^m, coef >= 0.
BigInt ceil_coef_q32(const BigInt& coef, int m) {
  if (m % 2 == 0) return coef * pow2(static_cast<unsigned>(3 * m / 2));
  // coef * 2^((3m-1)/2) * sqrt(2) = sqrt(2 c^2)
  const BigInt c = coef * pow2(static_cast<unsigned>((3 * m - 1) / 2));
  const BigInt n = 2 * c * c;
  BigInt r = boost::multiprecision::sqrt(n);
  if (r * r != n) ++r;
  return r;
}

// lhs > coef * q^(3/2), exactly.  coef >= 0.
bool exceeds_radical_term(const BigInt& lhs, const BigInt& coef, int m) {
  if (lhs <= 0) return false;
  // q^3 = 2^(3m); both sides are nonnegative so squaring preserves the order.
  return lhs * lhs > coef * coef * pow2(static_cast<unsigned>(3 * m));
}

Interval centred(const BigInt& half_width, int m) {
  const BigInt q = pow2(static_cast<unsigned>(m));
  const BigInt centre = q * q + q + 1;
  Interval out{centre - half_width, centre + half_width};
  if (out.lo < 0) out.lo = 0;
  return out;
}

BigInt bi(std::uint64_t v) { return BigInt(v); }

BigInt betti_linear_coef(std::uint64_t d) {
  const BigInt D = bi(d);
  return 2 + D - D * D + D * D * D;
}

}  // namespace

BigInt upper_bound_apn(std::uint64_t d, int m) {
  check_args(d, m);
  const BigInt q = pow2(static_cast<unsigned>(m));
  return 4 * bi(d) * q + 4 * q + 8;
}

Interval lw_interval(std::uint64_t d, int m) {
  check_args(d, m);
  const BigInt D = bi(d);
  const BigInt q = pow2(static_cast<unsigned>(m));
  const BigInt d4 = (D + 4) * (D + 4) * (D + 4) * (D + 4);
  return centred(ceil_coef_q32(D * (D - 1), m) + 18 * d4 * q, m);
}

Interval betti_interval(std::uint64_t d, int m) {
  check_args(d, m);
  const BigInt D = bi(d);
  const BigInt q = pow2(static_cast<unsigned>(m));
  return centred(ceil_coef_q32(D * (D - 1), m) + betti_linear_coef(d) * q, m);
}

bool not_apn_guaranteed(std::uint64_t d, int m, bool isolated) {
  check_args(d, m);
  const BigInt D = bi(d);
  const BigInt q = pow2(static_cast<unsigned>(m));
  const BigInt radical = D * (D - 1);
  if (!isolated) {
    if (d < 5) return false;
    const BigInt k = 18 * (D + 4) * (D + 4) * (D + 4) * (D + 4) + 4 * D + 3;
    return exceeds_radical_term(q * q - k * q + 1, radical, m);
  }
  // q^2 + q + 1 - B q - (4dq + 4q + 8) > d(d-1) q^(3/2)
  const BigInt lhs = q * q - (betti_linear_coef(d) + 4 * D + 3) * q - 7;
  return exceeds_radical_term(lhs, radical, m);
}

int crossover_exponent(std::uint64_t d, bool isolated) {
  if (!isolated && d < 5) throw std::invalid_argument("crossover_exponent: d >= 5 needed");
  for (int m = 1; m + kMonotoneWindow <= kMaxExponent; ++m) {
    if (!not_apn_guaranteed(d, m, isolated)) continue;
    int bad = 0;
    for (int k = m + 1; k <= m + kMonotoneWindow; ++k)
      if (!not_apn_guaranteed(d, k, isolated)) bad = k;
    if (bad == 0) return m;
    m = bad;
  }
  throw std::runtime_error("crossover_exponent: no crossover below the exponent limit");
}

bool decimal_sqrt_condition(std::uint64_t d, int m) {
  check_args(d, m);
  // 1000 sqrt(q) > 70000 + 33150 d + 4773 d^2  <=>  10^6 q > rhs^2
  const BigInt D = bi(d);
  const BigInt rhs = 70000 + 33150 * D + 4773 * D * D;
  return BigInt(1000000) * pow2(static_cast<unsigned>(m)) > rhs * rhs;
}

bool decimal_degree_condition(std::uint64_t d, int m) {
  check_args(d, m);
  if (d < 5) return false;
  // d + 7/2 < (45/100) q^(1/4)  <=>  (100 (2d + 7))^4 < 90^4 q
  const BigInt lhs = 100 * (2 * bi(d) + 7);
  return lhs * lhs * lhs * lhs < BigInt(90 * 90) * 90 * 90 * pow2(static_cast<unsigned>(m));
}

bool quartic_condition(std::uint64_t d, int m) {
  check_args(d, m);
  const BigInt D = bi(d);
  return pow2(static_cast<unsigned>(m)) > D * D * D * D;
}

BoundProfile bound_profile(std::uint64_t d, int m) {
  BoundProfile p;
  p.d = d;
  p.m = m;
  p.q = pow2(static_cast<unsigned>(m));
  p.apn_upper = upper_bound_apn(d, m);
  p.lw = lw_interval(d, m);
  p.betti = betti_interval(d, m);
  p.not_apn_general = not_apn_guaranteed(d, m, false);
  p.not_apn_isolated = not_apn_guaranteed(d, m, true);
  return p;
}

}  // namespace apnforge
