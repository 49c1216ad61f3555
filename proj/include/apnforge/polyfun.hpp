// Univariate polynomials over GF(2^m) and the function tables they induce.
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "apnforge/gf2m.hpp"

namespace apnforge {

struct Term {
  std::uint64_t exp;
  Elem coeff;
  friend bool operator==(const Term&, const Term&) = default;
};

/// Sparse polynomial with canonical term list (exponents strictly
/// increasing, no zero coefficients).  Exponents are kept as written; they
/// are only reduced mod q-1 when a function table is built, so one
/// polynomial can be evaluated over several fields.
class SparsePoly {
public:
  SparsePoly() = default;
  /// Terms in any order; equal exponents are summed (XOR), zeros dropped.
  explicit SparsePoly(std::vector<Term> terms);

  static SparsePoly monomial(std::uint64_t exp, Elem coeff = 1);

  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }
  /// Largest exponent; 0 for the empty polynomial.
  std::uint64_t degree() const noexcept { return terms_.empty() ? 0 : terms_.back().exp; }
  Elem coeff(std::uint64_t exp) const noexcept;
  /// Largest coefficient value (as an integer); lets callers check that the
  /// polynomial fits a given field.
  Elem max_coeff() const noexcept;

  SparsePoly operator+(const SparsePoly& other) const;

  /// Hex coefficients, e.g. "x^6+3*x^5+x^3".  Empty polynomial prints "0".
  std::string to_string() const;

  friend bool operator==(const SparsePoly&, const SparsePoly&) = default;

private:
  std::vector<Term> terms_;
};

/// Parses "x^6+3*x^5+x^3", "a*x+1", "0x1f*x^2".  Coefficients are hex with
/// an optional 0x prefix.  Throws std::invalid_argument on malformed input.
SparsePoly parse_poly(std::string_view text);

/// Throws std::invalid_argument if some coefficient is not an element of `f`.
void require_fits(const Field& f, const SparsePoly& p);

using FuncTable = std::vector<Elem>;

Elem eval(const Field& f, const SparsePoly& p, Elem x);

/// values[x] = p(x) for every x in the field.
FuncTable table_of(const Field& f, const SparsePoly& p);

/// values[x] = x^(q-2) + g(x), so values[0] = g(0).
FuncTable inverse_plus_g(const Field& f, const SparsePoly& g);

bool is_power_of_two(std::uint64_t n) noexcept;

/// Drops the constant term and every term whose exponent is a power of two.
SparsePoly normalize_p2(const SparsePoly& p);

/// True iff normalize_p2(g) is empty, i.e. g is affine plus squares of linear
/// maps: every campaign skips these.
bool is_affine_like(const SparsePoly& g);

/// result[x] = c * table[a*x + b]; throws std::invalid_argument if a or c is 0.
FuncTable affine_transform(const Field& f, const FuncTable& table, Elem a, Elem b, Elem c);

/// Canonical representatives of F_q^* under a -> a * u^(d+1): the least
/// element (as an integer) of each orbit, ascending.
std::vector<Elem> binomial_orbits(const Field& f, std::uint64_t d);

/// Orbit size of the action above; every orbit has this size.
std::uint64_t binomial_orbit_size(const Field& f, std::uint64_t d);

}  // namespace apnforge
