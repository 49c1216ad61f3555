#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "apnforge/apn.hpp"
#include "apnforge/polyfun.hpp"
#include "support.hpp"

using namespace apnforge;

TEST_CASE("parse and print round trip") {
  const SparsePoly p = parse_poly("x^6 + 3*x^5 + x^3");
  CHECK(p.to_string() == "x^6+3*x^5+x^3");
  CHECK(p.degree() == 6);
  CHECK(p.coeff(5) == 3);
  CHECK(p.coeff(4) == 0);
  CHECK(parse_poly("0x1f*x^2+a*x+1").to_string() == "1f*x^2+a*x+1");
  CHECK(parse_poly("x+x").to_string() == "0");
  CHECK(parse_poly("x^3+x^3+x^2").to_string() == "x^2");
  CHECK(parse_poly("5").to_string() == "5");
  CHECK(parse_poly("0*x^4+x").to_string() == "x");
  for (const char* bad : {"", "x^", "y^2", "x^2+", "3**x", "x^-1", "g*x"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_poly(bad), std::invalid_argument);
  }
}

TEST_CASE("canonical form ignores term order") {
  const SparsePoly a({{3, 1}, {6, 2}, {3, 4}});
  const SparsePoly b({{6, 2}, {3, 5}});
  CHECK(a == b);
  CHECK((a + b).empty());
  CHECK(a.max_coeff() == 5);
}

TEST_CASE("require_fits rejects coefficients outside the field") {
  CHECK_NOTHROW(require_fits(Field(3), parse_poly("7*x^3")));
  CHECK_THROWS_AS(require_fits(Field(3), parse_poly("8*x^3")), std::invalid_argument);
}

TEST_CASE("evaluation matches Horner's rule") {
  std::mt19937_64 rng(5);
  const Field f(7);
  for (int i = 0; i < 20; ++i) {
    const SparsePoly p = testing::random_poly(rng, 1 + rng() % 20, f.q());
    const FuncTable t = table_of(f, p);
    for (Elem x = 0; x < f.q(); ++x) {
      Elem h = 0;
      for (std::uint64_t e = p.degree() + 1; e-- > 0;) h = f.mul(h, x) ^ p.coeff(e);
      REQUIRE(eval(f, p, x) == h);
      REQUIRE(t[x] == h);
    }
  }
}

TEST_CASE("exponents beyond q-1 reduce as functions") {
  const Field f(4);
  // x^q = x as a function, x^(q-1) = 1 off zero and 0 at zero.
  CHECK(table_of(f, SparsePoly::monomial(16)) == table_of(f, SparsePoly::monomial(1)));
  const FuncTable t = table_of(f, SparsePoly::monomial(15));
  CHECK(t[0] == 0);
  for (Elem x = 1; x < f.q(); ++x) CHECK(t[x] == 1);
}

TEST_CASE("inverse_plus_g adds the inverse") {
  const Field f(6);
  const SparsePoly g = parse_poly("5*x^5+x^3+2");
  const FuncTable t = inverse_plus_g(f, g);
  CHECK(t[0] == 2);
  for (Elem x = 1; x < f.q(); ++x) REQUIRE(f.mul(t[x] ^ eval(f, g, x), x) == 1);
}

TEST_CASE("power-of-two normalization") {
  CHECK(is_power_of_two(1));
  CHECK(is_power_of_two(64));
  CHECK_FALSE(is_power_of_two(0));
  CHECK_FALSE(is_power_of_two(6));
  CHECK(normalize_p2(parse_poly("x^8+x^6+3*x^4+x^3+x^2+x+7")).to_string() == "x^6+x^3");
  CHECK(is_affine_like(parse_poly("x^8+x^4+5*x+1")));
  CHECK_FALSE(is_affine_like(parse_poly("x^3")));
  CHECK(is_affine_like(SparsePoly{}));
}

TEST_CASE("affine transforms preserve differential uniformity") {
  std::mt19937_64 rng(9);
  const Field f(5);
  for (int i = 0; i < 10; ++i) {
    const FuncTable t = table_of(f, testing::random_poly(rng, 9, f.q()));
    const auto du = differential_uniformity(f, t, 1).delta;
    const Elem a = 1 + rng() % (f.q() - 1), b = rng() % f.q(), c = 1 + rng() % (f.q() - 1);
    CHECK(differential_uniformity(f, affine_transform(f, t, a, b, c), 1).delta == du);
    // Adding an affine function also preserves delta.
    const SparsePoly lin = parse_poly("x^4+3*x+1");
    FuncTable t2 = t;
    for (Elem x = 0; x < f.q(); ++x) t2[x] ^= eval(f, lin, x);
    CHECK(differential_uniformity(f, t2, 1).delta == du);
  }
  const FuncTable t = table_of(f, SparsePoly::monomial(3));
  CHECK_THROWS_AS(affine_transform(f, t, 0, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(affine_transform(f, t, 1, 1, 0), std::invalid_argument);
}

namespace {

// Orbits of a -> a * u^(d+1) by closure, no group theory.
std::vector<std::set<Elem>> brute_orbits(const Field& f, std::uint64_t d) {
  std::vector<int> seen(f.q(), 0);
  std::vector<std::set<Elem>> out;
  for (Elem a = 1; a < f.q(); ++a) {
    if (seen[a]) continue;
    std::set<Elem> orbit;
    for (Elem u = 1; u < f.q(); ++u) orbit.insert(f.mul(a, f.pow(u, d + 1)));
    for (Elem x : orbit) seen[x] = 1;
    out.push_back(orbit);
  }
  return out;
}

}  // namespace

TEST_CASE("binomial orbit representatives match a closure computation") {
  for (int m = 2; m <= 8; ++m) {
    const Field f(m);
    for (std::uint64_t d = 3; d <= 40; ++d) {
      CAPTURE(m);
      CAPTURE(d);
      const auto orbits = brute_orbits(f, d);
      std::vector<Elem> reps;
      for (const auto& o : orbits) {
        reps.push_back(*o.begin());
        REQUIRE(o.size() == binomial_orbit_size(f, d));
      }
      std::sort(reps.begin(), reps.end());
      REQUIRE(binomial_orbits(f, d) == reps);
      REQUIRE(reps.size() == std::gcd<std::uint64_t>(d + 1, f.order()));
    }
  }
}

TEST_CASE("binomials in one orbit are affine equivalent") {
  // a u^(d+1) x^d + x^(q-2) at x -> u x, scaled by u, is a x^d + x^(q-2).
  const Field f(6);
  const std::uint64_t d = 5;
  for (Elem a : binomial_orbits(f, d)) {
    const auto base = differential_uniformity(f, inverse_plus_g(f, SparsePoly::monomial(d, a)), 1);
    for (Elem u = 2; u < f.q(); u += 7) {
      const Elem b = f.mul(a, f.pow(u, d + 1));
      CHECK(differential_uniformity(f, inverse_plus_g(f, SparsePoly::monomial(d, b)), 1).delta ==
            base.delta);
    }
  }
}
