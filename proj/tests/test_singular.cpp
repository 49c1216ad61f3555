#include <doctest.h>

#include <random>

#include "apnforge/reference.hpp"
#include "apnforge/surface.hpp"
#include "support.hpp"

using namespace apnforge;

namespace {

std::vector<ProjPoint> points(std::initializer_list<std::array<Elem, 4>> list) {
  std::vector<ProjPoint> out;
  for (const auto& c : list) out.push_back(ProjPoint::from_normalized(c));
  return out;
}

Elem q_at(const Field& f, const SparsePoly& q, Elem x) { return eval_q_homogeneous(f, q, x, 1); }

}  // namespace

TEST_CASE("projective points normalize") {
  const Field f(3);
  const ProjPoint p = ProjPoint::normalized(f, {0, 3, 5, 7});
  CHECK(p[0] == 0);
  CHECK(p[1] == 1);
  CHECK(p.to_string() == "(0,1," + [&] {
          char b[8];
          std::snprintf(b, sizeof b, "%x", f.mul(5, f.inv(3)));
          return std::string(b);
        }() + "," + [&] {
          char b[8];
          std::snprintf(b, sizeof b, "%x", f.mul(7, f.inv(3)));
          return std::string(b);
        }() + ")");
  CHECK_THROWS_AS(ProjPoint::normalized(f, {0, 0, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(ProjPoint::from_normalized({0, 2, 1, 1}), std::invalid_argument);
  CHECK(ProjPoint::from_normalized({1, 1, 1, 0}) < ProjPoint::from_normalized({1, 1, 1, 1}));
}

TEST_CASE("partial derivatives follow the monomial rule") {
  TriPolyHom F;
  F.add_term({3, 2, 0, 1}, 5);
  F.add_term({1, 1, 1, 3}, 1);
  const auto d = partials(F);
  TriPolyHom d0;
  d0.add_term({2, 2, 0, 1}, 5);
  d0.add_term({0, 1, 1, 3}, 1);
  CHECK(d[0] == d0);
  TriPolyHom d3;
  d3.add_term({3, 2, 0, 0}, 5);
  d3.add_term({1, 1, 1, 2}, 1);
  CHECK(d[3] == d3);
}

TEST_CASE("Euler identity for the surface") {
  // sum x_i dF/dx_i = deg(F) F; only the parity of deg F survives.
  std::mt19937_64 rng(6);
  const Field f(5);
  for (const char* s : {"x^3", "x^5+x^3", "x^6+x^5+x^3", "x^9+3*x^7+x^5", "x^10+x^3"}) {
    const TriPolyHom F = homogenize(parse_poly(s));
    const auto d = partials(F);
    const bool odd = F.total_degree() % 2 == 1;
    for (int k = 0; k < 300; ++k) {
      const std::array<Elem, 4> p{Elem(rng() % f.q()), Elem(rng() % f.q()), Elem(rng() % f.q()),
                                  Elem(rng() % f.q())};
      Elem sum = 0;
      for (std::size_t i = 0; i < 4; ++i) sum ^= f.mul(p[i], d[i].eval(f, p));
      REQUIRE(sum == (odd ? F.eval(f, p) : 0));
    }
  }
}

TEST_CASE("singular points match the exhaustive scan") {
  std::mt19937_64 rng(10);
  for (int m = 2; m <= 4; ++m) {
    const Field f(m);
    std::vector<SparsePoly> gs{parse_poly("x^3"), parse_poly("x^5+x^3"), parse_poly("x^6+x^5+x^3"),
                               parse_poly("x^7")};
    for (int i = 0; i < 3; ++i) gs.push_back(testing::random_normalized(rng, 9, f.q()));
    for (const auto& g : gs) {
      CAPTURE(m);
      CAPTURE(g.to_string());
      const TriPolyHom F = homogenize(g);
      CHECK(enumerate_singular(f, F, 2) == reference::enumerate_singular(f, F));
    }
  }
}

TEST_CASE("singular points of x^5+x^3 over GF(8)") {
  const Field f(3);
  const auto got = enumerate_singular(f, homogenize(parse_poly("x^5+x^3")));
  CHECK(got == points({{0, 0, 1, 0},
                       {0, 1, 0, 0},
                       {0, 1, 1, 0},
                       {1, 0, 0, 0},
                       {1, 0, 1, 0},
                       {1, 1, 0, 0},
                       {1, 1, 1, 0},
                       {1, 1, 1, 1}}));
  const NormalCoeffs c{1, 1, 0};
  for (const ProjPoint& p : got) CHECK(classify_singular(f, p, c).primary() != SingularCase::NoCase);
  CHECK(classify_singular(f, ProjPoint::from_normalized({1, 1, 1, 1}), c).primary() == SingularCase::AllEqual);
  CHECK(classify_singular(f, ProjPoint::from_normalized({1, 0, 1, 0}), c).primary() == SingularCase::CoordZero);
  const CaseSet s = classify_singular(f, ProjPoint::from_normalized({1, 1, 1, 0}), c);
  CHECK(s.has(SingularCase::AllEqual));
  CHECK(s.has(SingularCase::PairEqual));
  CHECK_FALSE(s.has(SingularCase::SumZero));
}

TEST_CASE("Q formulas") {
  const Field f(4);
  CHECK(resultant_q(f, AppendixCase::Degree5, {0, 1, 0}).to_string() == "x^12+1");
  CHECK(resultant_q(f, AppendixCase::Degree5, {1, 1, 0}).to_string() ==
        "x^12+x^10+x^8+x^6+x^4+1");
  CHECK_THROWS_AS(resultant_q(f, AppendixCase::Degree5, {1, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(resultant_q(f, AppendixCase::Degree6, {1, 0, 0}), std::invalid_argument);
  // With a6 = 0 the degree-6 form is a5^3 times the degree-5 form.
  for (Elem a3 = 0; a3 <= 1; ++a3)
    for (Elem a5 = 1; a5 < f.q(); ++a5) {
      const SparsePoly q5 = resultant_q(f, AppendixCase::Degree5, {a3, a5, 0});
      const SparsePoly q6 = resultant_q(f, AppendixCase::Degree6, {a3, a5, 0});
      std::vector<Term> scaled;
      for (const Term& t : q5.terms()) scaled.push_back({t.exp, f.mul(t.coeff, f.pow(a5, 3))});
      CHECK(q6 == SparsePoly(scaled));
    }
  // Homogeneous reading: Q(x, 0) = lead * x^12.
  const SparsePoly q = resultant_q(f, AppendixCase::Degree5, {1, 3, 0});
  CHECK(eval_q_homogeneous(f, q, 1, 0) == q.coeff(12));
  CHECK(eval_q_homogeneous(f, q, 5, 1) == eval(f, q, 5));
}

TEST_CASE("Q vanishes on solutions of the degree-5 reduced system") {
  // a5 (x0^2 + x0 x2 + x2^2) + a3 z^2 = 0 and
  // a5 x0^2 x2^2 (x0 + x2)^2 + a3 x0^2 x2^2 z^2 + z^6 = 0, solved by brute force.
  for (int m = 2; m <= 5; ++m) {
    const Field f(m);
    for (Elem a3 = 0; a3 <= 1; ++a3)
      for (Elem a5 = 1; a5 < f.q(); ++a5) {
        const SparsePoly q = resultant_q(f, AppendixCase::Degree5, {a3, a5, 0});
        for (Elem z : {Elem{0}, Elem{1}})
          for (Elem x0 = 0; x0 < f.q(); ++x0)
            for (Elem x2 = 0; x2 < f.q(); ++x2) {
              const Elem s = f.sqr(x0) ^ f.mul(x0, x2) ^ f.sqr(x2);
              const Elem e1 = f.mul(a5, s) ^ f.mul(a3, f.sqr(z));
              const Elem p = f.mul(x0, x2);
              const Elem e2 = f.mul(a5, f.sqr(f.mul(p, x0 ^ x2))) ^ f.mul(a3, f.sqr(f.mul(p, z))) ^
                              f.pow(z, 6);
              if (e1 != 0 || e2 != 0) continue;
              CAPTURE(m);
              REQUIRE(eval_q_homogeneous(f, q, x0, z) == 0);
              REQUIRE(eval_q_homogeneous(f, q, x2, z) == 0);
            }
      }
  }
}

TEST_CASE("pair-equal singular points off the other cases are Q roots") {
  for (int m = 2; m <= 4; ++m) {
    const Field f(m);
    for (AppendixCase which : {AppendixCase::Degree5, AppendixCase::Degree6})
      for (Elem a3 = 0; a3 <= 1; ++a3)
        for (Elem a5 = 0; a5 < f.q(); ++a5)
          for (Elem a6 = 0; a6 < f.q(); ++a6) {
            if ((which == AppendixCase::Degree5) != (a6 == 0) || (a5 == 0 && a6 == 0)) continue;
            const NormalCoeffs c{a3, a5, a6};
            const SparsePoly q = resultant_q(f, which, c);
            for (const ProjPoint& p : enumerate_singular(f, homogenize(c.to_poly()), 1)) {
              const CaseSet cs = classify_singular(f, p, c);
              REQUIRE(cs.primary() != SingularCase::NoCase);
              if (p[3] == 0 || cs.has(SingularCase::CoordZero) || cs.has(SingularCase::AllEqual) ||
                  !cs.has(SingularCase::PairEqual))
                continue;
              // Rescale to z = 1 and check every coordinate.
              const Elem zi = f.inv(p[3]);
              for (std::size_t i = 0; i < 3; ++i) REQUIRE(q_at(f, q, f.mul(p[i], zi)) == 0);
            }
          }
  }
}

TEST_CASE("Q roots with a3 = 0 over GF(16) are twelfth roots of unity") {
  const Field f(4);
  const NormalCoeffs c{0, 1, 0};
  for (const ProjPoint& p : enumerate_singular(f, homogenize(c.to_poly()))) {
    const CaseSet cs = classify_singular(f, p, c);
    if (cs.primary() != SingularCase::QRoot) continue;
    for (std::size_t i = 0; i < 3; ++i)
      CHECK((f.pow(p[i], 12) ^ f.pow(p[3], 12)) == 0);
  }
}

TEST_CASE("case names") {
  CHECK(std::string(case_name(SingularCase::CoordZero)) == "COORD_ZERO");
  CHECK(std::string(case_name(SingularCase::QRoot)) == "Q_ROOT");
  CHECK(std::string(case_name(SingularCase::NoCase)) == "NO_CASE");
  CHECK(CaseSet{}.primary() == SingularCase::NoCase);
}
