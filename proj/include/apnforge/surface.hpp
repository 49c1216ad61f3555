// The surface X' attached to x^(q-2) + g(x):
//
//   N(x0,x1,x2)   = g(x0) + g(x1) + g(x2) + g(x0+x1+x2)
//   phi           = N / ((x0+x1)(x1+x2)(x0+x2))
//   affine X'     : 1 + phi * x0 x1 x2 (x0+x1+x2) = 0
//   projective X' : the homogenization in (x0, x1, x2, z)
//
// Construction needs no field arithmetic: the multinomial expansion of
// (x0+x1+x2)^e and the divisions by x_i + x_j only ever add coefficients of g.
#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "apnforge/gf2m.hpp"
#include "apnforge/polyfun.hpp"
#include "apnforge/tripoly.hpp"

namespace apnforge {

/// g(x0) + g(x1) + g(x2) + g(x0+x1+x2).  A monomial x0^i x1^j x2^k of
/// (x0+x1+x2)^e survives mod 2 iff i, j, k are bitwise disjoint with i|j|k = e.
TriPoly assemble_numerator(const SparsePoly& g);

/// Exact quotient of the numerator by (x0+x1)(x1+x2)(x0+x2), divided in the
/// fixed order (x0+x1 in x0), (x0+x2 in x0), (x1+x2 in x1).  Throws
/// std::invalid_argument when g is affine-like (normalize_p2(g) empty).
TriPoly phi_poly(const SparsePoly& g);

/// 1 + phi * x0 x1 x2 (x0+x1+x2).
TriPoly surface_affine_poly(const SparsePoly& g);

/// Homogenized surface polynomial; its degree is deg g + 1 when deg g is
/// not a power of two.
TriPolyHom homogenize(const SparsePoly& g);

/// Degree of g after dropping affine and power-of-two terms; this is the
/// degree the surface actually sees.
std::uint64_t effective_degree(const SparsePoly& g);

/// #{(x0,x1,x2) in F_q^3 on affine X'}.  OpenMP over x0 slices.
std::uint64_t count_affine_points(const Field& f, const SparsePoly& g, int threads = 0);

/// Points of X' in the plane z = 0, counted over P^2(F_q).
std::uint64_t count_points_at_infinity(const Field& f, const SparsePoly& g, int threads = 0);

struct PointCounts {
  std::uint64_t affine = 0;
  std::uint64_t infinity = 0;
  std::uint64_t projective = 0;
  friend bool operator==(const PointCounts&, const PointCounts&) = default;
};

PointCounts count_projective_points(const Field& f, const SparsePoly& g, int threads = 0);

// Singular points ----------------------------------------------------------

/// Point of P^3 as (x0, x1, x2, z), first nonzero coordinate equal to 1.
class ProjPoint {
public:
  /// Scales to normal form; throws std::invalid_argument for (0,0,0,0).
  static ProjPoint normalized(const Field& f, std::array<Elem, 4> coords);
  /// Wraps coordinates that must already be normalized.
  static ProjPoint from_normalized(std::array<Elem, 4> coords);

  const std::array<Elem, 4>& coords() const noexcept { return c_; }
  Elem operator[](std::size_t i) const noexcept { return c_[i]; }
  std::string to_string() const;

  friend auto operator<=>(const ProjPoint&, const ProjPoint&) = default;

private:
  explicit ProjPoint(std::array<Elem, 4> c) : c_(c) {}
  std::array<Elem, 4> c_;
};

/// dF/dx0, dF/dx1, dF/dx2, dF/dz.
std::array<TriPolyHom, 4> partials(const TriPolyHom& F);

/// Normalized points of P^3(F_q) where F and all four partials vanish,
/// sorted lexicographically by coordinate value.
std::vector<ProjPoint> enumerate_singular(const Field& f, const TriPolyHom& F, int threads = 0);

/// Normal-form coefficients of g = a6 x^6 + a5 x^5 + a3 x^3.
struct NormalCoeffs {
  Elem a3 = 0;
  Elem a5 = 0;
  Elem a6 = 0;
  SparsePoly to_poly() const;
};

enum class AppendixCase { Degree5, Degree6 };

/// The univariate Q(x) (z = 1) whose roots carry the x-coordinates of the
/// singular points with x1 = x2 and P = 0.
///   degree 5 (needs a5 != 0):
///     a5^3 x^12 + a3 a5^2 x^10 + a3^2 a5 x^8 + a3^3 x^6 + a3 a5 x^4 + a5
///   degree 6 (needs (a5, a6) != (0, 0)):
///     (a3 a5^3 a6^2 + a5^6) x^12 + (a3^2 a5^2 a6^2 + a3 a5^5) x^10
///     + (a3^3 a5 a6^2 + a3^2 a5^4 + a3 a6^4) x^8 + (a3^4 a6^2 + a3^3 a5^3) x^6
///     + (a3 a5^4 + a6^4) x^4 + a5^4
/// Throws std::invalid_argument when the precondition fails or Q vanishes.
SparsePoly resultant_q(const Field& f, AppendixCase which, const NormalCoeffs& c);

/// Q read as a form of degree 12 in (x, z): sum_k c_k x^k z^(12-k).
Elem eval_q_homogeneous(const Field& f, const SparsePoly& q_poly, Elem x, Elem z);

enum class SingularCase : std::uint8_t {
  CoordZero = 0,  // some x_i = 0
  AllEqual,       // x0 = x1 = x2
  PairEqual,      // x_i = x_j for some i != j
  SumZero,        // x0 + x1 + x2 = 0
  QRoot,          // Q(x_i, z) = 0 for i = 0, 1, 2
  NoCase,
};

const char* case_name(SingularCase c) noexcept;

/// Every case predicate a point satisfies, plus the first match in the
/// order CoordZero, AllEqual, PairEqual, SumZero, QRoot.
struct CaseSet {
  std::uint8_t bits = 0;
  bool has(SingularCase c) const noexcept {
    return (bits >> static_cast<unsigned>(c)) & 1u;
  }
  SingularCase primary() const noexcept;
};

/// QRoot is only tested when Q is defined (a5 != 0 or a6 != 0).
CaseSet classify_singular(const Field& f, const ProjPoint& p, const NormalCoeffs& c);

}  // namespace apnforge
