#include "apnforge/surface.hpp"

#include <stdexcept>

#include <omp.h>

namespace apnforge {
namespace {

int resolve_threads(int threads) { return threads > 0 ? threads : omp_get_max_threads(); }

void require_poly_fits(const Field& f, const SparsePoly& g) { require_fits(f, g); }

}  // namespace

TriPoly assemble_numerator(const SparsePoly& g) {
  TriPoly n;
  for (const Term& t : g.terms()) {
    const std::uint64_t e = t.exp;
    if (e > 0xffffffffull) throw std::invalid_argument("assemble_numerator: exponent too large");
    const auto e32 = static_cast<std::uint32_t>(e);
    n.add_term({e32, 0, 0}, t.coeff);
    n.add_term({0, e32, 0}, t.coeff);
    n.add_term({0, 0, e32}, t.coeff);
    // i ranges over submasks of e, j over submasks of e ^ i.
    for (std::uint32_t i = e32;; i = (i - 1) & e32) {
      const std::uint32_t rest = e32 ^ i;
      for (std::uint32_t j = rest;; j = (j - 1) & rest) {
        n.add_term({i, j, rest ^ j}, t.coeff);
        if (j == 0) break;
      }
      if (i == 0) break;
    }
  }
  return n;
}

TriPoly phi_poly(const SparsePoly& g) {
  if (is_affine_like(g))
    throw std::invalid_argument("phi_poly: g = " + g.to_string() + " is affine plus squares");
  TriPoly p = assemble_numerator(g);
  p = divide_by_sum(p, 0, 1);
  p = divide_by_sum(p, 0, 2);
  p = divide_by_sum(p, 1, 2);
  return p;
}

TriPoly surface_affine_poly(const SparsePoly& g) {
  const TriPoly phi = phi_poly(g);
  // x0 x1 x2 (x0 + x1 + x2)
  TriPoly lines;
  lines.add_term({2, 1, 1}, 1);
  lines.add_term({1, 2, 1}, 1);
  lines.add_term({1, 1, 2}, 1);
  TriPoly s = phi.times_01(lines);
  s.add_term({0, 0, 0}, 1);
  return s;
}

TriPolyHom homogenize(const SparsePoly& g) {
  const TriPoly s = surface_affine_poly(g);
  return homogenize_to(s, s.total_degree());
}

std::uint64_t effective_degree(const SparsePoly& g) { return normalize_p2(g).degree(); }

std::uint64_t count_affine_points(const Field& f, const SparsePoly& g, int threads) {
  require_poly_fits(f, g);
  const TriPoly s = surface_affine_poly(g);
  const LastVarCollapse<3> collapse(s);
  const std::int64_t q = f.q();
  std::uint64_t total = 0;
#pragma omp parallel num_threads(resolve_threads(threads)) reduction(+ : total)
  {
    RootScanner scanner(f, collapse.degree());
    std::vector<Elem> coeffs(collapse.degree() + 1);
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t x0 = 0; x0 < q; ++x0) {
      std::uint64_t slice = 0;
      for (Elem x1 = 0; x1 < f.q(); ++x1) {
        collapse.collapse(f, {static_cast<Elem>(x0), x1}, coeffs);
        slice += scanner.count_roots(coeffs);
      }
      total += slice;
    }
  }
  return total;
}

std::uint64_t count_points_at_infinity(const Field& f, const SparsePoly& g, int threads) {
  require_poly_fits(f, g);
  const TriPolyHom F = homogenize(g);
  TriPoly top;
  for (const auto& [mono, c] : F.monos())
    if (mono[3] == 0) top.add_term({mono[0], mono[1], mono[2]}, c);
  const LastVarCollapse<3> collapse(top);
  const std::int64_t q = f.q();
  std::uint64_t total = 0;
  // Prefixes (1, a) for a in F_q, then (0, 1); the point (0, 0, 1) separately.
#pragma omp parallel num_threads(resolve_threads(threads)) reduction(+ : total)
  {
    RootScanner scanner(f, collapse.degree());
    std::vector<Elem> coeffs(collapse.degree() + 1);
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i <= q; ++i) {
      const std::array<Elem, 2> prefix =
          i < q ? std::array<Elem, 2>{1, static_cast<Elem>(i)} : std::array<Elem, 2>{0, 1};
      collapse.collapse(f, prefix, coeffs);
      total += scanner.count_roots(coeffs);
    }
  }
  if (top.eval(f, {0, 0, 1}) == 0) ++total;
  return total;
}

PointCounts count_projective_points(const Field& f, const SparsePoly& g, int threads) {
  PointCounts c;
  c.affine = count_affine_points(f, g, threads);
  c.infinity = count_points_at_infinity(f, g, threads);
  c.projective = c.affine + c.infinity;
  return c;
}

}  // namespace apnforge
