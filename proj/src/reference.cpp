#include "apnforge/reference.hpp"

#include <algorithm>

namespace apnforge::reference {

std::vector<std::vector<std::uint32_t>> ddt(const Field& f, const FuncTable& table) {
  const Elem q = f.q();
  std::vector<std::vector<std::uint32_t>> out(q, std::vector<std::uint32_t>(q, 0));
  for (Elem a = 0; a < q; ++a)
    for (Elem x = 0; x < q; ++x) ++out[a][table[x] ^ table[x ^ a]];
  return out;
}

DeltaReport differential_uniformity(const Field& f, const FuncTable& table) {
  const auto t = ddt(f, table);
  DeltaReport rep;
  for (Elem a = 1; a < f.q(); ++a)
    for (Elem b = 0; b < f.q(); ++b)
      if (t[a][b] > rep.delta) {
        rep.delta = t[a][b];
        rep.witness_a = a;
        rep.witness_b = b;
      }
  rep.is_apn = rep.delta <= 2;
  return rep;
}

std::uint64_t count_affine_zeros(const Field& f, const TriPoly& s) {
  std::uint64_t n = 0;
  for (Elem x0 = 0; x0 < f.q(); ++x0)
    for (Elem x1 = 0; x1 < f.q(); ++x1)
      for (Elem x2 = 0; x2 < f.q(); ++x2) n += s.eval(f, {x0, x1, x2}) == 0;
  return n;
}

namespace {

template <class Fn>
void for_each_p3_point(const Field& f, Fn&& fn) {
  const Elem q = f.q();
  for (Elem a = 0; a < q; ++a)
    for (Elem b = 0; b < q; ++b)
      for (Elem c = 0; c < q; ++c) fn(std::array<Elem, 4>{1, a, b, c});
  for (Elem b = 0; b < q; ++b)
    for (Elem c = 0; c < q; ++c) fn(std::array<Elem, 4>{0, 1, b, c});
  for (Elem c = 0; c < q; ++c) fn(std::array<Elem, 4>{0, 0, 1, c});
  fn(std::array<Elem, 4>{0, 0, 0, 1});
}

}  // namespace

std::uint64_t count_projective_zeros(const Field& f, const TriPolyHom& F) {
  std::uint64_t n = 0;
  for_each_p3_point(f, [&](const std::array<Elem, 4>& p) { n += F.eval(f, p) == 0; });
  return n;
}

std::uint64_t count_infinity_by_decomposition(const Field& f, const SparsePoly& g) {
  const TriPoly phi = phi_poly(g);
  const TriPoly top = phi.component(phi.total_degree());
  const Elem q = f.q();
  std::uint64_t off_lines = 0;
  auto visit = [&](Elem x0, Elem x1, Elem x2) {
    if (x0 == 0 || x1 == 0 || x2 == 0 || (x0 ^ x1 ^ x2) == 0) return;
    off_lines += top.eval(f, {x0, x1, x2}) == 0;
  };
  for (Elem a = 0; a < q; ++a)
    for (Elem b = 0; b < q; ++b) visit(1, a, b);
  for (Elem b = 0; b < q; ++b) visit(0, 1, b);
  visit(0, 0, 1);
  return 4ull * q - 2 + off_lines;
}

std::vector<ProjPoint> enumerate_singular(const Field& f, const TriPolyHom& F) {
  const auto d = partials(F);
  std::vector<ProjPoint> out;
  for_each_p3_point(f, [&](const std::array<Elem, 4>& p) {
    if (F.eval(f, p) == 0 && d[0].eval(f, p) == 0 && d[1].eval(f, p) == 0 &&
        d[2].eval(f, p) == 0 && d[3].eval(f, p) == 0)
      out.push_back(ProjPoint::from_normalized(p));
  });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace apnforge::reference
