#include <algorithm>
#include <sstream>
#include <stdexcept>

#include <omp.h>

#include "apnforge/surface.hpp"

namespace apnforge {

ProjPoint ProjPoint::normalized(const Field& f, std::array<Elem, 4> coords) {
  for (Elem c : coords) {
    if (c == 0) continue;
    const Elem s = f.inv(c);
    for (Elem& x : coords) x = f.mul(x, s);
    return ProjPoint(coords);
  }
  throw std::invalid_argument("(0,0,0,0) is not a projective point");
}

ProjPoint ProjPoint::from_normalized(std::array<Elem, 4> coords) {
  for (Elem c : coords) {
    if (c == 0) continue;
    if (c != 1) throw std::invalid_argument("ProjPoint: first nonzero coordinate must be 1");
    return ProjPoint(coords);
  }
  throw std::invalid_argument("(0,0,0,0) is not a projective point");
}

std::string ProjPoint::to_string() const {
  std::ostringstream os;
  os << std::hex << '(' << c_[0] << ',' << c_[1] << ',' << c_[2] << ',' << c_[3] << ')';
  return os.str();
}

std::array<TriPolyHom, 4> partials(const TriPolyHom& F) {
  return {F.partial(0), F.partial(1), F.partial(2), F.partial(3)};
}

std::vector<ProjPoint> enumerate_singular(const Field& f, const TriPolyHom& F, int threads) {
  if (F.max_coeff() >= f.q()) throw std::invalid_argument("enumerate_singular: coefficient outside field");
  const auto d = partials(F);
  const LastVarCollapse<4> collapse(F);
  const std::int64_t q = f.q();
  const std::int64_t prefixes = q * q + q + 1;  // (1,a,b), (0,1,b), (0,0,1)
  std::vector<ProjPoint> found;

  auto is_singular = [&](const std::array<Elem, 4>& p) {
    return d[0].eval(f, p) == 0 && d[1].eval(f, p) == 0 && d[2].eval(f, p) == 0 &&
           d[3].eval(f, p) == 0;
  };

#pragma omp parallel num_threads(threads > 0 ? threads : omp_get_max_threads())
  {
    RootScanner scanner(f, collapse.degree());
    std::vector<Elem> coeffs(collapse.degree() + 1);
    std::vector<Elem> zs;
    std::vector<ProjPoint> local;
#pragma omp for schedule(dynamic, 64) nowait
    for (std::int64_t i = 0; i < prefixes; ++i) {
      std::array<Elem, 3> prefix;
      if (i < q * q)
        prefix = {1, static_cast<Elem>(i / q), static_cast<Elem>(i % q)};
      else if (i < q * q + q)
        prefix = {0, 1, static_cast<Elem>(i - q * q)};
      else
        prefix = {0, 0, 1};
      collapse.collapse(f, prefix, coeffs);
      zs.clear();
      scanner.roots(coeffs, zs);
      for (Elem z : zs) {
        const std::array<Elem, 4> p{prefix[0], prefix[1], prefix[2], z};
        if (is_singular(p)) local.push_back(ProjPoint::from_normalized(p));
      }
    }
#pragma omp critical
    found.insert(found.end(), local.begin(), local.end());
  }
  const std::array<Elem, 4> last{0, 0, 0, 1};
  if (F.eval(f, last) == 0 && is_singular(last)) found.push_back(ProjPoint::from_normalized(last));
  std::sort(found.begin(), found.end());
  return found;
}

SparsePoly NormalCoeffs::to_poly() const {
  return SparsePoly({{3, a3}, {5, a5}, {6, a6}});
}

SparsePoly resultant_q(const Field& f, AppendixCase which, const NormalCoeffs& c) {
  if (std::max({c.a3, c.a5, c.a6}) >= f.q())
    throw std::invalid_argument("resultant_q: coefficient outside field");
  auto m = [&f](std::initializer_list<Elem> xs) {
    Elem r = 1;
    for (Elem x : xs) r = f.mul(r, x);
    return r;
  };
  auto p = [&f](Elem x, unsigned e) { return f.pow(x, e); };
  const Elem a3 = c.a3, a5 = c.a5, a6 = c.a6;
  std::vector<Term> terms;
  if (which == AppendixCase::Degree5) {
    if (a5 == 0) throw std::invalid_argument("resultant_q: degree-5 case needs a5 != 0");
    terms = {
        {12, p(a5, 3)},
        {10, m({a3, p(a5, 2)})},
        {8, m({p(a3, 2), a5})},
        {6, p(a3, 3)},
        {4, m({a3, a5})},
        {0, a5},
    };
  } else {
    if (a5 == 0 && a6 == 0)
      throw std::invalid_argument("resultant_q: degree-6 case needs (a5, a6) != (0, 0)");
    terms = {
        {12, m({a3, p(a5, 3), p(a6, 2)}) ^ p(a5, 6)},
        {10, m({p(a3, 2), p(a5, 2), p(a6, 2)}) ^ m({a3, p(a5, 5)})},
        {8, m({p(a3, 3), a5, p(a6, 2)}) ^ m({p(a3, 2), p(a5, 4)}) ^ m({a3, p(a6, 4)})},
        {6, m({p(a3, 4), p(a6, 2)}) ^ m({p(a3, 3), p(a5, 3)})},
        {4, m({a3, p(a5, 4)}) ^ p(a6, 4)},
        {0, p(a5, 4)},
    };
  }
  SparsePoly q(std::move(terms));
  if (q.empty()) throw std::invalid_argument("resultant_q: Q vanishes identically");
  return q;
}

Elem eval_q_homogeneous(const Field& f, const SparsePoly& q_poly, Elem x, Elem z) {
  Elem acc = 0;
  for (const Term& t : q_poly.terms()) {
    if (t.exp > 12) throw std::invalid_argument("eval_q_homogeneous: degree above 12");
    acc ^= f.mul(t.coeff, f.mul(f.pow(x, t.exp), f.pow(z, 12 - t.exp)));
  }
  return acc;
}

const char* case_name(SingularCase c) noexcept {
  switch (c) {
    case SingularCase::CoordZero: return "COORD_ZERO";
    case SingularCase::AllEqual: return "ALL_EQUAL";
    case SingularCase::PairEqual: return "PAIR_EQUAL";
    case SingularCase::SumZero: return "SUM_ZERO";
    case SingularCase::QRoot: return "Q_ROOT";
    case SingularCase::NoCase: return "NO_CASE";
  }
  return "?";
}

SingularCase CaseSet::primary() const noexcept {
  for (auto c : {SingularCase::CoordZero, SingularCase::AllEqual, SingularCase::PairEqual,
                 SingularCase::SumZero, SingularCase::QRoot})
    if (has(c)) return c;
  return SingularCase::NoCase;
}

CaseSet classify_singular(const Field& f, const ProjPoint& p, const NormalCoeffs& c) {
  CaseSet s;
  auto set = [&s](SingularCase k) { s.bits |= static_cast<std::uint8_t>(1u << static_cast<unsigned>(k)); };
  const Elem x0 = p[0], x1 = p[1], x2 = p[2], z = p[3];
  if (x0 == 0 || x1 == 0 || x2 == 0) set(SingularCase::CoordZero);
  if (x0 == x1 && x1 == x2) set(SingularCase::AllEqual);
  if (x0 == x1 || x1 == x2 || x0 == x2) set(SingularCase::PairEqual);
  if ((x0 ^ x1 ^ x2) == 0) set(SingularCase::SumZero);
  if (c.a5 != 0 || c.a6 != 0) {
    const SparsePoly q =
        resultant_q(f, c.a6 != 0 ? AppendixCase::Degree6 : AppendixCase::Degree5, c);
    if (eval_q_homogeneous(f, q, x0, z) == 0 && eval_q_homogeneous(f, q, x1, z) == 0 &&
        eval_q_homogeneous(f, q, x2, z) == 0)
      set(SingularCase::QRoot);
  }
  return s;
}

}  // namespace apnforge
