#include "apnforge/apn.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include <omp.h>

namespace apnforge {
namespace {

void check_table(const Field& f, const FuncTable& table) {
  if (table.size() != f.q()) throw std::invalid_argument("table size does not match field");
}

int resolve_threads(int threads) { return threads > 0 ? threads : omp_get_max_threads(); }

// Visits each unordered pair {x, x^a} once: x ranges over the elements whose
// bit at a's top bit is clear.
template <class Fn>
void for_each_pair(std::uint32_t q, Elem a, Fn&& fn) {
  const Elem top = std::bit_floor(a);
  for (Elem hi = 0; hi < q; hi += 2 * top)
    for (Elem lo = 0; lo < top; ++lo) fn(hi | lo);
}

}  // namespace

RowMax ddt_row_max(const Field& f, const FuncTable& table, Elem a, DdtScratch& scratch) {
  check_table(f, table);
  if (a == 0 || a >= f.q()) throw std::invalid_argument("ddt_row_max needs 0 < a < q");
  scratch.next_row();
  RowMax best{0, 0};
  for_each_pair(f.q(), a, [&](Elem x) {
    const Elem b = table[x] ^ table[x ^ a];
    const std::uint32_t c = scratch.bump(b);
    if (c > best.count || (c == best.count && b < best.b)) best = {c, b};
  });
  best.count *= 2;
  return best;
}

RowMax ddt_row_max(const Field& f, const FuncTable& table, Elem a) {
  DdtScratch scratch(f.q());
  return ddt_row_max(f, table, a, scratch);
}

DeltaReport differential_uniformity(const Field& f, const FuncTable& table, int threads) {
  check_table(f, table);
  const std::int64_t q = f.q();
  std::vector<RowMax> rows(f.q());
#pragma omp parallel num_threads(resolve_threads(threads))
  {
    DdtScratch scratch(f.q());
#pragma omp for schedule(static)
    for (std::int64_t a = 1; a < q; ++a)
      rows[static_cast<std::size_t>(a)] = ddt_row_max(f, table, static_cast<Elem>(a), scratch);
  }
  DeltaReport rep;
  for (Elem a = 1; a < f.q(); ++a) {
    if (rows[a].count > rep.delta) {
      rep.delta = rows[a].count;
      rep.witness_a = a;
      rep.witness_b = rows[a].b;
    }
  }
  rep.is_apn = rep.delta <= 2;
  return rep;
}

bool is_apn(const Field& f, const FuncTable& table, DdtScratch& scratch) {
  check_table(f, table);
  for (Elem a = 1; a < f.q(); ++a) {
    scratch.next_row();
    const Elem top = std::bit_floor(a);
    for (Elem hi = 0; hi < f.q(); hi += 2 * top)
      for (Elem lo = 0; lo < top; ++lo) {
        const Elem x = hi | lo;
        if (scratch.bump(table[x] ^ table[x ^ a]) > 1) return false;
      }
  }
  return true;
}

bool is_apn(const Field& f, const FuncTable& table) {
  DdtScratch scratch(f.q());
  return is_apn(f, table, scratch);
}

std::map<std::uint32_t, std::uint64_t> differential_spectrum(const Field& f,
                                                             const FuncTable& table,
                                                             int threads) {
  check_table(f, table);
  const std::int64_t q = f.q();
  std::map<std::uint32_t, std::uint64_t> total;
#pragma omp parallel num_threads(resolve_threads(threads))
  {
    std::vector<std::uint32_t> row(f.q());
    std::map<std::uint32_t, std::uint64_t> local;
#pragma omp for schedule(static)
    for (std::int64_t ai = 1; ai < q; ++ai) {
      const Elem a = static_cast<Elem>(ai);
      std::fill(row.begin(), row.end(), 0);
      for (Elem x = 0; x < f.q(); ++x) ++row[table[x] ^ table[x ^ a]];
      for (std::uint32_t c : row) ++local[c];
    }
#pragma omp critical
    for (auto [k, v] : local) total[k] += v;
  }
  return total;
}

bool is_apn_via_surface(const Field& f, const SparsePoly& f_poly) {
  for (const Term& t : f_poly.terms())
    if (t.exp == 0 || is_power_of_two(t.exp))
      throw std::invalid_argument("is_apn_via_surface: " + f_poly.to_string() +
                                  " has a constant or power-of-two term");
  const FuncTable t = table_of(f, f_poly);
  const Elem q = f.q();
  // Symmetric in (x0, x1, x2): only x0 < x1 < x2 is scanned.
  for (Elem x0 = 0; x0 < q; ++x0)
    for (Elem x1 = x0 + 1; x1 < q; ++x1) {
      const Elem s = t[x0] ^ t[x1];
      const Elem y = x0 ^ x1;
      for (Elem x2 = x1 + 1; x2 < q; ++x2)
        if ((t[x2] ^ t[x2 ^ y]) == s) return false;
    }
  return true;
}

}  // namespace apnforge
