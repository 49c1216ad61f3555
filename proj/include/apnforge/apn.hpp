// Differential uniformity and APN predicates.
#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "apnforge/gf2m.hpp"
#include "apnforge/polyfun.hpp"

namespace apnforge {

struct DeltaReport {
  std::uint32_t delta = 0;  // max_{a != 0, b} #{x : f(x) + f(x+a) = b}
  Elem witness_a = 0;       // smallest a attaining delta
  Elem witness_b = 0;       // smallest b attaining delta in row witness_a
  bool is_apn = false;      // delta <= 2
  friend bool operator==(const DeltaReport&, const DeltaReport&) = default;
};

/// Per-thread counter buffer for one DDT row.  Counters are invalidated by
/// bumping a generation stamp instead of clearing, so a row costs O(q).
class DdtScratch {
public:
  explicit DdtScratch(std::uint32_t q) : stamp_(q, 0), count_(q, 0) {}

  void next_row() noexcept { ++gen_; }
  /// Increments the counter for b and returns its new value.
  std::uint32_t bump(Elem b) noexcept {
    if (stamp_[b] != gen_) {
      stamp_[b] = gen_;
      count_[b] = 0;
    }
    return ++count_[b];
  }

private:
  std::vector<std::uint32_t> stamp_;
  std::vector<std::uint32_t> count_;
  std::uint32_t gen_ = 0;
};

struct RowMax {
  std::uint32_t count = 0;  // solutions x, always even
  Elem b = 0;
};

/// Largest entry of DDT row a (a != 0), with the smallest b attaining it.
/// Throws std::invalid_argument for a = 0 or a table of the wrong size.
RowMax ddt_row_max(const Field& f, const FuncTable& table, Elem a, DdtScratch& scratch);
RowMax ddt_row_max(const Field& f, const FuncTable& table, Elem a);

/// Full scan over a = 1..q-1, rows split across `threads` OpenMP threads
/// (0 = runtime default).  Result does not depend on the thread count.
DeltaReport differential_uniformity(const Field& f, const FuncTable& table, int threads = 0);

/// Serial scan with early abort as soon as any count exceeds 2; rows are
/// visited in the order a = 1, 2, 3, ...
bool is_apn(const Field& f, const FuncTable& table);
bool is_apn(const Field& f, const FuncTable& table, DdtScratch& scratch);

/// Histogram {entry value -> number of (a, b) pairs with a != 0}.
std::map<std::uint32_t, std::uint64_t> differential_spectrum(const Field& f,
                                                             const FuncTable& table,
                                                             int threads = 0);

/// APN test through the surface f(x0)+f(x1)+f(x2)+f(x0+x1+x2) = 0: false iff
/// it has a rational point with pairwise distinct coordinates.  O(q^3 / 6).
/// Throws std::invalid_argument if f_poly has a constant term or a term
/// whose degree is a power of two.
bool is_apn_via_surface(const Field& f, const SparsePoly& f_poly);

}  // namespace apnforge
