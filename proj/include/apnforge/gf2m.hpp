// Arithmetic in GF(2^m), 2 <= m <= 25, polynomial basis.
//
// Elements are plain machine words holding the coefficient bits of a
// polynomial of degree < m.  Addition is XOR.  Multiplication is a carryless
// product reduced modulo the field's reduction polynomial; for m <= 16 a
// log/antilog table is built at construction and used on the hot paths (the
// table path is bit-identical to the carryless path, see tests/test_gf2m.cpp).
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace apnforge {

using Elem = std::uint32_t;

inline constexpr int kMinDegree = 2;
inline constexpr int kMaxDegree = 25;
inline constexpr int kMaxLogTableDegree = 16;

/// Smallest (as an integer) irreducible polynomial of degree m over GF(2).
std::uint32_t default_reduction_poly(int m);

/// Irreducibility over GF(2) (Rabin's test).  `poly` must be nonzero.
bool is_irreducible_gf2(std::uint64_t poly);

class Field {
public:
  /// Throws std::invalid_argument on m out of range, wrong degree or a
  /// reducible polynomial.
  explicit Field(int m, std::optional<std::uint32_t> red_poly = std::nullopt);

  int m() const noexcept { return m_; }
  std::uint32_t q() const noexcept { return q_; }
  std::uint32_t order() const noexcept { return q_ - 1; }
  std::uint32_t red_poly() const noexcept { return poly_; }
  bool has_log_tables() const noexcept { return tables_ != nullptr; }

  Elem mul(Elem a, Elem b) const noexcept {
    if (tables_) {
      if (a == 0 || b == 0) return 0;
      return tables_->exp[tables_->log[a] + tables_->log[b]];
    }
    return mul_carryless(a, b);
  }
  Elem sqr(Elem a) const noexcept { return mul(a, a); }

  /// Reference product, never uses tables.
  Elem mul_carryless(Elem a, Elem b) const noexcept;

  /// a^e by square-and-multiply (or the log table when present); 0^0 = 1.
  Elem pow(Elem a, std::uint64_t e) const noexcept;
  Elem pow_square_multiply(Elem a, std::uint64_t e) const noexcept;

  /// Multiplicative inverse; throws std::domain_error for a = 0.
  Elem inv(Elem a) const;

  /// A fixed element of multiplicative order q-1.
  Elem generator() const noexcept { return generator_; }

  /// Multiplicative order of a != 0.
  std::uint64_t element_order(Elem a) const;

  /// Prime divisors of q-1, ascending.
  const std::vector<std::uint64_t>& order_prime_factors() const noexcept {
    return order_factors_;
  }

  // Direct table access for kernels.  Only valid when has_log_tables().
  // exp has length 2(q-1) so that log a + log b never needs a reduction.
  std::span<const std::uint32_t> log_table() const noexcept { return tables_->log; }
  std::span<const Elem> exp_table() const noexcept { return tables_->exp; }

  std::string describe() const;

private:
  struct Tables {
    std::vector<std::uint32_t> log;
    std::vector<Elem> exp;
  };

  int m_;
  std::uint32_t q_;
  std::uint32_t poly_;
  Elem generator_ = 0;
  std::vector<std::uint64_t> order_factors_;
  std::shared_ptr<const Tables> tables_;
};

/// Reads "m:hex_bits" lines ('#' starts a comment).  Throws
/// std::runtime_error on unreadable files or malformed lines.
std::map<int, std::uint32_t> load_poly_overrides(const std::string& path);

/// Field for m using an override from `overrides` when present.
Field make_field(int m, const std::map<int, std::uint32_t>& overrides = {});

}  // namespace apnforge
