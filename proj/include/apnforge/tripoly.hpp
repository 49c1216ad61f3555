// Sparse multivariate polynomials over GF(2^m) and the per-slice root
// scanner used by the point-counting kernels.
#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "apnforge/gf2m.hpp"

namespace apnforge {

template <std::size_t N>
class MultiPoly {
public:
  using Mono = std::array<std::uint32_t, N>;
  using Map = std::map<Mono, Elem>;

  MultiPoly() = default;

  static MultiPoly constant(Elem c) {
    MultiPoly p;
    p.add_term(Mono{}, c);
    return p;
  }
  static MultiPoly monomial(Mono mono, Elem c = 1) {
    MultiPoly p;
    p.add_term(mono, c);
    return p;
  }

  /// Adds c * mono (XOR into the existing coefficient).
  void add_term(const Mono& mono, Elem c) {
    if (c == 0) return;
    auto [it, inserted] = monos_.try_emplace(mono, c);
    if (!inserted) {
      it->second ^= c;
      if (it->second == 0) monos_.erase(it);
    }
  }

  const Map& monos() const noexcept { return monos_; }
  bool is_zero() const noexcept { return monos_.empty(); }
  std::size_t size() const noexcept { return monos_.size(); }

  Elem coeff(const Mono& mono) const {
    auto it = monos_.find(mono);
    return it == monos_.end() ? 0 : it->second;
  }

  static std::uint32_t degree_of(const Mono& mono) {
    std::uint32_t s = 0;
    for (auto e : mono) s += e;
    return s;
  }

  /// Total degree; 0 for the zero polynomial.
  std::uint32_t total_degree() const {
    std::uint32_t d = 0;
    for (const auto& [mono, c] : monos_) d = std::max(d, degree_of(mono));
    return d;
  }

  std::uint32_t degree_in(std::size_t var) const {
    std::uint32_t d = 0;
    for (const auto& [mono, c] : monos_) d = std::max(d, mono[var]);
    return d;
  }

  bool is_homogeneous() const {
    if (monos_.empty()) return true;
    const std::uint32_t d = degree_of(monos_.begin()->first);
    for (const auto& [mono, c] : monos_)
      if (degree_of(mono) != d) return false;
    return true;
  }

  /// Homogeneous component of the given degree.
  MultiPoly component(std::uint32_t degree) const {
    MultiPoly out;
    for (const auto& [mono, c] : monos_)
      if (degree_of(mono) == degree) out.monos_.emplace(mono, c);
    return out;
  }

  MultiPoly& operator+=(const MultiPoly& o) {
    for (const auto& [mono, c] : o.monos_) add_term(mono, c);
    return *this;
  }
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }

  /// Product with a monomial.
  MultiPoly shifted(const Mono& by) const {
    MultiPoly out;
    for (const auto& [mono, k] : monos_) {
      Mono m2 = mono;
      for (std::size_t i = 0; i < N; ++i) m2[i] += by[i];
      out.monos_.emplace(m2, k);
    }
    return out;
  }

  /// Product where every coefficient of one side is 1 (no field needed).
  MultiPoly times_01(const MultiPoly& other) const {
    MultiPoly out;
    for (const auto& [mb, cb] : other.monos_) {
      if (cb != 1) throw std::invalid_argument("times_01 needs a 0/1 factor");
      for (const auto& [ma, ca] : monos_) {
        Mono m2 = ma;
        for (std::size_t i = 0; i < N; ++i) m2[i] += mb[i];
        out.add_term(m2, ca);
      }
    }
    return out;
  }

  /// General product over the field.
  MultiPoly times(const Field& f, const MultiPoly& other) const {
    MultiPoly out;
    for (const auto& [mb, cb] : other.monos_)
      for (const auto& [ma, ca] : monos_) {
        Mono m2 = ma;
        for (std::size_t i = 0; i < N; ++i) m2[i] += mb[i];
        out.add_term(m2, f.mul(ca, cb));
      }
    return out;
  }

  /// Formal partial derivative in characteristic 2: monomials with an even
  /// exponent in `var` vanish.
  MultiPoly partial(std::size_t var) const {
    MultiPoly out;
    for (const auto& [mono, c] : monos_) {
      if ((mono[var] & 1u) == 0) continue;
      Mono m2 = mono;
      --m2[var];
      out.add_term(m2, c);
    }
    return out;
  }

  /// Renames variable i to perm[i].
  MultiPoly permuted(const std::array<std::size_t, N>& perm) const {
    MultiPoly out;
    for (const auto& [mono, c] : monos_) {
      Mono m2{};
      for (std::size_t i = 0; i < N; ++i) m2[perm[i]] = mono[i];
      out.add_term(m2, c);
    }
    return out;
  }

  Elem eval(const Field& f, const std::array<Elem, N>& point) const {
    Elem acc = 0;
    for (const auto& [mono, c] : monos_) {
      Elem t = c;
      for (std::size_t i = 0; i < N && t != 0; ++i)
        if (mono[i] != 0) t = f.mul(t, f.pow(point[i], mono[i]));
      acc ^= t;
    }
    return acc;
  }

  /// Coefficients up to q-1 (checks membership in a field).
  Elem max_coeff() const {
    Elem m = 0;
    for (const auto& [mono, c] : monos_) m = std::max(m, c);
    return m;
  }

  friend bool operator==(const MultiPoly&, const MultiPoly&) = default;

private:
  Map monos_;
};

using TriPoly = MultiPoly<3>;
using TriPolyHom = MultiPoly<4>;

std::string to_string(const TriPoly& p);
std::string to_string(const TriPolyHom& p);

/// Drops z (the last variable): F(x0, x1, x2, 1).
TriPoly dehomogenize(const TriPolyHom& p);

/// Multiplies every monomial by z^(degree - deg); throws if some monomial
/// already exceeds `degree`.
TriPolyHom homogenize_to(const TriPoly& p, std::uint32_t degree);

/// Exact division by (x_var + x_other), as polynomials in x_var.  Throws
/// std::logic_error when the remainder is nonzero.
TriPoly divide_by_sum(const TriPoly& p, std::size_t var, std::size_t other);

/// Evaluates a univariate polynomial at every element of the field.  One
/// scanner per thread: it owns the accumulator buffer.
class RootScanner {
public:
  RootScanner(const Field& f, std::uint32_t max_degree);

  /// Number of x in F_q with sum_k coeffs[k] x^k = 0.
  std::uint64_t count_roots(std::span<const Elem> coeffs);
  /// Appends those roots to `out` in increasing order.
  void roots(std::span<const Elem> coeffs, std::vector<Elem>& out);

private:
  void fill(std::span<const Elem> coeffs);

  const Field& f_;
  std::uint32_t max_degree_;
  // lpow_[k * q + x] = k * log(x) mod (q - 1), x >= 1.
  std::vector<std::uint32_t> lpow_;
  std::vector<Elem> acc_;
};

/// Collapses an N-variate polynomial to a univariate polynomial in the last
/// variable once the first N-1 coordinates are fixed.
template <std::size_t N>
class LastVarCollapse {
public:
  explicit LastVarCollapse(const MultiPoly<N>& p) : degree_(p.degree_in(N - 1)) {
    for (const auto& [mono, c] : p.monos()) {
      std::array<std::uint32_t, N - 1> head{};
      for (std::size_t i = 0; i + 1 < N; ++i) head[i] = mono[i];
      terms_.push_back({head, mono[N - 1], c});
    }
  }

  std::uint32_t degree() const noexcept { return degree_; }

  /// coeffs must have length degree() + 1.
  void collapse(const Field& f, const std::array<Elem, N - 1>& prefix,
                std::span<Elem> coeffs) const {
    std::fill(coeffs.begin(), coeffs.end(), Elem{0});
    for (const Entry& t : terms_) {
      Elem v = t.coeff;
      for (std::size_t i = 0; i + 1 < N && v != 0; ++i)
        if (t.head[i] != 0) v = f.mul(v, f.pow(prefix[i], t.head[i]));
      coeffs[t.last] ^= v;
    }
  }

private:
  struct Entry {
    std::array<std::uint32_t, N - 1> head;
    std::uint32_t last;
    Elem coeff;
  };
  std::vector<Entry> terms_;
  std::uint32_t degree_;
};

}  // namespace apnforge
