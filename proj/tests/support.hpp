// Helpers shared by the unit tests.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "apnforge/polyfun.hpp"

namespace apnforge::testing {

/// Random polynomial of exact degree `deg` with coefficients in [0, q).
inline SparsePoly random_poly(std::mt19937_64& rng, std::uint64_t deg, std::uint32_t q) {
  std::vector<Term> terms;
  for (std::uint64_t e = 0; e < deg; ++e) terms.push_back({e, static_cast<Elem>(rng() % q)});
  terms.push_back({deg, static_cast<Elem>(1 + rng() % (q - 1))});
  return SparsePoly(std::move(terms));
}

/// Random polynomial without constant or power-of-two terms, degree <= max_deg.
inline SparsePoly random_normalized(std::mt19937_64& rng, std::uint64_t max_deg, std::uint32_t q) {
  for (;;) {
    SparsePoly p = normalize_p2(random_poly(rng, max_deg, q));
    if (!p.empty()) return p;
  }
}

}  // namespace apnforge::testing
