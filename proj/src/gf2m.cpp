#include "apnforge/gf2m.hpp"

#include <array>
#include <bit>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace apnforge {
namespace {

constexpr std::array<std::uint32_t, kMaxDegree + 1> kDefaultPolys = {
    0,         0,         0x7,       0xb,       0x13,      0x25,     0x43,
    0x83,      0x11b,     0x203,     0x409,     0x805,     0x1009,   0x201b,
    0x4021,    0x8003,    0x1002b,   0x20009,   0x40009,   0x80027,  0x100009,
    0x200005,  0x400003,  0x800021,  0x100001b, 0x2000009,
};

int degree_of(std::uint64_t p) { return 63 - std::countl_zero(p); }

// Carryless multiply of two polynomials of degree < 32.
std::uint64_t clmul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  while (b) {
    if (b & 1) r ^= a;
    a <<= 1;
    b >>= 1;
  }
  return r;
}

std::uint64_t reduce(std::uint64_t v, std::uint64_t mod) {
  const int dm = degree_of(mod);
  while (v && degree_of(v) >= dm) v ^= mod << (degree_of(v) - dm);
  return v;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t mod) {
  return reduce(clmul(a, b), mod);
}

std::uint64_t gcd_gf2(std::uint64_t a, std::uint64_t b) {
  while (b) {
    a = reduce(a, b);
    std::swap(a, b);
  }
  return a;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// x^(2^k) mod poly.
std::uint64_t frobenius_x(int k, std::uint64_t poly) {
  std::uint64_t r = reduce(2, poly);
  for (int i = 0; i < k; ++i) r = mulmod(r, r, poly);
  return r;
}

}  // namespace

std::uint32_t default_reduction_poly(int m) {
  if (m < kMinDegree || m > kMaxDegree)
    throw std::invalid_argument("field degree out of range: " + std::to_string(m));
  return kDefaultPolys[static_cast<std::size_t>(m)];
}

bool is_irreducible_gf2(std::uint64_t poly) {
  const int n = degree_of(poly);
  if (n <= 0) return false;
  if (n == 1) return true;
  // x^(2^n) = x mod poly, and gcd(x^(2^(n/r)) - x, poly) = 1 for every prime r | n.
  if (frobenius_x(n, poly) != reduce(2, poly)) return false;
  for (std::uint64_t r : prime_factors(static_cast<std::uint64_t>(n))) {
    std::uint64_t h = frobenius_x(n / static_cast<int>(r), poly) ^ reduce(2, poly);
    if (gcd_gf2(poly, h) != 1) return false;
  }
  return true;
}

Field::Field(int m, std::optional<std::uint32_t> red_poly) : m_(m) {
  if (m < kMinDegree || m > kMaxDegree)
    throw std::invalid_argument("field degree out of range: " + std::to_string(m));
  q_ = 1u << m;
  poly_ = red_poly.value_or(kDefaultPolys[static_cast<std::size_t>(m)]);
  if (degree_of(poly_) != m)
    throw std::invalid_argument("reduction polynomial does not have degree " +
                                std::to_string(m));
  if (!is_irreducible_gf2(poly_))
    throw std::invalid_argument("reduction polynomial is reducible over GF(2)");

  order_factors_ = prime_factors(q_ - 1);
  for (Elem g = 2; g < q_; ++g) {
    if (element_order(g) == q_ - 1) {
      generator_ = g;
      break;
    }
  }
  if (q_ == 2) generator_ = 1;

  if (m <= kMaxLogTableDegree) {
    auto t = std::make_shared<Tables>();
    const std::uint32_t n = q_ - 1;
    t->log.assign(q_, 0);
    t->exp.assign(2 * static_cast<std::size_t>(n), 0);
    Elem x = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
      t->exp[i] = x;
      t->exp[i + n] = x;
      t->log[x] = i;
      x = mul_carryless(x, generator_);
    }
    tables_ = std::move(t);
  }
}

Elem Field::mul_carryless(Elem a, Elem b) const noexcept {
  return static_cast<Elem>(mulmod(a, b, poly_));
}

Elem Field::pow_square_multiply(Elem a, std::uint64_t e) const noexcept {
  Elem result = 1;
  Elem base = a;
  while (e) {
    if (e & 1) result = mul_carryless(result, base);
    base = mul_carryless(base, base);
    e >>= 1;
  }
  return result;
}

Elem Field::pow(Elem a, std::uint64_t e) const noexcept {
  if (e == 0) return 1;
  if (a == 0) return 0;
  if (tables_) {
    const std::uint64_t n = q_ - 1;
    return tables_->exp[(tables_->log[a] * (e % n)) % n];
  }
  return pow_square_multiply(a, e);
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  if (tables_) {
    const std::uint32_t n = q_ - 1;
    return tables_->exp[(n - tables_->log[a]) % n];
  }
  return pow_square_multiply(a, q_ - 2);
}

std::uint64_t Field::element_order(Elem a) const {
  if (a == 0 || a >= q_) throw std::domain_error("order of a non-unit");
  std::uint64_t ord = q_ - 1;
  for (std::uint64_t p : order_factors_) {
    while (ord % p == 0 && pow_square_multiply(a, ord / p) == 1) ord /= p;
  }
  return ord;
}

std::string Field::describe() const {
  std::ostringstream os;
  os << "GF(2^" << m_ << ") mod 0x" << std::hex << poly_;
  return os.str();
}

std::map<int, std::uint32_t> load_poly_overrides(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open field-poly file: " + path);
  std::map<int, std::uint32_t> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);
    const auto colon = line.find(':');
    try {
      if (colon == std::string::npos) throw std::invalid_argument("missing ':'");
      std::size_t used = 0;
      const int m = std::stoi(line.substr(0, colon), &used);
      if (used != colon) throw std::invalid_argument("bad degree");
      std::string hex = line.substr(colon + 1);
      if (hex.rfind("0x", 0) == 0 || hex.rfind("0X", 0) == 0) hex = hex.substr(2);
      const unsigned long bits = std::stoul(hex, &used, 16);
      if (used != hex.size()) throw std::invalid_argument("bad hex");
      Field check(m, static_cast<std::uint32_t>(bits));
      out[m] = check.red_poly();
    } catch (const std::exception& e) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

Field make_field(int m, const std::map<int, std::uint32_t>& overrides) {
  if (auto it = overrides.find(m); it != overrides.end()) return Field(m, it->second);
  return Field(m);
}

}  // namespace apnforge
