#include "apnforge/polyfun.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace apnforge {

SparsePoly::SparsePoly(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.exp < b.exp; });
  for (const Term& t : terms) {
    if (!terms_.empty() && terms_.back().exp == t.exp) {
      terms_.back().coeff ^= t.coeff;
      if (terms_.back().coeff == 0) terms_.pop_back();
    } else if (t.coeff != 0) {
      terms_.push_back(t);
    }
  }
}

SparsePoly SparsePoly::monomial(std::uint64_t exp, Elem coeff) {
  return SparsePoly({{exp, coeff}});
}

Elem SparsePoly::coeff(std::uint64_t exp) const noexcept {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), exp,
                             [](const Term& t, std::uint64_t e) { return t.exp < e; });
  return (it != terms_.end() && it->exp == exp) ? it->coeff : 0;
}

Elem SparsePoly::max_coeff() const noexcept {
  Elem best = 0;
  for (const Term& t : terms_) best = std::max(best, t.coeff);
  return best;
}

SparsePoly SparsePoly::operator+(const SparsePoly& other) const {
  std::vector<Term> all = terms_;
  all.insert(all.end(), other.terms_.begin(), other.terms_.end());
  return SparsePoly(std::move(all));
}

std::string SparsePoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  os << std::hex;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!first) os << '+';
    first = false;
    if (it->exp == 0) {
      os << it->coeff;
      continue;
    }
    if (it->coeff != 1) os << it->coeff << '*';
    os << 'x';
    if (it->exp != 1) os << '^' << std::dec << it->exp << std::hex;
  }
  return os.str();
}

namespace {

class PolyParser {
public:
  explicit PolyParser(std::string_view s) : s_(s) {}

  SparsePoly parse() {
    std::vector<Term> terms;
    skip_ws();
    if (at_end()) fail("empty polynomial");
    terms.push_back(term());
    skip_ws();
    while (!at_end()) {
      if (peek() != '+') fail("expected '+'");
      ++pos_;
      skip_ws();
      terms.push_back(term());
      skip_ws();
    }
    return SparsePoly(std::move(terms));
  }

private:
  Term term() {
    if (peek() == 'x' || peek() == 'X') return {power(), 1};
    const Elem c = hex_number();
    skip_ws();
    if (!at_end() && peek() == '*') {
      ++pos_;
      skip_ws();
      if (at_end() || (peek() != 'x' && peek() != 'X')) fail("expected 'x' after '*'");
      return {power(), c};
    }
    return {0, c};
  }

  std::uint64_t power() {
    ++pos_;  // 'x'
    skip_ws();
    if (at_end() || peek() != '^') return 1;
    ++pos_;
    skip_ws();
    const std::size_t start = pos_;
    std::uint64_t e = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      e = e * 10 + static_cast<std::uint64_t>(peek() - '0');
      if (e > (1ull << 40)) fail("exponent too large");
      ++pos_;
    }
    if (pos_ == start) fail("expected exponent");
    return e;
  }

  Elem hex_number() {
    if (s_.substr(pos_, 2) == "0x" || s_.substr(pos_, 2) == "0X") pos_ += 2;
    const std::size_t start = pos_;
    std::uint64_t v = 0;
    while (!at_end() && std::isxdigit(static_cast<unsigned char>(peek()))) {
      const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(peek())));
      v = v * 16 + static_cast<std::uint64_t>(std::isdigit(static_cast<unsigned char>(c)) ? c - '0' : c - 'a' + 10);
      if (v >= (1ull << kMaxDegree)) fail("coefficient too large");
      ++pos_;
    }
    if (pos_ == start) fail("expected coefficient or 'x'");
    return static_cast<Elem>(v);
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("cannot parse polynomial '" + std::string(s_) +
                                "' at offset " + std::to_string(pos_) + ": " + what);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

SparsePoly parse_poly(std::string_view text) { return PolyParser(text).parse(); }

void require_fits(const Field& f, const SparsePoly& p) {
  if (p.max_coeff() >= f.q())
    throw std::invalid_argument("coefficient of " + p.to_string() + " is not an element of " +
                                f.describe());
}

Elem eval(const Field& f, const SparsePoly& p, Elem x) {
  Elem acc = 0;
  for (const Term& t : p.terms()) acc ^= f.mul(t.coeff, f.pow(x, t.exp));
  return acc;
}

FuncTable table_of(const Field& f, const SparsePoly& p) {
  FuncTable out(f.q());
  for (Elem x = 0; x < f.q(); ++x) out[x] = eval(f, p, x);
  return out;
}

FuncTable inverse_plus_g(const Field& f, const SparsePoly& g) {
  FuncTable out = table_of(f, g);
  for (Elem x = 1; x < f.q(); ++x) out[x] ^= f.pow(x, f.q() - 2);
  return out;
}

bool is_power_of_two(std::uint64_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

SparsePoly normalize_p2(const SparsePoly& p) {
  std::vector<Term> kept;
  for (const Term& t : p.terms())
    if (t.exp != 0 && !is_power_of_two(t.exp)) kept.push_back(t);
  return SparsePoly(std::move(kept));
}

bool is_affine_like(const SparsePoly& g) { return normalize_p2(g).empty(); }

FuncTable affine_transform(const Field& f, const FuncTable& table, Elem a, Elem b, Elem c) {
  if (a == 0 || c == 0) throw std::invalid_argument("affine_transform needs a != 0 and c != 0");
  if (table.size() != f.q()) throw std::invalid_argument("table size does not match field");
  FuncTable out(f.q());
  for (Elem x = 0; x < f.q(); ++x) out[x] = f.mul(c, table[f.mul(a, x) ^ b]);
  return out;
}

std::uint64_t binomial_orbit_size(const Field& f, std::uint64_t d) {
  const std::uint64_t n = f.order();
  return n / std::gcd(n, d + 1);
}

std::vector<Elem> binomial_orbits(const Field& f, std::uint64_t d) {
  if (d < 1) throw std::invalid_argument("binomial_orbits needs d >= 1");
  // The (d+1)-st powers form the subgroup generated by gen^(d+1); orbits are its cosets.
  const Elem h = f.pow(f.generator(), d + 1);
  std::vector<Elem> subgroup{1};
  for (Elem x = h; x != 1; x = f.mul(x, h)) subgroup.push_back(x);

  std::vector<bool> seen(f.q(), false);
  std::vector<Elem> reps;
  for (Elem a = 1; a < f.q(); ++a) {
    if (seen[a]) continue;
    reps.push_back(a);
    for (Elem s : subgroup) seen[f.mul(a, s)] = true;
  }
  return reps;
}

}  // namespace apnforge
