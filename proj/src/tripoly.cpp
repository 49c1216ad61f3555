#include "apnforge/tripoly.hpp"

#include <sstream>

namespace apnforge {
namespace {

template <std::size_t N>
std::string render(const MultiPoly<N>& p, const std::array<const char*, N>& names) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  os << std::hex;
  bool first = true;
  // Highest degree first, then the map's reverse lexicographic order.
  std::vector<std::pair<typename MultiPoly<N>::Mono, Elem>> items(p.monos().rbegin(),
                                                                  p.monos().rend());
  std::stable_sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    return MultiPoly<N>::degree_of(a.first) > MultiPoly<N>::degree_of(b.first);
  });
  for (const auto& [mono, c] : items) {
    if (!first) os << '+';
    first = false;
    bool wrote = false;
    if (c != 1 || MultiPoly<N>::degree_of(mono) == 0) {
      os << c;
      wrote = true;
    }
    for (std::size_t i = 0; i < N; ++i) {
      if (mono[i] == 0) continue;
      if (wrote) os << '*';
      os << names[i];
      if (mono[i] != 1) os << '^' << std::dec << mono[i] << std::hex;
      wrote = true;
    }
  }
  return os.str();
}

}  // namespace

std::string to_string(const TriPoly& p) { return render<3>(p, {"x0", "x1", "x2"}); }
std::string to_string(const TriPolyHom& p) { return render<4>(p, {"x0", "x1", "x2", "z"}); }

TriPoly dehomogenize(const TriPolyHom& p) {
  TriPoly out;
  for (const auto& [mono, c] : p.monos()) out.add_term({mono[0], mono[1], mono[2]}, c);
  return out;
}

TriPolyHom homogenize_to(const TriPoly& p, std::uint32_t degree) {
  TriPolyHom out;
  for (const auto& [mono, c] : p.monos()) {
    const std::uint32_t d = TriPoly::degree_of(mono);
    if (d > degree) throw std::invalid_argument("homogenize_to: target degree too small");
    out.add_term({mono[0], mono[1], mono[2], degree - d}, c);
  }
  return out;
}

TriPoly divide_by_sum(const TriPoly& p, std::size_t var, std::size_t other) {
  // Synthetic division by (x_var - r) with r = x_other; in characteristic 2
  // the update r * q_e only shifts the exponent of x_other.
  const std::uint32_t n = p.degree_in(var);
  std::vector<TriPoly> slice(n + 1);
  for (const auto& [mono, c] : p.monos()) {
    auto rest = mono;
    rest[var] = 0;
    slice[mono[var]].add_term(rest, c);
  }
  TriPoly quotient;
  for (std::uint32_t e = n; e >= 1; --e) {
    for (const auto& [rest, c] : slice[e].monos()) {
      auto qm = rest;
      qm[var] = e - 1;
      quotient.add_term(qm, c);
      auto carry = rest;
      ++carry[other];
      slice[e - 1].add_term(carry, c);
    }
  }
  if (!slice[0].is_zero())
    throw std::logic_error("divide_by_sum: nonzero remainder " + to_string(slice[0]));
  return quotient;
}

RootScanner::RootScanner(const Field& f, std::uint32_t max_degree)
    : f_(f), max_degree_(max_degree), acc_(f.q()) {
  if (f.has_log_tables()) {
    const std::uint32_t q = f.q();
    const std::uint64_t n = f.order();
    const auto log = f.log_table();
    lpow_.assign(static_cast<std::size_t>(max_degree + 1) * q, 0);
    for (std::uint32_t k = 1; k <= max_degree; ++k)
      for (Elem x = 1; x < q; ++x)
        lpow_[static_cast<std::size_t>(k) * q + x] =
            static_cast<std::uint32_t>((static_cast<std::uint64_t>(k) * log[x]) % n);
  }
}

void RootScanner::fill(std::span<const Elem> coeffs) {
  if (coeffs.size() > max_degree_ + 1u)
    throw std::invalid_argument("RootScanner: polynomial degree exceeds scanner capacity");
  const std::uint32_t q = f_.q();
  const Elem c0 = coeffs.empty() ? 0 : coeffs[0];
  std::fill(acc_.begin(), acc_.end(), c0);
  if (f_.has_log_tables()) {
    const auto log = f_.log_table();
    const Elem* exp = f_.exp_table().data();
    Elem* acc = acc_.data();
    for (std::size_t k = 1; k < coeffs.size(); ++k) {
      if (coeffs[k] == 0) continue;
      const std::uint32_t lc = log[coeffs[k]];
      const std::uint32_t* lp = lpow_.data() + k * q;
      for (std::uint32_t x = 1; x < q; ++x) acc[x] ^= exp[lc + lp[x]];
    }
    return;
  }
  for (Elem x = 1; x < q; ++x) {
    Elem v = 0;
    for (std::size_t k = coeffs.size(); k-- > 0;) v = f_.mul_carryless(v, x) ^ coeffs[k];
    acc_[x] = v;
  }
}

std::uint64_t RootScanner::count_roots(std::span<const Elem> coeffs) {
  bool constant = true;
  for (std::size_t k = 1; k < coeffs.size(); ++k) constant = constant && coeffs[k] == 0;
  if (constant) return (coeffs.empty() || coeffs[0] == 0) ? f_.q() : 0;
  fill(coeffs);
  std::uint64_t n = 0;
  for (Elem v : acc_) n += (v == 0);
  return n;
}

void RootScanner::roots(std::span<const Elem> coeffs, std::vector<Elem>& out) {
  bool constant = true;
  for (std::size_t k = 1; k < coeffs.size(); ++k) constant = constant && coeffs[k] == 0;
  if (constant) {
    if (coeffs.empty() || coeffs[0] == 0)
      for (Elem x = 0; x < f_.q(); ++x) out.push_back(x);
    return;
  }
  fill(coeffs);
  for (Elem x = 0; x < f_.q(); ++x)
    if (acc_[x] == 0) out.push_back(x);
}

}  // namespace apnforge
