#include "intequiv/finite_field.hpp"

#include <utility>

#include "intequiv/error.hpp"
#include "intequiv/modular.hpp"

namespace intequiv {

namespace {

using Poly = std::vector<std::uint64_t>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// a mod f, f monic.
Poly poly_mod(Poly a, const Poly& f, std::uint64_t p) {
  trim(a);
  const std::size_t df = f.size() - 1;
  while (a.size() > df) {
    const std::uint64_t lead = a.back();
    const std::size_t shift = a.size() - 1 - df;
    for (std::size_t i = 0; i <= df; ++i)
      a[shift + i] = modp::sub(a[shift + i], modp::mul(lead, f[i], p), p);
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      c[i + j] = modp::add(c[i + j], modp::mul(a[i], b[j], p), p);
  return poly_mod(std::move(c), f, p);
}

// x^(p^e) mod f
Poly frobenius_power(const Poly& f, std::uint64_t p, unsigned e) {
  Poly x{0, 1};
  x = poly_mod(x, f, p);
  for (unsigned r = 0; r < e; ++r) {
    Poly base = x, acc{1};
    for (std::uint64_t n = p; n; n >>= 1) {
      if (n & 1) acc = poly_mulmod(acc, base, f, p);
      base = poly_mulmod(base, base, f, p);
    }
    x = std::move(acc);
  }
  return x;
}

Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    // Normalize b to monic so poly_mod applies.
    const std::uint64_t li = modp::inv(b.back(), p);
    for (auto& c : b) c = modp::mul(c, li, p);
    a = poly_mod(std::move(a), b, p);
    std::swap(a, b);
  }
  return a;
}

}  // namespace

bool is_irreducible(const Poly& f, std::uint64_t p) {
  const unsigned k = static_cast<unsigned>(f.size() - 1);
  if (k == 1) return true;
  Poly x{0, 1};
  if (poly_mod(frobenius_power(f, p, k), f, p) != poly_mod(x, f, p)) return false;
  unsigned rest = k;
  for (unsigned r = 2; r <= rest; ++r) {
    if (rest % r) continue;
    while (rest % r == 0) rest /= r;
    Poly h = frobenius_power(f, p, k / r);
    h.resize(std::max<std::size_t>(h.size(), 2), 0);
    h[1] = modp::sub(h[1], 1, p);
    trim(h);
    if (h.empty()) return false;
    Poly g = poly_gcd(f, h, p);
    if (g.size() != 1) return false;
  }
  return true;
}

unsigned degree_exceeding(std::uint64_t p, std::uint64_t bound) {
  require(p >= 2, ErrorCode::invalid_argument, "degree_exceeding: p < 2");
  unsigned k = 1;
  unsigned __int128 q = p;
  while (q <= bound) {
    q *= p;
    ++k;
  }
  return k;
}

ExtensionField::ExtensionField(std::uint64_t p, unsigned k) : p_(p), k_(k) {
  require(p < (1ull << 32) && modp::is_prime(p), ErrorCode::invalid_argument,
          "extension field: characteristic must be a prime below 2^32");
  require(k >= 1 && k <= 64, ErrorCode::invalid_argument,
          "extension field: degree out of range");
  // Enumerate monic candidates x^k + c_{k-1} x^{k-1} + ... + c_0 in
  // lexicographic order of (c_{k-1}, ..., c_0).
  Poly f(k + 1, 0);
  f[k] = 1;
  for (;;) {
    if (f[0] != 0 && is_irreducible(f, p)) break;
    std::size_t i = 0;
    while (i < k && ++f[i] == p) f[i++] = 0;
    require(i < k, ErrorCode::internal, "no irreducible polynomial found");
  }
  modulus_ = std::move(f);
}

std::uint64_t ExtensionField::size() const noexcept {
  unsigned __int128 q = 1;
  for (unsigned i = 0; i < k_; ++i) {
    q *= p_;
    if (q > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(q);
}

ExtensionField::Element ExtensionField::one() const {
  Element e(k_, 0);
  e[0] = 1;
  return e;
}

ExtensionField::Element ExtensionField::from_int(std::int64_t v) const {
  Element e(k_, 0);
  e[0] = modp::reduce(v, p_);
  return e;
}

ExtensionField::Element ExtensionField::from_index(std::uint64_t index) const {
  Element e(k_, 0);
  for (unsigned i = 0; i < k_; ++i) {
    e[i] = index % p_;
    index /= p_;
  }
  return e;
}

bool ExtensionField::is_zero(const Element& a) const {
  for (auto c : a)
    if (c) return false;
  return true;
}

ExtensionField::Element ExtensionField::add(const Element& a, const Element& b) const {
  Element c(k_);
  for (unsigned i = 0; i < k_; ++i) c[i] = modp::add(a[i], b[i], p_);
  return c;
}

ExtensionField::Element ExtensionField::sub(const Element& a, const Element& b) const {
  Element c(k_);
  for (unsigned i = 0; i < k_; ++i) c[i] = modp::sub(a[i], b[i], p_);
  return c;
}

ExtensionField::Element ExtensionField::mul(const Element& a, const Element& b) const {
  std::vector<std::uint64_t> c(2 * k_ - 1, 0);
  for (unsigned i = 0; i < k_; ++i) {
    if (!a[i]) continue;
    for (unsigned j = 0; j < k_; ++j)
      if (b[j]) c[i + j] = modp::add(c[i + j], a[i] * b[j] % p_, p_);
  }
  for (std::size_t d = c.size(); d-- > k_;) {
    const std::uint64_t lead = c[d];
    if (!lead) continue;
    for (unsigned i = 0; i < k_; ++i)
      c[d - k_ + i] = modp::sub(c[d - k_ + i], lead * modulus_[i] % p_, p_);
  }
  c.resize(k_);
  return c;
}

ExtensionField::Element ExtensionField::inv(const Element& a) const {
  require(!is_zero(a), ErrorCode::invalid_argument, "inverse of zero");
  // a^(q-2) by square-and-multiply over the base-p digits of q-2.
  unsigned __int128 e = 1;
  for (unsigned i = 0; i < k_; ++i) e *= p_;
  e -= 2;
  Element acc = one(), base = a;
  while (e) {
    if (e & 1) acc = mul(acc, base);
    base = mul(base, base);
    e >>= 1;
  }
  return acc;
}

ExtensionField::Element ExtensionField::det(std::vector<Element> a,
                                            std::size_t n) const {
  Element d = one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && is_zero(a[piv * n + c])) ++piv;
    if (piv == n) return zero();
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[piv * n + j], a[c * n + j]);
      d = sub(zero(), d);
    }
    d = mul(d, a[c * n + c]);
    const Element pinv = inv(a[c * n + c]);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (is_zero(a[i * n + c])) continue;
      const Element f = mul(a[i * n + c], pinv);
      for (std::size_t j = c + 1; j < n; ++j)
        if (!is_zero(a[c * n + j]))
          a[i * n + j] = sub(a[i * n + j], mul(f, a[c * n + j]));
    }
  }
  return d;
}

std::size_t ExtensionField::rank_of_transpose(const std::vector<Element>& a,
                                              std::size_t n) const {
  std::vector<Element> t(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[j * n + i] = a[i * n + j];
  std::size_t r = 0;
  for (std::size_t c = n; c-- > 0 && r < n;) {
    // Pivot search runs from the last column backwards, unlike det().
    std::size_t piv = r;
    while (piv < n && is_zero(t[piv * n + c])) ++piv;
    if (piv == n) continue;
    for (std::size_t j = 0; j < n; ++j) std::swap(t[piv * n + j], t[r * n + j]);
    const Element pinv = inv(t[r * n + c]);
    for (std::size_t i = r + 1; i < n; ++i) {
      if (is_zero(t[i * n + c])) continue;
      const Element f = mul(t[i * n + c], pinv);
      for (std::size_t j = 0; j < n; ++j)
        if (!is_zero(t[r * n + j])) t[i * n + j] = sub(t[i * n + j], mul(f, t[r * n + j]));
    }
    ++r;
  }
  return r;
}

}  // namespace intequiv
