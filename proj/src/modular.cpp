#include "intequiv/modular.hpp"

#include <mutex>
#include <utility>

namespace intequiv::modp {

std::uint64_t pow(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mul(r, a, p);
    a = mul(a, a, p);
    e >>= 1;
  }
  return r;
}

std::uint64_t inv(std::uint64_t a, std::uint64_t p) {
  // Extended Euclid on signed 128-bit to stay exact for p < 2^62.
  __int128 t = 0, nt = 1, r = p, nr = a % p;
  while (nr != 0) {
    __int128 q = r / nr;
    t = std::exchange(nt, t - q * nt);
    r = std::exchange(nr, r - q * nr);
  }
  if (t < 0) t += p;
  return static_cast<std::uint64_t>(t);
}

std::uint64_t reduce(std::int64_t a, std::uint64_t p) {
  __int128 r = static_cast<__int128>(a) % static_cast<__int128>(p);
  if (r < 0) r += p;
  return static_cast<std::uint64_t>(r);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = pow(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

const std::vector<std::uint64_t>& large_primes(std::size_t count) {
  static std::mutex mu;
  static std::vector<std::uint64_t> primes;
  std::lock_guard lock(mu);
  std::uint64_t next = primes.empty() ? (1ull << 62) - 1 : primes.back() - 2;
  while (primes.size() < count) {
    if (is_prime(next)) primes.push_back(next);
    next -= 2;
  }
  return primes;
}

std::uint64_t det(std::span<std::uint64_t> a, std::size_t n, std::uint64_t p) {
  std::uint64_t d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv * n + c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      for (std::size_t j = c; j < n; ++j) std::swap(a[piv * n + j], a[c * n + j]);
      d = d == 0 ? 0 : p - d;
    }
    const std::uint64_t pv = a[c * n + c];
    d = mul(d, pv, p);
    const std::uint64_t pinv = inv(pv, p);
    for (std::size_t i = c + 1; i < n; ++i) {
      const std::uint64_t f = mul(a[i * n + c], pinv, p);
      if (f == 0) continue;
      std::uint64_t* ri = &a[i * n];
      const std::uint64_t* rc = &a[c * n];
      for (std::size_t j = c + 1; j < n; ++j) ri[j] = sub(ri[j], mul(f, rc[j], p), p);
      ri[c] = 0;
    }
  }
  return d;
}

std::size_t rank(std::span<std::uint64_t> a, std::size_t rows, std::size_t cols,
                 std::uint64_t p) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv * cols + c] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a[piv * cols + j], a[r * cols + j]);
    const std::uint64_t pinv = inv(a[r * cols + c], p);
    for (std::size_t i = r + 1; i < rows; ++i) {
      const std::uint64_t f = mul(a[i * cols + c], pinv, p);
      if (f == 0) continue;
      for (std::size_t j = c; j < cols; ++j)
        a[i * cols + j] = sub(a[i * cols + j], mul(f, a[r * cols + j], p), p);
    }
    ++r;
  }
  return r;
}

}  // namespace intequiv::modp
