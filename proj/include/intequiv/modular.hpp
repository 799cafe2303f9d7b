#pragma once

// Word-size prime-field arithmetic. Moduli are below 2^62 so that sums of two
// residues never overflow and products go through unsigned __int128.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace intequiv::modp {

inline std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}
inline std::uint64_t add(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  std::uint64_t s = a + b;
  return s >= p ? s - p : s;
}
inline std::uint64_t sub(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return a >= b ? a - b : a + p - b;
}
std::uint64_t pow(std::uint64_t a, std::uint64_t e, std::uint64_t p);
// p must be prime and a nonzero mod p.
std::uint64_t inv(std::uint64_t a, std::uint64_t p);
// Reduce a signed value into [0, p).
std::uint64_t reduce(std::int64_t a, std::uint64_t p);

// Deterministic Miller-Rabin for all 64-bit inputs.
bool is_prime(std::uint64_t n);

// `count` primes just below 2^62, largest first. Deterministic.
const std::vector<std::uint64_t>& large_primes(std::size_t count);

// In-place elimination on a row-major n x n matrix of residues.
std::uint64_t det(std::span<std::uint64_t> a, std::size_t n, std::uint64_t p);
std::size_t rank(std::span<std::uint64_t> a, std::size_t rows, std::size_t cols,
                 std::uint64_t p);

}  // namespace intequiv::modp
