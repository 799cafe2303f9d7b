#pragma once

// F_{p^k} as F_p[x]/(f) for the lexicographically least monic irreducible f
// of degree k. Elements are coefficient vectors, lowest degree first.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace intequiv {

class ExtensionField {
 public:
  using Element = std::vector<std::uint64_t>;

  // p prime below 2^32, k >= 1.
  ExtensionField(std::uint64_t p, unsigned k);

  std::uint64_t characteristic() const noexcept { return p_; }
  unsigned degree() const noexcept { return k_; }
  // p^k, saturating at UINT64_MAX.
  std::uint64_t size() const noexcept;
  // Monic, length k+1.
  const std::vector<std::uint64_t>& modulus() const noexcept { return modulus_; }

  Element zero() const { return Element(k_, 0); }
  Element one() const;
  Element from_int(std::int64_t v) const;
  // Interprets the base-p digits of index as coefficients; index < size().
  Element from_index(std::uint64_t index) const;

  bool is_zero(const Element& a) const;
  Element add(const Element& a, const Element& b) const;
  Element sub(const Element& a, const Element& b) const;
  Element mul(const Element& a, const Element& b) const;
  Element inv(const Element& a) const;

  // Determinant by elimination; the matrix is n x n of elements, row-major.
  Element det(std::vector<Element> a, std::size_t n) const;
  // Rank of the same layout, computed column-first on the transpose.
  std::size_t rank_of_transpose(const std::vector<Element>& a, std::size_t n) const;

 private:
  std::uint64_t p_;
  unsigned k_;
  std::vector<std::uint64_t> modulus_;
};

// Smallest k with p^k > bound.
unsigned degree_exceeding(std::uint64_t p, std::uint64_t bound);

// Rabin's test over F_p; f is monic of degree >= 1, lowest degree first.
bool is_irreducible(const std::vector<std::uint64_t>& f, std::uint64_t p);

}  // namespace intequiv
