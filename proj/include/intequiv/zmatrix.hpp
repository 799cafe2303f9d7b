#pragma once

// Exact integer matrices over GMP integers: Hermite and Smith normal forms,
// determinants, kernels and prime-field rank/solve.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace intequiv {

using Integer = mpz_class;

class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(std::size_t rows, std::size_t cols);

  static ExactMatrix identity(std::size_t n);
  static ExactMatrix from_rows(const std::vector<std::vector<long>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }
  std::span<Integer> row(std::size_t i) { return {&data_[i * cols_], cols_}; }
  std::span<const Integer> row(std::size_t i) const {
    return {&data_[i * cols_], cols_};
  }
  const std::vector<Integer>& entries() const noexcept { return data_; }

  ExactMatrix transpose() const;
  bool is_zero() const;

  // Residues in [0, p), row-major.
  std::vector<std::uint64_t> mod(std::uint64_t p) const;

  friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
  friend ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b);
  friend ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b);
  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

struct HNFResult {
  ExactMatrix H;  // U * M == H
  ExactMatrix U;  // unimodular
  std::size_t rank = 0;
};

// Row Hermite normal form: upper echelon, positive pivots, entries above each
// pivot reduced into [0, pivot). Zero rows sink to the bottom.
HNFResult hnf(const ExactMatrix& m);

struct SNFResult {
  ExactMatrix S;  // U * M * V == S, diagonal
  ExactMatrix U;
  ExactMatrix V;
  std::vector<Integer> invariant_factors;  // nonzero diagonal, d1 | d2 | ...
};

SNFResult snf(const ExactMatrix& m);

// Fraction-free elimination for n <= 64, multi-modular CRT above that.
Integer det_exact(const ExactMatrix& m);
Integer det_bareiss(const ExactMatrix& m);
Integer det_crt(const ExactMatrix& m);

// Bits of the Hadamard bound on |det m|, rounded up.
std::size_t hadamard_bits(const ExactMatrix& m);

// p must be a prime below 2^62 (invalid_argument otherwise).
std::size_t rank_mod_p(const ExactMatrix& m, std::uint64_t p);
std::optional<std::vector<std::uint64_t>> solve_mod_p(
    const ExactMatrix& m, std::span<const std::uint64_t> b, std::uint64_t p);

std::size_t rank_exact(const ExactMatrix& m);

// Saturated basis of {v : m v = 0}, each vector of length m.cols(), in
// Hermite normal form.
std::vector<std::vector<Integer>> kernel_integer(const ExactMatrix& m);

// Stacks vectors as the rows of a matrix.
ExactMatrix rows_to_matrix(const std::vector<std::vector<Integer>>& rows,
                           std::size_t cols);

}  // namespace intequiv
