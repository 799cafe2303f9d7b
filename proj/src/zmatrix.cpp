#include "intequiv/zmatrix.hpp"

#include <algorithm>
#include <utility>

#include "intequiv/error.hpp"
#include "intequiv/modular.hpp"
#include "intequiv/parallel.hpp"

namespace intequiv {

ExactMatrix::ExactMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ExactMatrix ExactMatrix::identity(std::size_t n) {
  ExactMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

ExactMatrix ExactMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
  require(!rows.empty(), ErrorCode::invalid_argument, "matrix has no rows");
  ExactMatrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require(rows[i].size() == m.cols(), ErrorCode::invalid_argument,
            "ragged matrix rows");
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool ExactMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](const Integer& x) { return sgn(x) == 0; });
}

std::vector<std::uint64_t> ExactMatrix::mod(std::uint64_t p) const {
  std::vector<std::uint64_t> out(data_.size());
  for (std::size_t i = 0; i < data_.size(); ++i)
    out[i] = mpz_fdiv_ui(data_[i].get_mpz_t(), p);
  return out;
}

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
  require(a.cols() == b.rows(), ErrorCode::invalid_argument,
          "matrix product: dimension mismatch");
  ExactMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Integer& aik = a(i, k);
      if (sgn(aik) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (sgn(b(k, j)) != 0) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(),
          ErrorCode::invalid_argument, "matrix sum: dimension mismatch");
  ExactMatrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
  return c;
}

ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(),
          ErrorCode::invalid_argument, "matrix difference: dimension mismatch");
  ExactMatrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
  return c;
}

bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

// ---------------------------------------------------------------------------

namespace {

void swap_rows(ExactMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) swap(m(a, j), m(b, j));
}

void swap_cols(ExactMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) swap(m(i, a), m(i, b));
}

void negate_row(ExactMatrix& m, std::size_t r) {
  for (auto& x : m.row(r)) x = -x;
}

// row dst -= q * row src
void sub_row(ExactMatrix& m, std::size_t dst, std::size_t src, const Integer& q) {
  if (sgn(q) == 0) return;
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (sgn(m(src, j)) != 0) m(dst, j) -= q * m(src, j);
}

// col dst -= q * col src
void sub_col(ExactMatrix& m, std::size_t dst, std::size_t src, const Integer& q) {
  if (sgn(q) == 0) return;
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (sgn(m(i, src)) != 0) m(i, dst) -= q * m(i, src);
}

// (row a, row b) <- (s*a + t*b, u*a + v*b) with s*v - t*u == 1.
void combine_rows(ExactMatrix& m, std::size_t a, std::size_t b, const Integer& s,
                  const Integer& t, const Integer& u, const Integer& v) {
  Integer x, y;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    x = s * m(a, j) + t * m(b, j);
    y = u * m(a, j) + v * m(b, j);
    m(a, j) = std::move(x);
    m(b, j) = std::move(y);
  }
}

}  // namespace

HNFResult hnf(const ExactMatrix& m) {
  ExactMatrix h = m;
  ExactMatrix u = ExactMatrix::identity(m.rows());
  std::size_t r = 0;
  Integer g, s, t, q;
  for (std::size_t c = 0; c < h.cols() && r < h.rows(); ++c) {
    bool any = false;
    for (std::size_t i = r; i < h.rows(); ++i) {
      if (sgn(h(i, c)) == 0) continue;
      any = true;
      if (i == r) continue;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), h(r, c).get_mpz_t(),
                 h(i, c).get_mpz_t());
      const Integer a_g = h(r, c) / g;
      const Integer b_g = h(i, c) / g;
      // [[s, t], [-b/g, a/g]] has determinant 1.
      combine_rows(h, r, i, s, t, -b_g, a_g);
      combine_rows(u, r, i, s, t, -b_g, a_g);
    }
    if (!any) continue;
    if (sgn(h(r, c)) < 0) {
      negate_row(h, r);
      negate_row(u, r);
    }
    // Keep entries above the pivot small at every step.
    for (std::size_t i = 0; i < r; ++i) {
      mpz_fdiv_q(q.get_mpz_t(), h(i, c).get_mpz_t(), h(r, c).get_mpz_t());
      sub_row(h, i, r, q);
      sub_row(u, i, r, q);
    }
    ++r;
  }
  return HNFResult{std::move(h), std::move(u), r};
}

SNFResult snf(const ExactMatrix& m) {
  ExactMatrix s = m;
  ExactMatrix u = ExactMatrix::identity(m.rows());
  ExactMatrix v = ExactMatrix::identity(m.cols());
  const std::size_t diag = std::min(s.rows(), s.cols());
  Integer q;
  std::size_t t = 0;
  for (; t < diag; ++t) {
    for (;;) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::size_t pi = s.rows(), pj = s.cols();
      for (std::size_t i = t; i < s.rows(); ++i)
        for (std::size_t j = t; j < s.cols(); ++j)
          if (sgn(s(i, j)) != 0 &&
              (pi == s.rows() || mpz_cmpabs(s(i, j).get_mpz_t(), s(pi, pj).get_mpz_t()) < 0)) {
            pi = i;
            pj = j;
          }
      if (pi == s.rows()) goto done;
      swap_rows(s, t, pi);
      swap_rows(u, t, pi);
      swap_cols(s, t, pj);
      swap_cols(v, t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < s.rows(); ++i) {
        if (sgn(s(i, t)) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), s(i, t).get_mpz_t(), s(t, t).get_mpz_t());
        sub_row(s, i, t, q);
        sub_row(u, i, t, q);
        if (sgn(s(i, t)) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < s.cols(); ++j) {
        if (sgn(s(t, j)) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), s(t, j).get_mpz_t(), s(t, t).get_mpz_t());
        sub_col(s, j, t, q);
        sub_col(v, j, t, q);
        if (sgn(s(t, j)) != 0) clean = false;
      }
      if (!clean) continue;

      // Divisibility: fold an offending row into the pivot row and retry.
      std::size_t bad = s.rows();
      for (std::size_t i = t + 1; i < s.rows() && bad == s.rows(); ++i)
        for (std::size_t j = t + 1; j < s.cols(); ++j)
          if (!mpz_divisible_p(s(i, j).get_mpz_t(), s(t, t).get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad == s.rows()) break;
      sub_row(s, t, bad, Integer(-1));
      sub_row(u, t, bad, Integer(-1));
    }
    if (sgn(s(t, t)) < 0) {
      negate_row(s, t);
      negate_row(u, t);
    }
  }
done:
  std::vector<Integer> factors;
  for (std::size_t i = 0; i < t; ++i) factors.push_back(s(i, i));
  return SNFResult{std::move(s), std::move(u), std::move(v), std::move(factors)};
}

// ---------------------------------------------------------------------------

Integer det_bareiss(const ExactMatrix& m) {
  require(m.is_square(), ErrorCode::invalid_argument, "det: matrix not square");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  ExactMatrix a = m;
  int sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(a(k, k)) == 0) {
      std::size_t i = k + 1;
      while (i < n && sgn(a(i, k)) == 0) ++i;
      if (i == n) return 0;
      swap_rows(a, k, i);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::size_t hadamard_bits(const ExactMatrix& m) {
  std::size_t bits = 0;
  Integer sq;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    sq = 0;
    for (const auto& x : m.row(i)) sq += x * x;
    if (sgn(sq) == 0) return 0;
    bits += (mpz_sizeinbase(sq.get_mpz_t(), 2) + 1) / 2;
  }
  return bits;
}

Integer det_crt(const ExactMatrix& m) {
  require(m.is_square(), ErrorCode::invalid_argument, "det: matrix not square");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  // Every prime exceeds 2^61; the product must exceed twice the bound.
  const std::size_t count = (hadamard_bits(m) + 1) / 61 + 1;
  const auto& primes = modp::large_primes(count);
  std::vector<std::uint64_t> residues(count);
  parallel_for(count, [&](std::size_t i) {
    auto a = m.mod(primes[i]);
    residues[i] = modp::det(a, n, primes[i]);
  });

  Integer x = 0, modulus = 1, r, inv;
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t p = primes[i];
    const std::uint64_t xp = mpz_fdiv_ui(x.get_mpz_t(), p);
    const std::uint64_t mp = mpz_fdiv_ui(modulus.get_mpz_t(), p);
    const std::uint64_t k = modp::mul(modp::sub(residues[i], xp, p), modp::inv(mp, p), p);
    mpz_set_ui(r.get_mpz_t(), k);
    x += modulus * r;
    modulus *= p;
  }
  if (2 * x > modulus) x -= modulus;
  return x;
}

Integer det_exact(const ExactMatrix& m) {
  require(m.is_square(), ErrorCode::invalid_argument, "det: matrix not square");
  return m.rows() <= 64 ? det_bareiss(m) : det_crt(m);
}

// ---------------------------------------------------------------------------

namespace {

void require_field_prime(std::uint64_t p) {
  require(p < (1ull << 62) && modp::is_prime(p), ErrorCode::invalid_argument,
          "modulus " + std::to_string(p) + " is not a prime below 2^62");
}

}  // namespace

std::size_t rank_mod_p(const ExactMatrix& m, std::uint64_t p) {
  require_field_prime(p);
  auto a = m.mod(p);
  return modp::rank(a, m.rows(), m.cols(), p);
}

std::optional<std::vector<std::uint64_t>> solve_mod_p(
    const ExactMatrix& m, std::span<const std::uint64_t> b, std::uint64_t p) {
  require_field_prime(p);
  require(b.size() == m.rows(), ErrorCode::invalid_argument,
          "solve_mod_p: right-hand side length mismatch");
  const std::size_t rows = m.rows(), cols = m.cols(), w = cols + 1;
  std::vector<std::uint64_t> a(rows * w);
  auto red = m.mod(p);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) a[i * w + j] = red[i * cols + j];
    a[i * w + cols] = b[i] % p;
  }
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv * w + c] == 0) ++piv;
    if (piv == rows) continue;
    for (std::size_t j = 0; j < w; ++j) std::swap(a[piv * w + j], a[r * w + j]);
    const std::uint64_t pinv = modp::inv(a[r * w + c], p);
    for (std::size_t j = 0; j < w; ++j) a[r * w + j] = modp::mul(a[r * w + j], pinv, p);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i * w + c] == 0) continue;
      const std::uint64_t f = a[i * w + c];
      for (std::size_t j = 0; j < w; ++j)
        a[i * w + j] = modp::sub(a[i * w + j], modp::mul(f, a[r * w + j], p), p);
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (a[i * w + cols] != 0) return std::nullopt;
  std::vector<std::uint64_t> x(cols, 0);
  for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = a[i * w + cols];
  return x;
}

std::size_t rank_exact(const ExactMatrix& m) { return hnf(m).rank; }

ExactMatrix rows_to_matrix(const std::vector<std::vector<Integer>>& rows,
                           std::size_t cols) {
  ExactMatrix out(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require(rows[i].size() == cols, ErrorCode::invalid_argument,
            "rows_to_matrix: length mismatch");
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = rows[i][j];
  }
  return out;
}

std::vector<std::vector<Integer>> kernel_integer(const ExactMatrix& m) {
  // U * M^T == H; rows of U opposite zero rows of H span ker M and, U being
  // unimodular, span it saturatedly.
  auto res = hnf(m.transpose());
  std::vector<std::vector<Integer>> basis;
  for (std::size_t i = res.rank; i < res.U.rows(); ++i)
    basis.emplace_back(res.U.row(i).begin(), res.U.row(i).end());
  if (basis.empty()) return basis;
  auto canon = hnf(rows_to_matrix(basis, m.cols()));
  std::vector<std::vector<Integer>> out;
  for (std::size_t i = 0; i < canon.rank; ++i)
    out.emplace_back(canon.H.row(i).begin(), canon.H.row(i).end());
  return out;
}

}  // namespace intequiv
