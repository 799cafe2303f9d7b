#pragma once

// Randomized exact-linear-algebra checks against the brute-force oracles.

#include <random>
#include <sstream>
#include <string>

#include "intequiv/zmatrix.hpp"
#include "oracles.hpp"

namespace suite {

struct Result {
  std::size_t matrices = 0;
  std::size_t failures = 0;
  std::string first_failure;
};

inline bool is_unit(const intequiv::Integer& d) { return d == 1 || d == -1; }

inline Result run_linear_algebra(std::size_t count, std::uint64_t seed) {
  using namespace intequiv;
  Result res;
  std::mt19937_64 rng(seed);
  auto fail = [&](std::size_t idx, const std::string& what) {
    if (res.failures++ == 0) {
      std::ostringstream os;
      os << "matrix " << idx << ": " << what;
      res.first_failure = os.str();
    }
  };
  for (std::size_t t = 0; t < count; ++t) {
    const std::size_t rows = 1 + rng() % 5;
    const std::size_t cols = t % 2 == 0 ? rows : 1 + rng() % 5;
    const ExactMatrix m = oracle::random_matrix(rng, rows, cols, 12);
    ++res.matrices;

    if (m.is_square()) {
      const Integer ref = oracle::cofactor_det(oracle::to_rows(m));
      if (det_exact(m) != ref) fail(t, "det_exact differs from cofactor expansion");
      if (det_bareiss(m) != ref) fail(t, "det_bareiss differs from cofactor expansion");
      if (det_crt(m) != ref) fail(t, "det_crt differs from cofactor expansion");
    }

    const SNFResult s = snf(m);
    if (!(s.U * m * s.V == s.S)) fail(t, "U*M*V != S");
    if (!is_unit(det_exact(s.U)) || !is_unit(det_exact(s.V))) fail(t, "SNF transform not unimodular");
    if (s.invariant_factors != oracle::smith_by_minors(m))
      fail(t, "invariant factors differ from gcd-of-minors");
    for (std::size_t i = 0; i < s.S.rows(); ++i)
      for (std::size_t j = 0; j < s.S.cols(); ++j)
        if (i != j && s.S(i, j) != 0) fail(t, "S not diagonal");

    const HNFResult h = hnf(m);
    if (!(h.U * m == h.H)) fail(t, "U*M != H");
    if (!is_unit(det_exact(h.U))) fail(t, "HNF transform not unimodular");
    if (!(hnf(h.H).H == h.H)) fail(t, "HNF not idempotent");
    if (h.rank != rank_exact(m)) fail(t, "HNF rank differs from rank_exact");
  }
  return res;
}

}  // namespace suite
