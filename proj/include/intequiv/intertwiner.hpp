#pragma once

// Hom_G(Z[G/H1], Z[G/H2]) through its double-coset basis, and the search for
// a unimodular element of that lattice.
//
// Indexing convention: rows are cosets aH2, columns are cosets bH1, and B_d
// has a 1 at (aH2, bH1) exactly when a^-1 b lies in the double coset
// D_d = H2 g_d H1. Then B_d * rho1(g) == rho2(g) * B_d for all g.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "intequiv/perm.hpp"
#include "intequiv/perm_module.hpp"
#include "intequiv/zmatrix.hpp"

namespace intequiv {

struct DoubleCoset {
  std::size_t id = 0;
  std::size_t representative_index = 0;  // least element of the double coset
  Permutation representative;
  std::size_t size = 0;
};

struct DoubleCosetDecomposition {
  std::vector<DoubleCoset> cosets;
  std::vector<std::uint32_t> label;  // element index -> double coset id
  std::size_t count() const noexcept { return cosets.size(); }
};

// Orbits of G under g -> h2 g h1.
DoubleCosetDecomposition double_cosets(const Group& g, const Subgroup& h1,
                                       const Subgroup& h2);

// (1/|G|) sum_g chi1(g) chi2(g), from class data. Throws internal if the sum
// is not divisible by |G|.
std::int64_t character_inner_product(std::span<const std::int64_t> chi1,
                                     std::span<const std::int64_t> chi2,
                                     std::span<const std::size_t> class_sizes,
                                     std::size_t group_order);

class IntertwinerBasis {
 public:
  // Asserts equivariance, the constant row/column sums and sum_d B_d == J.
  IntertwinerBasis(const Group& g, const Subgroup& h1, const Subgroup& h2);

  const PermRep& rep1() const noexcept { return rep1_; }  // G/H1, columns
  const PermRep& rep2() const noexcept { return rep2_; }  // G/H2, rows
  const DoubleCosetDecomposition& decomposition() const noexcept { return dc_; }
  std::size_t size() const noexcept { return dc_.count(); }
  std::size_t rows() const noexcept { return rep2_.degree(); }
  std::size_t cols() const noexcept { return rep1_.degree(); }
  bool is_square() const noexcept { return rows() == cols(); }

  // Which basis matrix owns entry (row, col).
  std::uint32_t label(std::size_t row, std::size_t col) const {
    return labels_[row * cols() + col];
  }
  const std::vector<std::uint32_t>& labels() const noexcept { return labels_; }

  std::size_t row_sum(std::size_t d) const;  // |D_d| / |H1|
  std::size_t col_sum(std::size_t d) const;  // |D_d| / |H2|

  ExactMatrix matrix(std::size_t d) const;
  ExactMatrix combine(std::span<const Integer> c) const;
  ExactMatrix combine(std::span<const std::int64_t> c) const;
  // sum_d c_d B_d reduced mod p, row-major.
  std::vector<std::uint64_t> combine_mod(std::span<const std::int64_t> c,
                                         std::uint64_t p) const;

 private:
  PermRep rep1_;
  PermRep rep2_;
  DoubleCosetDecomposition dc_;
  std::vector<std::uint32_t> labels_;
};

struct IntertwinerCheck {
  bool ok = false;
  std::string failure;  // names the violated generator relation
};

// X * rho1(g) == rho2(g) * X for every generator g of G.
IntertwinerCheck check_intertwiner(const ExactMatrix& x, const PermRep& rep1,
                                   const PermRep& rep2);
bool verify_intertwiner(const ExactMatrix& x, const PermRep& rep1,
                        const PermRep& rep2);

// ---------------------------------------------------------------------------

struct RationalRankReport {
  bool generic_det_nonzero = false;  // false means undetermined, not "zero"
  std::vector<std::int64_t> witness;
  std::uint64_t prime = 0;           // det(witness) is nonzero modulo this
  std::size_t trials = 0;
};

RationalRankReport rational_rank(const IntertwinerBasis& basis,
                                 std::uint64_t seed = 1, std::size_t retries = 32);

struct LocalSolvability {
  std::uint64_t p = 0;
  unsigned k = 0;
  std::vector<std::uint64_t> modulus;  // defining polynomial of F_{p^k}
  bool found = false;
  // One coefficient vector (length k, lowest degree first) per basis matrix.
  std::vector<std::vector<std::uint64_t>> witness;
  std::size_t trials = 0;
  std::size_t budget = 0;
  bool reverified = false;  // rank of the transpose is full as well
};

inline constexpr std::size_t kLocalTrials = 64;

// Randomized evaluation of det(sum c_d B_d) over F_{p^k}. k == 0 picks the
// least k with p^k > 2n.
LocalSolvability local_solvability(const IntertwinerBasis& basis, std::uint64_t p,
                                   unsigned k = 0, std::uint64_t seed = 1,
                                   std::size_t trials = kLocalTrials);

struct LocalExhaustive {
  std::uint64_t p = 0;
  bool decided = false;   // false when p^m exceeded the enumeration limit
  bool solvable = false;
  std::vector<std::int64_t> witness;  // residues in [0, p)
  std::uint64_t enumerated = 0;
};

// det(sum c_d B_d) mod p only depends on c mod p, so walking all of F_p^m
// decides p-local solvability outright.
LocalExhaustive local_exhaustive(const IntertwinerBasis& basis, std::uint64_t p,
                                 std::uint64_t limit = 65536);

// ---------------------------------------------------------------------------

enum class SearchStrategy { box, random, crt };

const char* to_string(SearchStrategy s);
SearchStrategy parse_strategy(const std::string& s);

struct SearchOptions {
  SearchStrategy strategy = SearchStrategy::box;
  std::int64_t radius = 2;            // coefficients in [-radius, radius]
  std::uint64_t budget = 0;           // exact determinant evaluations; 0 = unlimited
  std::uint64_t seed = 1;
  std::uint64_t max_candidates = 10'000'000;
  bool local_preflight = true;
  bool hecke_filter = true;
};

struct UnimodularCertificate {
  std::vector<Integer> coefficients;
  ExactMatrix x;
  int det = 0;  // +1 or -1
  SearchStrategy strategy = SearchStrategy::box;
  std::uint64_t seed = 0;
  std::uint64_t budget = 0;
  std::uint64_t exact_evaluations = 0;
  std::uint64_t candidate_index = 0;
};

struct SearchStats {
  std::uint64_t candidates = 0;
  std::uint64_t passed_row_sum = 0;
  std::uint64_t passed_hecke = 0;
  std::uint64_t passed_modular = 0;
  std::uint64_t exact_evaluations = 0;
};

enum class SearchStatus { certificate, exhausted, obstruction };

struct SearchOutcome {
  SearchStatus status = SearchStatus::exhausted;
  std::optional<UnimodularCertificate> certificate;
  std::optional<LocalExhaustive> obstruction;
  std::vector<LocalExhaustive> preflight;
  SearchStats stats;
};

// Throws precondition for non-square bases or when no rational isomorphism
// could be exhibited.
SearchOutcome search_unimodular(const IntertwinerBasis& basis,
                                const SearchOptions& options);

// Matrix of e -> X e on End_G(Z[G/H1]) in double-coset bases. A unimodular X
// makes this a lattice bijection, so |det| == 1 is necessary.
class HeckeFilter {
 public:
  HeckeFilter(const IntertwinerBasis& basis, const Group& g, const Subgroup& h1);
  ExactMatrix left_multiplication(std::span<const std::int64_t> c) const;
  bool admits(std::span<const std::int64_t> c) const;

 private:
  std::size_t m_ = 0;   // Hom basis size
  std::size_t me_ = 0;  // End basis size
  // structure_[(d * m_ + f) * me_ + e]: coefficient of B_f in B_d C_e
  std::vector<std::int64_t> structure_;
};

// ---------------------------------------------------------------------------

struct NormExponentData {
  ExactMatrix phi;                     // Z[G/H2] -> Z[G/H1], equals X^T
  std::vector<Integer> exponents;      // phi'(1) on the cosets of H1
  Integer exponent_sum;
  std::vector<Integer> column_sums;    // of X
  bool commutes = false;
};

// Throws verification_failed if X is not an intertwiner or a path of the
// lifting square disagrees on some generator.
NormExponentData lift_regular(const ExactMatrix& x, const PermRep& rep1,
                              const PermRep& rep2);

}  // namespace intequiv
