#include "intequiv/intertwiner.hpp"

#include <algorithm>
#include <random>

#include "intequiv/error.hpp"
#include "intequiv/finite_field.hpp"
#include "intequiv/modular.hpp"
#include "intequiv/parallel.hpp"

namespace intequiv {

DoubleCosetDecomposition double_cosets(const Group& g, const Subgroup& h1,
                                       const Subgroup& h2) {
  require(h1.parent().same_as(g) && h2.parent().same_as(g),
          ErrorCode::precondition, "double_cosets: subgroups of another group");
  constexpr std::uint32_t kUnset = ~std::uint32_t{0};
  DoubleCosetDecomposition out;
  out.label.assign(g.order(), kUnset);
  std::vector<std::size_t> left, right;
  for (const auto& x : h2.generators()) left.push_back(g.index_of(x));
  for (const auto& x : h1.generators()) right.push_back(g.index_of(x));

  std::vector<std::size_t> stack;
  for (std::size_t start = 0; start < g.order(); ++start) {
    if (out.label[start] != kUnset) continue;
    const auto id = static_cast<std::uint32_t>(out.cosets.size());
    std::size_t size = 0;
    out.label[start] = id;
    stack.assign(1, start);
    while (!stack.empty()) {
      const std::size_t x = stack.back();
      stack.pop_back();
      ++size;
      auto visit = [&](std::size_t y) {
        if (out.label[y] == kUnset) {
          out.label[y] = id;
          stack.push_back(y);
        }
      };
      for (std::size_t l : left) visit(g.multiply(l, x));
      for (std::size_t r : right) visit(g.multiply(x, r));
    }
    out.cosets.push_back(DoubleCoset{id, start, g.element(start), size});
  }
  return out;
}

std::int64_t character_inner_product(std::span<const std::int64_t> chi1,
                                     std::span<const std::int64_t> chi2,
                                     std::span<const std::size_t> class_sizes,
                                     std::size_t group_order) {
  require(chi1.size() == chi2.size() && chi1.size() == class_sizes.size(),
          ErrorCode::invalid_argument, "character_inner_product: length mismatch");
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < chi1.size(); ++i)
    sum += static_cast<std::int64_t>(class_sizes[i]) * chi1[i] * chi2[i];
  const auto order = static_cast<std::int64_t>(group_order);
  require(sum % order == 0, ErrorCode::internal,
          "character inner product is not an integer");
  return sum / order;
}

// ---------------------------------------------------------------------------

IntertwinerBasis::IntertwinerBasis(const Group& g, const Subgroup& h1,
                                   const Subgroup& h2)
    : rep1_(g, h1), rep2_(g, h2), dc_(double_cosets(g, h1, h2)) {
  const std::size_t nr = rows(), nc = cols();
  labels_.resize(nr * nc);
  const auto& r2 = rep2_.coset_reps();
  const auto& r1 = rep1_.coset_reps();
  for (std::size_t i = 0; i < nr; ++i) {
    const std::size_t ai = g.inverse(r2[i]);
    for (std::size_t j = 0; j < nc; ++j)
      labels_[i * nc + j] = dc_.label[g.multiply(ai, r1[j])];
  }

  // Equivariance of every B_d at once: label(g.i, g.j) == label(i, j).
  for (std::size_t t = 0; t < g.generators().size(); ++t) {
    const auto& a1 = rep1_.generator_actions()[t];
    const auto& a2 = rep2_.generator_actions()[t];
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j)
        require(label(a2(i), a1(j)) == label(i, j), ErrorCode::internal,
                "basis matrix fails equivariance");
  }
  // Constant line sums: |D_d|/|H1| per row, |D_d|/|H2| per column.
  std::vector<std::size_t> counts(size());
  for (std::size_t i = 0; i < nr; ++i) {
    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t j = 0; j < nc; ++j) ++counts[label(i, j)];
    for (std::size_t d = 0; d < size(); ++d)
      require(counts[d] == row_sum(d), ErrorCode::internal,
              "basis matrix has a non-constant row sum");
  }
  for (std::size_t j = 0; j < nc; ++j) {
    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t i = 0; i < nr; ++i) ++counts[label(i, j)];
    for (std::size_t d = 0; d < size(); ++d)
      require(counts[d] == col_sum(d), ErrorCode::internal,
              "basis matrix has a non-constant column sum");
  }
}

std::size_t IntertwinerBasis::row_sum(std::size_t d) const {
  return dc_.cosets[d].size / rep1_.subgroup().order();
}

std::size_t IntertwinerBasis::col_sum(std::size_t d) const {
  return dc_.cosets[d].size / rep2_.subgroup().order();
}

ExactMatrix IntertwinerBasis::matrix(std::size_t d) const {
  require(d < size(), ErrorCode::invalid_argument, "basis index out of range");
  ExactMatrix b(rows(), cols());
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t j = 0; j < cols(); ++j)
      if (label(i, j) == d) b(i, j) = 1;
  return b;
}

ExactMatrix IntertwinerBasis::combine(std::span<const Integer> c) const {
  require(c.size() == size(), ErrorCode::invalid_argument,
          "coefficient vector has the wrong length");
  ExactMatrix x(rows(), cols());
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t j = 0; j < cols(); ++j) x(i, j) = c[label(i, j)];
  return x;
}

ExactMatrix IntertwinerBasis::combine(std::span<const std::int64_t> c) const {
  std::vector<Integer> big;
  for (auto v : c) big.emplace_back(static_cast<long>(v));
  return combine(big);
}

std::vector<std::uint64_t> IntertwinerBasis::combine_mod(
    std::span<const std::int64_t> c, std::uint64_t p) const {
  require(c.size() == size(), ErrorCode::invalid_argument,
          "coefficient vector has the wrong length");
  std::vector<std::uint64_t> red(c.size());
  for (std::size_t d = 0; d < c.size(); ++d) red[d] = modp::reduce(c[d], p);
  std::vector<std::uint64_t> x(labels_.size());
  for (std::size_t k = 0; k < labels_.size(); ++k) x[k] = red[labels_[k]];
  return x;
}

// ---------------------------------------------------------------------------

IntertwinerCheck check_intertwiner(const ExactMatrix& x, const PermRep& rep1,
                                   const PermRep& rep2) {
  require(rep1.group().same_as(rep2.group()), ErrorCode::invalid_argument,
          "check_intertwiner: representations of different groups");
  require(x.rows() == rep2.degree() && x.cols() == rep1.degree(),
          ErrorCode::invalid_argument, "check_intertwiner: dimension mismatch");
  const auto& gens = rep1.group().generators();
  for (std::size_t t = 0; t < gens.size(); ++t) {
    const Permutation& g1 = rep1.generator_actions()[t];
    const Permutation g2inv = invert(rep2.generator_actions()[t]);
    // (X rho1(g))[r][c] = X[r][g c];  (rho2(g) X)[r][c] = X[g^-1 r][c]
    for (std::size_t r = 0; r < x.rows(); ++r) {
      for (std::size_t c = 0; c < x.cols(); ++c) {
        if (x(r, g1(c)) != x(g2inv(r), c)) {
          return IntertwinerCheck{
              false, "generator g" + std::to_string(t) +
                         ": X*rho1(g" + std::to_string(t) + ") != rho2(g" +
                         std::to_string(t) + ")*X at entry (" +
                         std::to_string(r) + ", " + std::to_string(c) + ")"};
        }
      }
    }
  }
  return IntertwinerCheck{true, {}};
}

bool verify_intertwiner(const ExactMatrix& x, const PermRep& rep1,
                        const PermRep& rep2) {
  return check_intertwiner(x, rep1, rep2).ok;
}

// ---------------------------------------------------------------------------

namespace {

// A basis matrix that is a permutation matrix, if any.
std::optional<std::size_t> permutation_basis_element(const IntertwinerBasis& b) {
  for (std::size_t d = 0; d < b.size(); ++d)
    if (b.row_sum(d) == 1 && b.col_sum(d) == 1) return d;
  return std::nullopt;
}

std::vector<std::int64_t> unit_vector(std::size_t m, std::size_t d) {
  std::vector<std::int64_t> c(m, 0);
  c[d] = 1;
  return c;
}

}  // namespace

RationalRankReport rational_rank(const IntertwinerBasis& basis,
                                 std::uint64_t seed, std::size_t retries) {
  require(basis.is_square(), ErrorCode::precondition,
          "rational_rank: basis matrices are not square");
  RationalRankReport rep;
  rep.prime = modp::large_primes(1)[0];
  std::mt19937_64 rng(seed);
  const std::size_t m = basis.size();
  for (std::size_t t = 0; t < retries; ++t) {
    std::vector<std::int64_t> c;
    if (t == 0) {
      // Trial 0: the double coset of the identity.
      c = unit_vector(m, 0);
    } else {
      c.resize(m);
      for (auto& v : c) v = static_cast<std::int64_t>(rng() % 7) - 3;
    }
    rep.trials = t + 1;
    auto a = basis.combine_mod(c, rep.prime);
    if (modp::det(a, basis.rows(), rep.prime) != 0) {
      rep.generic_det_nonzero = true;
      rep.witness = std::move(c);
      return rep;
    }
  }
  return rep;
}

LocalSolvability local_solvability(const IntertwinerBasis& basis, std::uint64_t p,
                                   unsigned k, std::uint64_t seed,
                                   std::size_t trials) {
  require(basis.is_square(), ErrorCode::precondition,
          "local_solvability: basis matrices are not square");
  const std::size_t n = basis.rows(), m = basis.size();
  if (k == 0) k = degree_exceeding(p, 2 * n);
  const ExtensionField field(p, k);
  LocalSolvability out;
  out.p = p;
  out.k = k;
  out.modulus = field.modulus();
  out.budget = trials;

  std::mt19937_64 rng(seed);
  const auto perm_d = permutation_basis_element(basis);
  for (std::size_t t = 0; t < trials; ++t) {
    std::vector<ExtensionField::Element> c(m, field.zero());
    if (t == 0 && perm_d) {
      c[*perm_d] = field.one();
    } else {
      for (auto& v : c) v = field.from_index(rng() % field.size());
    }
    out.trials = t + 1;
    std::vector<ExtensionField::Element> x(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) x[i * n + j] = c[basis.label(i, j)];
    if (field.is_zero(field.det(x, n))) continue;
    out.found = true;
    out.witness.assign(c.begin(), c.end());
    out.reverified = field.rank_of_transpose(x, n) == n;
    return out;
  }
  return out;
}

LocalExhaustive local_exhaustive(const IntertwinerBasis& basis, std::uint64_t p,
                                 std::uint64_t limit) {
  require(basis.is_square(), ErrorCode::precondition,
          "local_exhaustive: basis matrices are not square");
  require(modp::is_prime(p), ErrorCode::invalid_argument,
          "local_exhaustive: p is not prime");
  LocalExhaustive out;
  out.p = p;
  const std::size_t m = basis.size(), n = basis.rows();
  unsigned __int128 total = 1;
  for (std::size_t i = 0; i < m && total <= limit; ++i) total *= p;
  if (total > limit) return out;
  out.decided = true;
  std::vector<std::int64_t> c(m);
  for (std::uint64_t idx = 1; idx < static_cast<std::uint64_t>(total); ++idx) {
    std::uint64_t v = idx;
    for (std::size_t d = 0; d < m; ++d) {
      c[d] = static_cast<std::int64_t>(v % p);
      v /= p;
    }
    ++out.enumerated;
    auto a = basis.combine_mod(c, p);
    if (modp::det(a, n, p) != 0) {
      out.solvable = true;
      out.witness = c;
      return out;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

HeckeFilter::HeckeFilter(const IntertwinerBasis& basis, const Group& g,
                         const Subgroup& h1)
    : m_(basis.size()) {
  const PermRep& rep1 = basis.rep1();
  const DoubleCosetDecomposition ends = double_cosets(g, h1, h1);
  me_ = ends.count();
  structure_.assign(m_ * m_ * me_, 0);
  const std::size_t n = basis.cols();
  const auto& reps = rep1.coset_reps();
  for (std::size_t f = 0; f < m_; ++f) {
    // Any entry of B_f reads off its coefficient.
    std::size_t pos = 0;
    while (basis.labels()[pos] != f) ++pos;
    const std::size_t i_f = pos / n, j_f = pos % n;
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t d = basis.label(i_f, k);
      const std::size_t e =
          ends.label[g.multiply(g.inverse(reps[k]), reps[j_f])];
      ++structure_[(d * m_ + f) * me_ + e];
    }
  }
}

ExactMatrix HeckeFilter::left_multiplication(std::span<const std::int64_t> c) const {
  ExactMatrix l(m_, me_);
  for (std::size_t d = 0; d < m_; ++d) {
    if (c[d] == 0) continue;
    for (std::size_t f = 0; f < m_; ++f)
      for (std::size_t e = 0; e < me_; ++e)
        l(f, e) += static_cast<long>(c[d] * structure_[(d * m_ + f) * me_ + e]);
  }
  return l;
}

bool HeckeFilter::admits(std::span<const std::int64_t> c) const {
  if (m_ != me_) return false;
  const Integer d = det_bareiss(left_multiplication(c));
  return d == 1 || d == -1;
}

// ---------------------------------------------------------------------------

const char* to_string(SearchStrategy s) {
  switch (s) {
    case SearchStrategy::box: return "box";
    case SearchStrategy::random: return "random";
    case SearchStrategy::crt: return "crt";
  }
  return "unknown";
}

SearchStrategy parse_strategy(const std::string& s) {
  if (s == "box") return SearchStrategy::box;
  if (s == "random") return SearchStrategy::random;
  if (s == "crt") return SearchStrategy::crt;
  fail(ErrorCode::invalid_argument, "unknown search strategy '" + s + "'");
}

namespace {

// Nonzero points of [-R, R]^m by increasing max-norm r, then support size w,
// then support in lexicographic order, then values drawn from
// 1, -1, 2, -2, ..., r, -r with the first support position most significant.
class BoxEnumerator {
 public:
  BoxEnumerator(std::size_t m, std::int64_t radius) : m_(m), radius_(radius) {}

  bool next(std::vector<std::int64_t>& out) {
    for (;;) {
      if (done_ || !advance()) {
        done_ = true;
        return false;
      }
      bool reaches = false;
      for (auto d : digits_)
        if (value(d) == r_ || value(d) == -r_) reaches = true;
      if (!reaches) continue;
      out.assign(m_, 0);
      for (std::size_t i = 0; i < w_; ++i) out[support_[i]] = value(digits_[i]);
      return true;
    }
  }

 private:
  static std::int64_t value(std::int64_t d) {
    return (d / 2 + 1) * (d % 2 == 0 ? 1 : -1);
  }

  void reset_support() {
    support_.resize(w_);
    for (std::size_t i = 0; i < w_; ++i) support_[i] = i;
    digits_.assign(w_, 0);
  }

  bool next_support() {
    std::size_t i = w_;
    while (i-- > 0) {
      if (support_[i] < m_ - w_ + i) {
        ++support_[i];
        for (std::size_t j = i + 1; j < w_; ++j) support_[j] = support_[j - 1] + 1;
        return true;
      }
    }
    return false;
  }

  bool advance() {
    if (!started_) {
      if (m_ == 0 || radius_ < 1) return false;
      started_ = true;
      r_ = 1;
      w_ = 1;
      reset_support();
      return true;
    }
    const std::int64_t base = 2 * r_;
    std::size_t i = w_;
    while (i-- > 0) {
      if (++digits_[i] < base) return true;
      digits_[i] = 0;
    }
    if (next_support()) {
      digits_.assign(w_, 0);
      return true;
    }
    if (++w_ > m_) {
      w_ = 1;
      if (++r_ > radius_) return false;
    }
    reset_support();
    return true;
  }

  std::size_t m_;
  std::int64_t radius_;
  bool started_ = false;
  bool done_ = false;
  std::int64_t r_ = 0;
  std::size_t w_ = 0;
  std::vector<std::size_t> support_;
  std::vector<std::int64_t> digits_;
};

constexpr std::size_t kBatch = 64;
constexpr std::size_t kModularFilters = 3;

// det == +1 or -1, decided from residues modulo enough primes to cover the
// Hadamard bound; stops at the first residue that is neither.
int unit_det_by_residues(const ExactMatrix& x) {
  const std::size_t n = x.rows();
  const std::size_t count = (hadamard_bits(x) + 1) / 61 + 1;
  const auto& primes = modp::large_primes(count);
  int sign = 0;
  for (std::size_t i = 0; i < count; ++i) {
    auto a = x.mod(primes[i]);
    const std::uint64_t r = modp::det(a, n, primes[i]);
    const int s = r == 1 ? 1 : (r == primes[i] - 1 ? -1 : 0);
    if (s == 0 || (sign != 0 && s != sign)) return 0;
    sign = s;
  }
  return sign;
}

}  // namespace

SearchOutcome search_unimodular(const IntertwinerBasis& basis,
                                const SearchOptions& options) {
  require(basis.is_square(), ErrorCode::precondition,
          "search_unimodular: [G:H1] != [G:H2]");
  require(options.radius >= 1, ErrorCode::invalid_argument,
          "search_unimodular: radius must be positive");
  const std::size_t m = basis.size(), n = basis.rows();
  const Group& g = basis.rep1().group();
  SearchOutcome out;

  const RationalRankReport rr = rational_rank(basis, options.seed);
  require(rr.generic_det_nonzero, ErrorCode::precondition,
          "search_unimodular: no rationally invertible element found; the "
          "modules may not be rationally equivalent");

  if (options.local_preflight) {
    for (std::uint64_t p = 2; p <= g.order(); ++p) {
      if (g.order() % p != 0 || !modp::is_prime(p)) continue;
      LocalExhaustive le = local_exhaustive(basis, p);
      out.preflight.push_back(le);
      if (le.decided && !le.solvable) {
        out.status = SearchStatus::obstruction;
        out.obstruction = le;
        return out;
      }
    }
  }

  std::optional<HeckeFilter> hecke;
  if (options.hecke_filter)
    hecke.emplace(basis, g, basis.rep1().subgroup());
  const auto& filter_primes = modp::large_primes(kModularFilters);

  BoxEnumerator box(m, options.radius);
  std::mt19937_64 rng(options.seed);
  auto next_candidate = [&](std::vector<std::int64_t>& c) -> bool {
    if (options.strategy == SearchStrategy::random) {
      c.resize(m);
      for (;;) {
        bool nonzero = false;
        for (auto& v : c) {
          v = static_cast<std::int64_t>(rng() % (2 * options.radius + 1)) -
              options.radius;
          nonzero |= v != 0;
        }
        if (nonzero) return true;
      }
    }
    return box.next(c);
  };

  enum Stage : std::uint8_t { rejected_row, rejected_hecke, rejected_mod, survivor };
  std::vector<std::vector<std::int64_t>> batch;
  std::vector<Stage> stage;
  std::uint64_t base_index = 0;
  for (;;) {
    batch.clear();
    std::vector<std::int64_t> c;
    while (batch.size() < kBatch && out.stats.candidates < options.max_candidates &&
           next_candidate(c)) {
      batch.push_back(c);
      ++out.stats.candidates;
    }
    if (batch.empty()) break;

    stage.assign(batch.size(), rejected_row);
    parallel_for(batch.size(), [&](std::size_t b) {
      const auto& cand = batch[b];
      std::int64_t row = 0;
      for (std::size_t d = 0; d < m; ++d)
        row += cand[d] * static_cast<std::int64_t>(basis.row_sum(d));
      if (row != 1 && row != -1) return;
      stage[b] = rejected_hecke;
      if (hecke && !hecke->admits(cand)) return;
      stage[b] = rejected_mod;
      for (std::uint64_t p : filter_primes) {
        auto a = basis.combine_mod(cand, p);
        const std::uint64_t r = modp::det(a, n, p);
        if (r != 1 && r != p - 1) return;
      }
      stage[b] = survivor;
    });

    for (std::size_t b = 0; b < batch.size(); ++b) {
      if (stage[b] >= rejected_hecke) ++out.stats.passed_row_sum;
      if (stage[b] >= rejected_mod) ++out.stats.passed_hecke;
      if (stage[b] != survivor) continue;
      ++out.stats.passed_modular;
      if (options.budget && out.stats.exact_evaluations >= options.budget) {
        out.status = SearchStatus::exhausted;
        return out;
      }
      ++out.stats.exact_evaluations;
      ExactMatrix x = basis.combine(std::span<const std::int64_t>(batch[b]));
      int sign = 0;
      if (options.strategy == SearchStrategy::crt) {
        sign = unit_det_by_residues(x);
      } else {
        const Integer d = det_exact(x);
        sign = d == 1 ? 1 : (d == -1 ? -1 : 0);
      }
      if (sign == 0) continue;

      UnimodularCertificate cert;
      for (auto v : batch[b]) cert.coefficients.emplace_back(static_cast<long>(v));
      cert.x = std::move(x);
      cert.det = sign;
      cert.strategy = options.strategy;
      cert.seed = options.seed;
      cert.budget = options.budget;
      cert.exact_evaluations = out.stats.exact_evaluations;
      cert.candidate_index = base_index + b;
      require(verify_intertwiner(cert.x, basis.rep1(), basis.rep2()),
              ErrorCode::internal, "search produced a non-intertwiner");
      out.status = SearchStatus::certificate;
      out.certificate = std::move(cert);
      return out;
    }
    base_index += batch.size();
  }
  out.status = SearchStatus::exhausted;
  return out;
}

// ---------------------------------------------------------------------------

NormExponentData lift_regular(const ExactMatrix& x, const PermRep& rep1,
                              const PermRep& rep2) {
  auto check = check_intertwiner(x, rep1, rep2);
  if (!check.ok)
    fail(ErrorCode::verification_failed, "lift_regular: " + check.failure);
  NormExponentData out;
  out.phi = x.transpose();
  const std::size_t n = x.cols();
  // phi'(e_1) = phi(e_{H2}) = column 0 of X^T = row 0 of X.
  out.exponents.assign(x.row(0).begin(), x.row(0).end());
  for (const auto& v : out.exponents) out.exponent_sum += v;
  out.column_sums.assign(n, 0);
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < n; ++j) out.column_sums[j] += x(i, j);

  // Both paths of the square on e_g, for the identity and each generator:
  // phi(e_{g H2}) against rho1(g) phi'(e_1).
  const Group& g = rep1.group();
  std::vector<std::size_t> elems{0};
  for (const auto& s : g.generators()) elems.push_back(g.index_of(s));
  for (std::size_t idx : elems) {
    const std::size_t coset2 = rep2.act(idx, 0);
    const std::size_t inv = g.inverse(idx);
    for (std::size_t i = 0; i < n; ++i) {
      if (out.phi(i, coset2) != out.exponents[rep1.act(inv, i)])
        fail(ErrorCode::verification_failed,
             "lift_regular: the lifted map does not commute at element " +
                 std::to_string(idx));
    }
  }
  out.commutes = true;
  return out;
}

}  // namespace intequiv
