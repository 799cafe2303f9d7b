#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "intequiv/constructors.hpp"
#include "intequiv/error.hpp"
#include "intequiv/gassmann.hpp"
#include "intequiv/intertwiner.hpp"

using namespace intequiv;

namespace {

Group s4() {
  return Group::close({Permutation::from_cycles(4, {{0, 1}}),
                       Permutation::from_cycles(4, {{0, 1, 2, 3}})});
}

// Burnside: orbits of H2 on G/H1.
std::size_t orbit_count(const Group& g, const Subgroup& h1, const Subgroup& h2) {
  const PermRep rep(g, h1);
  std::size_t sum = 0;
  for (std::size_t e : h2.elements()) sum += rep.action_of(e).fixed_points();
  return sum / h2.order();
}

const A5PairWitness& a5() {
  static const A5PairWitness w = find_a5_pair(29);
  return w;
}

}  // namespace

TEST_CASE("double cosets partition G and match Burnside") {
  const Group g = s4();
  const auto h1 = Subgroup::point_stabilizer(g, 0);
  const auto h2 = Subgroup::generated_by(g, {Permutation::from_cycles(4, {{0, 1}})});
  const auto dc = double_cosets(g, h1, h2);
  std::size_t total = 0;
  for (const auto& d : dc.cosets) {
    total += d.size;
    CHECK(dc.label[d.representative_index] == d.id);
    CHECK(d.size % h1.order() == 0);
    CHECK(d.size % h2.order() == 0);
  }
  CHECK(total == g.order());
  CHECK(dc.count() == orbit_count(g, h1, h2));
}

TEST_CASE("double-coset count equals the character inner product") {
  const FanoModel f = psl3_2();
  const auto r = check_triple(f.group, f.p1, f.p2);
  const IntertwinerBasis b(f.group, f.p1, f.p2);
  CHECK(b.size() == 2);
  CHECK(character_inner_product(r.chi1, r.chi2, r.class_sizes, 168) == 2);
  CHECK(b.size() == orbit_count(f.group, f.p1, f.p2));

  const auto& w = a5();
  const auto r2 = check_triple(w.psl, w.h1, w.h2);
  const IntertwinerBasis b2(w.psl, w.h1, w.h2);
  CHECK(b2.size() == 8);
  CHECK(character_inner_product(r2.chi1, r2.chi2, r2.class_sizes, w.psl.order()) == 8);
}

TEST_CASE("every basis matrix intertwines and they sum to J") {
  const FanoModel f = psl3_2();
  const IntertwinerBasis b(f.group, f.p1, f.p2);
  ExactMatrix sum(b.rows(), b.cols());
  for (std::size_t d = 0; d < b.size(); ++d) {
    const ExactMatrix m = b.matrix(d);
    CHECK(verify_intertwiner(m, b.rep1(), b.rep2()));
    // Full check on all of G, not only generators.
    for (const auto& x : f.group.elements())
      CHECK(m * rep_matrix(b.rep1(), x) == rep_matrix(b.rep2(), x) * m);
    sum = sum + m;
  }
  for (const auto& v : sum.entries()) CHECK(v == 1);
  CHECK(b.row_sum(0) + b.row_sum(1) == 7);
}

TEST_CASE("corrupted intertwiner names the failing generator relation") {
  const FanoModel f = psl3_2();
  const IntertwinerBasis b(f.group, f.p1, f.p2);
  ExactMatrix m = b.matrix(0);
  m(2, 3) += 1;
  const auto c = check_intertwiner(m, b.rep1(), b.rep2());
  CHECK_FALSE(c.ok);
  CHECK(c.failure.find("generator g") != std::string::npos);
  CHECK(c.failure.find("rho1") != std::string::npos);
  CHECK_THROWS_AS(check_intertwiner(ExactMatrix(3, 3), b.rep1(), b.rep2()), Error);
}

TEST_CASE("local decisions for the parabolic pair") {
  const FanoModel f = psl3_2();
  const IntertwinerBasis b(f.group, f.p1, f.p2);
  const auto two = local_exhaustive(b, 2);
  CHECK(two.decided);
  CHECK_FALSE(two.solvable);
  CHECK(two.enumerated == 3);
  const auto three = local_exhaustive(b, 3);
  CHECK(three.decided);
  CHECK(three.solvable);
  CHECK(rational_rank(b).generic_det_nonzero);
  // Randomized check at 2 cannot succeed: every determinant is even.
  const auto r2 = local_solvability(b, 2);
  CHECK_FALSE(r2.found);
  CHECK(r2.trials == kLocalTrials);
  const auto r7 = local_solvability(b, 7);
  CHECK(r7.found);
  CHECK(r7.reverified);
}

TEST_CASE("search outcomes on the parabolic pair") {
  const FanoModel f = psl3_2();
  const IntertwinerBasis b(f.group, f.p1, f.p2);
  const auto o = search_unimodular(b, SearchOptions{});
  CHECK(o.status == SearchStatus::obstruction);
  REQUIRE(o.obstruction.has_value());
  CHECK(o.obstruction->p == 2);

  SearchOptions no_pre;
  no_pre.local_preflight = false;
  const auto e = search_unimodular(b, no_pre);
  CHECK(e.status == SearchStatus::exhausted);
  CHECK(e.stats.candidates == 24);  // [-2, 2]^2 minus the origin
  CHECK(e.stats.passed_hecke == 0);
}

TEST_CASE("conjugate pair yields a permutation-matrix certificate") {
  const Group g = s4();
  const auto h1 = Subgroup::point_stabilizer(g, 0);
  const auto h2 = Subgroup::point_stabilizer(g, 3);
  const IntertwinerBasis b(g, h1, h2);
  const auto o = search_unimodular(b, SearchOptions{});
  REQUIRE(o.status == SearchStatus::certificate);
  const auto& c = *o.certificate;
  CHECK(c.candidate_index < 2 * b.size());  // a single signed basis vector
  CHECK(abs(Integer(c.det)) == 1);
  for (std::size_t i = 0; i < c.x.rows(); ++i) {
    int ones = 0;
    for (std::size_t j = 0; j < c.x.cols(); ++j) {
      CHECK((c.x(i, j) == 0 || c.x(i, j) == 1));
      ones += c.x(i, j) == 1;
    }
    CHECK(ones == 1);
  }
}

TEST_CASE("Hecke matrix of the identity coefficient is the identity") {
  const Group g = s4();
  const auto h = Subgroup::point_stabilizer(g, 0);
  const IntertwinerBasis b(g, h, h);
  const HeckeFilter hf(b, g, h);
  std::vector<std::int64_t> e(b.size(), 0);
  e[0] = 1;  // the double coset of the identity is H itself
  CHECK(b.matrix(0) == ExactMatrix::identity(4));
  CHECK(hf.left_multiplication(e) == ExactMatrix::identity(b.size()));
  CHECK(hf.admits(e));
}

TEST_CASE("PSL_2(F_29) A5 pair: certificate, strategies and determinism") {
  const auto& w = a5();
  const IntertwinerBasis b(w.psl, w.h1, w.h2);
  const auto box = search_unimodular(b, SearchOptions{});
  REQUIRE(box.status == SearchStatus::certificate);
  const auto& c = *box.certificate;
  CHECK(verify_intertwiner(c.x, b.rep1(), b.rep2()));
  const Integer d = det_exact(c.x);
  CHECK((d == 1 || d == -1));
  CHECK(d == c.det);
  CHECK(b.combine(c.coefficients) == c.x);

  const auto again = search_unimodular(b, SearchOptions{});
  CHECK(again.certificate->coefficients == c.coefficients);

  SearchOptions crt;
  crt.strategy = SearchStrategy::crt;
  const auto viacrt = search_unimodular(b, crt);
  REQUIRE(viacrt.status == SearchStatus::certificate);
  CHECK(viacrt.certificate->coefficients == c.coefficients);

  SearchOptions rnd;
  rnd.strategy = SearchStrategy::random;
  rnd.seed = 5;
  const auto viarnd = search_unimodular(b, rnd);
  REQUIRE(viarnd.status == SearchStatus::certificate);
  CHECK(abs(det_exact(viarnd.certificate->x)) == 1);

  const auto n = lift_regular(c.x, b.rep1(), b.rep2());
  CHECK(n.commutes);
  CHECK(n.phi == c.x.transpose());
  for (const auto& s : n.column_sums) CHECK(s == n.exponent_sum);
  // X maps the all-ones vector to +-1 times itself.
  CHECK(abs(n.exponent_sum) == 1);
}

TEST_CASE("local solvability of the A5 pair at every prime up to 31") {
  const auto& w = a5();
  const IntertwinerBasis b(w.psl, w.h1, w.h2);
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31}) {
    const auto r = local_solvability(b, p);
    CHECK(r.found);
    CHECK(r.reverified);
  }
}

TEST_CASE("lift_regular rejects a non-intertwiner") {
  const FanoModel f = psl3_2();
  const IntertwinerBasis b(f.group, f.p1, f.p2);
  ExactMatrix m = b.matrix(1);
  m(0, 0) = 5;
  CHECK_THROWS_AS(lift_regular(m, b.rep1(), b.rep2()), Error);
}

TEST_CASE("strategy names") {
  CHECK(parse_strategy("crt") == SearchStrategy::crt);
  CHECK(std::string(to_string(SearchStrategy::random)) == "random");
  CHECK_THROWS_AS(parse_strategy("annealing"), Error);
}
