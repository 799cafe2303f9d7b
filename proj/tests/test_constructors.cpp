#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "intequiv/constructors.hpp"
#include "intequiv/error.hpp"
#include "intequiv/modular.hpp"

using namespace intequiv;

TEST_CASE("projective line labelling and Moebius maps") {
  const ProjectiveLineLabeling line{7};
  CHECK(line.points() == 8);
  CHECK(line.infinity() == 7);
  const auto inv = mobius(7, 0, -1, 1, 0);  // x -> -1/x
  CHECK(inv(0) == line.infinity());
  CHECK(inv(line.infinity()) == 0);
  CHECK(inv(1) == 6);
  const auto shift = mobius(7, 1, 1, 0, 1);
  CHECK(shift(line.infinity()) == line.infinity());
  CHECK(shift(6) == 0);
  CHECK_THROWS_AS(mobius(7, 1, 2, 2, 4), Error);
}

TEST_CASE("least quadratic non-residues") {
  CHECK(least_nonresidue(29) == 2);
  CHECK(least_nonresidue(7) == 3);
  CHECK(least_nonresidue(31) == 3);
  for (std::uint64_t p : {11, 13, 17, 19, 23, 29}) {
    const auto e = least_nonresidue(p);
    for (std::uint64_t x = 1; x < p; ++x) CHECK(x * x % p != e);
  }
}

TEST_CASE("orders of PSL_2 and PGL_2 by enumeration") {
  for (std::uint64_t p : {3, 5, 7, 11, 13}) {
    CHECK(psl2(p).order() == p * (p * p - 1) / 2);
    CHECK(pgl2(p).order() == p * (p * p - 1));
  }
  CHECK(psl2(29).order() == 12180);
  CHECK(psl2(29).name() == "psl2:29");
  CHECK_THROWS_AS(psl2(2), Error);
  CHECK_THROWS_AS(psl2(15), Error);
  CHECK_THROWS_AS(psl2(101), Error);
}

TEST_CASE("Fano plane model of SL_3(F_2)") {
  const FanoModel f = psl3_2();
  CHECK(f.group.order() == 168);
  CHECK(f.p1.index() == 7);
  CHECK(f.p2.index() == 7);
  CHECK(f.lines.size() == 7);
  for (const auto& l : f.lines) CHECK(l.size() == 3);
  // Any two points lie on exactly one line.
  for (Point a = 0; a < 7; ++a)
    for (Point b = a + 1; b < 7; ++b) {
      int n = 0;
      for (const auto& l : f.lines)
        n += std::count(l.begin(), l.end(), a) && std::count(l.begin(), l.end(), b);
      CHECK(n == 1);
    }
  // Lines are permuted, homomorphically.
  const auto& x = f.group.element(11);
  const auto& y = f.group.element(97);
  CHECK(line_action(f, compose(x, y)) == compose(line_action(f, x), line_action(f, y)));
  for (std::size_t e : f.p2.elements()) CHECK(line_action(f, f.group.element(e))(0) == 0);
}

TEST_CASE("A5 recognition") {
  const auto a = Permutation::from_cycles(5, {{0, 1}, {2, 3}});
  const auto b = Permutation::from_cycles(5, {{0, 2, 4}});
  CHECK(recognizes_a5(a, b) == (compose(a, b).order() == 5));
  CHECK_FALSE(recognizes_a5(b, a));
}

TEST_CASE("A5 pair in PSL_2(F_29)") {
  const A5PairWitness w = find_a5_pair(29);
  CHECK(w.psl.order() == 12180);
  CHECK(w.pgl.order() == 24360);
  CHECK(w.h1.order() == 60);
  CHECK(w.h2.order() == 60);
  CHECK(recognizes_a5(w.a, w.b));
  CHECK(w.seed == kDefaultA5Seed);
  CHECK_FALSE(w.psl.contains(w.tau));
  CHECK(w.pgl.contains(w.tau));
  CHECK(w.h1.rehomed(w.pgl).conjugated(w.tau).same_elements(w.h2.rehomed(w.pgl)));
  CHECK_FALSE(is_conjugate_subgroup(w.psl, w.h1, w.h2).has_value());
  // Same seed, same pair.
  const A5PairWitness again = find_a5_pair(29);
  CHECK(again.h1.same_elements(w.h1));
  CHECK(again.tries == w.tries);
}

TEST_CASE("no A5 when 60 does not divide the order") {
  try {
    find_a5_pair(7);
    FAIL("expected not_found");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_found);
  }
}
