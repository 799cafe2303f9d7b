#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "intequiv/error.hpp"
#include "intequiv/perm_module.hpp"

using namespace intequiv;

namespace {

Group s4() {
  return Group::close({Permutation::from_cycles(4, {{0, 1}}),
                       Permutation::from_cycles(4, {{0, 1, 2, 3}})});
}

}  // namespace

TEST_CASE("coset action is a homomorphism and coset 0 is H") {
  const Group g = s4();
  const Subgroup h = Subgroup::point_stabilizer(g, 3);
  const PermRep rep(g, h);
  CHECK(rep.degree() == 4);
  for (std::size_t e : h.elements()) CHECK(rep.coset_of(e) == 0);
  for (std::size_t a = 0; a < g.order(); ++a)
    for (std::size_t b = 0; b < g.order(); b += 3)
      CHECK(rep.action_of(g.multiply(a, b)) ==
            compose(rep.action_of(a), rep.action_of(b)));
  for (std::size_t i = 0; i < rep.degree(); ++i)
    CHECK(rep.coset_of(rep.coset_reps()[i]) == i);
}

TEST_CASE("representation matrices multiply like the group") {
  const Group g = s4();
  const PermRep rep(g, Subgroup::point_stabilizer(g, 0));
  const auto& a = g.element(7);
  const auto& b = g.element(13);
  CHECK(rep_matrix(rep, compose(a, b)) == rep_matrix(rep, a) * rep_matrix(rep, b));
  CHECK_THROWS_AS(rep_matrix(rep, Permutation::from_cycles(5, {{0, 4}})), Error);
  const auto m = permutation_matrix(Permutation::from_cycles(3, {{0, 1, 2}}));
  CHECK(m(1, 0) == 1);  // column 0 -> row p(0) = 1
}

TEST_CASE("permutation character counts fixed cosets") {
  const Group g = s4();
  const auto cc = conjugacy_classes(g);
  // On G/Stab(3) the action is the natural one, so chi = number of fixed points.
  const PermRep rep(g, Subgroup::point_stabilizer(g, 3));
  const auto chi = perm_character(rep, cc);
  for (std::size_t c = 0; c < cc.classes.size(); ++c)
    CHECK(chi[c] == static_cast<std::int64_t>(cc.classes[c].representative.fixed_points()));
  // Regular character: |G| at the identity, zero elsewhere.
  const auto reg = perm_character(PermRep(g, Subgroup::trivial(g)), cc);
  CHECK(reg[0] == 24);
  for (std::size_t c = 1; c < reg.size(); ++c) CHECK(reg[c] == 0);
}

TEST_CASE("cycle types from fixed points of powers") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 200; ++t) {
    std::vector<Point> img(12);
    for (Point i = 0; i < 12; ++i) img[i] = i;
    std::shuffle(img.begin(), img.end(), rng);
    const Permutation p(img);
    std::vector<std::size_t> fix;
    for (std::size_t k = 1; k <= p.order(); ++k) fix.push_back(power(p, static_cast<std::int64_t>(k)).fixed_points());
    CHECK(cycle_type_from_fixed_points(fix) == p.cycle_type());
  }
}

TEST_CASE("splitting table rows partition the degree") {
  const Group g = s4();
  const auto cc = conjugacy_classes(g);
  const PermRep rep(g, Subgroup::generated_by(g, {Permutation::from_cycles(4, {{0, 1}})}));
  const auto t = cycle_type_table(rep, cc);
  CHECK(t.degree == 12);
  REQUIRE(t.rows.size() == cc.classes.size());
  for (const auto& r : t.rows) {
    std::size_t sum = 0;
    for (auto l : r.cycle_type) sum += l;
    CHECK(sum == 12);
    CHECK(r.cycle_type == rep.action_of(cc.classes[r.class_id].representative).cycle_type());
  }
}
