#include "intequiv/constructors.hpp"

#include <bit>
#include <random>

#include "intequiv/error.hpp"
#include "intequiv/modular.hpp"

namespace intequiv {

namespace {

void require_small_odd_prime(std::uint64_t p) {
  require(p % 2 == 1 && p <= 97 && modp::is_prime(p), ErrorCode::invalid_argument,
          "p must be an odd prime <= 97, got " + std::to_string(p));
}

}  // namespace

Permutation mobius(std::uint64_t p, std::int64_t a, std::int64_t b,
                   std::int64_t c, std::int64_t d) {
  const std::uint64_t ra = modp::reduce(a, p), rb = modp::reduce(b, p),
                      rc = modp::reduce(c, p), rd = modp::reduce(d, p);
  require(modp::sub(modp::mul(ra, rd, p), modp::mul(rb, rc, p), p) != 0,
          ErrorCode::invalid_argument, "mobius: singular matrix");
  const ProjectiveLineLabeling line{p};
  std::vector<Point> img(line.points());
  for (std::uint64_t x = 0; x <= p; ++x) {
    std::uint64_t num, den;
    if (x == p) {  // (a*inf + b)/(c*inf + d) = a/c
      num = ra;
      den = rc;
    } else {
      num = modp::add(modp::mul(ra, x, p), rb, p);
      den = modp::add(modp::mul(rc, x, p), rd, p);
    }
    img[x] = den == 0 ? line.infinity()
                      : static_cast<Point>(modp::mul(num, modp::inv(den, p), p));
  }
  return Permutation(std::move(img));
}

std::uint64_t least_nonresidue(std::uint64_t p) {
  for (std::uint64_t e = 2; e < p; ++e)
    if (modp::pow(e, (p - 1) / 2, p) == p - 1) return e;
  fail(ErrorCode::invalid_argument, "no quadratic non-residue");
}

Group psl2(std::uint64_t p) {
  require_small_odd_prime(p);
  Group g = Group::close({mobius(p, 1, 1, 0, 1), mobius(p, 0, -1, 1, 0)},
                         kDefaultGroupCap, "psl2:" + std::to_string(p));
  require(g.order() == p * (p * p - 1) / 2, ErrorCode::internal,
          "psl2: unexpected order");
  return g;
}

Group pgl2(std::uint64_t p) {
  require_small_odd_prime(p);
  return Group::close({mobius(p, 1, 1, 0, 1), mobius(p, 0, -1, 1, 0),
                       mobius(p, static_cast<std::int64_t>(least_nonresidue(p)), 0, 0, 1)},
                      2 * kDefaultGroupCap, "pgl2:" + std::to_string(p));
}

// ---------------------------------------------------------------------------

namespace {

// A 3x3 matrix over F_2 stored by columns, each a 3-bit mask.
Permutation fano_point_action(const std::array<unsigned, 3>& cols) {
  std::vector<Point> img(7);
  for (unsigned v = 1; v <= 7; ++v) {
    unsigned w = 0;
    for (unsigned i = 0; i < 3; ++i)
      if (v & (1u << i)) w ^= cols[i];
    img[v - 1] = w - 1;
  }
  return Permutation(std::move(img));
}

}  // namespace

FanoModel psl3_2() {
  // Companion matrix of x^3 + x + 1 (order 7) and the transvection e2 += e1.
  const auto a = fano_point_action({0b010, 0b100, 0b011});
  const auto b = fano_point_action({0b001, 0b011, 0b100});
  Group g = Group::close({a, b}, kDefaultGroupCap, "psl3_2");

  std::vector<std::vector<Point>> lines;
  for (unsigned w = 1; w <= 7; ++w) {
    std::vector<Point> line;
    for (unsigned v = 1; v <= 7; ++v)
      if (std::popcount(v & w) % 2 == 0) line.push_back(v - 1);
    lines.push_back(std::move(line));
  }

  Subgroup p1 = Subgroup::point_stabilizer(g, 0);
  const auto& l0 = lines[0];
  Subgroup p2 = Subgroup::from_predicate(g, [&](const Permutation& x) {
    for (Point q : l0)
      if (std::find(l0.begin(), l0.end(), x(q)) == l0.end()) return false;
    return true;
  });
  return FanoModel{std::move(g), std::move(lines), std::move(p1), std::move(p2)};
}

Permutation line_action(const FanoModel& model, const Permutation& g) {
  std::vector<Point> img(model.lines.size());
  for (std::size_t i = 0; i < model.lines.size(); ++i) {
    std::vector<Point> moved;
    for (Point q : model.lines[i]) moved.push_back(g(q));
    std::sort(moved.begin(), moved.end());
    for (std::size_t j = 0; j < model.lines.size(); ++j)
      if (model.lines[j] == moved) img[i] = static_cast<Point>(j);
  }
  return Permutation(std::move(img));
}

// ---------------------------------------------------------------------------

bool recognizes_a5(const Permutation& a, const Permutation& b) {
  if (a.order() != 2 || b.order() != 3 || compose(a, b).order() != 5) return false;
  try {
    return Group::close({a, b}, 60).order() == 60;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::cap_exceeded) return false;
    throw;
  }
}

A5PairWitness find_a5_pair(std::uint64_t p, std::uint64_t seed,
                           std::uint64_t max_tries) {
  Group psl = psl2(p);
  require(psl.order() % 60 == 0, ErrorCode::not_found,
          "find_a5_pair: 60 does not divide |PSL_2(F_" + std::to_string(p) +
              ")| = " + std::to_string(psl.order()) + "; no A5 subgroup");
  Group pgl = pgl2(p);

  std::vector<std::size_t> involutions, triples;
  for (std::size_t i = 0; i < psl.order(); ++i) {
    if (psl.element_order(i) == 2) involutions.push_back(i);
    if (psl.element_order(i) == 3) triples.push_back(i);
  }
  require(!involutions.empty() && !triples.empty(), ErrorCode::not_found,
          "find_a5_pair: no elements of order 2 and 3");

  std::mt19937_64 rng(seed);
  for (std::uint64_t t = 1; t <= max_tries; ++t) {
    const Permutation& a = psl.element(involutions[rng() % involutions.size()]);
    const Permutation& b = psl.element(triples[rng() % triples.size()]);
    if (!recognizes_a5(a, b)) continue;

    Subgroup h1 = Subgroup::generated_by(psl, {a, b});
    const Permutation tau =
        mobius(p, static_cast<std::int64_t>(least_nonresidue(p)), 0, 0, 1);
    require(!psl.contains(tau), ErrorCode::internal,
            "find_a5_pair: tau unexpectedly lies in PSL_2");
    Subgroup h2 = h1.rehomed(pgl).conjugated(tau).rehomed(psl);
    if (is_conjugate_subgroup(psl, h1, h2))
      fail(ErrorCode::precondition,
           "find_a5_pair: the A5 pair found for p = " + std::to_string(p) +
               " is conjugate in PSL_2");
    return A5PairWitness{std::move(psl), std::move(pgl), std::move(h1),
                         std::move(h2), tau, a, b, seed, t, true};
  }
  fail(ErrorCode::not_found,
       "find_a5_pair: no A5 found within " + std::to_string(max_tries) + " tries");
}

}  // namespace intequiv
