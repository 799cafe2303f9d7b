#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "intequiv/error.hpp"
#include "intequiv/finite_field.hpp"
#include "intequiv/modular.hpp"

using namespace intequiv;

TEST_CASE("irreducibility by brute-force root and factor search") {
  // x^2 + x + 1 over F_2 is irreducible; x^2 + 1 = (x+1)^2 is not.
  CHECK(is_irreducible({1, 1, 1}, 2));
  CHECK_FALSE(is_irreducible({1, 0, 1}, 2));
  // Degree 3 over F_p: irreducible iff no root.
  for (std::uint64_t p : {2, 3, 5, 7}) {
    for (std::uint64_t a = 0; a < p; ++a)
      for (std::uint64_t b = 0; b < p; ++b)
        for (std::uint64_t c = 0; c < p; ++c) {
          bool root = false;
          for (std::uint64_t x = 0; x < p; ++x)
            root = root || (x * x * x + a * x * x + b * x + c) % p == 0;
          CHECK(is_irreducible({c, b, a, 1}, p) == !root);
        }
  }
}

TEST_CASE("field axioms on F_4, F_9 and F_{2^9}") {
  for (auto [p, k] : {std::pair<std::uint64_t, unsigned>{2, 2}, {3, 2}, {2, 9}, {31, 2}}) {
    const ExtensionField f(p, k);
    CHECK(is_irreducible(f.modulus(), p));
    CHECK(f.size() == static_cast<std::uint64_t>(std::pow(p, k)));
    std::mt19937_64 rng(p * 100 + k);
    for (int t = 0; t < 200; ++t) {
      const auto a = f.from_index(rng() % f.size());
      const auto b = f.from_index(rng() % f.size());
      const auto c = f.from_index(rng() % f.size());
      CHECK(f.mul(a, b) == f.mul(b, a));
      CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
      CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
      CHECK(f.sub(f.add(a, b), b) == a);
      if (!f.is_zero(a)) CHECK(f.mul(a, f.inv(a)) == f.one());
    }
  }
}

TEST_CASE("multiplicative group of F_8 is cyclic of order 7") {
  const ExtensionField f(2, 3);
  for (std::uint64_t i = 1; i < 8; ++i) {
    auto x = f.from_index(i);
    auto acc = f.one();
    for (int e = 0; e < 7; ++e) acc = f.mul(acc, x);
    CHECK(acc == f.one());
  }
}

TEST_CASE("degree one determinant matches the prime-field determinant") {
  const std::uint64_t p = 101;
  const ExtensionField f(p, 1);
  std::mt19937_64 rng(9);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 1 + rng() % 6;
    std::vector<std::uint64_t> raw(n * n);
    std::vector<ExtensionField::Element> el(n * n);
    for (std::size_t i = 0; i < n * n; ++i) {
      raw[i] = rng() % (t % 3 == 0 ? 2 : p);
      el[i] = f.from_int(static_cast<std::int64_t>(raw[i]));
    }
    const auto d = f.det(el, n);
    CHECK(d[0] == modp::det(raw, n, p));
    CHECK((f.rank_of_transpose(el, n) == n) == !f.is_zero(d));
  }
}

TEST_CASE("degree selection and argument checks") {
  CHECK(degree_exceeding(2, 406) == 9);
  CHECK(degree_exceeding(29, 406) == 2);
  CHECK(degree_exceeding(31, 406) == 2);
  CHECK(degree_exceeding(409, 406) == 1);
  CHECK_THROWS_AS(ExtensionField(4, 2), Error);
  CHECK_THROWS_AS(degree_exceeding(1, 10), Error);
}
