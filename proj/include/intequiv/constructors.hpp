#pragma once

// The concrete groups and subgroup pairs: PSL_2(F_p) and PGL_2(F_p) on the
// projective line, SL_3(F_2) on the Fano plane with its two parabolics, and
// the PGL_2-fused pair of A_5 subgroups of PSL_2(F_p).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "intequiv/perm.hpp"

namespace intequiv {

// Points 0..p-1 are affine coordinates, point p is infinity.
struct ProjectiveLineLabeling {
  std::uint64_t p = 0;
  std::size_t points() const { return p + 1; }
  Point infinity() const { return static_cast<Point>(p); }
};

// x -> (a x + b) / (c x + d) on the labeled projective line.
Permutation mobius(std::uint64_t p, std::int64_t a, std::int64_t b,
                   std::int64_t c, std::int64_t d);

std::uint64_t least_nonresidue(std::uint64_t p);

// Generated by x -> x+1 and x -> -1/x; odd prime p <= 97.
Group psl2(std::uint64_t p);
// psl2(p) plus x -> eps x for the least non-residue eps.
Group pgl2(std::uint64_t p);

struct FanoModel {
  Group group;                                 // SL_3(F_2) on 7 points
  std::vector<std::vector<Point>> lines;       // 7 lines, 3 points each
  Subgroup p1;                                 // stabilizer of point 0
  Subgroup p2;                                 // stabilizer of line 0
};

// Nonzero vectors v of F_2^3 are points v-1; lines are the 2-dim subspaces.
FanoModel psl3_2();
// The permutation of lines induced by a point permutation.
Permutation line_action(const FanoModel& model, const Permutation& g);

// (2,3,5) generation test: orders 2, 3, 5 for a, b, ab and |<a,b>| == 60.
bool recognizes_a5(const Permutation& a, const Permutation& b);

struct A5PairWitness {
  Group psl;
  Group pgl;
  Subgroup h1;
  Subgroup h2;
  Permutation tau;       // in PGL_2 but not PSL_2; tau H1 tau^-1 == H2
  Permutation a, b;      // the (2,3,5) generators of H1
  std::uint64_t seed = 0;
  std::uint64_t tries = 0;
  // Exhaustive search over PSL_2 found no conjugator.
  bool nonconjugate_in_psl = false;
};

inline constexpr std::uint64_t kDefaultA5Seed = 20140901;

// Throws not_found when 60 does not divide |PSL_2(F_p)| or the search
// budget runs out, and precondition when the pair it finds is conjugate in
// PSL_2.
A5PairWitness find_a5_pair(std::uint64_t p, std::uint64_t seed = kDefaultA5Seed,
                           std::uint64_t max_tries = 200000);

}  // namespace intequiv
