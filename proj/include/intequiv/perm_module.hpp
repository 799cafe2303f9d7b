#pragma once

// The permutation module Z[G/H]: coset action, its 0/1 matrices, the
// permutation character and cycle-type (splitting) tables.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "intequiv/perm.hpp"
#include "intequiv/zmatrix.hpp"

namespace intequiv {

class PermRep {
 public:
  // Cosets gH are numbered in breadth-first order over the generators of G,
  // starting from coset 0 == H.
  PermRep(const Group& g, const Subgroup& h);

  const Group& group() const noexcept { return group_; }
  const Subgroup& subgroup() const noexcept { return subgroup_; }
  std::size_t degree() const noexcept { return reps_.size(); }
  // Group element index of each coset representative.
  const std::vector<std::size_t>& coset_reps() const noexcept { return reps_; }
  std::size_t coset_of(std::size_t element_index) const {
    return coset_of_[element_index];
  }
  // Action of the i-th generator of G on the cosets.
  const std::vector<Permutation>& generator_actions() const noexcept {
    return gen_actions_;
  }

  std::size_t act(std::size_t element_index, std::size_t coset) const;
  // The permutation of the cosets induced by g; throws not_found if g is not
  // in G.
  Permutation action_of(const Permutation& g) const;
  Permutation action_of(std::size_t element_index) const;

 private:
  Group group_;
  Subgroup subgroup_;
  std::vector<std::size_t> reps_;
  std::vector<std::uint32_t> coset_of_;
  std::vector<Permutation> gen_actions_;
};

// Column c carries a single 1, in row g(c).
ExactMatrix permutation_matrix(const Permutation& p);
ExactMatrix rep_matrix(const PermRep& rep, const Permutation& g);

// Fixed cosets of each class representative, in class order.
std::vector<std::int64_t> perm_character(const PermRep& rep,
                                         const ConjugacyClasses& classes);

struct SplittingRow {
  std::size_t class_id = 0;
  std::size_t class_size = 0;
  std::size_t element_order = 0;
  std::vector<std::size_t> cycle_type;  // descending, sums to degree
};

struct SplittingTable {
  std::size_t degree = 0;
  std::vector<SplittingRow> rows;
};

SplittingTable cycle_type_table(const PermRep& rep,
                                const ConjugacyClasses& classes);

// Cycle type rebuilt from the fixed-point counts of g^1..g^order by Moebius
// inversion: fix(g^k) = sum over d | k of d * (number of d-cycles).
std::vector<std::size_t> cycle_type_from_fixed_points(
    const std::vector<std::size_t>& fixed_points_of_powers);

}  // namespace intequiv
