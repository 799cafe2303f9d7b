#pragma once

// Integral invariants of G-lattices that survive any Z[G]-isomorphism
// Z[G/H1] ~ Z[G/H2]: fixed lattices, norm images and Tate H^0.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "intequiv/perm.hpp"
#include "intequiv/perm_module.hpp"
#include "intequiv/zmatrix.hpp"

namespace intequiv {

class GModuleLattice {
 public:
  // Z[G/K] with G permuting the cosets.
  static GModuleLattice permutation_module(const Group& g, const Subgroup& k,
                                           std::string descriptor = {});
  // Z with trivial action.
  static GModuleLattice trivial(const Group& g);
  // Arbitrary action, one r x r matrix per generator of G. The matrices must
  // be invertible over Z; relations are spot-checked on random words.
  static GModuleLattice from_generators(const Group& g,
                                        std::vector<ExactMatrix> action,
                                        std::string descriptor,
                                        std::uint64_t seed = 1);

  const Group& group() const noexcept { return group_; }
  std::size_t rank() const noexcept { return rank_; }
  const std::string& descriptor() const noexcept { return descriptor_; }
  bool is_permutation_module() const noexcept { return perm_.has_value(); }
  const PermRep& permutation() const;  // precondition: a permutation module
  // Empty for permutation modules.
  const std::vector<ExactMatrix>& generator_action() const noexcept {
    return action_;
  }

  ExactMatrix action_of(std::size_t element_index) const;
  // The same module with the permutation structure forgotten.
  GModuleLattice as_dense() const;

 private:
  GModuleLattice(Group g, std::size_t rank, std::string descriptor)
      : group_(std::move(g)), rank_(rank), descriptor_(std::move(descriptor)) {}

  Group group_;
  std::size_t rank_ = 0;
  std::string descriptor_;
  std::optional<PermRep> perm_;
  std::vector<ExactMatrix> action_;  // dense modules only
  // Spanning tree of the Cayley graph: element = generators[via] * parent.
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> via_;
};

// Rows form a saturated basis of L^H, in Hermite normal form.
ExactMatrix invariants_lattice(const GModuleLattice& l, const Subgroup& h);
// Rows form the HNF basis of N_H L, N_H = sum of the action over H.
ExactMatrix norm_image(const GModuleLattice& l, const Subgroup& h);

struct TateH0Report {
  std::string subgroup;
  std::string module;
  std::size_t subgroup_order = 0;
  std::size_t invariant_rank = 0;
  // Diagonal of the Smith form of N_H L inside L^H, all entries including 1.
  std::vector<Integer> invariant_factors;
  Integer group_order;  // |L^H / N_H L|
};

// The finite group L^H / N_H L. For permutation modules each factor is
// asserted to divide |H|.
TateH0Report tate_h0(const GModuleLattice& l, const Subgroup& h,
                     std::string subgroup_name = {});
// Same group for L = Z[G/K], read from the double cosets H x K: one summand
// Z/|H ∩ xKx^-1| per double coset.
TateH0Report tate_h0_double_cosets(const Group& g, const Subgroup& h,
                                   const Subgroup& k,
                                   std::string subgroup_name = {});

// Z[G/<g>] for one g per conjugacy class, keeping the first class for each
// conjugacy class of cyclic subgroups.
std::vector<GModuleLattice> default_family(const Group& g);

enum class ObstructionVerdict { all_equal, mismatch_found };
const char* to_string(ObstructionVerdict v);

struct ObstructionEntry {
  std::string module;
  TateH0Report first;
  TateH0Report second;
  bool equal = false;
  bool reverified = false;  // a mismatch recomputed by the double-coset route
};

struct ObstructionReport {
  std::vector<ObstructionEntry> entries;
  ObstructionVerdict verdict = ObstructionVerdict::all_equal;
  std::optional<std::size_t> distinguishing;  // first mismatching entry
};

ObstructionReport compare_obstructions(const Group& g, const Subgroup& h1,
                                       const Subgroup& h2,
                                       const std::vector<GModuleLattice>& family);

}  // namespace intequiv
