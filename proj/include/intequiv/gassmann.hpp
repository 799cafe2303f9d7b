#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "intequiv/perm.hpp"

namespace intequiv {

enum class Verdict { gassmann_triple, conjugate_pair, character_mismatch };

const char* to_string(Verdict v);

struct GassmannReport {
  std::size_t index1 = 0;
  std::size_t index2 = 0;
  // One entry per conjugacy class of G, in class order.
  std::vector<std::int64_t> chi1;
  std::vector<std::int64_t> chi2;
  std::vector<std::size_t> class_sizes;
  std::vector<std::size_t> class_orders;
  bool characters_equal = false;
  bool conjugate = false;
  std::optional<Permutation> conjugator;
  Verdict verdict = Verdict::character_mismatch;
};

GassmannReport check_triple(const Group& g, const Subgroup& h1,
                            const Subgroup& h2);

// Images of H1, H2 in G/N, then check_triple there. The verdict is whatever
// the quotient gives; degenerate N (e.g. N == G) report conjugate_pair.
GassmannReport quotient_triple(const Group& g, const Subgroup& n,
                               const Subgroup& h1, const Subgroup& h2);

}  // namespace intequiv
