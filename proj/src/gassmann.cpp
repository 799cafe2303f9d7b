#include "intequiv/gassmann.hpp"

#include "intequiv/error.hpp"
#include "intequiv/perm_module.hpp"

namespace intequiv {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::gassmann_triple: return "gassmann-triple";
    case Verdict::conjugate_pair: return "conjugate-pair";
    case Verdict::character_mismatch: return "character-mismatch";
  }
  return "unknown";
}

GassmannReport check_triple(const Group& g, const Subgroup& h1,
                            const Subgroup& h2) {
  require(h1.parent().same_as(g) && h2.parent().same_as(g),
          ErrorCode::precondition, "check_triple: H1, H2 must be subgroups of G");
  const ConjugacyClasses classes = conjugacy_classes(g);
  GassmannReport r;
  r.index1 = h1.index();
  r.index2 = h2.index();
  r.chi1 = perm_character(PermRep(g, h1), classes);
  r.chi2 = perm_character(PermRep(g, h2), classes);
  for (const auto& c : classes.classes) {
    r.class_sizes.push_back(c.size);
    r.class_orders.push_back(c.element_order);
  }
  r.characters_equal = r.chi1 == r.chi2;
  r.conjugator = is_conjugate_subgroup(g, h1, h2);
  r.conjugate = r.conjugator.has_value();
  if (r.conjugate) {
    // Conjugate subgroups have equal characters.
    require(r.characters_equal, ErrorCode::internal,
            "check_triple: conjugate subgroups with different characters");
    r.verdict = Verdict::conjugate_pair;
  } else {
    r.verdict = r.characters_equal ? Verdict::gassmann_triple
                                   : Verdict::character_mismatch;
  }
  return r;
}

GassmannReport quotient_triple(const Group& g, const Subgroup& n,
                               const Subgroup& h1, const Subgroup& h2) {
  const Quotient q = quotient(g, n);
  return check_triple(q.group, q.image(h1), q.image(h2));
}

}  // namespace intequiv
