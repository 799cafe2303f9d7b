#include "intequiv/perm_module.hpp"

#include <algorithm>

#include "intequiv/error.hpp"

namespace intequiv {

PermRep::PermRep(const Group& g, const Subgroup& h)
    : group_(g), subgroup_(h) {
  require(h.parent().same_as(g), ErrorCode::precondition,
          "coset_action: H is not a subgroup of G");
  constexpr std::uint32_t kUnset = ~std::uint32_t{0};
  coset_of_.assign(g.order(), kUnset);

  auto label = [&](std::size_t rep) {
    const auto id = static_cast<std::uint32_t>(reps_.size());
    for (std::size_t k : h.elements()) coset_of_[g.multiply(rep, k)] = id;
    reps_.push_back(rep);
  };
  label(0);
  std::vector<std::size_t> gen_idx;
  for (const auto& x : g.generators()) gen_idx.push_back(g.index_of(x));
  for (std::size_t c = 0; c < reps_.size(); ++c) {
    for (std::size_t gi : gen_idx) {
      std::size_t y = g.multiply(gi, reps_[c]);
      if (coset_of_[y] == kUnset) label(y);
    }
  }
  require(reps_.size() * h.order() == g.order(), ErrorCode::internal,
          "coset_action: cosets do not cover G");
  for (std::size_t gi : gen_idx) gen_actions_.push_back(action_of(gi));
}

std::size_t PermRep::act(std::size_t element_index, std::size_t coset) const {
  return coset_of_[group_.multiply(element_index, reps_[coset])];
}

Permutation PermRep::action_of(std::size_t element_index) const {
  std::vector<Point> img(reps_.size());
  for (std::size_t c = 0; c < reps_.size(); ++c)
    img[c] = static_cast<Point>(act(element_index, c));
  return Permutation(std::move(img));
}

Permutation PermRep::action_of(const Permutation& g) const {
  return action_of(group_.index_of(g));
}

ExactMatrix permutation_matrix(const Permutation& p) {
  ExactMatrix m(p.degree(), p.degree());
  for (std::size_t c = 0; c < p.degree(); ++c) m(p(c), c) = 1;
  return m;
}

ExactMatrix rep_matrix(const PermRep& rep, const Permutation& g) {
  require(rep.group().contains(g), ErrorCode::precondition,
          "rep_matrix: element is not in G");
  return permutation_matrix(rep.action_of(g));
}

std::vector<std::int64_t> perm_character(const PermRep& rep,
                                         const ConjugacyClasses& classes) {
  require(classes.belongs_to(rep.group()), ErrorCode::precondition,
          "perm_character: classes belong to a different group");
  std::vector<std::int64_t> chi;
  chi.reserve(classes.classes.size());
  for (const auto& cls : classes.classes) {
    std::int64_t fixed = 0;
    for (std::size_t c = 0; c < rep.degree(); ++c)
      if (rep.act(cls.representative_index, c) == c) ++fixed;
    chi.push_back(fixed);
  }
  return chi;
}

SplittingTable cycle_type_table(const PermRep& rep,
                                const ConjugacyClasses& classes) {
  require(classes.belongs_to(rep.group()), ErrorCode::precondition,
          "cycle_type_table: classes belong to a different group");
  SplittingTable table;
  table.degree = rep.degree();
  for (std::size_t i = 0; i < classes.classes.size(); ++i) {
    const auto& cls = classes.classes[i];
    table.rows.push_back(SplittingRow{
        i, cls.size, cls.element_order,
        rep.action_of(cls.representative_index).cycle_type()});
  }
  return table;
}

std::vector<std::size_t> cycle_type_from_fixed_points(
    const std::vector<std::size_t>& fix) {
  // fix[k-1] = fixed points of g^k. Peel off d-cycles for d = 1, 2, ...
  const std::size_t n = fix.size();
  std::vector<std::int64_t> cycles(n + 1, 0);
  for (std::size_t d = 1; d <= n; ++d) {
    std::int64_t acc = static_cast<std::int64_t>(fix[d - 1]);
    for (std::size_t e = 1; e < d; ++e)
      if (d % e == 0) acc -= static_cast<std::int64_t>(e) * cycles[e];
    require(acc % static_cast<std::int64_t>(d) == 0 && acc >= 0,
            ErrorCode::internal, "fixed-point counts are inconsistent");
    cycles[d] = acc / static_cast<std::int64_t>(d);
  }
  std::vector<std::size_t> type;
  for (std::size_t d = n; d >= 1; --d)
    for (std::int64_t k = 0; k < cycles[d]; ++k) type.push_back(d);
  return type;
}

}  // namespace intequiv
