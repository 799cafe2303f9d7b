#include "intequiv/obstruction.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "intequiv/error.hpp"
#include "intequiv/intertwiner.hpp"
#include "intequiv/parallel.hpp"

namespace intequiv {

namespace {

void build_tree(const Group& g, std::vector<std::uint32_t>& parent,
                std::vector<std::uint32_t>& via) {
  constexpr std::uint32_t kUnset = ~std::uint32_t{0};
  parent.assign(g.order(), kUnset);
  via.assign(g.order(), kUnset);
  std::vector<std::size_t> gens;
  for (const auto& s : g.generators()) gens.push_back(g.index_of(s));
  const std::size_t id = g.index_of(Permutation::identity(g.degree()));
  parent[id] = static_cast<std::uint32_t>(id);
  std::vector<std::size_t> frontier{id};
  for (std::size_t head = 0; head < frontier.size(); ++head) {
    const std::size_t x = frontier[head];
    for (std::size_t s = 0; s < gens.size(); ++s) {
      const std::size_t y = g.multiply(gens[s], x);
      if (parent[y] != kUnset) continue;
      parent[y] = static_cast<std::uint32_t>(x);
      via[y] = static_cast<std::uint32_t>(s);
      frontier.push_back(y);
    }
  }
}

// H-orbits on the cosets of a permutation module, ordered by least point.
std::vector<std::vector<std::size_t>> orbits(const PermRep& rep,
                                             const Subgroup& h) {
  const Group& g = rep.group();
  std::vector<std::size_t> gens;
  for (const auto& s : h.generators()) gens.push_back(g.index_of(s));
  std::vector<bool> seen(rep.degree(), false);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t start = 0; start < rep.degree(); ++start) {
    if (seen[start]) continue;
    seen[start] = true;
    std::vector<std::size_t> orbit{start};
    for (std::size_t head = 0; head < orbit.size(); ++head)
      for (std::size_t s : gens) {
        const std::size_t y = rep.act(s, orbit[head]);
        if (!seen[y]) {
          seen[y] = true;
          orbit.push_back(y);
        }
      }
    std::sort(orbit.begin(), orbit.end());
    out.push_back(std::move(orbit));
  }
  return out;
}

// Smith form of diag(values) by sorting prime exponents.
std::vector<Integer> diagonal_smith(const std::vector<std::uint64_t>& values) {
  std::map<std::uint64_t, std::vector<unsigned>> exponents;
  for (std::uint64_t v : values) {
    require(v > 0, ErrorCode::internal, "diagonal_smith: zero entry");
    for (std::uint64_t p = 2; p * p <= v; ++p) {
      unsigned e = 0;
      while (v % p == 0) {
        v /= p;
        ++e;
      }
      if (e) exponents[p].push_back(e);
    }
    if (v > 1) exponents[v].push_back(1);
  }
  const std::size_t k = values.size();
  std::vector<Integer> out(k, 1);
  for (auto& [p, es] : exponents) {
    std::sort(es.begin(), es.end());
    const std::size_t offset = k - es.size();
    for (std::size_t i = 0; i < es.size(); ++i) {
      Integer pe;
      mpz_ui_pow_ui(pe.get_mpz_t(), p, es[i]);
      out[offset + i] *= pe;
    }
  }
  return out;
}

// Coordinates of each row of `sub` in the echelon basis `basis`.
ExactMatrix coordinates(const ExactMatrix& sub, const ExactMatrix& basis) {
  const std::size_t k = basis.rows(), r = basis.cols();
  std::vector<std::size_t> pivot(k);
  for (std::size_t t = 0; t < k; ++t) {
    std::size_t c = 0;
    while (c < r && sgn(basis(t, c)) == 0) ++c;
    require(c < r, ErrorCode::internal, "coordinates: zero basis row");
    pivot[t] = c;
  }
  ExactMatrix out(sub.rows(), k);
  std::vector<Integer> v;
  Integer q;
  for (std::size_t i = 0; i < sub.rows(); ++i) {
    v.assign(sub.row(i).begin(), sub.row(i).end());
    for (std::size_t t = 0; t < k; ++t) {
      const Integer& piv = basis(t, pivot[t]);
      require(mpz_divisible_p(v[pivot[t]].get_mpz_t(), piv.get_mpz_t()) != 0,
              ErrorCode::internal, "norm image is not inside the invariants");
      mpz_divexact(q.get_mpz_t(), v[pivot[t]].get_mpz_t(), piv.get_mpz_t());
      out(i, t) = q;
      if (sgn(q) != 0)
        for (std::size_t c = pivot[t]; c < r; ++c) v[c] -= q * basis(t, c);
    }
    for (const auto& x : v)
      require(sgn(x) == 0, ErrorCode::internal,
              "norm image is not inside the invariants");
  }
  return out;
}

std::vector<std::size_t> generator_indices(const Subgroup& h) {
  std::vector<std::size_t> out;
  for (const auto& s : h.generators()) out.push_back(h.parent().index_of(s));
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

GModuleLattice GModuleLattice::permutation_module(const Group& g,
                                                  const Subgroup& k,
                                                  std::string descriptor) {
  PermRep rep(g, k);
  if (descriptor.empty())
    descriptor = "Z[G/K], |K| = " + std::to_string(k.order());
  GModuleLattice l(g, rep.degree(), std::move(descriptor));
  l.perm_.emplace(std::move(rep));
  return l;
}

GModuleLattice GModuleLattice::trivial(const Group& g) {
  std::vector<ExactMatrix> action(g.generators().size(), ExactMatrix::identity(1));
  return from_generators(g, std::move(action), "Z (trivial)");
}

GModuleLattice GModuleLattice::from_generators(const Group& g,
                                               std::vector<ExactMatrix> action,
                                               std::string descriptor,
                                               std::uint64_t seed) {
  require(action.size() == g.generators().size(), ErrorCode::invalid_argument,
          "GModuleLattice: one matrix per generator required");
  const std::size_t r = action.empty() ? 0 : action.front().rows();
  for (const auto& a : action) {
    require(a.rows() == r && a.cols() == r, ErrorCode::invalid_argument,
            "GModuleLattice: action matrices must be r x r");
    const Integer d = det_exact(a);
    require(d == 1 || d == -1, ErrorCode::invalid_argument,
            "GModuleLattice: action matrix not invertible over Z");
  }
  GModuleLattice l(g, r, std::move(descriptor));
  l.action_ = std::move(action);
  build_tree(g, l.parent_, l.via_);

  // Random words must act as the element they evaluate to.
  std::mt19937_64 rng(seed);
  const std::size_t id = g.index_of(Permutation::identity(g.degree()));
  std::vector<std::size_t> gens;
  for (const auto& s : g.generators()) gens.push_back(g.index_of(s));
  for (int trial = 0; trial < 16 && !gens.empty(); ++trial) {
    std::size_t elem = id;
    ExactMatrix m = ExactMatrix::identity(r);
    for (int len = 0; len < 24; ++len) {
      const std::size_t s = rng() % gens.size();
      elem = g.multiply(elem, gens[s]);
      m = m * l.action_[s];
    }
    require(m == l.action_of(elem), ErrorCode::invalid_argument,
            "GModuleLattice: action violates a relation of G");
  }
  return l;
}

const PermRep& GModuleLattice::permutation() const {
  require(perm_.has_value(), ErrorCode::precondition,
          "GModuleLattice: not a permutation module");
  return *perm_;
}

ExactMatrix GModuleLattice::action_of(std::size_t element_index) const {
  if (perm_) return permutation_matrix(perm_->action_of(element_index));
  ExactMatrix out = ExactMatrix::identity(rank_);
  std::size_t x = element_index;
  while (parent_[x] != x) {
    out = out * action_[via_[x]];
    x = parent_[x];
  }
  return out;
}

GModuleLattice GModuleLattice::as_dense() const {
  if (!perm_) return *this;
  GModuleLattice l(group_, rank_, descriptor_);
  for (const auto& a : perm_->generator_actions())
    l.action_.push_back(permutation_matrix(a));
  build_tree(group_, l.parent_, l.via_);
  return l;
}

// ---------------------------------------------------------------------------

ExactMatrix invariants_lattice(const GModuleLattice& l, const Subgroup& h) {
  require(h.parent().same_as(l.group()), ErrorCode::precondition,
          "invariants_lattice: H is not a subgroup of the acting group");
  const std::size_t r = l.rank();
  if (l.is_permutation_module()) {
    const auto orbs = orbits(l.permutation(), h);
    ExactMatrix out(orbs.size(), r);
    for (std::size_t i = 0; i < orbs.size(); ++i)
      for (std::size_t x : orbs[i]) out(i, x) = 1;
    return out;
  }
  const auto gens = generator_indices(h);
  if (gens.empty()) return ExactMatrix::identity(r);
  ExactMatrix stacked(gens.size() * r, r);
  for (std::size_t s = 0; s < gens.size(); ++s) {
    const ExactMatrix a = l.action_of(gens[s]);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j)
        stacked(s * r + i, j) = a(i, j) - (i == j ? 1 : 0);
  }
  const auto basis = kernel_integer(stacked);
  return rows_to_matrix(basis, r);
}

ExactMatrix norm_image(const GModuleLattice& l, const Subgroup& h) {
  require(h.parent().same_as(l.group()), ErrorCode::precondition,
          "norm_image: H is not a subgroup of the acting group");
  const std::size_t r = l.rank();
  if (l.is_permutation_module()) {
    // N_H e_x = |H_x| * (indicator of the orbit of x).
    const auto orbs = orbits(l.permutation(), h);
    ExactMatrix out(orbs.size(), r);
    for (std::size_t i = 0; i < orbs.size(); ++i) {
      const long stab = static_cast<long>(h.order() / orbs[i].size());
      for (std::size_t x : orbs[i]) out(i, x) = stab;
    }
    return out;
  }
  require(h.order() <= 10000, ErrorCode::precondition,
          "norm_image: |H| exceeds 10^4");
  ExactMatrix norm(r, r);
  for (std::size_t e : h.elements()) {
    const ExactMatrix a = l.action_of(e);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) norm(i, j) += a(i, j);
  }
  auto res = hnf(norm.transpose());
  ExactMatrix out(res.rank, r);
  for (std::size_t i = 0; i < res.rank; ++i)
    for (std::size_t j = 0; j < r; ++j) out(i, j) = res.H(i, j);
  return out;
}

TateH0Report tate_h0(const GModuleLattice& l, const Subgroup& h,
                     std::string subgroup_name) {
  TateH0Report rep;
  rep.subgroup = std::move(subgroup_name);
  rep.module = l.descriptor();
  rep.subgroup_order = h.order();
  if (l.is_permutation_module()) {
    const auto orbs = orbits(l.permutation(), h);
    std::vector<std::uint64_t> stabs;
    for (const auto& o : orbs) stabs.push_back(h.order() / o.size());
    rep.invariant_rank = orbs.size();
    rep.invariant_factors = diagonal_smith(stabs);
  } else {
    const ExactMatrix inv = invariants_lattice(l, h);
    const ExactMatrix img = norm_image(l, h);
    require(inv.rows() == img.rows(), ErrorCode::internal,
            "tate_h0: norm image has smaller rank than the invariants");
    rep.invariant_rank = inv.rows();
    if (inv.rows() > 0) rep.invariant_factors = snf(coordinates(img, inv)).invariant_factors;
  }
  rep.group_order = 1;
  for (const auto& d : rep.invariant_factors) {
    rep.group_order *= d;
    if (l.is_permutation_module())
      require(mpz_fits_ulong_p(d.get_mpz_t()) && h.order() % d.get_ui() == 0,
              ErrorCode::internal, "tate_h0: factor does not divide |H|");
  }
  return rep;
}

TateH0Report tate_h0_double_cosets(const Group& g, const Subgroup& h,
                                   const Subgroup& k, std::string subgroup_name) {
  // Orbits of H on G/K <-> double cosets H x K, stabilizer H ∩ xKx^-1.
  const DoubleCosetDecomposition dc = double_cosets(g, k, h);
  TateH0Report rep;
  rep.subgroup = std::move(subgroup_name);
  rep.module = "Z[G/K], |K| = " + std::to_string(k.order());
  rep.subgroup_order = h.order();
  rep.invariant_rank = dc.count();
  ExactMatrix diag(dc.count(), dc.count());
  for (std::size_t i = 0; i < dc.count(); ++i)
    diag(i, i) = static_cast<unsigned long>(h.order() * k.order() / dc.cosets[i].size);
  rep.invariant_factors = snf(diag).invariant_factors;
  rep.group_order = 1;
  for (const auto& d : rep.invariant_factors) rep.group_order *= d;
  return rep;
}

std::vector<GModuleLattice> default_family(const Group& g) {
  const ConjugacyClasses classes = conjugacy_classes(g);
  std::set<std::vector<std::uint32_t>> seen;
  std::vector<std::pair<std::size_t, Subgroup>> picks;
  for (std::size_t c = 0; c < classes.classes.size(); ++c) {
    const auto& cls = classes.classes[c];
    const std::size_t o = cls.element_order;
    std::vector<std::uint32_t> key;
    std::size_t x = cls.representative_index;
    std::size_t power = x;
    for (std::size_t e = 1; e <= o; ++e) {
      if (std::gcd(e, o) == 1) key.push_back(classes.class_of[power]);
      power = g.multiply(power, x);
    }
    std::sort(key.begin(), key.end());
    key.erase(std::unique(key.begin(), key.end()), key.end());
    if (!seen.insert(key).second) continue;
    picks.emplace_back(c, Subgroup::generated_by(g, {cls.representative}));
  }
  std::vector<std::optional<GModuleLattice>> built(picks.size());
  parallel_for(picks.size(), [&](std::size_t i) {
    const auto& [c, k] = picks[i];
    built[i] = GModuleLattice::permutation_module(
        g, k,
        "Z[G/<g>], g in class " + std::to_string(c) + " of order " +
            std::to_string(classes.classes[c].element_order));
  });
  std::vector<GModuleLattice> out;
  for (auto& b : built) out.push_back(std::move(*b));
  return out;
}

const char* to_string(ObstructionVerdict v) {
  return v == ObstructionVerdict::all_equal ? "all-equal" : "mismatch-found";
}

ObstructionReport compare_obstructions(const Group& g, const Subgroup& h1,
                                       const Subgroup& h2,
                                       const std::vector<GModuleLattice>& family) {
  for (const auto& l : family)
    require(l.group().same_as(g), ErrorCode::precondition,
            "compare_obstructions: module over a different group");
  ObstructionReport out;
  out.entries.resize(family.size());
  parallel_for(family.size(), [&](std::size_t i) {
    auto& e = out.entries[i];
    e.module = family[i].descriptor();
    e.first = tate_h0(family[i], h1, "H1");
    e.second = tate_h0(family[i], h2, "H2");
    e.equal = e.first.invariant_factors == e.second.invariant_factors;
    if (!e.equal && family[i].is_permutation_module()) {
      const Subgroup& k = family[i].permutation().subgroup();
      const auto a = tate_h0_double_cosets(g, h1, k);
      const auto b = tate_h0_double_cosets(g, h2, k);
      e.reverified = a.invariant_factors == e.first.invariant_factors &&
                     b.invariant_factors == e.second.invariant_factors;
    }
  });
  for (std::size_t i = 0; i < out.entries.size(); ++i) {
    if (!out.entries[i].equal) {
      out.verdict = ObstructionVerdict::mismatch_found;
      out.distinguishing = i;
      break;
    }
  }
  return out;
}

}  // namespace intequiv
