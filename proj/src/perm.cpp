#include "intequiv/perm.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "intequiv/error.hpp"

namespace intequiv {

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (Point y : images_) {
    require(y < images_.size() && !seen[y], ErrorCode::invalid_argument,
            "permutation images are not a bijection");
    seen[y] = true;
  }
}

Permutation Permutation::identity(std::size_t degree) {
  std::vector<Point> img(degree);
  std::iota(img.begin(), img.end(), Point{0});
  Permutation p;
  p.images_ = std::move(img);
  return p;
}

Permutation Permutation::from_cycles(
    std::size_t degree, const std::vector<std::vector<Point>>& cycles) {
  std::vector<Point> img(degree);
  std::iota(img.begin(), img.end(), Point{0});
  for (const auto& cyc : cycles) {
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      require(cyc[i] < degree, ErrorCode::invalid_argument,
              "cycle point out of range");
      img[cyc[i]] = cyc[(i + 1) % cyc.size()];
    }
  }
  return Permutation(std::move(img));
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

std::size_t Permutation::fixed_points() const noexcept {
  std::size_t n = 0;
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] == i) ++n;
  return n;
}

std::vector<std::size_t> Permutation::cycle_type() const {
  std::vector<std::size_t> lens;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = images_[j]) {
      seen[j] = true;
      ++len;
    }
    lens.push_back(len);
  }
  std::sort(lens.rbegin(), lens.rend());
  return lens;
}

std::size_t Permutation::order() const {
  std::size_t o = 1;
  for (std::size_t len : cycle_type()) o = std::lcm(o, len);
  return o;
}

std::size_t PermutationHash::operator()(const Permutation& p) const noexcept {
  // FNV-1a over the image words.
  std::uint64_t h = 1469598103934665603ull;
  for (Point x : p.images()) {
    h ^= x;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

Permutation compose(const Permutation& a, const Permutation& b) {
  require(a.degree() == b.degree(), ErrorCode::invalid_argument,
          "compose: degree mismatch");
  std::vector<Point> img(b.degree());
  for (std::size_t x = 0; x < img.size(); ++x) img[x] = a(b(x));
  return Permutation(Permutation::Unchecked{}, std::move(img));
}

Permutation invert(const Permutation& p) {
  std::vector<Point> img(p.degree());
  for (std::size_t x = 0; x < img.size(); ++x) img[p(x)] = static_cast<Point>(x);
  return Permutation(Permutation::Unchecked{}, std::move(img));
}

Permutation conjugate(const Permutation& g, const Permutation& x) {
  return compose(compose(g, x), invert(g));
}

Permutation power(const Permutation& p, std::int64_t k) {
  Permutation base = k < 0 ? invert(p) : p;
  std::uint64_t e = k < 0 ? static_cast<std::uint64_t>(-k) : static_cast<std::uint64_t>(k);
  Permutation acc = Permutation::identity(p.degree());
  while (e) {
    if (e & 1) acc = compose(acc, base);
    base = compose(base, base);
    e >>= 1;
  }
  return acc;
}

// ---------------------------------------------------------------------------

Group Group::close(std::vector<Permutation> generators, std::size_t cap,
                   std::string name) {
  require(!generators.empty(), ErrorCode::invalid_argument,
          "close_group: empty generator list");
  const std::size_t degree = generators.front().degree();
  for (const auto& g : generators)
    require(g.degree() == degree, ErrorCode::invalid_argument,
            "close_group: generators of different degree");

  std::unordered_map<Permutation, std::size_t, PermutationHash> seen;
  std::vector<Permutation> found;
  std::deque<std::size_t> queue;
  auto e = Permutation::identity(degree);
  seen.emplace(e, 0);
  found.push_back(std::move(e));
  queue.push_back(0);
  while (!queue.empty()) {
    const std::size_t i = queue.front();
    queue.pop_front();
    for (const auto& g : generators) {
      Permutation y = compose(g, found[i]);
      if (seen.contains(y)) continue;
      if (found.size() >= cap)
        fail(ErrorCode::cap_exceeded,
             "close_group: closure exceeds cap of " + std::to_string(cap) +
                 " elements");
      seen.emplace(y, found.size());
      queue.push_back(found.size());
      found.push_back(std::move(y));
    }
  }

  auto data = std::make_shared<Data>();
  data->degree = degree;
  data->name = std::move(name);
  data->generators = std::move(generators);
  std::sort(found.begin(), found.end());
  data->elements = std::move(found);
  data->index.reserve(data->elements.size());
  for (std::size_t i = 0; i < data->elements.size(); ++i)
    data->index.emplace(data->elements[i], i);
  data->inverse.resize(data->elements.size());
  data->orders.resize(data->elements.size());
  for (std::size_t i = 0; i < data->elements.size(); ++i) {
    data->inverse[i] = data->index.at(invert(data->elements[i]));
    data->orders[i] = static_cast<std::uint32_t>(data->elements[i].order());
  }
  return Group(std::move(data));
}

std::optional<std::size_t> Group::find(const Permutation& p) const {
  if (p.degree() != degree()) return std::nullopt;
  auto it = data_->index.find(p);
  if (it == data_->index.end()) return std::nullopt;
  return it->second;
}

std::size_t Group::index_of(const Permutation& p) const {
  auto i = find(p);
  if (!i) fail(ErrorCode::not_found, "element is not in the group");
  return *i;
}

std::size_t Group::multiply(std::size_t a, std::size_t b) const {
  return data_->index.at(compose(element(a), element(b)));
}

// ---------------------------------------------------------------------------

namespace {

// Greedy generating set: walk elements in order, keep those not yet generated.
std::vector<Permutation> small_generating_set(
    const Group& parent, const std::vector<std::size_t>& elems) {
  std::vector<Permutation> gens;
  std::vector<bool> have(parent.order(), false);
  std::vector<std::size_t> current{0};
  have[0] = true;
  for (std::size_t idx : elems) {
    if (have[idx]) continue;
    gens.push_back(parent.element(idx));
    // Re-close: multiply the generated set by generators until stable.
    std::deque<std::size_t> queue(current.begin(), current.end());
    while (!queue.empty()) {
      std::size_t x = queue.front();
      queue.pop_front();
      for (const auto& g : gens) {
        std::size_t y = parent.index_of(compose(g, parent.element(x)));
        if (!have[y]) {
          have[y] = true;
          current.push_back(y);
          queue.push_back(y);
        }
      }
    }
  }
  return gens;
}

}  // namespace

Subgroup::Subgroup(Group parent, std::vector<std::size_t> elements,
                   std::vector<Permutation> generators)
    : parent_(std::move(parent)),
      elements_(std::move(elements)),
      generators_(std::move(generators)),
      member_(parent_.order(), false) {
  std::sort(elements_.begin(), elements_.end());
  for (std::size_t i : elements_) member_[i] = true;
  require(parent_.order() % elements_.size() == 0, ErrorCode::internal,
          "subgroup order does not divide group order");
  if (generators_.empty())
    generators_.push_back(Permutation::identity(parent_.degree()));
}

Subgroup Subgroup::generated_by(const Group& parent,
                                std::vector<Permutation> gens) {
  std::vector<bool> have(parent.order(), false);
  std::vector<std::size_t> elems{0};
  have[0] = true;
  std::vector<std::size_t> gidx;
  for (const auto& g : gens) {
    auto i = parent.find(g);
    require(i.has_value(), ErrorCode::precondition,
            "subgroup generator is not an element of the parent group");
    gidx.push_back(*i);
  }
  for (std::size_t k = 0; k < elems.size(); ++k) {
    for (std::size_t gi : gidx) {
      std::size_t y = parent.multiply(gi, elems[k]);
      if (!have[y]) {
        have[y] = true;
        elems.push_back(y);
      }
    }
  }
  if (gens.empty()) gens.push_back(Permutation::identity(parent.degree()));
  return Subgroup(parent, std::move(elems), std::move(gens));
}

Subgroup Subgroup::from_predicate(
    const Group& parent, const std::function<bool(const Permutation&)>& pred) {
  std::vector<std::size_t> elems;
  std::vector<bool> in(parent.order(), false);
  for (std::size_t i = 0; i < parent.order(); ++i) {
    if (pred(parent.element(i))) {
      elems.push_back(i);
      in[i] = true;
    }
  }
  require(!elems.empty() && elems.front() == 0, ErrorCode::precondition,
          "subgroup predicate rejects the identity");
  auto gens = small_generating_set(parent, elems);
  for (std::size_t a : elems)
    for (const auto& g : gens)
      require(in[parent.index_of(compose(g, parent.element(a)))],
              ErrorCode::precondition, "subgroup predicate is not closed");
  return Subgroup(parent, std::move(elems), std::move(gens));
}

Subgroup Subgroup::trivial(const Group& parent) {
  return Subgroup(parent, {0}, {Permutation::identity(parent.degree())});
}

Subgroup Subgroup::whole(const Group& parent) {
  std::vector<std::size_t> all(parent.order());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return Subgroup(parent, std::move(all), parent.generators());
}

Subgroup Subgroup::point_stabilizer(const Group& parent, Point x) {
  return from_predicate(parent,
                        [x](const Permutation& p) { return p(x) == x; });
}

bool Subgroup::contains(const Permutation& p) const {
  auto i = parent_.find(p);
  return i && member_[*i];
}

Subgroup Subgroup::conjugated(const Permutation& g) const {
  const Permutation gi = invert(g);
  std::vector<std::size_t> elems;
  elems.reserve(elements_.size());
  for (std::size_t i : elements_) {
    auto j = parent_.find(compose(compose(g, parent_.element(i)), gi));
    require(j.has_value(), ErrorCode::precondition,
            "conjugating element does not normalize the parent group");
    elems.push_back(*j);
  }
  std::vector<Permutation> gens;
  for (const auto& h : generators_) gens.push_back(compose(compose(g, h), gi));
  return Subgroup(parent_, std::move(elems), std::move(gens));
}

Subgroup Subgroup::rehomed(const Group& overgroup) const {
  std::vector<std::size_t> elems;
  elems.reserve(elements_.size());
  for (std::size_t i : elements_) {
    auto j = overgroup.find(parent_.element(i));
    require(j.has_value(), ErrorCode::precondition,
            "rehomed: element missing from overgroup");
    elems.push_back(*j);
  }
  return Subgroup(overgroup, std::move(elems), generators_);
}

bool Subgroup::is_normal() const {
  for (const auto& g : parent_.generators())
    for (const auto& h : generators_)
      if (!contains(conjugate(g, h))) return false;
  return true;
}

bool Subgroup::same_elements(const Subgroup& other) const {
  if (order() != other.order()) return false;
  for (std::size_t i : elements_)
    if (!other.contains(parent_.element(i))) return false;
  return true;
}

// ---------------------------------------------------------------------------

ConjugacyClasses conjugacy_classes(const Group& g) {
  constexpr std::uint32_t kUnset = ~std::uint32_t{0};
  std::vector<std::uint32_t> class_of(g.order(), kUnset);
  std::vector<Permutation> gens_inv;
  for (const auto& x : g.generators()) gens_inv.push_back(invert(x));

  std::vector<ConjClass> classes;
  // Elements are sorted, so the first unvisited index is the least member.
  for (std::size_t start = 0; start < g.order(); ++start) {
    if (class_of[start] != kUnset) continue;
    const auto id = static_cast<std::uint32_t>(classes.size());
    ConjClass cls;
    cls.representative = g.element(start);
    cls.representative_index = start;
    cls.element_order = g.element_order(start);
    class_of[start] = id;
    cls.members.push_back(start);
    for (std::size_t k = 0; k < cls.members.size(); ++k) {
      const Permutation& x = g.element(cls.members[k]);
      for (std::size_t j = 0; j < gens_inv.size(); ++j) {
        std::size_t y =
            g.index_of(compose(compose(g.generators()[j], x), gens_inv[j]));
        if (class_of[y] == kUnset) {
          class_of[y] = id;
          cls.members.push_back(y);
        }
      }
    }
    std::sort(cls.members.begin(), cls.members.end());
    cls.size = cls.members.size();
    classes.push_back(std::move(cls));
  }
  return ConjugacyClasses{g, std::move(classes), std::move(class_of)};
}

std::optional<Permutation> is_conjugate_subgroup(const Group& g,
                                                 const Subgroup& h1,
                                                 const Subgroup& h2) {
  require(h1.parent().same_as(g) && h2.parent().same_as(g),
          ErrorCode::precondition, "subgroups must belong to the given group");
  if (h1.order() != h2.order()) return std::nullopt;

  // Element orders are a conjugation invariant: compare their histograms.
  std::unordered_map<std::size_t, std::size_t> hist1, hist2;
  for (std::size_t i : h1.elements()) ++hist1[g.element_order(i)];
  for (std::size_t i : h2.elements()) ++hist2[g.element_order(i)];
  if (hist1 != hist2) return std::nullopt;

  const auto& gens = h1.generators();
  // First filter on the generator of largest order, which is the most selective.
  std::size_t lead = 0;
  for (std::size_t j = 1; j < gens.size(); ++j)
    if (gens[j].order() > gens[lead].order()) lead = j;

  for (std::size_t i = 0; i < g.order(); ++i) {
    const Permutation& x = g.element(i);
    const Permutation xi = g.element(g.inverse(i));
    if (!h2.contains(compose(compose(x, gens[lead]), xi))) continue;
    bool ok = true;
    for (const auto& h : gens) {
      if (!h2.contains(compose(compose(x, h), xi))) {
        ok = false;
        break;
      }
    }
    // Orders are equal, so mapping generators into H2 gives x H1 x^-1 == H2.
    if (ok) return x;
  }
  return std::nullopt;
}

Subgroup Quotient::image(const Subgroup& h) const {
  std::vector<Permutation> gens;
  for (const auto& x : h.generators())
    gens.push_back(group.element(projection[h.parent().index_of(x)]));
  return Subgroup::generated_by(group, std::move(gens));
}

Quotient quotient(const Group& g, const Subgroup& n) {
  require(n.parent().same_as(g), ErrorCode::precondition,
          "quotient: N is not a subgroup of G");
  require(n.is_normal(), ErrorCode::precondition,
          "quotient: N is not normal in G");

  constexpr std::size_t kUnset = ~std::size_t{0};
  std::vector<std::size_t> coset_of(g.order(), kUnset);
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < g.order(); ++i) {
    if (coset_of[i] != kUnset) continue;
    for (std::size_t k : n.elements()) coset_of[g.multiply(i, k)] = reps.size();
    reps.push_back(i);
  }

  auto act = [&](std::size_t x) {
    std::vector<Point> img(reps.size());
    for (std::size_t c = 0; c < reps.size(); ++c)
      img[c] = static_cast<Point>(coset_of[g.multiply(x, reps[c])]);
    return Permutation(std::move(img));
  };

  std::vector<Permutation> gens;
  for (const auto& x : g.generators()) gens.push_back(act(g.index_of(x)));
  std::string name = g.name().empty() ? std::string{} : g.name() + "/N";
  Group q = Group::close(std::move(gens), std::max(reps.size(), kDefaultGroupCap),
                         std::move(name));
  require(q.order() == reps.size(), ErrorCode::internal,
          "quotient: coset action is not faithful on G/N");

  std::vector<std::size_t> coset_image(reps.size());
  for (std::size_t c = 0; c < reps.size(); ++c)
    coset_image[c] = q.index_of(act(reps[c]));
  std::vector<std::size_t> projection(g.order());
  for (std::size_t i = 0; i < g.order(); ++i)
    projection[i] = coset_image[coset_of[i]];
  return Quotient{std::move(q), std::move(projection)};
}

}  // namespace intequiv
