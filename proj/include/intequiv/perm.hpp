#pragma once

// Finite permutation groups, held as fully enumerated element sets.
//
// Composition convention: compose(a, b) applies b first, so
// compose(a, b)(x) == a(b(x)). Every other module relies on this.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace intequiv {

using Point = std::uint32_t;

inline constexpr std::size_t kDefaultGroupCap = 100000;

class Permutation {
 public:
  Permutation() = default;
  // Throws invalid_argument unless images is a bijection on {0..n-1}.
  explicit Permutation(std::vector<Point> images);

  static Permutation identity(std::size_t degree);
  // Cycles are lists of points; points not mentioned are fixed.
  static Permutation from_cycles(std::size_t degree,
                                 const std::vector<std::vector<Point>>& cycles);

  std::size_t degree() const noexcept { return images_.size(); }
  Point operator()(Point x) const { return images_[x]; }
  std::span<const Point> images() const noexcept { return images_; }

  bool is_identity() const noexcept;
  std::size_t fixed_points() const noexcept;
  std::size_t order() const;
  // Cycle lengths, largest first; sums to degree().
  std::vector<std::size_t> cycle_type() const;

  // Lexicographic on the image arrays; the identity is least.
  auto operator<=>(const Permutation&) const = default;
  bool operator==(const Permutation&) const = default;

 private:
  struct Unchecked {};
  Permutation(Unchecked, std::vector<Point> images) : images_(std::move(images)) {}
  friend Permutation compose(const Permutation&, const Permutation&);
  friend Permutation invert(const Permutation&);

  std::vector<Point> images_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept;
};

Permutation compose(const Permutation& a, const Permutation& b);
Permutation invert(const Permutation& p);
// g x g^-1
Permutation conjugate(const Permutation& g, const Permutation& x);
Permutation power(const Permutation& p, std::int64_t k);

// Immutable; copies share the enumerated data.
class Group {
 public:
  // Breadth-first closure from the identity. Throws cap_exceeded once the
  // closure grows past cap elements.
  static Group close(std::vector<Permutation> generators,
                     std::size_t cap = kDefaultGroupCap, std::string name = {});

  std::size_t degree() const noexcept { return data_->degree; }
  std::size_t order() const noexcept { return data_->elements.size(); }
  const std::string& name() const noexcept { return data_->name; }
  const std::vector<Permutation>& generators() const noexcept {
    return data_->generators;
  }
  // Sorted lexicographically; index 0 is the identity.
  const std::vector<Permutation>& elements() const noexcept {
    return data_->elements;
  }
  const Permutation& element(std::size_t i) const { return data_->elements[i]; }

  std::optional<std::size_t> find(const Permutation& p) const;
  bool contains(const Permutation& p) const { return find(p).has_value(); }
  // Throws not_found when p is not in the group.
  std::size_t index_of(const Permutation& p) const;

  std::size_t multiply(std::size_t a, std::size_t b) const;
  std::size_t inverse(std::size_t a) const { return data_->inverse[a]; }
  std::size_t element_order(std::size_t a) const { return data_->orders[a]; }

  bool same_as(const Group& other) const noexcept {
    return data_ == other.data_;
  }

 private:
  struct Data {
    std::size_t degree = 0;
    std::string name;
    std::vector<Permutation> generators;
    std::vector<Permutation> elements;
    std::unordered_map<Permutation, std::size_t, PermutationHash> index;
    std::vector<std::size_t> inverse;
    std::vector<std::uint32_t> orders;
  };
  explicit Group(std::shared_ptr<const Data> d) : data_(std::move(d)) {}

  std::shared_ptr<const Data> data_;
};

class Subgroup {
 public:
  // Closure of gens inside parent; every generator must lie in parent.
  static Subgroup generated_by(const Group& parent,
                               std::vector<Permutation> gens);
  // All elements of parent satisfying pred. Closure is verified.
  static Subgroup from_predicate(
      const Group& parent, const std::function<bool(const Permutation&)>& pred);
  static Subgroup trivial(const Group& parent);
  static Subgroup whole(const Group& parent);
  static Subgroup point_stabilizer(const Group& parent, Point x);

  const Group& parent() const noexcept { return parent_; }
  std::size_t order() const noexcept { return elements_.size(); }
  std::size_t index() const noexcept { return parent_.order() / order(); }
  // Sorted indices into parent().elements().
  const std::vector<std::size_t>& elements() const noexcept {
    return elements_;
  }
  const std::vector<Permutation>& generators() const noexcept {
    return generators_;
  }
  bool contains(std::size_t parent_index) const {
    return member_[parent_index];
  }
  bool contains(const Permutation& p) const;

  // g H g^-1. g must normalize parent (it may live outside it, e.g. in an
  // overgroup); checked element by element.
  Subgroup conjugated(const Permutation& g) const;
  // The same element set viewed inside an overgroup.
  Subgroup rehomed(const Group& overgroup) const;
  bool is_normal() const;

  bool same_elements(const Subgroup& other) const;

 private:
  Subgroup(Group parent, std::vector<std::size_t> elements,
           std::vector<Permutation> generators);

  Group parent_;
  std::vector<std::size_t> elements_;
  std::vector<Permutation> generators_;
  std::vector<bool> member_;
};

struct ConjClass {
  Permutation representative;  // least member in the lexicographic order
  std::size_t representative_index = 0;
  std::size_t size = 0;
  std::size_t element_order = 0;
  std::vector<std::size_t> members;  // sorted parent indices
};

struct ConjugacyClasses {
  Group group;
  std::vector<ConjClass> classes;        // sorted by representative
  std::vector<std::uint32_t> class_of;   // element index -> class id

  bool belongs_to(const Group& g) const { return group.same_as(g); }
};

// Orbits under conjugation by the generators.
ConjugacyClasses conjugacy_classes(const Group& g);

// Some g in G with g H1 g^-1 == H2, or nothing. The lowest-index conjugator
// is returned and re-verified on the generators of H1.
std::optional<Permutation> is_conjugate_subgroup(const Group& g,
                                                 const Subgroup& h1,
                                                 const Subgroup& h2);

struct Quotient {
  Group group;  // acts on the cosets of N, degree [G:N]
  // parent element index -> quotient element index
  std::vector<std::size_t> projection;

  Subgroup image(const Subgroup& h) const;
};

// Throws precondition if n is not normal in g.
Quotient quotient(const Group& g, const Subgroup& n);

}  // namespace intequiv
