#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "picky/group.hpp"

namespace picky {

struct ConjClass {
  Perm rep;  // lexicographically least element of the class
  std::uint64_t size = 0;
  std::uint64_t element_order = 0;
};

// The conjugacy classes of a group, with constant-time class lookup for
// arbitrary elements.  Classes are sorted by (element order, size,
// representative); the identity class is always index 0.
//
// Lookup is backed by a 64-bit element hash.  Injectivity of the hash on G is
// certified after construction: every element lands in exactly one class iff
// the class sizes sum to |G|, so any collision surfaces as a shortfall and
// triggers a rebuild with a reseeded hash.
class ConjClasses {
public:
  static ConjClasses compute(const GroupRef& G, const Budget& budget = {});

  const GroupRef& group() const { return G_; }
  std::size_t count() const { return classes_.size(); }
  const ConjClass& cls(std::size_t i) const { return classes_[i]; }
  const std::vector<ConjClass>& all() const { return classes_; }

  // Class id of g; g must be an element of G.
  unsigned class_of(const Perm& g) const;
  // Allocation-free variant for hot loops: img must be a full image array of
  // an element of G (length = degree).
  unsigned class_of(const Pt* img, std::size_t n) const;
  // Class of the inverses of class i's elements.
  unsigned inverse_class(unsigned i) const { return inverse_[i]; }
  // Class of rep^m for rep in class i.
  unsigned power_class(unsigned i, std::uint64_t m) const;
  // lcm of the element orders.
  std::uint64_t exponent() const { return exponent_; }

  // Streams every element of class i exactly once, as flat image arrays of
  // length degree(), in a deterministic order.  Small classes are walked by
  // BFS conjugation closure from the representative (a hash-collision retry
  // certifies exactness via the final count); large classes filter a full
  // group enumeration.
  void for_each_element(unsigned i,
                        const std::function<void(const Pt*)>& fn) const;

private:
  ConjClasses() = default;

  GroupRef G_;
  std::vector<ConjClass> classes_;
  std::vector<unsigned> inverse_;
  std::uint64_t exponent_ = 1;

  // Open-addressing hash -> class id table covering every element of G.
  std::vector<std::uint64_t> keys_;  // 0 = empty (hash values are remapped off 0)
  std::vector<std::uint16_t> vals_;
  std::uint64_t mask_ = 0;
  std::uint64_t hash_seed_ = 0;

  std::uint64_t element_key(const Pt* img, std::size_t n) const;
  std::uint64_t probe(std::uint64_t h) const;
  bool build_once(const std::vector<Perm>& closure_gens, unsigned max_classes);
};

}  // namespace picky
