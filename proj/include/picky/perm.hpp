#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace picky {

using Pt = std::uint16_t;

// Permutation of {0, ..., degree-1} stored as its image array.
// Composition is left-to-right: (a * b)(p) = b(a(p)).
class Perm {
public:
  Perm() = default;
  explicit Perm(std::vector<Pt> images) : img_(std::move(images)) {}

  static Perm identity(std::size_t degree);

  std::size_t degree() const { return img_.size(); }
  Pt operator[](Pt p) const { return img_[p]; }
  const std::vector<Pt>& images() const { return img_; }

  bool is_identity() const;
  Perm inverse() const;
  // g^{-1} * (*this) * g
  Perm conjugated_by(const Perm& g) const;

  std::uint64_t order() const;
  // Multiset of cycle lengths (1-cycles included), sorted descending.
  std::vector<Pt> cycle_type() const;
  // Length of the cycle through p.
  Pt cycle_length(Pt p) const;

  std::uint64_t hash(std::uint64_t seed) const;

  bool operator==(const Perm&) const = default;
  std::strong_ordering operator<=>(const Perm& o) const = default;

  std::string to_cycle_string() const;

private:
  std::vector<Pt> img_;
};

// (a * b)(p) = b(a(p)): apply a, then b.
Perm operator*(const Perm& a, const Perm& b);

// Same stream hash Perm::hash uses, on a raw image buffer.
std::uint64_t hash_images(const Pt* img, std::size_t n, std::uint64_t seed);

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b);

}  // namespace picky
