#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <stdexcept>
#include <vector>

#include "picky/perm.hpp"

namespace picky {

struct Budget {
  std::uint64_t max_order = 10'000'000;
  unsigned max_classes = 256;
  unsigned max_degree = 512;
};

// Raised when a computation would exceed the caller's Budget; callers that
// sweep many groups catch this and record the refusal instead of dying.
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Group;
using GroupRef = std::shared_ptr<const Group>;

// Immutable permutation group with a base and strong generating set.
// Construction runs the deterministic Schreier-Sims algorithm; afterwards the
// handle is safe to share between threads.
class Group {
public:
  struct Level {
    Pt base_pt = 0;
    std::vector<Pt> orbit;              // fundamental orbit in BFS discovery order
    std::vector<std::int32_t> where;    // point -> index into orbit, -1 if absent
    std::vector<Perm> transversal;      // transversal[i] maps base_pt to orbit[i]
    std::vector<Perm> gens;             // strong generators fixing all earlier base points
  };

  // preferred_base: points to favor (in order) when choosing base points.
  static GroupRef make(std::vector<Perm> generators, std::vector<Pt> preferred_base = {},
                       GroupRef parent = nullptr);
  static GroupRef trivial(std::size_t degree);

  std::size_t degree() const { return degree_; }
  const std::vector<Perm>& generators() const { return gens_; }
  std::uint64_t order() const { return order_; }
  bool is_trivial() const { return order_ == 1; }

  // Membership by sifting; throws on degree mismatch.
  bool contains(const Perm& p) const;
  // Sift from the given level; returns the residue and the level where
  // sifting stopped (== chain size when all levels pass).
  std::pair<Perm, std::size_t> strip(Perm g, std::size_t from_level = 0) const;

  const std::vector<Level>& chain() const { return chain_; }
  std::vector<Pt> base() const;

  // Visits every element exactly once in a deterministic order; stop early by
  // returning false from the callback.
  void enumerate(const std::function<bool(const Perm&)>& visit) const;
  std::vector<Perm> elements() const;

  Perm random_element(std::mt19937_64& rng) const;

  // Enclosing group this one was carved out of (centralizer, normalizer,
  // Sylow subgroup, ...); null for groups built directly from generators.
  GroupRef parent() const { return parent_; }

  // True iff all generators commute pairwise.
  bool is_abelian() const;
  // True iff some element's order equals the group order (enumerates).
  bool is_cyclic() const;

private:
  Group() = default;
  void build(std::vector<Perm> gens, const std::vector<Pt>& preferred);
  void add_level(Pt pt);
  std::vector<const Perm*> level_gens(std::size_t lev) const;
  void recompute_orbit(std::size_t lev);
  bool verify_level(std::size_t lev, std::size_t& changed);
  Pt pick_base_point(const Perm& h, const std::vector<Pt>& preferred) const;

  std::size_t degree_ = 0;
  std::vector<Perm> gens_;
  std::vector<Level> chain_;
  std::uint64_t order_ = 1;
  GroupRef parent_;
  std::vector<Pt> preferred_;
};

}  // namespace picky
