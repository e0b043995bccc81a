#pragma once

#include <optional>

#include "picky/group.hpp"

namespace picky {

// C_G(x) via depth-first search over base images with forced-chain
// propagation along the cycles of x.  Throws if x is not in G.
GroupRef centralizer(const GroupRef& G, const Perm& x);

// N_G(H) via depth-first search with H-orbit pruning.  Throws if H is not a
// subgroup of G.  The result contains H.
GroupRef normalizer(const GroupRef& G, const GroupRef& H);

// Some g in G with x^g = y, or nullopt when x and y are not G-conjugate.
// Throws if x or y is not in G.
std::optional<Perm> conjugating_element(const GroupRef& G, const Perm& x, const Perm& y);

}  // namespace picky
