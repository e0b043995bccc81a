#pragma once

#include <cstdint>

#include "picky/group.hpp"

namespace picky {

// Largest power of ell dividing n (the ell-part of n).
std::uint64_t ell_part(std::uint64_t n, std::uint64_t ell);

// A Sylow ell-subgroup of G, found by normalizer climbing: grow an
// ell-subgroup Q by adjoining ell-elements of N_G(Q)/Q until |Q| equals the
// ell-part of |G|.  Deterministic: seeded sampling with a fixed retry cap,
// then exhaustive search (only reachable for tiny groups).  Returns the
// trivial group when ell does not divide |G|.
GroupRef sylow_subgroup(const GroupRef& G, std::uint64_t ell);

}  // namespace picky
