#pragma once

// Brute-force reference implementations for the test suites.  Everything here
// recomputes, by definition-level enumeration, quantities the library derives
// through theory (counting identities, normalizer indices), so agreement is
// meaningful evidence.  Only usable on small groups.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "picky/group.hpp"
#include "picky/perm.hpp"
#include "picky/sylow.hpp"

namespace picky::oracles {

// One subgroup represented extensionally: the sorted set of its elements'
// image arrays.  Comparable, hashable by std::set semantics.
using ElementSet = std::set<std::vector<Pt>>;

inline ElementSet element_set(const GroupRef& H) {
  ElementSet s;
  H->enumerate([&](const Perm& h) {
    s.insert(h.images());
    return true;
  });
  return s;
}

// Every Sylow ell-subgroup of G, as element sets.  Enumerates the G-conjugates
// of one Sylow subgroup (Sylow's theorem: that is all of them).  Cost about
// |G| * |P| * degree; intended for |G| <= ~10^4.
inline std::vector<ElementSet> all_sylow_subgroups(const GroupRef& G,
                                                   std::uint64_t ell) {
  GroupRef P = sylow_subgroup(G, ell);
  std::vector<Perm> p_elems;
  P->enumerate([&](const Perm& p) {
    p_elems.push_back(p);
    return true;
  });
  std::set<ElementSet> found;
  G->enumerate([&](const Perm& g) {
    ElementSet conj;
    for (const Perm& p : p_elems) conj.insert(p.conjugated_by(g).images());
    found.insert(std::move(conj));
    return true;
  });
  return {found.begin(), found.end()};
}

// Number of the given Sylow subgroups containing x.
inline std::uint64_t brute_sylow_count(const std::vector<ElementSet>& sylows,
                                       const Perm& x) {
  std::uint64_t n = 0;
  for (const ElementSet& s : sylows) n += s.count(x.images());
  return n;
}

// Locates a repository file regardless of the test's working directory
// (source root, build/, or a subdirectory).  PICKY_REPO_ROOT overrides.
inline std::string repo_file(const std::string& relative) {
  std::vector<std::string> prefixes = {"", "../", "../../", "../../../"};
  if (const char* root = std::getenv("PICKY_REPO_ROOT"))
    prefixes.insert(prefixes.begin(), std::string(root) + "/");
  for (const auto& p : prefixes) {
    std::string path = p + relative;
    if (std::ifstream(path).good()) return path;
  }
  return relative;  // let the caller's open fail with a clear name
}

}  // namespace picky::oracles
