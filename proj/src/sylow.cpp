#include "picky/sylow.hpp"

#include <optional>
#include <random>
#include <stdexcept>

#include "picky/backtrack.hpp"
#include "picky/gf.hpp"

namespace picky {

std::uint64_t ell_part(std::uint64_t n, std::uint64_t ell) {
  std::uint64_t part = 1;
  while (n % ell == 0) {
    n /= ell;
    part *= ell;
  }
  return part;
}

namespace {

Perm perm_pow(const Perm& g, std::uint64_t e) {
  Perm acc = Perm::identity(g.degree());
  Perm sq = g;
  while (e) {
    if (e & 1) acc = acc * sq;
    sq = sq * sq;
    e >>= 1;
  }
  return acc;
}

// The nontrivial ell-part of c as a group element, if any: c^(o/o_ell).
std::optional<Perm> ell_part_of_element(const Perm& c, std::uint64_t ell) {
  std::uint64_t o = c.order();
  std::uint64_t oe = ell_part(o, ell);
  if (oe == 1) return std::nullopt;
  return perm_pow(c, o / oe);
}

// Given n in N_G(Q), its coset order modulo Q (least k >= 1 with n^k in Q).
std::uint64_t coset_order(const GroupRef& Q, const Perm& n) {
  Perm pw = n;
  std::uint64_t k = 1;
  while (!Q->contains(pw)) {
    pw = pw * n;
    ++k;
  }
  return k;
}

// Q := <Q, z> where z in N_G(Q) has nontrivial ell-power coset order.
GroupRef extend_by(const GroupRef& G, const GroupRef& Q, const Perm& n, std::uint64_t k,
                   std::uint64_t ke) {
  Perm z = perm_pow(n, k / ke);
  auto gens = Q->generators();
  gens.push_back(z);
  auto Q2 = Group::make(std::move(gens), {}, G);
  // |Q<z>| = |Q| * (coset order of z) since z normalizes Q.
  if (Q2->order() != Q->order() * ke) throw std::logic_error("sylow: extension order mismatch");
  return Q2;
}

}  // namespace

GroupRef sylow_subgroup(const GroupRef& G, std::uint64_t ell) {
  if (!GF::is_prime(ell)) throw std::invalid_argument("sylow_subgroup: ell must be prime");
  const std::uint64_t target = ell_part(G->order(), ell);
  if (target == 1) return Group::make({Perm::identity(G->degree())}, {}, G);

  // Seeded search with a fixed retry cap.  Each round, the normalizer of a
  // non-Sylow ell-subgroup Q contains elements of ell-divisible coset order
  // (normalizers grow in ell-groups), so sampling N_G(Q) succeeds quickly.
  constexpr std::uint64_t kMaxDraws = 4096;
  for (std::uint64_t attempt = 0; attempt < 64; ++attempt) {
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ attempt);

    GroupRef Q;
    for (std::uint64_t d = 0; d < kMaxDraws && !Q; ++d)
      if (auto z = ell_part_of_element(G->random_element(rng), ell))
        Q = Group::make({*z}, {}, G);
    if (!Q) continue;

    bool stuck = false;
    while (Q->order() < target && !stuck) {
      auto N = normalizer(G, Q);
      if (N->order() <= Q->order()) throw std::logic_error("sylow: normalizer did not grow");
      stuck = true;
      for (std::uint64_t d = 0; d < kMaxDraws; ++d) {
        Perm n = N->random_element(rng);
        std::uint64_t k = coset_order(Q, n);
        std::uint64_t ke = ell_part(k, ell);
        if (ke == 1) continue;
        Q = extend_by(G, Q, n, k, ke);
        stuck = false;
        break;
      }
    }
    if (!stuck) return Q;
  }

  // Deterministic exhaustive pass; guaranteed for small groups.
  if (G->order() <= 100'000) {
    GroupRef Q;
    G->enumerate([&](const Perm& c) {
      if (auto z = ell_part_of_element(c, ell)) {
        Q = Group::make({*z}, {}, G);
        return false;
      }
      return true;
    });
    if (!Q) throw std::logic_error("sylow: no ell-element found");
    while (Q->order() < target) {
      auto N = normalizer(G, Q);
      bool grew = false;
      for (const Perm& n : N->elements()) {
        std::uint64_t k = coset_order(Q, n);
        std::uint64_t ke = ell_part(k, ell);
        if (ke == 1) continue;
        Q = extend_by(G, Q, n, k, ke);
        grew = true;
        break;
      }
      if (!grew) throw std::logic_error("sylow: exhaustive climb stalled");
    }
    return Q;
  }
  throw std::runtime_error("sylow_subgroup: randomized search exhausted its retry budget");
}

}  // namespace picky
