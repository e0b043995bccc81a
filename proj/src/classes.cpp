#include "picky/classes.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace picky {

namespace {

std::uint64_t next_pow2(std::uint64_t n) {
  std::uint64_t p = 16;
  while (p < n) p <<= 1;
  return p;
}

// A small generating set makes the conjugation closures cheap.  Groups here
// are typically 2-generated; fall back to the given generators if a few
// deterministic draws fail.
std::vector<Perm> small_generating_set(const GroupRef& G) {
  if (G->generators().size() <= 3 || G->order() == 1) return G->generators();
  std::mt19937_64 rng(0x243f6a8885a308d3ULL);
  for (int attempt = 0; attempt < 8; ++attempt) {
    std::vector<Perm> gens{G->random_element(rng), G->random_element(rng)};
    if (attempt >= 4) gens.push_back(G->random_element(rng));
    if (Group::make(gens)->order() == G->order()) return gens;
  }
  return G->generators();
}

}  // namespace

std::uint64_t ConjClasses::element_key(const Pt* img, std::size_t n) const {
  std::uint64_t h = hash_images(img, n, hash_seed_);
  return h == 0 ? 1 : h;  // 0 marks an empty slot
}

std::uint64_t ConjClasses::probe(std::uint64_t h) const {
  for (std::uint64_t i = h & mask_;; i = (i + 1) & mask_)
    if (keys_[i] == h || keys_[i] == 0) return i;
}

unsigned ConjClasses::class_of(const Perm& g) const {
  return class_of(g.images().data(), g.degree());
}

unsigned ConjClasses::class_of(const Pt* img, std::size_t n) const {
  std::uint64_t h = element_key(img, n);
  std::uint64_t s = probe(h);
  if (keys_[s] != h) throw std::logic_error("class_of: element not in the classified group");
  return vals_[s];
}

unsigned ConjClasses::power_class(unsigned i, std::uint64_t m) const {
  const ConjClass& c = classes_[i];
  m %= c.element_order;
  Perm acc = Perm::identity(c.rep.degree());
  Perm sq = c.rep;
  while (m) {
    if (m & 1) acc = acc * sq;
    sq = sq * sq;
    m >>= 1;
  }
  return class_of(acc);
}

// One streaming pass over G: each yet-unclassified element opens a class that
// is closed up under conjugation by closure_gens before the stream resumes.
// Returns false when the class sizes fail to sum to |G| (hash collision).
bool ConjClasses::build_once(const std::vector<Perm>& closure_gens, unsigned max_classes) {
  const std::size_t deg = G_->degree();
  const std::uint64_t order = G_->order();
  classes_.clear();
  keys_.assign(next_pow2(2 * order), 0);
  vals_.assign(keys_.size(), 0);
  mask_ = keys_.size() - 1;

  // Conjugates are written straight into a flat queue of image blocks, using
  // (g^{-1} x g)(g(p)) = g(x(p)).
  std::vector<const std::vector<Pt>*> gimgs;
  for (const Perm& g : closure_gens) gimgs.push_back(&g.images());

  auto try_insert = [&](const Pt* img, std::uint16_t cid) -> bool {
    std::uint64_t h = element_key(img, deg);
    std::uint64_t s = probe(h);
    if (keys_[s] == h) return false;  // already classified (or a collision)
    keys_[s] = h;
    vals_[s] = cid;
    return true;
  };

  std::uint64_t total = 0;
  bool overflow = false;
  std::vector<Pt> queue;  // consecutive blocks of deg images
  std::vector<Pt> scratch(deg);
  G_->enumerate([&](const Perm& e) {
    std::uint64_t h = element_key(e.images().data(), deg);
    std::uint64_t s = probe(h);
    if (keys_[s] == h) return true;  // seen before
    if (classes_.size() >= max_classes) {
      overflow = true;
      return false;
    }
    auto cid = static_cast<std::uint16_t>(classes_.size());
    keys_[s] = h;
    vals_[s] = cid;

    // Close the new class under conjugation, tracking size and least element.
    ConjClass cls;
    cls.rep = e;
    cls.size = 1;
    queue.assign(e.images().begin(), e.images().end());
    std::vector<Pt> cur(deg);
    std::size_t head = 0;
    while (head < queue.size()) {
      std::copy_n(queue.begin() + static_cast<std::ptrdiff_t>(head), deg, cur.begin());
      const Pt* x = cur.data();
      for (const auto* gp : gimgs) {
        const Pt* g = gp->data();
        for (std::size_t p = 0; p < deg; ++p) scratch[g[p]] = g[x[p]];
        if (!try_insert(scratch.data(), cid)) continue;
        cls.size += 1;
        if (std::lexicographical_compare(scratch.begin(), scratch.end(),
                                         cls.rep.images().begin(), cls.rep.images().end()))
          cls.rep = Perm(scratch);
        queue.insert(queue.end(), scratch.begin(), scratch.end());
      }
      head += deg;
      if (head > queue.size() / 2 && head >= (std::size_t{1} << 22)) {
        queue.erase(queue.begin(), queue.begin() + static_cast<std::ptrdiff_t>(head));
        head = 0;
      }
    }
    queue.clear();
    queue.shrink_to_fit();
    cls.element_order = cls.rep.order();
    classes_.push_back(std::move(cls));
    total += classes_.back().size;
    return total < order;  // stop the stream once everything is classified
  });

  if (overflow) throw BudgetExceeded("conjugacy class count exceeds budget");
  return total == order;
}

ConjClasses ConjClasses::compute(const GroupRef& G, const Budget& budget) {
  if (G->order() > budget.max_order) throw BudgetExceeded("group order exceeds budget");
  if (G->degree() > budget.max_degree) throw BudgetExceeded("permutation degree exceeds budget");

  ConjClasses cc;
  cc.G_ = G;
  cc.hash_seed_ = 0x6a09e667f3bcc908ULL;
  auto gens = small_generating_set(G);
  int tries = 0;
  while (!cc.build_once(gens, budget.max_classes)) {
    if (++tries == 8) throw std::logic_error("conjugacy classes: persistent hash collisions");
    // Collision: reseed deterministically and reclassify.
    std::uint64_t z = cc.hash_seed_ + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    cc.hash_seed_ = z ^ (z >> 31);
  }

  // Canonical class order; the identity (order 1, size 1) sorts first.
  std::vector<unsigned> perm(cc.classes_.size());
  std::iota(perm.begin(), perm.end(), 0u);
  std::sort(perm.begin(), perm.end(), [&](unsigned a, unsigned b) {
    const auto& A = cc.classes_[a];
    const auto& B = cc.classes_[b];
    if (A.element_order != B.element_order) return A.element_order < B.element_order;
    if (A.size != B.size) return A.size < B.size;
    return A.rep < B.rep;
  });
  std::vector<std::uint16_t> newid(cc.classes_.size());
  for (unsigned i = 0; i < perm.size(); ++i) newid[perm[i]] = static_cast<std::uint16_t>(i);
  std::vector<ConjClass> sorted;
  sorted.reserve(cc.classes_.size());
  for (unsigned i = 0; i < perm.size(); ++i) sorted.push_back(std::move(cc.classes_[perm[i]]));
  cc.classes_ = std::move(sorted);
  for (std::uint64_t i = 0; i < cc.keys_.size(); ++i)
    if (cc.keys_[i] != 0) cc.vals_[i] = newid[cc.vals_[i]];

  cc.exponent_ = 1;
  for (const auto& c : cc.classes_) cc.exponent_ = lcm_u64(cc.exponent_, c.element_order);
  cc.inverse_.resize(cc.classes_.size());
  for (unsigned i = 0; i < cc.classes_.size(); ++i)
    cc.inverse_[i] = cc.class_of(cc.classes_[i].rep.inverse());
  return cc;
}

namespace {
constexpr std::size_t kClosureLimit = 200'000;

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}
}  // namespace

void ConjClasses::for_each_element(
    unsigned i, const std::function<void(const Pt*)>& fn) const {
  const std::size_t deg = G_->degree();
  const std::uint64_t size = cls(i).size;
  if (size > kClosureLimit) {
    // Too large to buffer: stream the whole group and filter by class id.
    G_->enumerate([&](const Perm& p) {
      if (class_of(p.images().data(), deg) == i) fn(p.images().data());
      return true;
    });
    return;
  }
  const std::vector<Perm>& gens = G_->generators();
  for (int attempt = 0; attempt < 8; ++attempt) {
    std::uint64_t seed =
        splitmix(0x8f1bbcdcbfa53e0bULL ^ (std::uint64_t(i) << 32) ^
                 std::uint64_t(attempt));
    std::uint64_t cap = 16;
    while (cap < 2 * size + 2) cap <<= 1;
    std::vector<std::uint64_t> table(cap, 0);
    const std::uint64_t mask = cap - 1;
    auto try_insert = [&](const Pt* img) {
      std::uint64_t h = hash_images(img, deg, seed);
      if (h == 0) h = 1;
      for (std::uint64_t slot = h & mask;; slot = (slot + 1) & mask) {
        if (table[slot] == h) return false;
        if (table[slot] == 0) {
          table[slot] = h;
          return true;
        }
      }
    };
    std::vector<Pt> queue;
    queue.reserve(static_cast<std::size_t>(size) * deg);
    const std::vector<Pt>& rep = cls(i).rep.images();
    try_insert(rep.data());
    queue.insert(queue.end(), rep.begin(), rep.end());
    std::vector<Pt> cur(deg), scratch(deg);
    std::size_t head = 0, count = 0;
    while (head < queue.size()) {
      std::copy_n(queue.begin() + head, deg, cur.begin());
      head += deg;
      ++count;
      for (const Perm& g : gens) {
        const Pt* gi = g.images().data();
        for (std::size_t p = 0; p < deg; ++p) scratch[gi[p]] = gi[cur[p]];
        if (try_insert(scratch.data()))
          queue.insert(queue.end(), scratch.begin(), scratch.end());
      }
    }
    if (count == size) {
      for (std::size_t off = 0; off < queue.size(); off += deg)
        fn(queue.data() + off);
      return;
    }
    // count < size: a hash collision swallowed an element; retry reseeded.
  }
  throw std::logic_error("for_each_element: persistent hash collisions");
}

}  // namespace picky
