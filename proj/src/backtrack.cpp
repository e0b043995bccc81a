#include "picky/backtrack.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace picky {

namespace {

// Partial injective point map with an undo trail.
struct PartialMap {
  std::vector<std::int32_t> img, pre;
  std::vector<Pt> trail;

  explicit PartialMap(std::size_t deg) : img(deg, -1), pre(deg, -1) {}

  std::size_t mark() const { return trail.size(); }

  bool assign(Pt a, Pt b) {
    if (img[a] >= 0) return img[a] == b;
    if (pre[b] >= 0) return false;
    img[a] = b;
    pre[b] = a;
    trail.push_back(a);
    return true;
  }

  void rollback(std::size_t m) {
    while (trail.size() > m) {
      Pt a = trail.back();
      trail.pop_back();
      pre[img[a]] = -1;
      img[a] = -1;
    }
  }
};

std::vector<Pt> cycle_lengths(const Perm& x) {
  std::vector<Pt> len(x.degree(), 0);
  std::vector<bool> seen(x.degree(), false);
  for (Pt p = 0; p < x.degree(); ++p) {
    if (seen[p]) continue;
    std::vector<Pt> cyc;
    for (Pt q = p; !seen[q]; q = x[q]) {
      seen[q] = true;
      cyc.push_back(q);
    }
    for (Pt q : cyc) len[q] = static_cast<Pt>(cyc.size());
  }
  return len;
}

// Base preference adapted to the cycles of x: cycle representatives, longest
// cycles first, so each chosen image forces a whole cycle of images.
std::vector<Pt> cycle_adapted_base(const Perm& x) {
  std::vector<std::pair<Pt, Pt>> reps;  // (length, rep)
  std::vector<bool> seen(x.degree(), false);
  for (Pt p = 0; p < x.degree(); ++p) {
    if (seen[p]) continue;
    Pt len = 0;
    for (Pt q = p; !seen[q]; q = x[q]) {
      seen[q] = true;
      ++len;
    }
    reps.push_back({len, p});
  }
  std::sort(reps.begin(), reps.end(), [](auto a, auto b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  std::vector<Pt> base;
  for (auto [len, p] : reps) base.push_back(p);
  return base;
}

// Propagates g(x^t(p)) = y^t(q) around the x-cycle of p.
bool propagate_chain(PartialMap& pm, const Perm& x, const Perm& y, Pt p, Pt q) {
  Pt a = p, b = q;
  do {
    if (!pm.assign(a, b)) return false;
    a = x[a];
    b = y[b];
  } while (a != p);
  return b == q;
}

// Minimum of each point's orbit under K, for first-level pruning.
std::vector<Pt> orbit_minima(const Group& K) {
  std::vector<Pt> mn(K.degree());
  std::iota(mn.begin(), mn.end(), Pt{0});
  std::vector<std::int32_t> id(K.degree(), -1);
  std::int32_t next = 0;
  for (Pt s = 0; s < K.degree(); ++s) {
    if (id[s] >= 0) continue;
    std::vector<Pt> orb{s};
    id[s] = next;
    for (std::size_t i = 0; i < orb.size(); ++i)
      for (const auto& g : K.generators()) {
        Pt im = g[orb[i]];
        if (id[im] < 0) {
          id[im] = next;
          orb.push_back(im);
        }
      }
    Pt m = *std::min_element(orb.begin(), orb.end());
    for (Pt p : orb) mn[p] = m;
    ++next;
  }
  return mn;
}

// DFS over base images of the search chain; used by both subgroup searches
// and the transporter search.  `extend` adds constraints for the newly fixed
// base image and may veto; `leaf` inspects a full candidate and returns true
// to stop the whole search.
struct Dfs {
  const std::vector<Group::Level>& chain;
  std::function<bool(std::size_t lev, Pt basept, Pt image, std::size_t& pmark)> extend;
  std::function<void(std::size_t pmark)> rollback;
  std::function<bool(const Perm&)> leaf;
  const std::vector<Pt>* level0_minima = nullptr;  // K-orbit minima for level 0

  bool stopped = false;

  void run(std::size_t lev, const Perm& r) {
    if (stopped) return;
    if (lev == chain.size()) {
      if (leaf(r)) stopped = true;
      return;
    }
    const auto& L = chain[lev];
    for (const auto& u : L.transversal) {
      Perm rnew = u * r;
      Pt image = rnew[L.base_pt];
      if (lev == 0 && level0_minima && (*level0_minima)[image] != image) continue;
      std::size_t pmark = 0;
      if (!extend(lev, L.base_pt, image, pmark)) {
        rollback(pmark);
        continue;
      }
      run(lev + 1, rnew);
      rollback(pmark);
      if (stopped) return;
    }
  }
};

}  // namespace

GroupRef centralizer(const GroupRef& G, const Perm& x) {
  if (!G->contains(x)) throw std::invalid_argument("centralizer: element not in group");
  if (x.is_identity() || G->is_trivial()) return G;

  auto base = cycle_adapted_base(x);
  auto S = Group::make(G->generators(), base);
  auto xlen = cycle_lengths(x);

  std::vector<Perm> kgens{x};
  while (true) {
    auto K = Group::make(kgens);
    auto minima = orbit_minima(*K);

    PartialMap pm(G->degree());
    std::optional<Perm> found;
    Dfs dfs{
        S->chain(),
        [&](std::size_t, Pt basept, Pt image, std::size_t& pmark) {
          pmark = pm.mark();
          if (xlen[basept] != xlen[image]) return false;
          return propagate_chain(pm, x, x, basept, image);
        },
        [&](std::size_t pmark) { pm.rollback(pmark); },
        [&](const Perm& g) {
          if (x * g != g * x) return false;
          if (K->contains(g)) return false;
          found = g;
          return true;
        },
        &minima,
    };
    dfs.run(0, Perm::identity(G->degree()));
    if (!found) return Group::make(std::move(kgens), {}, G);
    kgens.push_back(std::move(*found));
  }
}

std::optional<Perm> conjugating_element(const GroupRef& G, const Perm& x, const Perm& y) {
  if (!G->contains(x) || !G->contains(y))
    throw std::invalid_argument("conjugating_element: input not in group");
  if (x == y) return Perm::identity(G->degree());
  if (x.cycle_type() != y.cycle_type()) return std::nullopt;

  auto base = cycle_adapted_base(x);
  auto S = Group::make(G->generators(), base);
  auto xlen = cycle_lengths(x), ylen = cycle_lengths(y);

  PartialMap pm(G->degree());
  std::optional<Perm> found;
  Dfs dfs{
      S->chain(),
      [&](std::size_t, Pt basept, Pt image, std::size_t& pmark) {
        pmark = pm.mark();
        if (xlen[basept] != ylen[image]) return false;
        return propagate_chain(pm, x, y, basept, image);
      },
      [&](std::size_t pmark) { pm.rollback(pmark); },
      [&](const Perm& g) {
        if (x * g != g * y) return false;
        found = g;
        return true;
      },
      nullptr,
  };
  dfs.run(0, Perm::identity(G->degree()));
  return found;
}

GroupRef normalizer(const GroupRef& G, const GroupRef& H) {
  for (const auto& h : H->generators())
    if (!G->contains(h)) throw std::invalid_argument("normalizer: H is not a subgroup of G");
  if (H->is_trivial()) return G;

  const std::size_t deg = G->degree();

  // H-orbit structure on points.
  std::vector<std::int32_t> oid(deg, -1);
  std::vector<std::uint32_t> osize;
  for (Pt s = 0; s < deg; ++s) {
    if (oid[s] >= 0) continue;
    std::int32_t id = static_cast<std::int32_t>(osize.size());
    std::vector<Pt> orb{s};
    oid[s] = id;
    for (std::size_t i = 0; i < orb.size(); ++i)
      for (const auto& g : H->generators()) {
        Pt im = g[orb[i]];
        if (oid[im] < 0) {
          oid[im] = id;
          orb.push_back(im);
        }
      }
    osize.push_back(static_cast<std::uint32_t>(orb.size()));
  }

  // Prefer base points whose orbit-size class is rare.
  std::vector<std::uint64_t> size_count(deg + 1, 0);
  for (Pt p = 0; p < deg; ++p) size_count[osize[oid[p]]]++;
  std::vector<Pt> base(deg);
  std::iota(base.begin(), base.end(), Pt{0});
  std::stable_sort(base.begin(), base.end(), [&](Pt a, Pt b) {
    return size_count[osize[oid[a]]] < size_count[osize[oid[b]]];
  });
  auto S = Group::make(G->generators(), base);

  // Partial orbit-to-orbit map with trail.
  std::vector<std::int32_t> omap(osize.size(), -1), opre(osize.size(), -1);
  std::vector<std::int32_t> otrail;

  std::vector<Perm> kgens = H->generators();
  while (true) {
    auto K = Group::make(kgens);
    auto minima = orbit_minima(*K);

    std::optional<Perm> found;
    Dfs dfs{
        S->chain(),
        [&](std::size_t, Pt basept, Pt image, std::size_t& pmark) {
          pmark = otrail.size();
          std::int32_t oa = oid[basept], ob = oid[image];
          if (osize[oa] != osize[ob]) return false;
          if (omap[oa] >= 0) return omap[oa] == ob;
          if (opre[ob] >= 0) return false;
          omap[oa] = ob;
          opre[ob] = oa;
          otrail.push_back(oa);
          return true;
        },
        [&](std::size_t pmark) {
          while (otrail.size() > pmark) {
            std::int32_t oa = otrail.back();
            otrail.pop_back();
            opre[omap[oa]] = -1;
            omap[oa] = -1;
          }
        },
        [&](const Perm& g) {
          for (const auto& h : H->generators())
            if (!H->contains(h.conjugated_by(g))) return false;
          if (K->contains(g)) return false;
          found = g;
          return true;
        },
        &minima,
    };
    dfs.run(0, Perm::identity(deg));
    if (!found) return Group::make(std::move(kgens), {}, G);
    kgens.push_back(std::move(*found));
  }
}

}  // namespace picky
