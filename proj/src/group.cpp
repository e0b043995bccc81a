#include "picky/group.hpp"

#include <algorithm>
#include <stdexcept>

namespace picky {

GroupRef Group::trivial(std::size_t degree) {
  auto g = std::shared_ptr<Group>(new Group());
  g->degree_ = degree;
  g->order_ = 1;
  return g;
}

GroupRef Group::make(std::vector<Perm> generators, std::vector<Pt> preferred_base,
                     GroupRef parent) {
  if (generators.empty()) throw std::invalid_argument("group needs at least one generator (or use trivial)");
  const std::size_t deg = generators[0].degree();
  if (deg > 4096) throw std::invalid_argument("permutation degree beyond supported bound 4096");
  for (const auto& g : generators)
    if (g.degree() != deg) throw std::invalid_argument("generator degree mismatch");
  auto g = std::shared_ptr<Group>(new Group());
  g->degree_ = deg;
  g->parent_ = std::move(parent);
  g->preferred_ = preferred_base;
  g->build(std::move(generators), g->preferred_);
  return g;
}

Pt Group::pick_base_point(const Perm& h, const std::vector<Pt>& preferred) const {
  for (Pt p : preferred) {
    bool used = false;
    for (const auto& lev : chain_)
      if (lev.base_pt == p) used = true;
    if (!used && h[p] != p) return p;
  }
  for (Pt p = 0; p < degree_; ++p)
    if (h[p] != p) return p;
  throw std::logic_error("identity passed to pick_base_point");
}

void Group::add_level(Pt pt) {
  Level lev;
  lev.base_pt = pt;
  lev.where.assign(degree_, -1);
  chain_.push_back(std::move(lev));
}

// The group acting at level li is generated by the strong generators stored
// at li and every deeper level (those fix b_li but can still extend its
// orbit through other points).
std::vector<const Perm*> Group::level_gens(std::size_t li) const {
  std::vector<const Perm*> out;
  for (std::size_t m = li; m < chain_.size(); ++m)
    for (const auto& s : chain_[m].gens) out.push_back(&s);
  return out;
}

void Group::recompute_orbit(std::size_t li) {
  Level& lev = chain_[li];
  auto gens = level_gens(li);
  lev.orbit.clear();
  std::fill(lev.where.begin(), lev.where.end(), -1);
  lev.transversal.clear();
  lev.orbit.push_back(lev.base_pt);
  lev.where[lev.base_pt] = 0;
  lev.transversal.push_back(Perm::identity(degree_));
  for (std::size_t i = 0; i < lev.orbit.size(); ++i) {
    for (const Perm* s : gens) {
      Pt img = (*s)[lev.orbit[i]];
      if (lev.where[img] < 0) {
        lev.where[img] = static_cast<std::int32_t>(lev.orbit.size());
        lev.orbit.push_back(img);
        lev.transversal.push_back(lev.transversal[i] * *s);
      }
    }
  }
}

std::pair<Perm, std::size_t> Group::strip(Perm g, std::size_t from_level) const {
  for (std::size_t i = from_level; i < chain_.size(); ++i) {
    const Level& lev = chain_[i];
    Pt img = g[lev.base_pt];
    if (lev.where[img] < 0) return {std::move(g), i};
    g = g * lev.transversal[lev.where[img]].inverse();
  }
  return {std::move(g), chain_.size()};
}

// Checks Schreier-generator closure at one level; on failure records the new
// strong generator and reports the level that changed.
bool Group::verify_level(std::size_t li, std::size_t& changed) {
  recompute_orbit(li);
  Level& lev = chain_[li];
  auto gens = level_gens(li);
  for (std::size_t i = 0; i < lev.orbit.size(); ++i) {
    for (const Perm* s : gens) {
      Pt img = (*s)[lev.orbit[i]];
      Perm schreier = lev.transversal[i] * *s * lev.transversal[lev.where[img]].inverse();
      auto [h, j] = strip(std::move(schreier), li + 1);
      if (!h.is_identity()) {
        if (j == chain_.size()) add_level(pick_base_point(h, preferred_));
        chain_[j].gens.push_back(std::move(h));
        changed = j;
        return false;
      }
    }
  }
  return true;
}

void Group::build(std::vector<Perm> gens, const std::vector<Pt>& preferred) {
  gens_ = std::move(gens);
  std::vector<Perm> nontrivial;
  for (const auto& g : gens_)
    if (!g.is_identity()) nontrivial.push_back(g);
  if (nontrivial.empty()) {
    order_ = 1;
    return;
  }
  Perm probe = nontrivial[0];
  add_level(pick_base_point(probe, preferred));
  chain_[0].gens = nontrivial;
  // Ensure every generator moves some base point.
  for (const auto& g : nontrivial) {
    auto fixes_all = [&] {
      for (const auto& lev : chain_)
        if (g[lev.base_pt] != lev.base_pt) return false;
      return true;
    };
    if (fixes_all()) add_level(pick_base_point(g, preferred));
  }

  std::size_t i = chain_.size();
  while (i > 0) {
    std::size_t changed = 0;
    if (verify_level(i - 1, changed))
      --i;
    else
      i = changed + 1;
  }

  order_ = 1;
  for (const auto& lev : chain_) order_ *= static_cast<std::uint64_t>(lev.orbit.size());
}

bool Group::contains(const Perm& p) const {
  if (p.degree() != degree_) throw std::invalid_argument("degree mismatch in membership test");
  auto [h, lev] = strip(p);
  (void)lev;
  return h.is_identity();
}

std::vector<Pt> Group::base() const {
  std::vector<Pt> b;
  for (const auto& lev : chain_) b.push_back(lev.base_pt);
  return b;
}

void Group::enumerate(const std::function<bool(const Perm&)>& visit) const {
  if (chain_.empty()) {
    visit(Perm::identity(degree_));
    return;
  }
  // Elements decompose uniquely as u_{k-1} * ... * u_0 (u_i from level i's
  // transversal, applied left to right).
  std::vector<std::size_t> idx(chain_.size(), 0);
  bool stop = false;
  std::function<void(std::size_t, const Perm&)> rec = [&](std::size_t lev_down, const Perm& acc) {
    if (stop) return;
    if (lev_down == 0) {
      if (!visit(acc)) stop = true;
      return;
    }
    std::size_t li = lev_down - 1;
    for (const auto& u : chain_[li].transversal) {
      rec(li, acc * u);
      if (stop) return;
    }
  };
  std::size_t deepest = chain_.size() - 1;
  for (const auto& u : chain_[deepest].transversal) {
    rec(deepest, u);
    if (stop) return;
  }
}

std::vector<Perm> Group::elements() const {
  std::vector<Perm> out;
  out.reserve(order_);
  enumerate([&](const Perm& g) {
    out.push_back(g);
    return true;
  });
  return out;
}

Perm Group::random_element(std::mt19937_64& rng) const {
  Perm acc = Perm::identity(degree_);
  for (std::size_t li = chain_.size(); li-- > 0;) {
    const auto& tr = chain_[li].transversal;
    std::uniform_int_distribution<std::size_t> d(0, tr.size() - 1);
    acc = acc * tr[d(rng)];
  }
  return acc;
}

bool Group::is_abelian() const {
  for (std::size_t i = 0; i < gens_.size(); ++i)
    for (std::size_t j = i + 1; j < gens_.size(); ++j)
      if (gens_[i] * gens_[j] != gens_[j] * gens_[i]) return false;
  return true;
}

bool Group::is_cyclic() const {
  bool found = false;
  enumerate([&](const Perm& g) {
    if (g.order() == order_) {
      found = true;
      return false;
    }
    return true;
  });
  return found;
}

}  // namespace picky
