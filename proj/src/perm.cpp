#include "picky/perm.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace picky {

Perm Perm::identity(std::size_t degree) {
  std::vector<Pt> img(degree);
  std::iota(img.begin(), img.end(), Pt{0});
  return Perm(std::move(img));
}

bool Perm::is_identity() const {
  for (std::size_t p = 0; p < img_.size(); ++p)
    if (img_[p] != p) return false;
  return true;
}

Perm Perm::inverse() const {
  std::vector<Pt> inv(img_.size());
  for (std::size_t p = 0; p < img_.size(); ++p) inv[img_[p]] = static_cast<Pt>(p);
  return Perm(std::move(inv));
}

Perm operator*(const Perm& a, const Perm& b) {
  const auto& ai = a.images();
  const auto& bi = b.images();
  if (ai.size() != bi.size()) throw std::invalid_argument("degree mismatch in composition");
  std::vector<Pt> img(ai.size());
  for (std::size_t p = 0; p < ai.size(); ++p) img[p] = bi[ai[p]];
  return Perm(std::move(img));
}

Perm Perm::conjugated_by(const Perm& g) const {
  // (g^{-1} x g)(p) = g(x(g^{-1}(p))); build directly without forming g^{-1}.
  const auto& gi = g.images();
  std::vector<Pt> img(gi.size());
  for (std::size_t p = 0; p < gi.size(); ++p) img[gi[p]] = gi[img_[p]];
  return Perm(std::move(img));
}

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) {
  return a / std::gcd(a, b) * b;
}

std::uint64_t Perm::order() const {
  std::uint64_t ord = 1;
  std::vector<bool> seen(img_.size(), false);
  for (std::size_t p = 0; p < img_.size(); ++p) {
    if (seen[p]) continue;
    std::uint64_t len = 0;
    for (Pt q = static_cast<Pt>(p); !seen[q]; q = img_[q]) {
      seen[q] = true;
      ++len;
    }
    ord = lcm_u64(ord, len);
  }
  return ord;
}

std::vector<Pt> Perm::cycle_type() const {
  std::vector<Pt> lens;
  std::vector<bool> seen(img_.size(), false);
  for (std::size_t p = 0; p < img_.size(); ++p) {
    if (seen[p]) continue;
    Pt len = 0;
    for (Pt q = static_cast<Pt>(p); !seen[q]; q = img_[q]) {
      seen[q] = true;
      ++len;
    }
    lens.push_back(len);
  }
  std::sort(lens.begin(), lens.end(), std::greater<>());
  return lens;
}

Pt Perm::cycle_length(Pt p) const {
  Pt len = 1;
  for (Pt q = img_[p]; q != p; q = img_[q]) ++len;
  return len;
}

std::uint64_t hash_images(const Pt* img, std::size_t n, std::uint64_t seed) {
  // splitmix64-style stream hash over the image array.
  std::uint64_t h = seed ^ (0x9e3779b97f4a7c15ULL * (n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    h ^= img[i] + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    std::uint64_t z = h;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    h = z ^ (z >> 31);
  }
  return h;
}

std::uint64_t Perm::hash(std::uint64_t seed) const {
  return hash_images(img_.data(), img_.size(), seed);
}

std::string Perm::to_cycle_string() const {
  std::string out;
  std::vector<bool> seen(img_.size(), false);
  for (std::size_t p = 0; p < img_.size(); ++p) {
    if (seen[p] || img_[p] == p) {
      seen[p] = true;
      continue;
    }
    out += '(';
    bool first = true;
    for (Pt q = static_cast<Pt>(p); !seen[q]; q = img_[q]) {
      seen[q] = true;
      if (!first) out += ' ';
      out += std::to_string(q);
      first = false;
    }
    out += ')';
  }
  if (out.empty()) out = "()";
  return out;
}

}  // namespace picky
