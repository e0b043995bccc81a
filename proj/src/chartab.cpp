#include "picky/chartab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <json.hpp>

#include "picky/gf.hpp"

namespace picky {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// ---------------------------------------------------------------------------
// Arithmetic mod a 64-bit prime.

u64 addm(u64 a, u64 b, u64 r) {
  u64 s = a + b;
  return s >= r ? s - r : s;
}
u64 subm(u64 a, u64 b, u64 r) { return a >= b ? a - b : a + r - b; }
u64 mulm(u64 a, u64 b, u64 r) { return static_cast<u64>(u128(a) * b % r); }

u64 powm(u64 a, u64 e, u64 r) {
  u64 acc = 1 % r;
  for (a %= r; e; e >>= 1, a = mulm(a, a, r))
    if (e & 1) acc = mulm(acc, a, r);
  return acc;
}

u64 invm(u64 a, u64 r) { return powm(a, r - 2, r); }  // r prime

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  // Deterministic Miller-Rabin base set for all 64-bit inputs.
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                29ull, 31ull, 37ull}) {
    u64 x = powm(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulm(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<u64> distinct_prime_factors(u64 n) {
  std::vector<u64> ps;
  for (u64 p = 2; u128(p) * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p) continue;
    ps.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

u64 primitive_root_mod(u64 r) {
  std::vector<u64> ps = distinct_prime_factors(r - 1);
  for (u64 g = 2;; ++g) {
    bool ok = true;
    for (u64 p : ps)
      if (powm(g, (r - 1) / p, r) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
}

// Square root mod prime r (Tonelli-Shanks); throws if a is a non-residue.
u64 sqrt_mod(u64 a, u64 r) {
  a %= r;
  if (a == 0) return 0;
  if (powm(a, (r - 1) / 2, r) != 1)
    throw std::logic_error("sqrt_mod: quadratic non-residue");
  if (r % 4 == 3) return powm(a, (r + 1) / 4, r);
  u64 q = r - 1;
  int s = 0;
  while ((q & 1) == 0) q >>= 1, ++s;
  u64 z = 2;
  while (powm(z, (r - 1) / 2, r) == 1) ++z;
  u64 m = s, c = powm(z, q, r), t = powm(a, q, r), x = powm(a, (q + 1) / 2, r);
  while (t != 1) {
    u64 t2 = t;
    u64 i = 0;
    while (t2 != 1) {
      t2 = mulm(t2, t2, r);
      if (++i == m) throw std::logic_error("sqrt_mod: no square root found");
    }
    u64 b = powm(c, u64(1) << (m - i - 1), r);
    m = i;
    c = mulm(b, b, r);
    t = mulm(t, c, r);
    x = mulm(x, b, r);
  }
  return x;
}

u64 isqrt_u64(u64 n) {
  u64 s = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while (s > 0 && s * s > n) --s;
  while ((s + 1) * (s + 1) <= n) ++s;
  return s;
}

// Least prime = 1 (mod e) strictly exceeding threshold.
u64 dixon_prime(u64 e, u64 threshold) {
  u64 m = threshold < 1 ? 1 : (threshold - 1) / e + 1;
  for (;; ++m) {
    u64 cand = e * m + 1;
    if (cand > threshold && is_prime_u64(cand)) return cand;
  }
}

// ---------------------------------------------------------------------------
// Polynomials over F_r: coefficient vectors, low degree first, normalized.

using Poly = std::vector<u64>;

void poly_trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// a mod f, f monic.
Poly poly_rem(Poly a, const Poly& f, u64 r) {
  std::size_t df = f.size() - 1;
  while (a.size() > df) {
    u64 c = a.back();
    std::size_t shift = a.size() - 1 - df;
    if (c != 0)
      for (std::size_t i = 0; i <= df; ++i)
        a[shift + i] = subm(a[shift + i], mulm(c, f[i], r), r);
    a.pop_back();
    poly_trim(a);
    if (a.size() <= df) break;
  }
  poly_trim(a);
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, u64 r) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      c[i + j] = addm(c[i + j], mulm(a[i], b[j], r), r);
  }
  return poly_rem(std::move(c), f, r);
}

// (x + c)^e mod f.
Poly poly_pow_linear(u64 c, u64 e, const Poly& f, u64 r) {
  Poly base = poly_rem({c % r, 1}, f, r);
  Poly acc = poly_rem({1}, f, r);
  for (; e; e >>= 1, base = poly_mulmod(base, base, f, r))
    if (e & 1) acc = poly_mulmod(acc, base, f, r);
  return acc;
}

Poly poly_monic(Poly p, u64 r) {
  poly_trim(p);
  if (p.empty()) return p;
  u64 inv = invm(p.back(), r);
  for (u64& c : p) c = mulm(c, inv, r);
  return p;
}

Poly poly_gcd(Poly a, Poly b, u64 r) {
  a = poly_monic(std::move(a), r);
  b = poly_monic(std::move(b), r);
  while (!b.empty()) {
    Poly rem = poly_rem(a, b, r);
    a = std::move(b);
    b = poly_monic(std::move(rem), r);
  }
  return a;
}

// Exact division a / b (b monic, b | a).
Poly poly_div_exact(Poly a, const Poly& b, u64 r) {
  std::size_t db = b.size() - 1;
  if (a.size() <= db) return {};
  Poly q(a.size() - db, 0);
  for (std::size_t qi = q.size(); qi-- > 0;) {
    u64 c = a[qi + db];
    q[qi] = c;
    if (c != 0)
      for (std::size_t i = 0; i <= db; ++i)
        a[qi + i] = subm(a[qi + i], mulm(c, b[i], r), r);
  }
  return q;
}

// All roots of a monic squarefree polynomial that splits over F_r.
// Deterministic: gcd with (x + c)^{(r-1)/2} - 1 for c = 0, 1, 2, ...
void poly_roots_rec(const Poly& f, u64 r, u64& shift, std::vector<u64>& out) {
  if (f.size() <= 1) return;
  if (f.size() == 2) {
    out.push_back(subm(0, f[0], r));
    return;
  }
  for (;; ++shift) {
    if (shift > 2'000'000)
      throw std::logic_error("poly_roots: splitting did not terminate");
    Poly h = poly_pow_linear(shift, (r - 1) / 2, f, r);
    if (h.empty())
      h = {r - 1};  // -(x^.. - 1) constant; gcd below handles it
    else
      h[0] = subm(h[0], 1, r);
    poly_trim(h);
    Poly g = poly_gcd(f, h, r);
    if (g.size() > 1 && g.size() < f.size()) {
      Poly q = poly_div_exact(f, g, r);
      ++shift;
      poly_roots_rec(g, r, shift, out);
      poly_roots_rec(poly_monic(std::move(q), r), r, shift, out);
      return;
    }
  }
}

std::vector<u64> poly_roots(const Poly& f, u64 r) {
  std::vector<u64> out;
  u64 shift = 0;
  poly_roots_rec(f, r, shift, out);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Dense linear algebra over F_r (dimensions <= class count <= 256).

using Mat = std::vector<std::vector<u64>>;  // row-major

std::vector<u64> mat_vec(const Mat& m, const std::vector<u64>& v, u64 r) {
  std::size_t n = m.size();
  std::vector<u64> w(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    u128 acc = 0;
    const std::vector<u64>& row = m[i];
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (row[j] == 0 || v[j] == 0) continue;
      acc += u128(row[j]) * v[j] % r;
    }
    w[i] = static_cast<u64>(acc % r);
  }
  return w;
}

// A subspace of F_r^k with its basis in reduced row-echelon form.
struct Subspace {
  std::vector<std::vector<u64>> basis;
  std::vector<std::size_t> pivots;  // strictly increasing pivot columns
  std::size_t dim() const { return basis.size(); }
};

Subspace make_subspace(std::vector<std::vector<u64>> vecs, u64 r) {
  Subspace s;
  std::size_t cols = vecs.empty() ? 0 : vecs[0].size();
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < vecs.size(); ++col) {
    std::size_t sel = row;
    while (sel < vecs.size() && vecs[sel][col] == 0) ++sel;
    if (sel == vecs.size()) continue;
    std::swap(vecs[row], vecs[sel]);
    u64 inv = invm(vecs[row][col], r);
    for (u64& x : vecs[row]) x = mulm(x, inv, r);
    for (std::size_t i = 0; i < vecs.size(); ++i) {
      if (i == row || vecs[i][col] == 0) continue;
      u64 f = vecs[i][col];
      for (std::size_t j = col; j < cols; ++j)
        vecs[i][j] = subm(vecs[i][j], mulm(f, vecs[row][j], r), r);
    }
    s.pivots.push_back(col);
    ++row;
  }
  vecs.resize(row);
  s.basis = std::move(vecs);
  return s;
}

// Coordinates of w in the subspace basis; throws if w is outside.
std::vector<u64> coords_in(const Subspace& s, std::vector<u64> w, u64 r) {
  std::vector<u64> c(s.dim(), 0);
  for (std::size_t i = 0; i < s.dim(); ++i) {
    u64 f = w[s.pivots[i]];
    c[i] = f;
    if (f == 0) continue;
    const std::vector<u64>& b = s.basis[i];
    for (std::size_t j = 0; j < w.size(); ++j)
      w[j] = subm(w[j], mulm(f, b[j], r), r);
  }
  for (u64 x : w)
    if (x != 0) throw std::logic_error("coords_in: vector not in subspace");
  return c;
}

// Matrix of the action of B on the subspace, in the subspace basis.
Mat restrict_to(const Mat& B, const Subspace& s, u64 r) {
  std::size_t d = s.dim();
  Mat R(d, std::vector<u64>(d, 0));
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<u64> c = coords_in(s, mat_vec(B, s.basis[j], r), r);
    for (std::size_t i = 0; i < d; ++i) R[i][j] = c[i];
  }
  return R;
}

// Minimal polynomial of v under R via the Krylov sequence (monic).
Poly krylov_minpoly(const Mat& R, std::vector<u64> v, u64 r) {
  std::size_t d = R.size();
  struct Row {
    std::vector<u64> vec;
    std::size_t pivot;
    std::vector<u64> rep;  // combination over the Krylov vectors
  };
  std::vector<Row> rows;
  for (std::size_t t = 0;; ++t) {
    if (t > d) throw std::logic_error("krylov_minpoly: no dependency found");
    std::vector<u64> red = v;
    std::vector<u64> rep(t + 1, 0);
    rep[t] = 1;
    for (const Row& row : rows) {
      u64 f = red[row.pivot];
      if (f == 0) continue;
      for (std::size_t j = 0; j < d; ++j)
        red[j] = subm(red[j], mulm(f, row.vec[j], r), r);
      for (std::size_t j = 0; j < row.rep.size(); ++j)
        rep[j] = subm(rep[j], mulm(f, row.rep[j], r), r);
    }
    std::size_t piv = 0;
    while (piv < d && red[piv] == 0) ++piv;
    if (piv == d) return rep;  // rep is monic of degree t
    u64 inv = invm(red[piv], r);
    for (u64& x : red) x = mulm(x, inv, r);
    for (u64& x : rep) x = mulm(x, inv, r);
    rows.push_back({std::move(red), piv, std::move(rep)});
    v = mat_vec(R, v, r);
  }
}

// Kernel basis of (R - lambda I).
std::vector<std::vector<u64>> eigen_kernel(Mat R, u64 lambda, u64 r) {
  std::size_t d = R.size();
  for (std::size_t i = 0; i < d; ++i) R[i][i] = subm(R[i][i], lambda, r);
  // Reduced row echelon form.
  std::vector<std::size_t> pivcol;
  std::size_t row = 0;
  for (std::size_t col = 0; col < d && row < d; ++col) {
    std::size_t sel = row;
    while (sel < d && R[sel][col] == 0) ++sel;
    if (sel == d) continue;
    std::swap(R[row], R[sel]);
    u64 inv = invm(R[row][col], r);
    for (u64& x : R[row]) x = mulm(x, inv, r);
    for (std::size_t i = 0; i < d; ++i) {
      if (i == row || R[i][col] == 0) continue;
      u64 f = R[i][col];
      for (std::size_t j = 0; j < d; ++j)
        R[i][j] = subm(R[i][j], mulm(f, R[row][j], r), r);
    }
    pivcol.push_back(col);
    ++row;
  }
  std::vector<bool> is_piv(d, false);
  for (std::size_t c : pivcol) is_piv[c] = true;
  std::vector<std::vector<u64>> kernel;
  for (std::size_t fc = 0; fc < d; ++fc) {
    if (is_piv[fc]) continue;
    std::vector<u64> v(d, 0);
    v[fc] = 1;
    for (std::size_t i = 0; i < pivcol.size(); ++i)
      v[pivcol[i]] = subm(0, R[i][fc], r);
    kernel.push_back(std::move(v));
  }
  return kernel;
}

// All eigenvalues with eigenspace bases; R must be diagonalizable over F_r
// (class-algebra restrictions are).  Deterministic.
std::vector<std::pair<u64, std::vector<std::vector<u64>>>> eigen_split(
    const Mat& R, u64 r) {
  std::size_t d = R.size();
  std::set<u64> roots;
  std::vector<std::pair<u64, std::vector<std::vector<u64>>>> out;
  std::size_t total = 0;
  for (std::size_t seed = 0; seed < d && total < d; ++seed) {
    std::vector<u64> e(d, 0);
    e[seed] = 1;
    Poly m = krylov_minpoly(R, std::move(e), r);
    for (u64 lam : poly_roots(m, r)) {
      if (!roots.insert(lam).second) continue;
      std::vector<std::vector<u64>> ker = eigen_kernel(R, lam, r);
      total += ker.size();
      out.emplace_back(lam, std::move(ker));
    }
  }
  if (total != d)
    throw std::logic_error("eigen_split: eigenspaces do not fill the space");
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

// ---------------------------------------------------------------------------
// Class-multiplication matrices.

constexpr std::size_t kChunk = 8192;

// Serial reference kernel: accumulate rows of the class matrix for the
// elements in chunk.  B[j*k + c] counts u in the chunk with u^{-1} g_c in
// class j.
void accumulate_chunk_serial(const std::vector<Pt>& chunk, std::size_t deg,
                             const std::vector<Pt>& reps_flat, std::size_t k,
                             const ConjClasses& cc, std::vector<u64>& B) {
  std::vector<Pt> uinv(deg), w(deg);
  for (std::size_t off = 0; off < chunk.size(); off += deg) {
    const Pt* u = chunk.data() + off;
    for (std::size_t p = 0; p < deg; ++p) uinv[u[p]] = static_cast<Pt>(p);
    for (std::size_t c = 0; c < k; ++c) {
      const Pt* gc = reps_flat.data() + c * deg;
      for (std::size_t p = 0; p < deg; ++p) w[p] = gc[uinv[p]];
      unsigned j = cc.class_of(w.data(), deg);
      ++B[std::size_t(j) * k + c];
    }
  }
}

// OpenMP kernel: same accumulation with per-thread local matrices.
void accumulate_chunk_parallel(const std::vector<Pt>& chunk, std::size_t deg,
                               const std::vector<Pt>& reps_flat, std::size_t k,
                               const ConjClasses& cc, std::vector<u64>& B,
                               int workers) {
  const std::size_t m = chunk.size() / deg;
#pragma omp parallel num_threads(workers)
  {
    std::vector<u64> local(k * k, 0);
    std::vector<Pt> uinv(deg), w(deg);
#pragma omp for schedule(static)
    for (long long idx = 0; idx < static_cast<long long>(m); ++idx) {
      const Pt* u = chunk.data() + std::size_t(idx) * deg;
      for (std::size_t p = 0; p < deg; ++p) uinv[u[p]] = static_cast<Pt>(p);
      for (std::size_t c = 0; c < k; ++c) {
        const Pt* gc = reps_flat.data() + c * deg;
        for (std::size_t p = 0; p < deg; ++p) w[p] = gc[uinv[p]];
        unsigned j = cc.class_of(w.data(), deg);
        ++local[std::size_t(j) * k + c];
      }
    }
#pragma omp critical
    for (std::size_t i = 0; i < B.size(); ++i) B[i] += local[i];
  }
}

// The full class matrix B_i over the integers (entries < |G|).
std::vector<u64> build_class_matrix(const GroupRef& G, const ConjClasses& cc,
                                    unsigned ci, int workers) {
  const std::size_t deg = G->degree();
  const std::size_t k = cc.count();
  std::vector<Pt> reps_flat;
  reps_flat.reserve(k * deg);
  for (std::size_t c = 0; c < k; ++c) {
    const std::vector<Pt>& img = cc.cls(c).rep.images();
    reps_flat.insert(reps_flat.end(), img.begin(), img.end());
  }
  std::vector<u64> B(k * k, 0);
  std::vector<Pt> chunk;
  chunk.reserve(kChunk * deg);
  auto flush = [&]() {
    if (chunk.empty()) return;
    if (workers > 1)
      accumulate_chunk_parallel(chunk, deg, reps_flat, k, cc, B, workers);
    else
      accumulate_chunk_serial(chunk, deg, reps_flat, k, cc, B);
    chunk.clear();
  };
  cc.for_each_element(ci, [&](const Pt* img) {
    chunk.insert(chunk.end(), img, img + deg);
    if (chunk.size() >= kChunk * deg) flush();
  });
  flush();
  return B;
}

// Reduce an exact cyclotomic value through zeta_e -> z (z a primitive e-th
// root mod r); used for the lift consistency check.
u64 cyclo_mod_r(const Cyclo& v, u64 e, u64 z, u64 r) {
  unsigned n = v.conductor();
  if (e % n != 0) throw std::logic_error("cyclo_mod_r: conductor outside Q(zeta_e)");
  u64 zn = powm(z, e / n, r);
  u64 acc = 0;
  for (const auto& [exp, q] : v.terms()) {
    mpz_class nm = q.get_num() % static_cast<unsigned long>(r);
    if (nm < 0) nm += static_cast<unsigned long>(r);
    mpz_class dn = q.get_den() % static_cast<unsigned long>(r);
    u64 c = mulm(nm.get_ui(), invm(dn.get_ui(), r), r);
    acc = addm(acc, mulm(c, powm(zn, exp, r), r), r);
  }
  return acc;
}

}  // namespace

// ---------------------------------------------------------------------------

CharTable CharTable::compute(const GroupRef& G, const Budget& budget,
                             int workers) {
  CharTable T;
  T.G_ = G;
  T.classes_ = std::make_shared<const ConjClasses>(ConjClasses::compute(G, budget));
  const ConjClasses& cc = *T.classes_;
  const std::size_t k = cc.count();
  const u64 order = G->order();
  const u64 e = cc.exponent();

  // Prime modulus: = 1 mod e so F_r contains the e-th roots of unity, and
  // large enough that every lifted integer (degrees <= sqrt|G|, eigenvalue
  // multiplicities <= degree) is recovered uniquely.
  const u64 r = dixon_prime(e, 2 * (isqrt_u64(order) + 1) * k);
  const u64 z = powm(primitive_root_mod(r), (r - 1) / e, r);  // e-th root

  // Split the column space F_r^k into the common eigenspaces of the
  // class-multiplication matrices, processed in increasing class-size order
  // (ties by class index) until every subspace is one-dimensional.
  std::vector<Subspace> subs;
  {
    std::vector<std::vector<u64>> id(k, std::vector<u64>(k, 0));
    for (std::size_t i = 0; i < k; ++i) id[i][i] = 1;
    subs.push_back(make_subspace(std::move(id), r));
  }
  std::vector<unsigned> by_size(k);
  std::iota(by_size.begin(), by_size.end(), 0u);
  std::sort(by_size.begin(), by_size.end(), [&](unsigned a, unsigned b) {
    if (cc.cls(a).size != cc.cls(b).size) return cc.cls(a).size < cc.cls(b).size;
    return a < b;
  });
  auto all_split = [&]() {
    return std::all_of(subs.begin(), subs.end(),
                       [](const Subspace& s) { return s.dim() == 1; });
  };
  for (unsigned ci : by_size) {
    if (cc.cls(ci).element_order == 1) continue;  // identity acts as I
    if (all_split()) break;
    std::vector<u64> Braw = build_class_matrix(G, cc, ci, workers);
    Mat B(k, std::vector<u64>(k));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) B[i][j] = Braw[i * k + j] % r;
    std::vector<Subspace> next;
    for (Subspace& s : subs) {
      if (s.dim() == 1) {
        next.push_back(std::move(s));
        continue;
      }
      Mat R = restrict_to(B, s, r);
      auto parts = eigen_split(R, r);
      if (parts.size() == 1) {
        next.push_back(std::move(s));
        continue;
      }
      for (auto& [lam, kervecs] : parts) {
        std::vector<std::vector<u64>> vecs;
        vecs.reserve(kervecs.size());
        for (const std::vector<u64>& c : kervecs) {
          std::vector<u64> u(k, 0);
          for (std::size_t i = 0; i < c.size(); ++i) {
            if (c[i] == 0) continue;
            for (std::size_t j = 0; j < k; ++j)
              u[j] = addm(u[j], mulm(c[i], s.basis[i][j], r), r);
          }
          vecs.push_back(std::move(u));
        }
        next.push_back(make_subspace(std::move(vecs), r));
      }
    }
    subs = std::move(next);
  }
  if (!all_split())
    throw std::logic_error("character table: eigenspace splitting incomplete");

  // Central characters, degrees, and values mod r.
  std::vector<u64> inv_h(k);
  for (std::size_t j = 0; j < k; ++j) inv_h[j] = invm(cc.cls(j).size % r, r);
  std::vector<std::vector<u64>> X(k, std::vector<u64>(k));  // values mod r
  std::vector<u64> degs(k);
  for (std::size_t row = 0; row < k; ++row) {
    std::vector<u64> w = subs[row].basis[0];
    if (w[0] == 0)
      throw std::logic_error("character table: eigenvector vanishes at 1");
    u64 norm = invm(w[0], r);
    for (u64& x : w) x = mulm(x, norm, r);
    u64 S = 0;
    for (std::size_t j = 0; j < k; ++j)
      S = addm(S, mulm(mulm(w[j], w[cc.inverse_class(j)], r), inv_h[j], r), r);
    u64 d2 = mulm(order % r, invm(S, r), r);
    u64 d = sqrt_mod(d2, r);
    if (d > r - d) d = r - d;
    if (d == 0 || d > isqrt_u64(order))
      throw std::logic_error("character table: implausible degree recovered");
    degs[row] = d;
    for (std::size_t j = 0; j < k; ++j)
      X[row][j] = mulm(d % r, mulm(w[j], inv_h[j], r), r);
  }
  u64 sum_sq = 0;
  for (u64 d : degs) sum_sq += d * d;
  if (sum_sq != order)
    throw std::logic_error("character table: degree squares do not sum to |G|");

  // Lift values: chi(g) = sum_s m_s zeta_o^s with m_s the multiplicity of
  // eigenvalue zeta_o^s, recovered from the values at powers of g.
  std::vector<std::vector<Cyclo>> values(k, std::vector<Cyclo>(k));
  for (std::size_t j = 0; j < k; ++j) {
    const u64 o = cc.cls(j).element_order;
    std::vector<unsigned> pc(o);
    for (u64 t = 0; t < o; ++t) pc[t] = cc.power_class(static_cast<unsigned>(j), t);
    std::vector<u64> zo_pow(o);
    u64 zo = powm(z, e / o, r);
    zo_pow[0] = 1;
    for (u64 m = 1; m < o; ++m) zo_pow[m] = mulm(zo_pow[m - 1], zo, r);
    const u64 inv_o = invm(o % r, r);
    for (std::size_t row = 0; row < k; ++row) {
      std::vector<std::pair<std::uint64_t, mpq_class>> powers;
      u64 total = 0;
      for (u64 s = 0; s < o; ++s) {
        u64 acc = 0;
        for (u64 t = 0; t < o; ++t) {
          u64 zexp = (o - (s * t) % o) % o;
          acc = addm(acc, mulm(X[row][pc[t]], zo_pow[zexp], r), r);
        }
        u64 ms = mulm(acc, inv_o, r);
        if (ms > degs[row])
          throw std::logic_error("character table: multiplicity out of range");
        total += ms;
        if (ms != 0)
          powers.emplace_back(s, mpq_class(static_cast<unsigned long>(ms)));
      }
      if (total != degs[row])
        throw std::logic_error("character table: multiplicities do not sum to degree");
      values[row][j] = Cyclo::from_zeta_powers(static_cast<unsigned>(o), powers);
    }
  }

  // Lift consistency: reducing back through zeta_e -> z must reproduce X.
  for (std::size_t row = 0; row < k; ++row)
    for (std::size_t j = 0; j < k; ++j)
      if (cyclo_mod_r(values[row][j], e, z, r) != X[row][j])
        throw std::logic_error("character table: lift inconsistent with mod-r table");

  // Stable row order: by (degree, lexicographic value tuple).
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    if (degs[a] != degs[b]) return degs[a] < degs[b];
    for (std::size_t j = 0; j < k; ++j)
      if (int c = Cyclo::compare(values[a][j], values[b][j]); c != 0)
        return c < 0;
    return false;
  });
  T.degrees_.resize(k);
  T.values_.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    T.degrees_[i] = degs[perm[i]];
    T.values_[i] = std::move(values[perm[i]]);
  }

  if (!T.row_orthogonality_check() || !T.column_orthogonality_check())
    throw std::logic_error("character table: orthogonality verification failed");
  return T;
}

const Cyclo& CharTable::evaluate(std::size_t row, const Perm& x) const {
  if (!G_->contains(x))
    throw std::invalid_argument("evaluate: element not in the group");
  return values_[row][classes_->class_of(x)];
}

std::vector<std::size_t> CharTable::nonvanishing_rows(const Perm& x) const {
  if (!G_->contains(x))
    throw std::invalid_argument("nonvanishing_rows: element not in the group");
  unsigned c = classes_->class_of(x);
  std::vector<std::size_t> out;
  for (std::size_t row = 0; row < rows(); ++row)
    if (!values_[row][c].is_zero()) out.push_back(row);
  return out;
}

std::uint64_t CharTable::degree_ell_part(std::size_t row, std::uint64_t ell) const {
  if (!GF::is_prime(ell))
    throw std::invalid_argument("degree_ell_part: ell not prime");
  std::uint64_t d = degrees_[row], part = 1;
  while (d % ell == 0) d /= ell, part *= ell;
  return part;
}

bool CharTable::row_orthogonality_check() const {
  const std::size_t k = rows();
  const u64 order = G_->order();
  std::vector<std::vector<Cyclo>> conj(k, std::vector<Cyclo>(k));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t j = 0; j < k; ++j) conj[a][j] = values_[a][j].conj();
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a; b < k; ++b) {
      Cyclo sum;
      for (std::size_t j = 0; j < k; ++j)
        sum += Cyclo(mpq_class(static_cast<unsigned long>(classes_->cls(j).size))) *
               values_[a][j] * conj[b][j];
      Cyclo want = a == b ? Cyclo(mpq_class(static_cast<unsigned long>(order)))
                          : Cyclo();
      if (sum != want) return false;
    }
  return true;
}

bool CharTable::column_orthogonality_check() const {
  const std::size_t k = rows();
  const u64 order = G_->order();
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t c2 = c; c2 < k; ++c2) {
      Cyclo sum;
      for (std::size_t row = 0; row < k; ++row)
        sum += values_[row][c] * values_[row][c2].conj();
      Cyclo want = c == c2 ? Cyclo(mpq_class(static_cast<unsigned long>(
                                 order / classes_->cls(c).size)))
                           : Cyclo();
      if (sum != want) return false;
    }
  return true;
}

ClassFunction CharTable::row_function(std::size_t row) const {
  return ClassFunction{classes_, values_[row]};
}

std::string CharTable::to_json_text() const {
  nlohmann::ordered_json j;
  j["order"] = G_->order();
  j["degree"] = G_->degree();
  j["classCount"] = rows();
  nlohmann::ordered_json cls = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < rows(); ++i) {
    const ConjClass& c = classes_->cls(i);
    nlohmann::ordered_json e;
    e["size"] = c.size;
    e["elementOrder"] = c.element_order;
    e["rep"] = c.rep.images();
    cls.push_back(std::move(e));
  }
  j["classes"] = std::move(cls);
  nlohmann::ordered_json rws = nlohmann::ordered_json::array();
  for (std::size_t row = 0; row < rows(); ++row) {
    nlohmann::ordered_json e;
    e["degree"] = degrees_[row];
    nlohmann::ordered_json vals = nlohmann::ordered_json::array();
    for (std::size_t c = 0; c < rows(); ++c)
      vals.push_back(nlohmann::ordered_json::parse(values_[row][c].to_json_text()));
    e["values"] = std::move(vals);
    rws.push_back(std::move(e));
  }
  j["rows"] = std::move(rws);
  return j.dump(2);
}

std::string CharTable::to_csv_text() const {
  std::ostringstream os;
  os << "degree";
  for (std::size_t c = 0; c < rows(); ++c)
    os << ",o" << classes_->cls(c).element_order << "_s" << classes_->cls(c).size;
  os << "\n";
  for (std::size_t row = 0; row < rows(); ++row) {
    os << degrees_[row];
    for (std::size_t c = 0; c < rows(); ++c)
      os << "," << values_[row][c].to_string();
    os << "\n";
  }
  return os.str();
}

Cyclo inner_product(const ClassFunction& a, const ClassFunction& b) {
  if (a.classes != b.classes)
    throw std::invalid_argument("inner_product: class functions on different groups");
  const ConjClasses& cc = *a.classes;
  Cyclo sum;
  for (std::size_t j = 0; j < cc.count(); ++j)
    sum += Cyclo(mpq_class(static_cast<unsigned long>(cc.cls(j).size))) *
           a.values[j] * b.values[j].conj();
  mpq_class inv(1, static_cast<unsigned long>(cc.group()->order()));
  inv.canonicalize();
  return sum * Cyclo(inv);
}

Cyclo induce_value(const GroupRef& L, const ClassFunction& theta,
                   const GroupRef& N, const Perm& x) {
  for (const Perm& g : L->generators())
    if (!N->contains(g))
      throw std::invalid_argument("induce_value: L is not a subgroup of N");
  if (!N->contains(x))
    throw std::invalid_argument("induce_value: element not in N");
  if (N->order() > 2'000'000)
    throw BudgetExceeded("induce_value: group too large for coset enumeration");
  std::vector<Perm> Lelems = L->elements();
  struct VecHash {
    std::size_t operator()(const std::vector<Pt>& v) const {
      return static_cast<std::size_t>(hash_images(v.data(), v.size(), 0x5bd1e995u));
    }
  };
  std::unordered_set<std::vector<Pt>, VecHash> covered;
  covered.reserve(static_cast<std::size_t>(N->order()));
  Cyclo sum;
  N->enumerate([&](const Perm& g) {
    if (covered.count(g.images())) return true;
    for (const Perm& l : Lelems) covered.insert((g * l).images());
    Perm y = x.conjugated_by(g);
    if (L->contains(y)) sum += theta.eval(y);
    return true;
  });
  return sum;
}

ClassFunction restrict_row(const CharTable& table, std::size_t row,
                           const std::shared_ptr<const ConjClasses>& L_classes) {
  ClassFunction f;
  f.classes = L_classes;
  f.values.reserve(L_classes->count());
  for (std::size_t i = 0; i < L_classes->count(); ++i)
    f.values.push_back(table.evaluate(row, L_classes->cls(i).rep));
  return f;
}

}  // namespace picky
