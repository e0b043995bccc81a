#include "picky/cyclo.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <json.hpp>

#include "picky/gf.hpp"

namespace picky {

namespace {

// One prime-power block p^a of a conductor n.
struct PrimeBlock {
  unsigned p;     // prime
  unsigned pa;    // p^a
  unsigned pa1;   // p^{a-1}
  unsigned phi;   // (p-1) * p^{a-1}, the basis range for this block
  unsigned m;     // n / p^a
  unsigned minv;  // m^{-1} mod p^a
};

unsigned inv_mod(unsigned a, unsigned m) {
  if (m == 1) return 0;
  long long t = 0, nt = 1, r = m, nr = a % m;
  while (nr != 0) {
    long long q = r / nr;
    t = std::exchange(nt, t - q * nt);
    r = std::exchange(nr, r - q * nr);
  }
  if (r != 1) throw std::logic_error("inv_mod: arguments not coprime");
  return static_cast<unsigned>(t < 0 ? t + m : t);
}

std::vector<PrimeBlock> factor_blocks(unsigned n) {
  std::vector<PrimeBlock> blocks;
  unsigned rest = n;
  for (unsigned p = 2; static_cast<std::uint64_t>(p) * p <= rest; p += (p == 2 ? 1 : 2)) {
    if (rest % p != 0) continue;
    unsigned pa = 1, pa1 = 1;
    while (rest % p == 0) {
      rest /= p;
      pa1 = std::exchange(pa, pa * p);
    }
    blocks.push_back({p, pa, pa1, (p - 1) * pa1, n / pa, 0});
  }
  if (rest > 1) blocks.push_back({rest, rest, 1, rest - 1, n / rest, 0});
  for (PrimeBlock& b : blocks) b.minv = inv_mod(b.m % b.pa, b.pa);
  return blocks;
}

// Adds coeff * zeta_n^j to out, expanded over the basis of Q(zeta_n).
// For each prime block with out-of-range component i_p >= phi(p^a), the
// relation 0 = sum_{u=0}^{p-1} zeta_{p^a}^{u p^{a-1} + v} rewrites the term
// as -(sum over u < p-1); blocks expand independently (cartesian product).
void reduce_term(unsigned n, const std::vector<PrimeBlock>& blocks, unsigned j,
                 const mpq_class& coeff, std::map<unsigned, mpq_class>& out) {
  if (n == 1) {
    out[0] += coeff;
    return;
  }
  // Per block: the replacement component values, and whether a sign flips.
  std::vector<std::vector<unsigned>> options(blocks.size());
  bool negate = false;
  for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
    const PrimeBlock& b = blocks[bi];
    unsigned ip = static_cast<unsigned>(
        (static_cast<std::uint64_t>(j) * b.minv) % b.pa);
    if (ip < b.phi) {
      options[bi] = {ip};
    } else {
      unsigned v = ip - b.phi;
      options[bi].reserve(b.p - 1);
      for (unsigned u = 0; u + 1 < b.p; ++u) options[bi].push_back(u * b.pa1 + v);
      negate = !negate;
    }
  }
  mpq_class c = negate ? mpq_class(-coeff) : coeff;
  std::vector<std::size_t> idx(blocks.size(), 0);
  for (;;) {
    std::uint64_t e = 0;
    for (std::size_t bi = 0; bi < blocks.size(); ++bi)
      e += static_cast<std::uint64_t>(options[bi][idx[bi]]) * blocks[bi].m;
    out[static_cast<unsigned>(e % n)] += c;
    std::size_t bi = 0;
    while (bi < blocks.size() && ++idx[bi] == options[bi].size())
      idx[bi++] = 0;
    if (bi == blocks.size()) break;
  }
}

void drop_zeros(std::map<unsigned, mpq_class>& terms) {
  for (auto it = terms.begin(); it != terms.end();)
    it = (it->second == 0) ? terms.erase(it) : std::next(it);
}

std::vector<unsigned> units_mod(unsigned m) {
  if (m == 1) return {1};
  std::vector<unsigned> units;
  for (unsigned k = 1; k < m; ++k)
    if (std::gcd(k, m) == 1) units.push_back(k);
  return units;
}

}  // namespace

Cyclo::Cyclo(long v) {
  if (v != 0) terms_.emplace(0u, mpq_class(v));
}

Cyclo::Cyclo(const mpq_class& v) {
  mpq_class c = v;
  c.canonicalize();
  if (c != 0) terms_.emplace(0u, std::move(c));
}

Cyclo Cyclo::zeta(unsigned n, std::uint64_t k) {
  if (n == 0) throw std::invalid_argument("zeta: order must be positive");
  Cyclo r;
  r.n_ = n;
  reduce_term(n, factor_blocks(n), static_cast<unsigned>(k % n), mpq_class(1),
              r.terms_);
  r.canonicalize();
  return r;
}

Cyclo Cyclo::from_zeta_powers(
    unsigned n, const std::vector<std::pair<std::uint64_t, mpq_class>>& powers) {
  if (n == 0) throw std::invalid_argument("from_zeta_powers: order must be positive");
  std::vector<PrimeBlock> blocks = factor_blocks(n);
  Cyclo r;
  r.n_ = n;
  for (const auto& [k, c] : powers)
    reduce_term(n, blocks, static_cast<unsigned>(k % n), c, r.terms_);
  r.canonicalize();
  return r;
}

bool Cyclo::is_rational_integer() const {
  if (n_ != 1) return false;
  if (terms_.empty()) return true;
  return terms_.begin()->second.get_den() == 1;
}

mpq_class Cyclo::rational_value() const {
  if (n_ != 1) throw std::logic_error("rational_value: value is irrational");
  return terms_.empty() ? mpq_class(0) : terms_.begin()->second;
}

void Cyclo::canonicalize() {
  drop_zeros(terms_);
  if (terms_.empty()) {
    n_ = 1;
    return;
  }
  // Descend to the minimal conductor: a prime p | n can be removed from one
  // exponent of n exactly when p divides every stored basis exponent (this is
  // equivalent to the p-component condition in both the a_p >= 2 and the
  // a_p = 1 case), and then j -> j/p re-indexes onto the basis of n/p.
  bool changed = true;
  while (changed && n_ > 1) {
    changed = false;
    unsigned rest = n_;
    for (unsigned p = 2; rest > 1; p += (p == 2 ? 1 : 2)) {
      if (static_cast<std::uint64_t>(p) * p > rest) p = rest;
      if (rest % p != 0) continue;
      while (rest % p == 0) rest /= p;
      bool all = true;
      for (const auto& [e, c] : terms_)
        if (e % p != 0) {
          all = false;
          break;
        }
      if (!all) continue;
      std::map<unsigned, mpq_class> down;
      for (auto& [e, c] : terms_) down.emplace(e / p, std::move(c));
      terms_ = std::move(down);
      n_ /= p;
      changed = true;
      break;
    }
  }
}

Cyclo Cyclo::operator-() const {
  Cyclo r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

Cyclo Cyclo::operator+(const Cyclo& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  unsigned n = std::lcm(n_, o.n_);
  Cyclo r;
  r.n_ = n;
  // Lifting to a larger conductor maps basis exponents to basis exponents
  // (each p-component scales by the p-part of n / n_old), so no reduction
  // is needed here.
  for (const auto& [e, c] : terms_)
    r.terms_[static_cast<unsigned>(static_cast<std::uint64_t>(e) * (n / n_))] += c;
  for (const auto& [e, c] : o.terms_)
    r.terms_[static_cast<unsigned>(static_cast<std::uint64_t>(e) * (n / o.n_))] += c;
  r.canonicalize();
  return r;
}

Cyclo Cyclo::operator-(const Cyclo& o) const { return *this + (-o); }

Cyclo Cyclo::operator*(const Cyclo& o) const {
  if (is_zero() || o.is_zero()) return Cyclo();
  unsigned n = std::lcm(n_, o.n_);
  std::vector<PrimeBlock> blocks = factor_blocks(n);
  Cyclo r;
  r.n_ = n;
  std::uint64_t la = n / n_, lb = n / o.n_;
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_)
      reduce_term(n, blocks, static_cast<unsigned>((ea * la + eb * lb) % n),
                  ca * cb, r.terms_);
  r.canonicalize();
  return r;
}

Cyclo Cyclo::galois(std::uint64_t k) const {
  if (n_ == 1) return *this;
  unsigned kk = static_cast<unsigned>(k % n_);
  if (std::gcd(kk, n_) != 1)
    throw std::invalid_argument("galois: exponent not coprime to conductor");
  std::vector<PrimeBlock> blocks = factor_blocks(n_);
  Cyclo r;
  r.n_ = n_;
  for (const auto& [e, c] : terms_)
    reduce_term(n_, blocks,
                static_cast<unsigned>(static_cast<std::uint64_t>(e) * kk % n_),
                c, r.terms_);
  r.canonicalize();
  return r;
}

Cyclo Cyclo::conj() const { return n_ == 1 ? *this : galois(n_ - 1); }

int Cyclo::compare(const Cyclo& a, const Cyclo& b) {
  if (a.n_ != b.n_) return a.n_ < b.n_ ? -1 : 1;
  auto ia = a.terms_.begin(), ib = b.terms_.begin();
  while (ia != a.terms_.end() && ib != b.terms_.end()) {
    if (ia->first != ib->first) return ia->first < ib->first ? -1 : 1;
    if (int c = cmp(ia->second, ib->second); c != 0) return c < 0 ? -1 : 1;
    ++ia, ++ib;
  }
  if (ia != a.terms_.end()) return 1;
  if (ib != b.terms_.end()) return -1;
  return 0;
}

std::string Cyclo::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    mpq_class a = abs(c);
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (e == 0) {
      os << a.get_str();
    } else {
      if (a != 1) os << a.get_str() << "*";
      os << "z" << n_;
      if (e != 1) os << "^" << e;
    }
  }
  return os.str();
}

std::string Cyclo::to_json_text() const {
  nlohmann::ordered_json j;
  j["n"] = n_;
  nlohmann::ordered_json c = nlohmann::ordered_json::array();
  for (const auto& [e, q] : terms_)
    c.push_back({e, q.get_num().get_str(), q.get_den().get_str()});
  j["c"] = std::move(c);
  return j.dump();
}

Cyclo Cyclo::from_json_text(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  unsigned n = j.at("n").get<unsigned>();
  if (n == 0) throw std::invalid_argument("cyclo: conductor must be positive");
  std::vector<PrimeBlock> blocks = factor_blocks(n);
  Cyclo r;
  r.n_ = n;
  auto parse_int = [](const nlohmann::json& v) -> mpz_class {
    if (v.is_string()) return mpz_class(v.get<std::string>());
    if (v.is_number_integer()) return mpz_class(std::to_string(v.get<long long>()));
    throw std::invalid_argument("cyclo: coefficient must be string or integer");
  };
  for (const auto& t : j.at("c")) {
    if (!t.is_array() || t.size() != 3)
      throw std::invalid_argument("cyclo: term must be [exponent, num, den]");
    std::uint64_t e = t[0].get<std::uint64_t>();
    mpz_class num = parse_int(t[1]), den = parse_int(t[2]);
    if (den == 0) throw std::invalid_argument("cyclo: zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    reduce_term(n, blocks, static_cast<unsigned>(e % n), q, r.terms_);
  }
  r.canonicalize();
  return r;
}

std::string FieldDescriptor::to_string() const {
  std::ostringstream os;
  os << "Q(zeta_" << conductor << ")^{";
  for (std::size_t i = 0; i < stabilizer.size(); ++i)
    os << (i ? "," : "") << stabilizer[i];
  os << "}";
  return os.str();
}

FieldDescriptor field_of_values(const Cyclo& a) {
  FieldDescriptor d;
  d.conductor = a.conductor();
  for (unsigned k : units_mod(d.conductor))
    if (k == 1 || a.galois(k) == a) d.stabilizer.push_back(k);
  return d;
}

mpq_class norm_to_Q(const Cyclo& a) {
  if (a.is_rational()) return a.rational_value();
  unsigned m = a.conductor();
  std::vector<unsigned> units = units_mod(m);
  std::vector<unsigned> stab;
  for (unsigned k : units)
    if (k == 1 || a.galois(k) == a) stab.push_back(k);
  // One conjugate per coset of the stabilizer in (Z/mZ)^*.
  std::vector<bool> covered(m, false);
  Cyclo prod(1L);
  for (unsigned u : units) {
    if (covered[u]) continue;
    for (unsigned h : stab)
      covered[static_cast<std::uint64_t>(u) * h % m] = true;
    prod *= a.galois(u);
  }
  if (!prod.is_rational())
    throw std::logic_error("norm_to_Q: product of conjugates is irrational");
  return prod.rational_value();
}

EllData ell_data(const Cyclo& a, std::uint64_t ell) {
  if (a.is_zero()) throw std::invalid_argument("ell_data: value is zero");
  if (!GF::is_prime(ell)) throw std::invalid_argument("ell_data: ell not prime");
  mpz_class l(static_cast<unsigned long>(ell));
  mpq_class norm = norm_to_Q(a);
  mpz_class tmp;
  std::int64_t vnum = static_cast<std::int64_t>(
      mpz_remove(tmp.get_mpz_t(), norm.get_num().get_mpz_t(), l.get_mpz_t()));
  std::int64_t vden = static_cast<std::int64_t>(
      mpz_remove(tmp.get_mpz_t(), norm.get_den().get_mpz_t(), l.get_mpz_t()));
  EllData d;
  d.norm_valuation = vnum - vden;
  if (a.is_rational_integer()) {
    mpz_class num = a.rational_value().get_num();
    std::int64_t v = static_cast<std::int64_t>(
        mpz_remove(tmp.get_mpz_t(), num.get_mpz_t(), l.get_mpz_t()));
    std::uint64_t part = 1;
    for (std::int64_t i = 0; i < v; ++i) {
      if (part > std::numeric_limits<std::uint64_t>::max() / ell)
        throw std::overflow_error("ell_data: ell-part exceeds 64 bits");
      part *= ell;
    }
    d.rational_ell_part = part;
  }
  return d;
}

bool up_to_sign_equal(const Cyclo& a, const Cyclo& b) {
  return a == b || a == -b;
}

Cyclo sign_class(const Cyclo& a) {
  Cyclo neg = -a;
  return Cyclo::compare(a, neg) >= 0 ? a : neg;
}

}  // namespace picky
