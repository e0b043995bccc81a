#include "picky/gf.hpp"

#include <stdexcept>

namespace picky {

bool GF::is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::pair<unsigned, unsigned> GF::factor_prime_power(unsigned q) {
  if (q < 2) throw std::invalid_argument("field size must be >= 2");
  unsigned p = 0;
  for (unsigned d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) return {q, 1};
  unsigned f = 0, m = q;
  while (m % p == 0) {
    m /= p;
    ++f;
  }
  if (m != 1) throw std::invalid_argument("field size is not a prime power");
  return {p, f};
}

namespace {

std::vector<unsigned> prime_divisors(unsigned n) {
  std::vector<unsigned> ps;
  for (unsigned d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      ps.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

}  // namespace

unsigned GF::poly_mul_mod(unsigned a, unsigned b) const {
  // Schoolbook product of the digit vectors, reduced by x^f = -tail.
  unsigned prod[24] = {0};
  unsigned ad[12], bd[12];
  unsigned ta = a, tb = b;
  for (unsigned i = 0; i < f_; ++i) {
    ad[i] = ta % p_;
    ta /= p_;
    bd[i] = tb % p_;
    tb /= p_;
  }
  for (unsigned i = 0; i < f_; ++i) {
    if (ad[i] == 0) continue;
    for (unsigned j = 0; j < f_; ++j) prod[i + j] = (prod[i + j] + ad[i] * bd[j]) % p_;
  }
  unsigned tail[12];
  std::uint64_t t = mod_tail_;
  for (unsigned i = 0; i < f_; ++i) {
    tail[i] = static_cast<unsigned>(t % p_);
    t /= p_;
  }
  for (unsigned i = 2 * f_ - 2; i >= f_ && i < 24; --i) {
    unsigned c = prod[i];
    if (c == 0) continue;
    prod[i] = 0;
    for (unsigned j = 0; j < f_; ++j)
      prod[i - f_ + j] = (prod[i - f_ + j] + c * (p_ - tail[j])) % p_;
  }
  unsigned enc = 0;
  for (unsigned i = f_; i-- > 0;) enc = enc * p_ + prod[i];
  return enc;
}

GF::GF(unsigned q) : q_(q) {
  if (q > 4096) throw std::invalid_argument("field size beyond supported bound 4096");
  auto [p, f] = factor_prime_power(q);
  p_ = p;
  f_ = f;
  auto ell = prime_divisors(q - 1);

  if (f_ == 1) {
    // Z/p with the least primitive root as generator.
    for (unsigned g = 1; g < p_; ++g) {
      bool prim = true;
      std::uint64_t acc;
      auto powmod = [&](std::uint64_t b, std::uint64_t e) {
        std::uint64_t r = 1;
        b %= p_;
        while (e) {
          if (e & 1) r = r * b % p_;
          b = b * b % p_;
          e >>= 1;
        }
        return r;
      };
      acc = powmod(g, q_ - 1);
      if (acc != 1) continue;
      for (unsigned l : ell)
        if (powmod(g, (q_ - 1) / l) == 1) {
          prim = false;
          break;
        }
      if (prim) {
        gen_ = g;
        break;
      }
    }
    modulus_ = 0;
  } else {
    // Least primitive polynomial x^f + tail, by integer encoding of the tail.
    std::uint64_t pf = 1;
    for (unsigned i = 0; i < f_; ++i) pf *= p_;
    bool found = false;
    for (std::uint64_t tail = 0; tail < pf && !found; ++tail) {
      mod_tail_ = tail;
      auto powx = [&](std::uint64_t e) {
        unsigned r = 1, b = p_;  // b = encoding of x
        while (e) {
          if (e & 1) r = poly_mul_mod(r, b);
          b = poly_mul_mod(b, b);
          e >>= 1;
        }
        return r;
      };
      if (powx(q_ - 1) != 1) continue;
      bool prim = true;
      for (unsigned l : ell)
        if (powx((q_ - 1) / l) == 1) {
          prim = false;
          break;
        }
      if (prim) {
        modulus_ = pf + tail;
        gen_ = p_;  // the class of x
        found = true;
      }
    }
    if (!found) throw std::logic_error("no primitive polynomial found");
    mod_tail_ = modulus_ - pf;
  }

  exp_.resize(q_ - 1);
  log_.assign(q_, 0);
  unsigned cur = 1;
  for (unsigned k = 0; k < q_ - 1; ++k) {
    exp_[k] = cur;
    log_[cur] = k;
    cur = (f_ == 1) ? (cur * gen_ % p_) : poly_mul_mod(cur, gen_);
  }
  if (cur != 1) throw std::logic_error("multiplicative group order mismatch");
}

unsigned GF::add(unsigned a, unsigned b) const {
  if (f_ == 1) return (a + b) % p_;
  unsigned enc = 0, mul = 1;
  for (unsigned i = 0; i < f_; ++i) {
    enc += (a % p_ + b % p_) % p_ * mul;
    a /= p_;
    b /= p_;
    mul *= p_;
  }
  return enc;
}

unsigned GF::neg(unsigned a) const {
  if (f_ == 1) return (p_ - a) % p_;
  unsigned enc = 0, mul = 1;
  for (unsigned i = 0; i < f_; ++i) {
    enc += (p_ - a % p_) % p_ * mul;
    a /= p_;
    mul *= p_;
  }
  return enc;
}

unsigned GF::sub(unsigned a, unsigned b) const { return add(a, neg(b)); }

unsigned GF::mul(unsigned a, unsigned b) const {
  if (a == 0 || b == 0) return 0;
  return exp_[(log_[a] + log_[b]) % (q_ - 1)];
}

unsigned GF::inv(unsigned a) const {
  if (a == 0) throw std::domain_error("division by zero in GF");
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

unsigned GF::pow(unsigned a, std::uint64_t e) const {
  if (a == 0) return e == 0 ? 1 : 0;
  return exp_[static_cast<unsigned>(static_cast<std::uint64_t>(log_[a]) % (q_ - 1) * (e % (q_ - 1)) % (q_ - 1))];
}

unsigned GF::frobenius(unsigned a, unsigned k) const {
  std::uint64_t e = 1;
  for (unsigned i = 0; i < k; ++i) e = e * p_ % (q_ - 1 == 0 ? 1 : (q_ - 1));
  return pow(a, e);
}

unsigned GF::log(unsigned a) const {
  if (a == 0) throw std::domain_error("log of zero in GF");
  return log_[a];
}

}  // namespace picky
