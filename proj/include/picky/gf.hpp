#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace picky {

// GF(q), q = p^f, with elements encoded as integers in [0, q): the element
// sum c_i * x^i (c_i in Z/p) is encoded as sum c_i * p^i.  The modulus is
// x^f - (lexicographically least primitive polynomial tail), chosen so that
// x itself generates the multiplicative group; this makes log/exp tables
// available and keeps point numbering reproducible across runs.
class GF {
public:
  explicit GF(unsigned q);

  unsigned q() const { return q_; }
  unsigned p() const { return p_; }
  unsigned f() const { return f_; }
  // Integer encoding of the modulus polynomial (including the leading x^f term).
  std::uint64_t modulus_encoding() const { return modulus_; }

  unsigned add(unsigned a, unsigned b) const;
  unsigned sub(unsigned a, unsigned b) const;
  unsigned neg(unsigned a) const;
  unsigned mul(unsigned a, unsigned b) const;
  unsigned inv(unsigned a) const;
  unsigned div(unsigned a, unsigned b) const { return mul(a, inv(b)); }
  unsigned pow(unsigned a, std::uint64_t e) const;
  // Frobenius x -> x^p iterated k times.
  unsigned frobenius(unsigned a, unsigned k = 1) const;

  // Generator of the multiplicative group (the class of x for f > 1).
  unsigned primitive_element() const { return gen_; }
  // Discrete log base the primitive element; a must be nonzero.
  unsigned log(unsigned a) const;

  static bool is_prime(std::uint64_t n);
  // Returns (p, f) with q = p^f, or throws if q is not a prime power >= 2.
  static std::pair<unsigned, unsigned> factor_prime_power(unsigned q);

private:
  unsigned q_, p_, f_;
  std::uint64_t modulus_ = 0;
  unsigned gen_ = 0;
  std::vector<unsigned> exp_;  // exp_[k] = gen^k, k in [0, q-1)
  std::vector<unsigned> log_;  // log_[a] for a in [1, q)

  unsigned poly_mul_mod(unsigned a, unsigned b) const;  // used during setup
  std::uint64_t mod_tail_ = 0;  // modulus minus leading term, as encoding
};

}  // namespace picky
