#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace picky {

// An element of the cyclotomic field Q(zeta_n), stored exactly.
//
// Representation: a conductor n and a sparse map from basis exponents to
// nonzero rational coefficients.  The basis of Q(zeta_n) over Q is the
// tensor-product basis: writing n = prod p^{a_p}, an exponent j is a basis
// exponent iff for every p | n its component i_p = j * (n/p^{a_p})^{-1}
// (mod p^{a_p}) satisfies i_p < phi(p^{a_p}).  This yields a unique reduced
// form, so equality of values is equality of representations.
//
// The stored conductor is always minimal: after every operation the value is
// pushed down into the smallest cyclotomic field containing it (rationals
// have conductor 1).  Values are immutable in spirit: all operations return
// new values, so instances are safe to share across threads.
class Cyclo {
public:
  // Zero.
  Cyclo() = default;
  // A rational value (conductor 1).
  Cyclo(long v);
  Cyclo(const mpq_class& v);
  // The root of unity zeta_n^k.
  static Cyclo zeta(unsigned n, std::uint64_t k = 1);
  // sum of c * zeta_n^k over the given (k, c) pairs, reduced in one pass;
  // equivalent to (but much faster than) accumulating with operator+.
  static Cyclo from_zeta_powers(
      unsigned n, const std::vector<std::pair<std::uint64_t, mpq_class>>& powers);

  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const { return n_ == 1; }
  // True iff the value is a rational integer.
  bool is_rational_integer() const;
  // The rational value; throws std::logic_error unless is_rational().
  mpq_class rational_value() const;

  unsigned conductor() const { return n_; }
  // Basis exponent -> coefficient, canonical form.
  const std::map<unsigned, mpq_class>& terms() const { return terms_; }

  Cyclo operator-() const;
  Cyclo operator+(const Cyclo& o) const;
  Cyclo operator-(const Cyclo& o) const;
  Cyclo operator*(const Cyclo& o) const;
  Cyclo& operator+=(const Cyclo& o) { return *this = *this + o; }
  Cyclo& operator-=(const Cyclo& o) { return *this = *this - o; }
  Cyclo& operator*=(const Cyclo& o) { return *this = *this * o; }

  bool operator==(const Cyclo& o) const {
    return n_ == o.n_ && terms_ == o.terms_;
  }
  bool operator!=(const Cyclo& o) const { return !(*this == o); }

  // The Galois automorphism zeta_n -> zeta_n^k applied to this value.
  // k must be coprime to the conductor (throws std::invalid_argument).
  Cyclo galois(std::uint64_t k) const;
  // Complex conjugate (the automorphism k = -1).
  Cyclo conj() const;

  // Deterministic total order (conductor first, then the term list);
  // used for canonical sign classes and stable sorting of value tuples.
  static int compare(const Cyclo& a, const Cyclo& b);
  bool operator<(const Cyclo& o) const { return compare(*this, o) < 0; }

  // Human-readable form, e.g. "1/2 - z8 + 3*z8^3".
  std::string to_string() const;

  // Serialization: {"n": conductor, "c": [[exponent, "num", "den"], ...]}
  // with the term list sorted by exponent.  Numerator and denominator are
  // decimal strings so the round trip is exact for any coefficient size.
  // to_json_text emits a compact single-line form; from_json_text parses it
  // (accepting non-canonical exponents, which are re-reduced).
  std::string to_json_text() const;
  static Cyclo from_json_text(const std::string& text);

private:
  unsigned n_ = 1;
  std::map<unsigned, mpq_class> terms_;

  void canonicalize();
};

// The field generated by a value, described canonically: the minimal
// conductor m with the value in Q(zeta_m), together with the subgroup
// H <= (Z/mZ)^* of automorphisms fixing the value (its field is the fixed
// field of H).  Two values generate the same field iff descriptors are equal.
struct FieldDescriptor {
  unsigned conductor = 1;
  std::vector<unsigned> stabilizer;  // sorted residues k with gcd(k, m) = 1

  bool operator==(const FieldDescriptor& o) const {
    return conductor == o.conductor && stabilizer == o.stabilizer;
  }
  bool operator!=(const FieldDescriptor& o) const { return !(*this == o); }
  bool operator<(const FieldDescriptor& o) const {
    if (conductor != o.conductor) return conductor < o.conductor;
    return stabilizer < o.stabilizer;
  }
  std::string to_string() const;
};

FieldDescriptor field_of_values(const Cyclo& a);

// The norm of a down to Q: the product of its distinct Galois conjugates,
// one per coset of its stabilizer in (Z/mZ)^*.  Always rational.
mpq_class norm_to_Q(const Cyclo& a);

// The ell-adic data of a nonzero value used by the Picky+ check.
//   norm_valuation: the ell-adic valuation of norm_to_Q(a) (negative values
//     possible for non-integral rationals).
//   rational_ell_part: the usual ell-part ell^{v_ell(a)} when a is a rational
//     integer; absent for every other value.
struct EllData {
  std::int64_t norm_valuation = 0;
  std::optional<std::uint64_t> rational_ell_part;

  bool operator==(const EllData& o) const {
    return norm_valuation == o.norm_valuation &&
           rational_ell_part == o.rational_ell_part;
  }
};

// Throws std::invalid_argument if a is zero or ell is not prime.
EllData ell_data(const Cyclo& a, std::uint64_t ell);

// True iff a = b or a = -b.
bool up_to_sign_equal(const Cyclo& a, const Cyclo& b);

// Canonical representative of {a, -a}: the larger under Cyclo::compare, so
// the class of a rational +-c is represented by +c.
Cyclo sign_class(const Cyclo& a);

}  // namespace picky
