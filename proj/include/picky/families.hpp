#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "picky/cyclo.hpp"
#include "picky/group.hpp"

// Analytic layer for finite groups of Lie type: classification predicates for
// the existence of picky 2- and 3-elements, predicted picky profiles backed by
// published tables, exact value models for the SL2 family, and local-subgroup
// character models (metacyclic and wreath) derived by Clifford theory.
//
// Everything in this header is *analytic*: it answers from closed-form
// criteria and embedded table data, never by building the group.  The
// permutation engine (pickycore.hpp) is the ground truth; the test suite
// cross-checks the two wherever the group is small enough to build.

namespace picky {

// ---------------------------------------------------------------------------
// Family specifications
// ---------------------------------------------------------------------------

// Families of simple, simply connected groups of Lie type, plus the twisted
// types.  `dim` below is the natural matrix dimension where one exists
// (SL_n, SU_n, Sp_n with n even, Spin_n / Omega_n), and is ignored for the
// exceptional types.
enum class LieFamily {
  SL,
  SU,
  Sp,
  Spin,   // synonym of Omega at the level of these predicates
  Omega,
  G2,
  F4,
  E6,
  E6tw,   // twisted 2E6
  E7,
  E8,
  D4tw3,  // triality-twisted 3D4
  B2tw2,  // Suzuki 2B2
  G2tw2,  // Ree 2G2
  F4tw2,  // Ree 2F4
};

std::string to_string(LieFamily f);

// Inverse of to_string, for CLI and spec-file parsing.  Accepts the exact
// to_string spellings plus the sign-carrying forms "Omega+"/"Omega-"/
// "Spin+"/"Spin-" (the sign is returned separately so the caller can fill
// FamilySpec::epsilon).  Returns nullopt for unknown names.
std::optional<std::pair<LieFamily, int>> family_from_string(const std::string& name);

// A concrete member of a family.  `epsilon` is +1 for untwisted linear groups
// and -1 for unitary ones (the SU constructor convention), and doubles as the
// +- sign for Omega/Spin in even dimension.  `cover_label` names a central
// extension when the question is about a cover (e.g. "2." or "3_1."); the
// existence predicates are insensitive to it because picky ell-elements pass
// to and from central quotients of ell'-order kernel as exact preimages.
struct FamilySpec {
  LieFamily family = LieFamily::SL;
  unsigned dim = 0;          // matrix dimension n (0 for exceptional types)
  std::uint64_t q = 0;       // defining field size
  int epsilon = +1;          // -1 for SU; the +- sign for Omega/Spin
  std::uint64_t ell = 2;     // the prime under discussion
  std::string cover_label;   // optional central-extension prefix, e.g. "6."

  std::string label() const;  // e.g. "SL4(3)", "Omega8-(2)", "3D4(2)"
};

// ---------------------------------------------------------------------------
// Arithmetic helpers
// ---------------------------------------------------------------------------

// Shape of a prime power q relevant to the 2-local classification.
enum class QShape { Fermat, Mersenne, Nine, Neither };

std::string to_string(QShape s);

// Classifies q: Nine iff q == 9; Fermat iff q is a prime of the form
// 2^(2^k) + 1; Mersenne iff q is a prime of the form 2^n - 1; Neither
// otherwise.  q = 3 is both 2^(2^0) + 1 and 2^2 - 1; the enum reports Fermat,
// and the two bool helpers below answer each question independently.
QShape fermat_mersenne(std::uint64_t q);
bool is_fermat_prime(std::uint64_t q);
bool is_mersenne_prime(std::uint64_t q);

// Multiplicative order of q modulo ell.  Requires ell >= 2 and
// gcd(q, ell) = 1; throws std::invalid_argument otherwise.  This is the
// degree d such that ell divides q^d - 1 minimally.
std::uint64_t d_ell(std::uint64_t q, std::uint64_t ell);

// Number of ones in the binary expansion of n (the parameter `t` appearing in
// the structure of Sylow 2-normalizers of classical groups).
unsigned binary_digit_count(std::uint64_t n);

// ---------------------------------------------------------------------------
// Embedded table data
// ---------------------------------------------------------------------------

// One row of the published picky-element tables: a named quasi-simple group,
// the common order of its picky ell-elements, the centralizer orders of the
// picky classes (with multiplicity = number of classes sharing that
// centralizer order), and for each i the number of characters nonvanishing at
// such an element whose degree has ell-part exactly ell^i.
struct TableRow {
  std::string group;                 // display label, e.g. "6.Omega7(3)"
  LieFamily family = LieFamily::SL;  // underlying simply connected family
  unsigned dim = 0;
  std::uint64_t q = 0;
  int epsilon = +1;
  std::uint64_t ell = 2;
  std::uint64_t element_order = 0;
  // (centralizer order, number of picky classes with that order)
  std::vector<std::pair<std::uint64_t, unsigned>> centralizers;
  // counts[i] = number of rows of Irr^x(G) with degree ell-part ell^i,
  // for one picky class x covered by this row
  std::vector<std::uint64_t> irr_counts;

  unsigned class_count() const;
  std::uint64_t total_irr() const;
};

// The published table of picky 2-elements in the sporadic defining-
// characteristic-3 cases (all rows have ell = 2, q = 3 except none), and the
// published table of picky 3-elements with nonabelian Sylow 3-subgroup.
const std::vector<TableRow>& picky2_table();
const std::vector<TableRow>& picky3_table();

// One row of the published value table for SU8(2) at its picky 3-elements:
// a Lusztig-series label (centralizer of the semisimple part), the number of
// series with that shape, and the multisets of absolute character values at
// the two picky classes x1, x2, as (value, multiplicity) pairs.
struct SU8ValueRow {
  std::string series;   // e.g. "Ph2.2A2(q).2A4(q)"
  unsigned series_count = 1;
  std::vector<std::pair<std::uint64_t, unsigned>> x1_values;
  std::vector<std::pair<std::uint64_t, unsigned>> x2_values;
};

const std::vector<SU8ValueRow>& su8_value_table();

// ---------------------------------------------------------------------------
// Existence predicate and predicted profiles
// ---------------------------------------------------------------------------

// Whether the simply connected group described by `spec` contains picky
// ell-elements, answered from the closed classification:
//
//   ell = 2 (defining characteristic odd):
//     (1) SL2(q) with q a Fermat or Mersenne prime or q = 9;
//     (2) SL3(q) with q = 3 (mod 4) a Mersenne prime;
//     (3) SU3(q) with q = 1 (mod 4) a Fermat prime, or q = 9, or q = 3;
//     (4) Sp4(q) with q a Fermat or Mersenne prime, q != 5, 7;
//     (5) SL4(3), SU4(3), Spin7(3), Sp6(3), Spin8+-(3), G2(3).
//
//   ell = 3 (defining characteristic != 3): membership in the published list
//     of groups with nonabelian Sylow 3-subgroup and picky 3-elements
//     (picky3_table()).  For groups with *abelian* Sylow 3-subgroup this
//     predicate is out of scope and throws (the engine answers those).
//
// Throws std::invalid_argument when ell is not 2 or 3, when ell equals the
// defining characteristic, when the family is Suzuki/Ree (unsupported), or
// when q is not a prime power.
bool has_picky(const FamilySpec& spec);

// Whether has_picky(spec) is in scope at all (same checks, no throw).
bool has_picky_supported(const FamilySpec& spec, std::string* reason = nullptr);

// What the classification predicts the picky classes look like.
// Precondition: has_picky(spec) is true (throws std::invalid_argument
// otherwise).
struct PickyProfile {
  // Families (1)-(3): every ell-element of order >= min_order is picky and
  // nothing else; min_order = 4.  Family (4): picky elements are regular
  // 2-elements of order >= 8 whose eigenvalue set (16th-or-higher roots of
  // unity) is not closed under negation -- a necessary condition only, so
  // `partial` is set and the engine decides the exact subset.  For q = 3 in
  // family (1) the Sylow 2-subgroup is normal and every 2-element is picky
  // (normal_sylow is set, min_order = 1).
  bool normal_sylow = false;
  std::uint64_t min_order = 0;
  bool partial = false;
  std::string description;
  // For the sporadic cases and all of ell = 3: the exact published rows
  // (possibly several, when classes differ in centralizer structure).
  std::vector<TableRow> rows;
};

PickyProfile predicted_picky_profile(const FamilySpec& spec);

// ---------------------------------------------------------------------------
// SL2 value model
// ---------------------------------------------------------------------------

// One predicted row of Irr^x: the degree, the value at x up to sign (the
// canonical sign-class representative), and whether the row in fact vanishes
// at x (the k-indexed family below contains members whose formal value
// zeta^k + zeta^-k is 0; they are listed with `vanishes` set so that counting
// family members stays honest).
struct ValueModelRow {
  std::uint64_t degree = 0;
  Cyclo value;      // sign-class representative of the value at x
  bool vanishes = false;
};

// The full predicted shape of Irr^x(SL2(q)) and Irr^x(N) at a picky 2-element
// x of the given order, for q = 2^n + epsilon with n >= 3 (q = 5 is served by
// a separate fixture; this model refuses it).  Global rows: four odd-degree
// characters of degrees 1, q, (q+epsilon)/2, (q+epsilon)/2 with values +-1,
// and the family chi_k, 1 <= k <= (q-epsilon)/2 - 1, of degree q + epsilon
// with value +-(zeta^k + zeta^-k) where zeta has order x_order.  Local rows:
// four linear characters with values +-1 and the matching degree-2 family
// with the same values.  Degrees on the two sides differ; the value multisets
// (up to sign) and the 2-parts of the degrees agree row by row.
struct Sl2ValueModel {
  std::uint64_t q = 0;
  int epsilon = 0;           // q = 2^n + epsilon
  unsigned n = 0;
  std::uint64_t x_order = 0;
  std::uint64_t local_order = 0;  // 2^(n+1), the order of the Sylow normalizer
  std::vector<ValueModelRow> global_rows;
  std::vector<ValueModelRow> local_rows;
};

// Requires: q odd with |q - 2^n| = 1 for some n >= 3, and x_order a power of
// two with 4 <= x_order <= 2^n.  Throws std::invalid_argument otherwise
// (including for q = 5, which the model intentionally leaves to a fixture).
Sl2ValueModel sl2_value_model(std::uint64_t q, std::uint64_t x_order);

// ---------------------------------------------------------------------------
// Local-subgroup character models (Clifford theory)
// ---------------------------------------------------------------------------

// Exact character table of the split metacyclic group
//   M(m, s) = < a, b | a^m = b^2 = 1, b a b = a^s >,   s^2 = 1 (mod m),
// computed by Clifford theory from the C2-action j -> j*s on the characters
// of <a>: fixed characters extend in two ways (linear rows), two-element
// orbits induce irreducibly (degree-2 rows).  Values are exact cyclotomics;
// an element is addressed as a^t b^outer.
struct MetacyclicModel {
  std::uint64_t m = 0;
  std::uint64_t s = 1;          // reduced mod m
  std::uint64_t group_order = 0;  // 2m
  // Rows sorted by (degree, j-index).  For linear rows `j` is the fixed
  // character index and `sign` the value at b; for degree-2 rows `j` is the
  // smaller index of the orbit {j, j*s}.
  struct Row {
    std::uint64_t degree = 0;
    std::uint64_t j = 0;
    int sign = +1;  // meaningful for linear rows only
  };
  std::vector<Row> rows;

  // Value of row r at a^t b^outer (outer in {0, 1}).
  Cyclo value(std::size_t r, std::uint64_t t, unsigned outer) const;
  std::uint64_t sum_degree_squares() const;
};

MetacyclicModel metacyclic_model(std::uint64_t m, std::int64_t s);

// The corresponding permutation realization: a = (p -> p + 1 mod m),
// b = (p -> s p mod m), acting on {0, ..., m-1}; for s = 1 (mod m) two extra
// points swapped by b keep the action faithful (the group is then C_m x C2).
GroupRef metacyclic_perm_group(std::uint64_t m, std::int64_t s);

// Decodes a permutation of the group above back to (t, outer) with
// g = a^t b^outer; throws std::invalid_argument if g is not of that form.
std::pair<std::uint64_t, unsigned> metacyclic_decode(std::uint64_t m,
                                                     std::int64_t s,
                                                     const Perm& g);

// The Sylow 2-normalizer model for SL3(q) (q = -epsilon mod 4): the maximal
// torus C_{q^2-1} extended by the order-2 Galois/graph action a -> a^{epsilon
// q}.  Returns the metacyclic model with m = q^2 - 1, s = epsilon*q mod m.
// Throws std::invalid_argument unless q is an odd prime power with
// q = -epsilon (mod 4).
MetacyclicModel sl3_local_model(std::uint64_t q, int epsilon);

// Character-degree model of the wreath product D wr C2 = (D x D) : swap for
// a base group D given by its degree list: unordered pairs {alpha, beta}
// induce to degree 2 d_alpha d_beta; diagonal pairs extend twice at degree
// d_alpha^2.  Used for the Sylow 2-normalizer of Sp4(q),
// (C_{q-epsilon} . 2) wr C2, where the base is the dihedral-shaped group
// M(q-epsilon, -1).
struct WreathModel {
  std::uint64_t base_order = 0;
  std::uint64_t group_order = 0;  // 2 * base_order^2
  std::vector<std::uint64_t> degrees;  // all irreducible degrees, sorted
  std::uint64_t sum_degree_squares() const;
};

WreathModel wreath_square_model(const std::vector<std::uint64_t>& base_degrees);

// The Sylow 2-normalizer model for Sp4(q), q = 2^n + epsilon with
// q - epsilon >= 16: (C_{q-epsilon} . 2) wr C2 with the base acting by
// inversion.  Throws std::invalid_argument unless q - epsilon is a power of
// two >= 16.
WreathModel sp4_local_model(std::uint64_t q, int epsilon);

}  // namespace picky
