#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "picky/chartab.hpp"
#include "picky/classes.hpp"
#include "picky/cyclo.hpp"
#include "picky/group.hpp"

namespace picky {

// Everything attached to one choice of (G, ell): a Sylow ell-subgroup P, its
// normalizer, and the conjugacy class data.  Computed once per pair and shared
// by the counting and verification routines below.
struct EllContext {
  GroupRef G;
  std::uint64_t ell = 2;
  std::shared_ptr<const ConjClasses> classes;
  GroupRef P;  // one Sylow ell-subgroup of G
  GroupRef N;  // N_G(P)
};

EllContext ell_context(const GroupRef& G, std::uint64_t ell,
                       const Budget& budget = {});

// A conjugacy class of ell-elements of G, together with n_x = the number of
// Sylow ell-subgroups containing its elements.  The class is picky exactly
// when n_x == 1.  Note n_x = 1 (mod ell) is NOT an invariant (it is false in
// general); only n_x >= 1 holds.
struct PickyClass {
  unsigned class_index = 0;
  Perm rep;
  std::uint64_t element_order = 1;
  std::uint64_t centralizer_order = 0;
  std::uint64_t sylow_count = 0;  // n_x
  std::uint64_t ell = 2;

  bool picky() const { return sylow_count == 1; }
};

// n_x for an ell-element x of G, via the exact identity
//   n_x * |N_G(P)| = |x^G intersect P| * |C_G(x)|.
// The intersection count streams the class through membership tests in P when
// |x^G| <= 10^6, and otherwise sums the sizes of the P-conjugacy orbits inside
// the class (testing one transversal representative per orbit).  The division
// is exact; a remainder signals an internal bug and throws logic_error.
// Throws invalid_argument if x is not an ell-element of G.
std::uint64_t sylow_count_containing(const EllContext& ctx, const Perm& x,
                                     int workers = 1);

// All classes of ell-elements of G (the identity class included), each with
// its n_x.  The identity is picky exactly when the Sylow subgroup is normal.
std::vector<PickyClass> ell_class_survey(const EllContext& ctx,
                                         int workers = 1);
// The picky classes only (n_x == 1).
std::vector<PickyClass> picky_classes(const EllContext& ctx, int workers = 1);

// One row of Irr^x: a character not vanishing at x, with its exact value.
struct IrrXRow {
  std::size_t row = 0;
  std::uint64_t degree = 0;
  Cyclo value;
};

// The rows of the table that do not vanish at x.  Verifies the column-norm
// identity sum_{chi in Irr^x} chi(x) * conj(chi(x)) = |C_G(x)| and throws
// logic_error if it fails.
std::vector<IrrXRow> irr_x(const CharTable& table, const Perm& x);

// The three verified statements, in increasing strength.  For a picky
// ell-element x with P its unique Sylow subgroup and N = N_G(P), each asks
// for a bijection f : Irr^x(G) -> Irr^x(N) with, per matched pair chi, f(chi):
//   picky:       (1) equal degree ell-parts, (2) equal fields of values at x;
//   picky_plus:  additionally (3) equal ell-parts of the values at x;
//   strong:      (1) and (2*) chi(x) = +- f(chi)(x), which implies (2), (3).
// Condition (3) compares rational ell-parts when both values are rational
// integers and norm valuations otherwise; both coincide with plain norm-
// valuation equality (for a rational integer the ell-part is ell^valuation),
// and the paired-up rationality statuses always agree here because condition
// (2) pins the field of values.  Certificates still flag any disagreement as
// verdict `inconclusive` rather than silently choosing one semantics.
enum class Mode { picky, picky_plus, strong };
enum class Verdict { holds, fails, inconclusive };

const char* to_string(Mode m);
const char* to_string(Verdict v);

// Canonical matching key for one character row; equal keys <=> the pair
// satisfies every condition of the mode.  Bijection search is multiset
// matching on these keys: all conditions are per-pair equalities of canonical
// data, so a bijection exists iff the key multisets coincide.
struct VerificationKey {
  std::uint64_t degree_ell_part = 1;            // condition (1)
  std::optional<FieldDescriptor> field;         // condition (2)
  std::optional<std::int64_t> norm_valuation;   // condition (3)
  std::optional<std::string> sign_class;        // condition (2*), serialized

  bool operator==(const VerificationKey&) const = default;
  bool operator<(const VerificationKey& o) const;
  std::string to_string() const;
};

struct CertificatePair {
  std::size_t global_row = 0;  // row index in the table of G
  std::size_t local_row = 0;   // row index in the table of N
  VerificationKey key;
  std::uint64_t global_degree = 0, local_degree = 0;
  Cyclo global_value, local_value;  // exact values at x
};

// The outcome of one verification: the matched pairing (on holds), or the
// first mismatched key with its two multiplicities (on fails).
struct Certificate {
  std::string group_label;
  std::uint64_t ell = 2;
  PickyClass cls;
  Mode mode = Mode::picky;
  Verdict verdict = Verdict::inconclusive;
  std::vector<CertificatePair> pairs;
  std::string note;  // mismatch detail or semantics flag; empty on clean holds

  // {group, ell, class: {order, centralizer, n_x}, mode, pairs, verdict}
  // with stable field order, suitable for committing as a fixture.
  std::string to_json_text() const;
};

// Verifies one mode for one picky class.  table_G must be the table of ctx.G
// and table_N the table of ctx.N (checked).  Refuses non-picky classes with
// invalid_argument: the statements are only about picky elements, and a
// vacuous answer would poison regression suites.
Certificate verify(const EllContext& ctx, const CharTable& table_G,
                   const CharTable& table_N, const PickyClass& pc, Mode mode,
                   const std::string& group_label = "");

// For abelian Sylow subgroups, Irr^x(G) is exactly the set of rows of degree
// prime to ell; returns whether that holds for this picky class.  Refuses
// (invalid_argument) when the Sylow subgroup is not abelian or pc is not
// picky.
bool abelian_sylow_check(const EllContext& ctx, const CharTable& table_G,
                         const PickyClass& pc);

// For cyclic Sylow subgroups the strong statement is a theorem: runs
// verify(strong) on every picky class and returns the certificates, throwing
// logic_error if any verdict is not `holds` (that would be an internal bug,
// not mathematics).  A trivial Sylow subgroup (ell not dividing |G|) returns
// an empty list.  Refuses non-cyclic Sylow subgroups with invalid_argument.
std::vector<Certificate> cyclic_sylow_check(const EllContext& ctx,
                                            const CharTable& table_G,
                                            const CharTable& table_N,
                                            const std::string& group_label = "");

}  // namespace picky
