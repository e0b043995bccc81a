#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "picky/classes.hpp"
#include "picky/cyclo.hpp"
#include "picky/group.hpp"

namespace picky {

// A class function on a group, stored as one exact value per conjugacy class.
struct ClassFunction {
  std::shared_ptr<const ConjClasses> classes;
  std::vector<Cyclo> values;  // indexed by class id

  const Cyclo& eval(const Perm& g) const { return values[classes->class_of(g)]; }
};

// The exact complex character table of a finite permutation group.
//
// Computed by the eigenvector method: the class-multiplication matrices
// B_i[j][k] = #{u in C_i : u^{-1} g_k in C_j} commute and act on the column
// space F_r^k (r a prime chosen = 1 mod exponent(G), larger than every
// integer the lift must recover); their simultaneous eigenspaces are
// one-dimensional and carry the central characters.  Degrees come from the
// second orthogonality relation mod r, values are lifted exactly to Q(zeta_e)
// via eigenvalue multiplicities of powers, and both orthogonality relations
// are then verified with exact cyclotomic arithmetic before the table is
// returned.
//
// Rows are sorted by (degree, lexicographic value tuple), so tables are
// reproducible across runs.  Instances are immutable and safe to share.
class CharTable {
public:
  // workers > 1 accumulates class matrices with OpenMP; workers == 1 runs the
  // serial reference kernel.  The result is identical either way.
  static CharTable compute(const GroupRef& G, const Budget& budget = {},
                           int workers = 1);

  const GroupRef& group() const { return G_; }
  const ConjClasses& classes() const { return *classes_; }
  std::shared_ptr<const ConjClasses> classes_ptr() const { return classes_; }
  std::size_t rows() const { return values_.size(); }
  std::uint64_t degree(std::size_t row) const { return degrees_[row]; }
  const Cyclo& value(std::size_t row, std::size_t cls) const {
    return values_[row][cls];
  }

  // Value of row at an arbitrary element of G (throws if x is not in G).
  const Cyclo& evaluate(std::size_t row, const Perm& x) const;
  // Rows whose value at x is nonzero.
  std::vector<std::size_t> nonvanishing_rows(const Perm& x) const;
  // The ell-part of the integer degree of a row.
  std::uint64_t degree_ell_part(std::size_t row, std::uint64_t ell) const;

  // Exact verification of the two orthogonality relations (also run once
  // during compute; exposed for the test suites).
  bool row_orthogonality_check() const;
  bool column_orthogonality_check() const;

  // Row as a standalone class function (shares the class data).
  ClassFunction row_function(std::size_t row) const;

  // Serialization: JSON with class metadata and exact values; CSV with class
  // headers and human-readable values.  Both deterministic.
  std::string to_json_text() const;
  std::string to_csv_text() const;

private:
  CharTable() = default;

  GroupRef G_;
  std::shared_ptr<const ConjClasses> classes_;
  std::vector<std::uint64_t> degrees_;
  std::vector<std::vector<Cyclo>> values_;
};

// <a, b> = (1/|G|) sum_j |C_j| a(C_j) conj(b(C_j)); both functions must live
// on the same class data.
Cyclo inner_product(const ClassFunction& a, const ClassFunction& b);

// Value at x of the class function induced from L <= N:
//   (1/|L|) sum_{g in N, x^g in L} theta(x^g),
// evaluated by summing theta over the N-conjugates of x that land in L, one
// coset of L at a time.  Throws if L is not a subgroup of N or x is not in N.
Cyclo induce_value(const GroupRef& L, const ClassFunction& theta,
                   const GroupRef& N, const Perm& x);

// Restriction of a table row to a subgroup L <= N, as a class function on L.
ClassFunction restrict_row(const CharTable& table, std::size_t row,
                           const std::shared_ptr<const ConjClasses>& L_classes);

}  // namespace picky
