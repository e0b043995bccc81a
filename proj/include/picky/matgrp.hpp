#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "picky/gf.hpp"
#include "picky/group.hpp"

namespace picky {

enum class Family { SL, SU, Sp };
enum class Action { nonzero_vectors, projective_points };

using GFRef = std::shared_ptr<const GF>;

// Square matrix over a GF, entries in the field's integer encoding, row-major.
struct Mat {
  unsigned n = 0;
  std::vector<unsigned> e;

  Mat() = default;
  explicit Mat(unsigned dim) : n(dim), e(std::size_t{dim} * dim, 0) {}
  static Mat identity(unsigned dim);

  unsigned at(unsigned i, unsigned j) const { return e[std::size_t{i} * n + j]; }
  unsigned& at(unsigned i, unsigned j) { return e[std::size_t{i} * n + j]; }
  bool operator==(const Mat&) const = default;
};

Mat mat_mul(const GF& F, const Mat& a, const Mat& b);
unsigned mat_det(const GF& F, Mat a);  // by Gaussian elimination

struct MatrixGroupSpec {
  GFRef field;  // the entry field: GF(q^2) for SU_n(q)
  unsigned n = 0;
  std::vector<Mat> generators;
  Action action = Action::nonzero_vectors;
};

// Generator matrices for the classical group, entries verified: determinant 1
// and preservation of the defining form (hermitian for SU, alternating for
// Sp).  Supported: SL_n (n <= 4), SU_n (n in {3,4}), Sp_4.
MatrixGroupSpec standard_group(Family fam, unsigned n, unsigned q);

// The permutation image of the spec on its point set: all nonzero row vectors
// of F^n, or the projective points (first nonzero coordinate normalized to 1).
// Vectors act on the right, v -> vM.  The nonzero-vectors action is faithful;
// the projective action quotients out the scalars contained in the group.
GroupRef matrix_to_perm(const MatrixGroupSpec& spec);

// |SL_n(q)|, |SU_n(q)|, |Sp_n(q)| by the order formulas (q the defining field
// size, so |SU_n(q)| refers to matrices over GF(q^2)).
std::uint64_t classical_order(Family fam, unsigned n, unsigned q);

// standard_group + matrix_to_perm, with the resulting order checked against
// classical_order (nonzero-vectors action) before the handle is returned.
GroupRef classical_group(Family fam, unsigned n, unsigned q,
                         Action action = Action::nonzero_vectors);

// Group construction from a JSON spec:
//   {"kind": "perm",      "generators": [[image array], ...]}
//   {"kind": "matrix",    "q": entry field, "n": dim, "action": ...,
//                         "generators": [[row-major entries], ...]}
//   {"kind": "classical", "family": "SL"|"SU"|"Sp", "n": dim, "q": defining q,
//                         "action": "nonzero-vectors"|"projective-points"}
// The matrix/classical kinds also yield a display name via *name_out.
GroupRef group_from_json_text(const std::string& text, std::string* name_out = nullptr);
GroupRef group_from_json_file(const std::string& path, std::string* name_out = nullptr);

std::string family_name(Family fam);

}  // namespace picky
