#include "picky/matgrp.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace picky {

Mat Mat::identity(unsigned dim) {
  Mat m(dim);
  for (unsigned i = 0; i < dim; ++i) m.at(i, i) = 1;
  return m;
}

Mat mat_mul(const GF& F, const Mat& a, const Mat& b) {
  if (a.n != b.n) throw std::invalid_argument("matrix dimension mismatch");
  Mat c(a.n);
  for (unsigned i = 0; i < a.n; ++i)
    for (unsigned k = 0; k < a.n; ++k) {
      unsigned aik = a.at(i, k);
      if (aik == 0) continue;
      for (unsigned j = 0; j < a.n; ++j)
        c.at(i, j) = F.add(c.at(i, j), F.mul(aik, b.at(k, j)));
    }
  return c;
}

unsigned mat_det(const GF& F, Mat a) {
  unsigned det = 1;
  for (unsigned col = 0; col < a.n; ++col) {
    unsigned piv = col;
    while (piv < a.n && a.at(piv, col) == 0) ++piv;
    if (piv == a.n) return 0;
    if (piv != col) {
      for (unsigned j = 0; j < a.n; ++j) std::swap(a.at(piv, j), a.at(col, j));
      det = F.neg(det);
    }
    det = F.mul(det, a.at(col, col));
    unsigned inv = F.inv(a.at(col, col));
    for (unsigned row = col + 1; row < a.n; ++row) {
      unsigned factor = F.mul(a.at(row, col), inv);
      if (factor == 0) continue;
      for (unsigned j = col; j < a.n; ++j)
        a.at(row, j) = F.sub(a.at(row, j), F.mul(factor, a.at(col, j)));
    }
  }
  return det;
}

namespace {

Mat transpose(const Mat& a) {
  Mat t(a.n);
  for (unsigned i = 0; i < a.n; ++i)
    for (unsigned j = 0; j < a.n; ++j) t.at(j, i) = a.at(i, j);
  return t;
}

// Entrywise x -> x^(p^k).
Mat frobenius_entrywise(const GF& F, const Mat& a, unsigned k) {
  Mat b(a.n);
  for (std::size_t i = 0; i < a.e.size(); ++i) b.e[i] = F.frobenius(a.e[i], k);
  return b;
}

// Gram matrix of the hermitian form h(x,y) = sum_i x_i conj(y_{n-1-i}).
Mat hermitian_gram(unsigned n) {
  Mat j(n);
  for (unsigned i = 0; i < n; ++i) j.at(i, n - 1 - i) = 1;
  return j;
}

// Gram matrix of the alternating form B(e_i, e_{i+m}) = 1 for i < m, n = 2m.
Mat symplectic_gram(const GF& F, unsigned n) {
  Mat j(n);
  unsigned m = n / 2;
  for (unsigned i = 0; i < m; ++i) {
    j.at(i, i + m) = 1;
    j.at(i + m, i) = F.neg(1);
  }
  return j;
}

void check_det_one(const GF& F, const Mat& g) {
  if (mat_det(F, g) != 1) throw std::logic_error("generator determinant is not 1");
}

// M J sigma(M)^T = J, with sigma the entrywise field automorphism x -> x^(p^k).
void check_form(const GF& F, const Mat& g, const Mat& gram, unsigned k) {
  Mat rhs = mat_mul(F, mat_mul(F, g, gram), transpose(frobenius_entrywise(F, g, k)));
  if (!(rhs == gram)) throw std::logic_error("generator does not preserve the form");
}

// All projective representatives (first nonzero coordinate = 1) of F^n.
std::vector<std::vector<unsigned>> projective_reps(const GF& F, unsigned n) {
  std::vector<std::vector<unsigned>> reps;
  std::vector<unsigned> v(n, 0);
  std::uint64_t total = 1;
  for (unsigned i = 0; i < n; ++i) total *= F.q();
  for (std::uint64_t enc = 1; enc < total; ++enc) {
    std::uint64_t x = enc;
    for (unsigned i = 0; i < n; ++i) {
      v[i] = static_cast<unsigned>(x % F.q());
      x /= F.q();
    }
    unsigned first = 0;
    while (v[first] == 0) ++first;
    if (v[first] == 1) reps.push_back(v);
  }
  return reps;
}

MatrixGroupSpec make_sl(unsigned n, unsigned q) {
  MatrixGroupSpec spec;
  spec.field = std::make_shared<GF>(q);
  spec.n = n;
  const GF& F = *spec.field;
  // Root subgroups of adjacent transvections generate SL_n; scalars run over
  // an F_p-basis of the field.
  std::vector<unsigned> basis;
  unsigned b = 1;
  for (unsigned k = 0; k < F.f(); ++k) {
    basis.push_back(b);
    b = F.mul(b, F.primitive_element());
  }
  for (unsigned i = 0; i + 1 < n; ++i)
    for (unsigned beta : basis)
      for (bool lower : {false, true}) {
        Mat t = Mat::identity(n);
        if (lower)
          t.at(i + 1, i) = beta;
        else
          t.at(i, i + 1) = beta;
        check_det_one(F, t);
        spec.generators.push_back(std::move(t));
      }
  return spec;
}

MatrixGroupSpec make_su(unsigned n, unsigned q) {
  if (n == 3 && q == 2)
    throw std::invalid_argument("SU3(2) is not supported (not generated by its transvections)");
  MatrixGroupSpec spec;
  spec.field = std::make_shared<GF>(q * q);
  spec.n = n;
  const GF& F = *spec.field;
  const unsigned fr = F.f() / 2;  // conjugation is x -> x^q = x^(p^fr)
  Mat gram = hermitian_gram(n);

  auto conj = [&](unsigned a) { return F.frobenius(a, fr); };
  auto hvv = [&](const std::vector<unsigned>& v) {
    unsigned s = 0;
    for (unsigned i = 0; i < n; ++i) s = F.add(s, F.mul(v[i], conj(v[n - 1 - i])));
    return s;
  };

  // delta with delta + conj(delta) = 0; the trace-zero line is delta * GF(q).
  unsigned delta = (F.p() == 2) ? 1u : F.pow(F.primitive_element(), (q + 1) / 2);
  if (F.add(delta, conj(delta)) != 0) throw std::logic_error("trace-zero scalar construction failed");

  // F_p-basis of the subfield GF(q) inside GF(q^2).
  unsigned gamma = F.pow(F.primitive_element(), q + 1);
  std::vector<unsigned> subbasis;
  unsigned b = 1;
  unsigned subf = 0;
  for (unsigned pf = q; pf > 1; pf /= F.p()) ++subf;
  for (unsigned k = 0; k < subf; ++k) {
    subbasis.push_back(b);
    b = F.mul(b, gamma);
  }

  // Unitary transvections x -> x + c h(x,v) v over all isotropic lines.
  for (const auto& v : projective_reps(F, n)) {
    if (hvv(v) != 0) continue;
    for (unsigned beta : subbasis) {
      unsigned c = F.mul(delta, beta);
      Mat t = Mat::identity(n);
      for (unsigned i = 0; i < n; ++i) {
        unsigned coef = F.mul(c, conj(v[n - 1 - i]));
        if (coef == 0) continue;
        for (unsigned j = 0; j < n; ++j) t.at(i, j) = F.add(t.at(i, j), F.mul(coef, v[j]));
      }
      check_det_one(F, t);
      check_form(F, t, gram, fr);
      spec.generators.push_back(std::move(t));
    }
  }
  return spec;
}

MatrixGroupSpec make_sp(unsigned n, unsigned q) {
  MatrixGroupSpec spec;
  spec.field = std::make_shared<GF>(q);
  spec.n = n;
  const GF& F = *spec.field;
  Mat gram = symplectic_gram(F, n);

  auto bform = [&](const std::vector<unsigned>& x, const std::vector<unsigned>& v) {
    unsigned s = 0;
    for (unsigned i = 0; i < n; ++i) {
      if (x[i] == 0) continue;
      unsigned row = 0;
      for (unsigned k = 0; k < n; ++k) row = F.add(row, F.mul(gram.at(i, k), v[k]));
      s = F.add(s, F.mul(x[i], row));
    }
    return s;
  };

  std::vector<unsigned> basis;
  unsigned b = 1;
  for (unsigned k = 0; k < F.f(); ++k) {
    basis.push_back(b);
    b = F.mul(b, F.primitive_element());
  }

  // Symplectic transvections x -> x + c B(x,v) v over all lines.
  std::vector<unsigned> ei(n, 0);
  for (const auto& v : projective_reps(F, n)) {
    for (unsigned c : basis) {
      Mat t = Mat::identity(n);
      for (unsigned i = 0; i < n; ++i) {
        std::fill(ei.begin(), ei.end(), 0u);
        ei[i] = 1;
        unsigned coef = F.mul(c, bform(ei, v));
        if (coef == 0) continue;
        for (unsigned j = 0; j < n; ++j) t.at(i, j) = F.add(t.at(i, j), F.mul(coef, v[j]));
      }
      check_det_one(F, t);
      check_form(F, t, gram, 0);
      spec.generators.push_back(std::move(t));
    }
  }
  return spec;
}

}  // namespace

std::string family_name(Family fam) {
  switch (fam) {
    case Family::SL: return "SL";
    case Family::SU: return "SU";
    case Family::Sp: return "Sp";
  }
  return "?";
}

MatrixGroupSpec standard_group(Family fam, unsigned n, unsigned q) {
  switch (fam) {
    case Family::SL:
      if (n < 2 || n > 4) throw std::invalid_argument("SL_n supported for n in {2,3,4}");
      return make_sl(n, q);
    case Family::SU:
      if (n != 3 && n != 4) throw std::invalid_argument("SU_n supported for n in {3,4}");
      return make_su(n, q);
    case Family::Sp:
      if (n != 4) throw std::invalid_argument("Sp_n supported for n = 4");
      return make_sp(n, q);
  }
  throw std::invalid_argument("unknown family");
}

std::uint64_t classical_order(Family fam, unsigned n, unsigned q) {
  auto qpow = [&](unsigned e) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < e; ++i) r *= q;
    return r;
  };
  std::uint64_t order = 1;
  switch (fam) {
    case Family::SL:
      order = qpow(n * (n - 1) / 2);
      for (unsigned i = 2; i <= n; ++i) order *= qpow(i) - 1;
      return order;
    case Family::SU:
      order = qpow(n * (n - 1) / 2);
      for (unsigned i = 2; i <= n; ++i)
        order *= (i % 2 == 0) ? qpow(i) - 1 : qpow(i) + 1;
      return order;
    case Family::Sp: {
      unsigned m = n / 2;
      order = qpow(m * m);
      for (unsigned i = 1; i <= m; ++i) order *= qpow(2 * i) - 1;
      return order;
    }
  }
  throw std::invalid_argument("unknown family");
}

GroupRef matrix_to_perm(const MatrixGroupSpec& spec) {
  if (!spec.field || spec.n == 0) throw std::invalid_argument("matrix group spec is incomplete");
  const GF& F = *spec.field;
  const unsigned n = spec.n;
  const unsigned q = F.q();

  for (const Mat& g : spec.generators) {
    if (g.n != n) throw std::invalid_argument("generator dimension mismatch");
    for (unsigned entry : g.e)
      if (entry >= q) throw std::invalid_argument("matrix entry outside the field");
    if (mat_det(F, g) == 0) throw std::invalid_argument("non-invertible generator");
  }

  std::uint64_t total = 1;
  for (unsigned i = 0; i < n; ++i) total *= q;

  // Point set: encodings sum v_i q^i of the representative vectors.
  std::vector<std::uint64_t> pts;
  std::vector<unsigned> v(n);
  auto decode = [&](std::uint64_t enc) {
    for (unsigned i = 0; i < n; ++i) {
      v[i] = static_cast<unsigned>(enc % q);
      enc /= q;
    }
  };
  for (std::uint64_t enc = 1; enc < total; ++enc) {
    if (spec.action == Action::projective_points) {
      decode(enc);
      unsigned first = 0;
      while (v[first] == 0) ++first;
      if (v[first] != 1) continue;
    }
    pts.push_back(enc);
  }
  if (pts.size() > 4096)
    throw BudgetExceeded("point set exceeds the supported permutation degree (4096)");

  auto point_index = [&](std::uint64_t enc) {
    auto it = std::lower_bound(pts.begin(), pts.end(), enc);
    if (it == pts.end() || *it != enc) throw std::logic_error("image point not in point set");
    return static_cast<Pt>(it - pts.begin());
  };

  std::vector<Perm> perms;
  std::vector<unsigned> w(n);
  for (const Mat& g : spec.generators) {
    std::vector<Pt> img(pts.size());
    for (std::size_t idx = 0; idx < pts.size(); ++idx) {
      decode(pts[idx]);
      for (unsigned j = 0; j < n; ++j) {
        unsigned s = 0;
        for (unsigned i = 0; i < n; ++i) s = F.add(s, F.mul(v[i], g.at(i, j)));
        w[j] = s;
      }
      if (spec.action == Action::projective_points) {
        unsigned first = 0;
        while (first < n && w[first] == 0) ++first;
        if (first == n) throw std::logic_error("singular action image");
        unsigned s = F.inv(w[first]);
        for (unsigned j = 0; j < n; ++j) w[j] = F.mul(w[j], s);
      }
      std::uint64_t enc = 0;
      for (unsigned j = n; j-- > 0;) enc = enc * q + w[j];
      img[idx] = point_index(enc);
    }
    Perm p{std::move(img)};
    if (spec.action == Action::nonzero_vectors && p.is_identity() && !(g == Mat::identity(n)))
      throw std::logic_error("nonzero-vectors action has nontrivial kernel");
    perms.push_back(std::move(p));
  }
  if (perms.empty()) return Group::trivial(pts.size());
  return Group::make(std::move(perms));
}

namespace {

std::uint64_t center_order(Family fam, unsigned n, unsigned q) {
  switch (fam) {
    case Family::SL: return std::gcd<std::uint64_t>(n, q - 1);
    case Family::SU: return std::gcd<std::uint64_t>(n, q + 1);
    case Family::Sp: return q % 2 == 0 ? 1 : 2;
  }
  return 1;
}

}  // namespace

GroupRef classical_group(Family fam, unsigned n, unsigned q, Action action) {
  MatrixGroupSpec spec = standard_group(fam, n, q);
  spec.action = action;
  GroupRef G = matrix_to_perm(spec);
  std::uint64_t expect = classical_order(fam, n, q);
  if (action == Action::projective_points) expect /= center_order(fam, n, q);
  if (G->order() != expect)
    throw std::logic_error("classical group construction produced the wrong order");
  return G;
}

namespace {

Action action_from_string(const std::string& s) {
  if (s == "nonzero-vectors") return Action::nonzero_vectors;
  if (s == "projective-points") return Action::projective_points;
  throw std::invalid_argument("unknown action: " + s);
}

Family family_from_string(const std::string& s) {
  if (s == "SL") return Family::SL;
  if (s == "SU") return Family::SU;
  if (s == "Sp") return Family::Sp;
  throw std::invalid_argument("unknown family: " + s);
}

}  // namespace

GroupRef group_from_json_text(const std::string& text, std::string* name_out) {
  nlohmann::json j = nlohmann::json::parse(text);
  std::string kind = j.at("kind").get<std::string>();
  std::string name;
  GroupRef G;
  if (kind == "perm") {
    std::vector<Perm> gens;
    for (const auto& arr : j.at("generators")) {
      std::vector<Pt> img;
      for (const auto& x : arr) img.push_back(x.get<Pt>());
      gens.push_back(Perm(std::move(img)));
    }
    if (gens.empty()) throw std::invalid_argument("perm spec needs at least one generator");
    G = Group::make(std::move(gens));
    name = "perm group of degree " + std::to_string(G->degree());
  } else if (kind == "matrix") {
    MatrixGroupSpec spec;
    spec.field = std::make_shared<GF>(j.at("q").get<unsigned>());
    spec.n = j.at("n").get<unsigned>();
    if (j.contains("action")) spec.action = action_from_string(j.at("action").get<std::string>());
    for (const auto& arr : j.at("generators")) {
      Mat m(spec.n);
      if (arr.size() != m.e.size()) throw std::invalid_argument("matrix entry count mismatch");
      for (std::size_t i = 0; i < m.e.size(); ++i) m.e[i] = arr[i].get<unsigned>();
      spec.generators.push_back(std::move(m));
    }
    G = matrix_to_perm(spec);
    name = "matrix group over GF(" + std::to_string(spec.field->q()) + ")";
  } else if (kind == "classical") {
    Family fam = family_from_string(j.at("family").get<std::string>());
    unsigned n = j.at("n").get<unsigned>();
    unsigned q = j.at("q").get<unsigned>();
    Action action = Action::nonzero_vectors;
    if (j.contains("action")) action = action_from_string(j.at("action").get<std::string>());
    G = classical_group(fam, n, q, action);
    name = family_name(fam) + std::to_string(n) + "(" + std::to_string(q) + ")";
  } else {
    throw std::invalid_argument("unknown group spec kind: " + kind);
  }
  if (j.contains("name")) name = j.at("name").get<std::string>();
  if (name_out) *name_out = name;
  return G;
}

GroupRef group_from_json_file(const std::string& path, std::string* name_out) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open group spec file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return group_from_json_text(ss.str(), name_out);
}

}  // namespace picky
