#include "picky/families.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

#include "picky/gf.hpp"

namespace picky {

namespace {

bool is_power_of_two(std::uint64_t n) { return n != 0 && (n & (n - 1)) == 0; }

unsigned log2_exact(std::uint64_t n) {
  unsigned e = 0;
  while (n > 1) {
    n >>= 1;
    ++e;
  }
  return e;
}

// (p, f) with q = p^f; throws for q < 2 or non-prime-powers.  Wider than
// GF::factor_prime_power, which is capped at `unsigned`.
std::pair<std::uint64_t, unsigned> prime_power(std::uint64_t q) {
  if (q < 2) throw std::invalid_argument("q must be a prime power >= 2");
  std::uint64_t p = q;
  for (std::uint64_t d = 2; d * d <= q; ++d)
    if (q % d == 0) {
      p = d;
      break;
    }
  unsigned f = 0;
  std::uint64_t m = q;
  while (m % p == 0) {
    m /= p;
    ++f;
  }
  if (m != 1) throw std::invalid_argument("q must be a prime power");
  return {p, f};
}

bool family_is_orthogonal(LieFamily f) {
  return f == LieFamily::Spin || f == LieFamily::Omega;
}

bool family_is_suzuki_ree(LieFamily f) {
  return f == LieFamily::B2tw2 || f == LieFamily::G2tw2 || f == LieFamily::F4tw2;
}

bool family_is_exceptional(LieFamily f) {
  switch (f) {
    case LieFamily::G2:
    case LieFamily::F4:
    case LieFamily::E6:
    case LieFamily::E6tw:
    case LieFamily::E7:
    case LieFamily::E8:
    case LieFamily::D4tw3:
      return true;
    default:
      return false;
  }
}

// Whether two specs name the same group for table-matching purposes: Spin and
// Omega are synonyms, the dimension is ignored for exceptional types, and the
// +- sign only separates orthogonal groups in even dimension.
bool same_group(LieFamily fa, unsigned dima, int epsa, LieFamily fb, unsigned dimb,
                int epsb, std::uint64_t qa, std::uint64_t qb) {
  if (qa != qb) return false;
  if (family_is_orthogonal(fa) != family_is_orthogonal(fb)) return false;
  if (!family_is_orthogonal(fa) && fa != fb) return false;
  if (family_is_exceptional(fa)) return true;
  if (dima != dimb) return false;
  if (family_is_orthogonal(fa) && dima % 2 == 0 && epsa != epsb) return false;
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// Names
// ---------------------------------------------------------------------------

std::string to_string(LieFamily f) {
  switch (f) {
    case LieFamily::SL: return "SL";
    case LieFamily::SU: return "SU";
    case LieFamily::Sp: return "Sp";
    case LieFamily::Spin: return "Spin";
    case LieFamily::Omega: return "Omega";
    case LieFamily::G2: return "G2";
    case LieFamily::F4: return "F4";
    case LieFamily::E6: return "E6";
    case LieFamily::E6tw: return "2E6";
    case LieFamily::E7: return "E7";
    case LieFamily::E8: return "E8";
    case LieFamily::D4tw3: return "3D4";
    case LieFamily::B2tw2: return "2B2";
    case LieFamily::G2tw2: return "2G2";
    case LieFamily::F4tw2: return "2F4";
  }
  return "?";
}

std::optional<std::pair<LieFamily, int>> family_from_string(const std::string& name) {
  static const std::pair<const char*, std::pair<LieFamily, int>> names[] = {
      {"SL", {LieFamily::SL, +1}},       {"SU", {LieFamily::SU, -1}},
      {"Sp", {LieFamily::Sp, +1}},       {"Spin", {LieFamily::Spin, +1}},
      {"Spin+", {LieFamily::Spin, +1}},  {"Spin-", {LieFamily::Spin, -1}},
      {"Omega", {LieFamily::Omega, +1}}, {"Omega+", {LieFamily::Omega, +1}},
      {"Omega-", {LieFamily::Omega, -1}}, {"G2", {LieFamily::G2, +1}},
      {"F4", {LieFamily::F4, +1}},       {"E6", {LieFamily::E6, +1}},
      {"2E6", {LieFamily::E6tw, +1}},    {"E7", {LieFamily::E7, +1}},
      {"E8", {LieFamily::E8, +1}},       {"3D4", {LieFamily::D4tw3, +1}},
      {"2B2", {LieFamily::B2tw2, +1}},   {"2G2", {LieFamily::G2tw2, +1}},
      {"2F4", {LieFamily::F4tw2, +1}},
  };
  for (const auto& [key, val] : names)
    if (name == key) return val;
  return std::nullopt;
}

std::string to_string(QShape s) {
  switch (s) {
    case QShape::Fermat: return "Fermat";
    case QShape::Mersenne: return "Mersenne";
    case QShape::Nine: return "Nine";
    case QShape::Neither: return "Neither";
  }
  return "?";
}

std::string FamilySpec::label() const {
  std::string out = cover_label;
  out += to_string(family);
  if (!family_is_exceptional(family) && !family_is_suzuki_ree(family)) {
    out += std::to_string(dim);
    if (family_is_orthogonal(family) && dim % 2 == 0) out += epsilon >= 0 ? "+" : "-";
  }
  out += "(" + std::to_string(q) + ")";
  return out;
}

// ---------------------------------------------------------------------------
// Arithmetic helpers
// ---------------------------------------------------------------------------

bool is_fermat_prime(std::uint64_t q) {
  if (q < 3 || !is_power_of_two(q - 1)) return false;
  // For 2^m + 1 to be prime, m must itself be a power of two.
  if (!is_power_of_two(log2_exact(q - 1)) && q != 3) return false;
  return GF::is_prime(q);
}

bool is_mersenne_prime(std::uint64_t q) {
  return q >= 3 && is_power_of_two(q + 1) && GF::is_prime(q);
}

QShape fermat_mersenne(std::uint64_t q) {
  if (q == 9) return QShape::Nine;
  if (is_fermat_prime(q)) return QShape::Fermat;
  if (is_mersenne_prime(q)) return QShape::Mersenne;
  return QShape::Neither;
}

std::uint64_t d_ell(std::uint64_t q, std::uint64_t ell) {
  if (ell < 2) throw std::invalid_argument("d_ell: modulus must be >= 2");
  if (std::gcd(q, ell) != 1)
    throw std::invalid_argument("d_ell: q and ell must be coprime");
  std::uint64_t acc = q % ell;
  for (std::uint64_t d = 1; d <= ell; ++d) {
    if (acc == 1) return d;
    acc = (acc * (q % ell)) % ell;
  }
  throw std::logic_error("d_ell: no multiplicative order found");
}

unsigned binary_digit_count(std::uint64_t n) {
  return static_cast<unsigned>(std::popcount(n));
}

// ---------------------------------------------------------------------------
// Published tables
// ---------------------------------------------------------------------------

unsigned TableRow::class_count() const {
  unsigned total = 0;
  for (const auto& [order, mult] : centralizers) total += mult;
  return total;
}

std::uint64_t TableRow::total_irr() const {
  std::uint64_t total = 0;
  for (std::uint64_t c : irr_counts) total += c;
  return total;
}

const std::vector<TableRow>& picky2_table() {
  using F = LieFamily;
  static const std::vector<TableRow> rows = {
      {"SL4(3)", F::SL, 4, 3, +1, 2, 8, {{16, 2}}, {12}},
      {"SU3(3)", F::SU, 3, 3, -1, 2, 8, {{8, 2}}, {8}},
      {"3_i.SU4(3)", F::SU, 4, 3, -1, 2, 8, {{96, 4}}, {24, 6, 24}},
      {"6.Omega7(3)", F::Spin, 7, 3, +1, 2, 8, {{96, 2}}, {48, 0, 0, 12}},
      {"6.Omega7(3)", F::Spin, 7, 3, +1, 2, 8, {{48, 1}}, {48}},
      {"Sp6(3)", F::Sp, 6, 3, +1, 2, 8, {{192, 2}}, {32, 24}},
      {"Sp6(3)", F::Sp, 6, 3, +1, 2, 8, {{32, 1}}, {32}},
      {"Omega8+(3)", F::Spin, 8, 3, +1, 2, 8, {{64, 2}}, {16, 0, 4, 8}},
      {"Omega8+(3)", F::Spin, 8, 3, +1, 2, 8, {{32, 1}}, {16, 0, 4}},
      {"2.Omega8-(3)", F::Spin, 8, 3, -1, 2, 8, {{64, 2}}, {32, 0, 0, 8}},
      {"3.G2(3)", F::G2, 0, 3, +1, 2, 8, {{24, 2}}, {24}},
  };
  return rows;
}

const std::vector<TableRow>& picky3_table() {
  using F = LieFamily;
  static const std::vector<TableRow> rows = {
      {"4_i.SL3(4)", F::SL, 3, 4, +1, 3, 3, {{36, 1}}, {24}},
      {"SU3(8)", F::SU, 3, 8, -1, 3, 9, {{81, 9}}, {6, 21}},
      {"2.SU4(2)", F::SU, 4, 2, -1, 3, 9, {{18, 2}}, {18}},
      {"SU5(2)", F::SU, 5, 2, -1, 3, 9, {{54, 2}, {27, 2}}, {27}},
      {"6.SU6(2)", F::SU, 6, 2, -1, 3, 9, {{324, 6}}, {36, 72}},
      {"6.SU6(2)", F::SU, 6, 2, -1, 3, 9, {{54, 1}}, {36}},
      {"SU7(2)", F::SU, 7, 2, -1, 3, 9, {{81, 1}}, {54}},
      {"SU8(2)", F::SU, 8, 2, -1, 3, 9, {{486, 1}, {243, 1}}, {162}},
      {"2.Sp6(2)", F::Sp, 6, 2, +1, 3, 9, {{18, 1}}, {18}},
      {"Sp8(2)", F::Sp, 8, 2, +1, 3, 9, {{54, 1}, {27, 1}}, {27}},
      {"Sp10(2)", F::Sp, 10, 2, +1, 3, 9, {{162, 2}}, {81}},
      {"2.Omega8+(2)", F::Omega, 8, 2, +1, 3, 9, {{54, 3}}, {36}},
      {"Omega10+(2)", F::Omega, 10, 2, +1, 3, 9, {{27, 1}}, {27}},
      {"Omega8-(2)", F::Omega, 8, 2, -1, 3, 9, {{9, 1}}, {9}},
      {"Omega10-(2)", F::Omega, 10, 2, -1, 3, 9, {{324, 1}, {162, 2}, {81, 1}}, {54}},
      {"Omega12-(2)", F::Omega, 12, 2, -1, 3, 9, {{162, 1}}, {81}},
      {"G2(8)", F::G2, 0, 8, +1, 3, 9, {{81, 3}}, {9, 15}},
      {"3D4(2)", F::D4tw3, 0, 2, +1, 3, 9, {{54, 3}}, {9, 6}},
      {"2.F4(2)", F::F4, 0, 2, +1, 3, 9, {{108, 2}}, {54}},
  };
  return rows;
}

const std::vector<SU8ValueRow>& su8_value_table() {
  static const std::vector<SU8ValueRow> rows = {
      {"2A7(q)", 1, {{1, 6}, {2, 9}, {4, 3}}, {{1, 12}, {2, 6}}},
      {"Ph2.2A6(q)", 2, {{1, 6}, {2, 3}}, {{1, 6}, {2, 3}}},
      {"Ph2.A1(q).2A5(q)", 2, {{1, 6}, {2, 9}, {4, 3}}, {{1, 12}, {2, 6}}},
      {"Ph2^2.2A5(q)", 1, {{1, 6}, {2, 3}}, {{1, 6}, {2, 3}}},
      {"Ph2.2A2(q).2A4(q)", 2, {{1, 9}, {2, 9}}, {{1, 18}}},
      {"Ph2.2A3(q)^2", 1, {{1, 9}}, {{1, 9}}},
      {"Ph2^2.2A2(q).2A3(q)", 2, {{1, 9}}, {{1, 9}}},
      {"Ph2^2.A1(q).2A2(q)^2", 1, {{1, 9}, {2, 9}}, {{1, 18}}},
  };
  return rows;
}

// ---------------------------------------------------------------------------
// Existence predicate
// ---------------------------------------------------------------------------

namespace {

// Whether the Sylow 3-subgroup of the (3'-characteristic) group is abelian,
// for the families where the analytic answer is cheap.  The classification
// of picky 3-elements only covers the nonabelian case.
bool sylow3_abelian(LieFamily fam, unsigned dim, std::uint64_t q) {
  auto linear_rank = [&](bool unitary) {
    // 3 divides q - 1 (linear) resp. q + 1 (unitary) iff the basic cyclotomic
    // factor is the degree-1 one; otherwise the relevant factor has degree 2.
    unsigned d = (!unitary && q % 3 == 1) || (unitary && q % 3 == 2) ? 1 : 2;
    return dim / d;
  };
  switch (fam) {
    case LieFamily::SL: return linear_rank(false) < 3;
    case LieFamily::SU: return linear_rank(true) < 3;
    case LieFamily::Sp: return dim / 2 < 3;
    case LieFamily::Spin:
    case LieFamily::Omega: return dim / 2 < 3;
    default:
      // G2, F4, 3D4 and the E-types all have nonabelian Sylow 3-subgroups
      // for every q coprime to 3 (each contains an SL3(q) or SU3(q) with
      // 3 | q -+ 1, extended by further torus factors).
      return false;
  }
}

}  // namespace

bool has_picky_supported(const FamilySpec& spec, std::string* reason) {
  auto fail = [&](const char* why) {
    if (reason) *reason = why;
    return false;
  };
  if (spec.ell != 2 && spec.ell != 3)
    return fail("only ell = 2 and ell = 3 are covered by the classification");
  if (family_is_suzuki_ree(spec.family))
    return fail("Suzuki and Ree families are not supported");
  std::uint64_t p = 0;
  try {
    p = prime_power(spec.q).first;
  } catch (const std::invalid_argument&) {
    return fail("q must be a prime power >= 2");
  }
  if (p == spec.ell)
    return fail("ell equals the defining characteristic; the classification "
                "covers non-defining primes only");
  if (!family_is_exceptional(spec.family)) {
    unsigned min_dim = 2;
    if (spec.family == LieFamily::SU) min_dim = 2;
    if (spec.family == LieFamily::Sp) min_dim = 2;
    if (family_is_orthogonal(spec.family)) min_dim = 7;
    if (spec.dim < min_dim)
      return fail(family_is_orthogonal(spec.family)
                      ? "orthogonal groups are supported in dimension >= 7 "
                        "only (smaller ones are isomorphic to linear, unitary "
                        "or symplectic groups)"
                      : "matrix dimension too small");
    if (spec.family == LieFamily::Sp && spec.dim % 2 != 0)
      return fail("symplectic groups need even dimension");
  }
  if (spec.ell == 3 && sylow3_abelian(spec.family, spec.dim, spec.q))
    return fail("the Sylow 3-subgroup is abelian; existence of picky "
                "3-elements there is outside the classified list and is "
                "decided by the engine");
  return true;
}

bool has_picky(const FamilySpec& spec) {
  std::string reason;
  if (!has_picky_supported(spec, &reason)) throw std::invalid_argument("has_picky: " + reason);

  LieFamily fam = spec.family;
  unsigned dim = spec.dim;
  // SU2 and Sp2 are SL2 in disguise.
  if ((fam == LieFamily::SU || fam == LieFamily::Sp) && dim == 2) fam = LieFamily::SL;

  if (spec.ell == 2) {
    const std::uint64_t q = spec.q;
    switch (fam) {
      case LieFamily::SL:
        if (dim == 2) return fermat_mersenne(q) != QShape::Neither;
        if (dim == 3) return q % 4 == 3 && is_mersenne_prime(q);
        if (dim == 4) return q == 3;
        return false;
      case LieFamily::SU:
        if (dim == 3) return (q % 4 == 1 && (is_fermat_prime(q) || q == 9)) || q == 3;
        if (dim == 4) return q == 3;
        return false;
      case LieFamily::Sp:
        if (dim == 4) return q != 5 && q != 7 && (is_fermat_prime(q) || is_mersenne_prime(q));
        if (dim == 6) return q == 3;
        return false;
      case LieFamily::Spin:
      case LieFamily::Omega:
        if (dim == 7 || dim == 8) return q == 3;
        return false;
      case LieFamily::G2:
        return q == 3;
      default:
        return false;  // F4, 3D4 and the E-types never have picky 2-elements
    }
  }

  // ell = 3: membership in the published list.
  for (const TableRow& row : picky3_table())
    if (same_group(fam, dim, spec.epsilon, row.family, row.dim, row.epsilon, spec.q,
                   row.q))
      return true;
  return false;
}

PickyProfile predicted_picky_profile(const FamilySpec& spec) {
  if (!has_picky(spec))
    throw std::invalid_argument("predicted_picky_profile: the group has no picky " +
                                std::to_string(spec.ell) + "-elements");

  LieFamily fam = spec.family;
  unsigned dim = spec.dim;
  if ((fam == LieFamily::SU || fam == LieFamily::Sp) && dim == 2) fam = LieFamily::SL;

  PickyProfile out;
  const auto& table = spec.ell == 2 ? picky2_table() : picky3_table();
  for (const TableRow& row : table)
    if (same_group(fam, dim, spec.epsilon, row.family, row.dim, row.epsilon, spec.q,
                   row.q))
      out.rows.push_back(row);
  if (!out.rows.empty()) {
    out.min_order = out.rows.front().element_order;
    out.description = "published table rows for " + out.rows.front().group +
                      " (values computed in the full covering group)";
    return out;
  }

  // ell = 2 infinite families.
  if (fam == LieFamily::Sp) {  // Sp4(q), q Fermat/Mersenne, q != 5, 7
    out.min_order = 8;
    out.partial = true;
    out.description =
        "regular 2-elements of order >= 8 in the torus C_{q-eps}^2 whose "
        "eigenvalue set (16th-or-higher roots of unity) is not closed under "
        "negation; necessary condition only -- the engine decides the exact "
        "subset";
    return out;
  }
  if (fam == LieFamily::SL && dim == 2 && spec.q == 3) {
    out.normal_sylow = true;
    out.min_order = 1;
    out.description =
        "the Sylow 2-subgroup (quaternion of order 8) is normal; every "
        "2-element is picky";
    return out;
  }
  // SL2 (q = 2^n + eps Fermat/Mersenne/9), SL3 (q Mersenne), SU3 (q Fermat or 9)
  out.min_order = 4;
  out.description =
      "published bound: every 2-element of order >= 4 is picky; engine "
      "cross-checks show that for q = 2^n + eps with n >= 3 only the classes "
      "of order >= 8 are picky (the order-4 class meets several Sylow "
      "subgroups), so treat order-4 claims as engine-decided";
  return out;
}

// ---------------------------------------------------------------------------
// SL2 value model
// ---------------------------------------------------------------------------

Sl2ValueModel sl2_value_model(std::uint64_t q, std::uint64_t x_order) {
  auto [p, f] = prime_power(q);
  if (p == 2) throw std::invalid_argument("sl2_value_model: q must be odd");
  Sl2ValueModel model;
  model.q = q;
  if (is_power_of_two(q - 1)) {
    model.epsilon = +1;
    model.n = log2_exact(q - 1);
  } else if (is_power_of_two(q + 1)) {
    model.epsilon = -1;
    model.n = log2_exact(q + 1);
  } else {
    throw std::invalid_argument("sl2_value_model: q is not 2^n +- 1");
  }
  if (model.n < 3)
    throw std::invalid_argument(
        "sl2_value_model: needs 2^n = q - eps with n >= 3 (q = 5 is served by "
        "a separate fixture)");
  if (!is_power_of_two(x_order) || x_order < 4 || x_order > (q - model.epsilon))
    throw std::invalid_argument(
        "sl2_value_model: x_order must be a power of two in [4, 2^n]");
  model.x_order = x_order;
  model.local_order = 2 * (q - model.epsilon);

  const Cyclo one(1);
  const std::uint64_t half = (q + model.epsilon) / 2;
  model.global_rows.push_back({1, one, false});
  model.global_rows.push_back({q, one, false});
  model.global_rows.push_back({half, one, false});
  model.global_rows.push_back({half, one, false});
  for (int i = 0; i < 4; ++i) model.local_rows.push_back({1, one, false});

  const auto m = static_cast<unsigned>(x_order);
  for (std::uint64_t k = 1; k + 1 <= (q - model.epsilon) / 2; ++k) {
    Cyclo v = Cyclo::zeta(m, k % m) + Cyclo::zeta(m, (m - k % m) % m);
    bool zero = v == Cyclo(0);
    model.global_rows.push_back({q + model.epsilon, sign_class(v), zero});
    model.local_rows.push_back({2, sign_class(v), zero});
  }
  return model;
}

// ---------------------------------------------------------------------------
// Metacyclic model
// ---------------------------------------------------------------------------

MetacyclicModel metacyclic_model(std::uint64_t m, std::int64_t s) {
  if (m == 0) throw std::invalid_argument("metacyclic_model: m must be positive");
  const std::uint64_t sm = ((s % static_cast<std::int64_t>(m)) + static_cast<std::int64_t>(m)) %
                           static_cast<std::int64_t>(m);
  if ((sm * sm) % m != 1 % m)
    throw std::invalid_argument("metacyclic_model: s^2 must be 1 mod m");

  MetacyclicModel model;
  model.m = m;
  model.s = sm;
  model.group_order = 2 * m;
  for (std::uint64_t j = 0; j < m; ++j) {
    std::uint64_t js = (j * sm) % m;
    if (js == j) {
      model.rows.push_back({1, j, +1});
      model.rows.push_back({1, j, -1});
    } else if (j < js) {
      model.rows.push_back({2, j, +1});
    }
  }
  std::sort(model.rows.begin(), model.rows.end(), [](const auto& a, const auto& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    if (a.j != b.j) return a.j < b.j;
    return a.sign > b.sign;
  });
  return model;
}

Cyclo MetacyclicModel::value(std::size_t r, std::uint64_t t, unsigned outer) const {
  const Row& row = rows.at(r);
  const auto mc = static_cast<unsigned>(m);
  if (row.degree == 1) {
    Cyclo v = Cyclo::zeta(mc, (row.j * (t % m)) % m);
    return outer ? (row.sign > 0 ? v : -v) : v;
  }
  if (outer) return Cyclo(0);
  std::uint64_t js = (row.j * s) % m;
  return Cyclo::from_zeta_powers(
      mc, {{(row.j * (t % m)) % m, 1}, {(js * (t % m)) % m, 1}});
}

std::uint64_t MetacyclicModel::sum_degree_squares() const {
  std::uint64_t total = 0;
  for (const Row& r : rows) total += r.degree * r.degree;
  return total;
}

GroupRef metacyclic_perm_group(std::uint64_t m, std::int64_t s) {
  if (m < 2 || m > 60'000)
    throw std::invalid_argument("metacyclic_perm_group: m out of range");
  const std::uint64_t sm = ((s % static_cast<std::int64_t>(m)) + static_cast<std::int64_t>(m)) %
                           static_cast<std::int64_t>(m);
  if ((sm * sm) % m != 1)
    throw std::invalid_argument("metacyclic_perm_group: s^2 must be 1 mod m");
  const bool trivial_action = sm == 1;
  const std::size_t deg = m + (trivial_action ? 2 : 0);
  std::vector<Pt> a(deg), b(deg);
  for (std::size_t p = 0; p < deg; ++p) a[p] = b[p] = static_cast<Pt>(p);
  for (std::uint64_t p = 0; p < m; ++p) {
    a[p] = static_cast<Pt>((p + 1) % m);
    b[p] = static_cast<Pt>((p * sm) % m);
  }
  if (trivial_action) {
    b[m] = static_cast<Pt>(m + 1);
    b[m + 1] = static_cast<Pt>(m);
  }
  auto G = Group::make({Perm(std::move(a)), Perm(std::move(b))});
  if (G->order() != 2 * m)
    throw std::logic_error("metacyclic_perm_group: unexpected order");
  return G;
}

std::pair<std::uint64_t, unsigned> metacyclic_decode(std::uint64_t m, std::int64_t s,
                                                     const Perm& g) {
  const std::uint64_t sm = ((s % static_cast<std::int64_t>(m)) + static_cast<std::int64_t>(m)) %
                           static_cast<std::int64_t>(m);
  const bool trivial_action = sm == 1;
  const std::size_t deg = m + (trivial_action ? 2 : 0);
  if (g.degree() != deg) throw std::invalid_argument("metacyclic_decode: wrong degree");
  auto matches = [&](std::uint64_t t, unsigned outer) {
    for (std::uint64_t p = 0; p < m; ++p) {
      std::uint64_t want = outer ? (sm * ((p + t) % m)) % m : (p + t) % m;
      if (g[static_cast<Pt>(p)] != want) return false;
    }
    if (trivial_action) {
      Pt pm = static_cast<Pt>(m);
      if (outer ? g[pm] != m + 1 : g[pm] != m) return false;
    }
    return true;
  };
  // g = a^t b^outer acts as p -> p + t (outer 0) or p -> s(p + t) (outer 1).
  std::uint64_t t0 = g[Pt{0}];
  if (matches(t0, 0)) return {t0, 0};
  std::uint64_t t1 = (sm * g[Pt{0}]) % m;  // s^{-1} = s
  if (matches(t1, 1)) return {t1, 1};
  throw std::invalid_argument("metacyclic_decode: not an element of the model group");
}

MetacyclicModel sl3_local_model(std::uint64_t q, int epsilon) {
  if (epsilon != 1 && epsilon != -1)
    throw std::invalid_argument("sl3_local_model: epsilon must be +-1");
  auto [p, f] = prime_power(q);
  if (p == 2) throw std::invalid_argument("sl3_local_model: q must be odd");
  if ((epsilon == 1 && q % 4 != 3) || (epsilon == -1 && q % 4 != 1))
    throw std::invalid_argument("sl3_local_model: needs q = -epsilon (mod 4)");
  const std::uint64_t m = q * q - 1;
  const std::int64_t s = epsilon == 1 ? static_cast<std::int64_t>(q % m)
                                      : static_cast<std::int64_t>(m - (q % m));
  MetacyclicModel model = metacyclic_model(m, s);
  if (model.sum_degree_squares() != model.group_order)
    throw std::logic_error("sl3_local_model: degree check failed");
  return model;
}

// ---------------------------------------------------------------------------
// Wreath model
// ---------------------------------------------------------------------------

WreathModel wreath_square_model(const std::vector<std::uint64_t>& base_degrees) {
  if (base_degrees.empty())
    throw std::invalid_argument("wreath_square_model: empty base degree list");
  WreathModel model;
  for (std::uint64_t d : base_degrees) model.base_order += d * d;
  model.group_order = 2 * model.base_order * model.base_order;
  const std::size_t k = base_degrees.size();
  for (std::size_t i = 0; i < k; ++i) {
    // The diagonal character alpha x alpha extends in two ways.
    model.degrees.push_back(base_degrees[i] * base_degrees[i]);
    model.degrees.push_back(base_degrees[i] * base_degrees[i]);
    for (std::size_t j = i + 1; j < k; ++j)
      model.degrees.push_back(2 * base_degrees[i] * base_degrees[j]);
  }
  std::sort(model.degrees.begin(), model.degrees.end());
  if (model.sum_degree_squares() != model.group_order)
    throw std::logic_error("wreath_square_model: degree check failed");
  return model;
}

std::uint64_t WreathModel::sum_degree_squares() const {
  std::uint64_t total = 0;
  for (std::uint64_t d : degrees) total += d * d;
  return total;
}

WreathModel sp4_local_model(std::uint64_t q, int epsilon) {
  if (epsilon != 1 && epsilon != -1)
    throw std::invalid_argument("sp4_local_model: epsilon must be +-1");
  auto [p, f] = prime_power(q);
  if (p == 2) throw std::invalid_argument("sp4_local_model: q must be odd");
  const std::uint64_t k = epsilon == 1 ? q - 1 : q + 1;
  if (!is_power_of_two(k) || k < 16)
    throw std::invalid_argument(
        "sp4_local_model: needs q - epsilon a power of two >= 16");
  MetacyclicModel base = metacyclic_model(k, -1);
  std::vector<std::uint64_t> degs;
  degs.reserve(base.rows.size());
  for (const auto& r : base.rows) degs.push_back(r.degree);
  return wreath_square_model(degs);
}

}  // namespace picky
