#include "picky/pickycore.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "picky/backtrack.hpp"
#include "picky/gf.hpp"
#include "picky/sylow.hpp"

namespace picky {

namespace {

using u64 = std::uint64_t;

bool is_ell_power(u64 o, u64 ell) {
  while (o % ell == 0) o /= ell;
  return o == 1;
}

// Membership-count kernels: how many elements of a streamed chunk of flat
// image arrays lie in P.  Serial reference and OpenMP variant; identical
// results by construction (a pure count).
constexpr std::size_t kChunkElems = 8192;
constexpr u64 kMembershipLimit = 1'000'000;

u64 count_chunk_serial(const GroupRef& P, const std::vector<Pt>& chunk,
                       std::size_t deg) {
  u64 c = 0;
  for (std::size_t off = 0; off < chunk.size(); off += deg) {
    Perm u(std::vector<Pt>(chunk.begin() + off, chunk.begin() + off + deg));
    if (P->contains(u)) ++c;
  }
  return c;
}

u64 count_chunk_parallel(const GroupRef& P, const std::vector<Pt>& chunk,
                         std::size_t deg, int workers) {
  const long long m = static_cast<long long>(chunk.size() / deg);
  u64 total = 0;
#pragma omp parallel for schedule(static) reduction(+ : total) \
    num_threads(workers)
  for (long long i = 0; i < m; ++i) {
    std::size_t off = static_cast<std::size_t>(i) * deg;
    Perm u(std::vector<Pt>(chunk.begin() + off, chunk.begin() + off + deg));
    if (P->contains(u)) total += 1;
  }
  return total;
}

// |x^G intersect P| for the class with index ci.
u64 class_sylow_intersection(const EllContext& ctx, unsigned ci, int workers) {
  const ConjClasses& cc = *ctx.classes;
  const std::size_t deg = ctx.G->degree();
  if (cc.cls(ci).size <= kMembershipLimit) {
    // Exhaustive membership tests of the class elements in P.
    u64 total = 0;
    std::vector<Pt> chunk;
    chunk.reserve(kChunkElems * deg);
    auto flush = [&]() {
      if (chunk.empty()) return;
      total += workers > 1 ? count_chunk_parallel(ctx.P, chunk, deg, workers)
                           : count_chunk_serial(ctx.P, chunk, deg);
      chunk.clear();
    };
    cc.for_each_element(ci, [&](const Pt* img) {
      chunk.insert(chunk.end(), img, img + deg);
      if (chunk.size() >= kChunkElems * deg) flush();
    });
    flush();
    return total;
  }
  // Class too large to stream: the intersection is a union of P-conjugacy
  // orbits, so sum |u^P| over a transversal of P-classes with u conjugate to
  // the class representative in G (a constant-time class-id lookup).
  Budget pb;
  pb.max_order = ctx.P->order();
  pb.max_classes = 60'000;
  pb.max_degree = static_cast<unsigned>(deg);
  ConjClasses pcls = ConjClasses::compute(ctx.P, pb);
  u64 total = 0;
  for (std::size_t i = 0; i < pcls.count(); ++i)
    if (cc.class_of(pcls.cls(i).rep) == ci) total += pcls.cls(i).size;
  return total;
}

u64 class_sylow_count(const EllContext& ctx, unsigned ci, int workers) {
  const ConjClasses& cc = *ctx.classes;
  const u64 class_size = cc.cls(ci).size;
  const u64 centralizer = ctx.G->order() / class_size;
  const u64 inter = class_sylow_intersection(ctx, ci, workers);
  const u64 num = inter * centralizer;
  const u64 nrm = ctx.N->order();
  if (num % nrm != 0)
    throw std::logic_error(
        "sylow_count_containing: counting identity division not exact "
        "(internal bug)");
  return num / nrm;
}

PickyClass make_picky_class(const EllContext& ctx, unsigned ci, int workers) {
  const ConjClass& c = ctx.classes->cls(ci);
  PickyClass pc;
  pc.class_index = ci;
  pc.rep = c.rep;
  pc.element_order = c.element_order;
  pc.centralizer_order = ctx.G->order() / c.size;
  pc.sylow_count = class_sylow_count(ctx, ci, workers);
  pc.ell = ctx.ell;
  return pc;
}

VerificationKey make_key(Mode mode, u64 deg_ell_part, const Cyclo& v,
                         u64 ell) {
  VerificationKey k;
  k.degree_ell_part = deg_ell_part;
  switch (mode) {
    case Mode::picky:
      k.field = field_of_values(v);
      break;
    case Mode::picky_plus:
      k.field = field_of_values(v);
      k.norm_valuation = ell_data(v, ell).norm_valuation;
      break;
    case Mode::strong:
      k.sign_class = sign_class(v).to_json_text();
      break;
  }
  return k;
}

nlohmann::ordered_json key_to_json(const VerificationKey& k) {
  nlohmann::ordered_json j;
  j["degreeEllPart"] = k.degree_ell_part;
  if (k.field) {
    nlohmann::ordered_json f;
    f["conductor"] = k.field->conductor;
    f["stabilizer"] = k.field->stabilizer;
    j["field"] = std::move(f);
  }
  if (k.norm_valuation) j["normValuation"] = *k.norm_valuation;
  if (k.sign_class)
    j["signClass"] = nlohmann::ordered_json::parse(*k.sign_class);
  return j;
}

}  // namespace

EllContext ell_context(const GroupRef& G, std::uint64_t ell,
                       const Budget& budget) {
  if (!GF::is_prime(ell))
    throw std::invalid_argument("ell_context: ell must be prime");
  EllContext ctx;
  ctx.G = G;
  ctx.ell = ell;
  ctx.classes =
      std::make_shared<const ConjClasses>(ConjClasses::compute(G, budget));
  ctx.P = sylow_subgroup(G, ell);
  if (ctx.P->is_trivial() || ctx.P->order() == G->order())
    ctx.N = G;  // trivial or normal-by-being-everything: N_G(P) = G
  else
    ctx.N = normalizer(G, ctx.P);
  return ctx;
}

std::uint64_t sylow_count_containing(const EllContext& ctx, const Perm& x,
                                     int workers) {
  unsigned ci = ctx.classes->class_of(x);  // throws if x is not in G
  if (!is_ell_power(ctx.classes->cls(ci).element_order, ctx.ell))
    throw std::invalid_argument(
        "sylow_count_containing: element order is not a power of ell");
  return class_sylow_count(ctx, ci, workers);
}

std::vector<PickyClass> ell_class_survey(const EllContext& ctx, int workers) {
  std::vector<PickyClass> out;
  for (unsigned ci = 0; ci < ctx.classes->count(); ++ci)
    if (is_ell_power(ctx.classes->cls(ci).element_order, ctx.ell))
      out.push_back(make_picky_class(ctx, ci, workers));
  return out;
}

std::vector<PickyClass> picky_classes(const EllContext& ctx, int workers) {
  std::vector<PickyClass> out;
  for (PickyClass& pc : ell_class_survey(ctx, workers))
    if (pc.picky()) out.push_back(std::move(pc));
  return out;
}

std::vector<IrrXRow> irr_x(const CharTable& table, const Perm& x) {
  if (!table.group()->contains(x))
    throw std::invalid_argument("irr_x: element not in the group");
  const unsigned cx = table.classes().class_of(x);
  const u64 centralizer =
      table.group()->order() / table.classes().cls(cx).size;
  std::vector<IrrXRow> out;
  Cyclo norm;
  for (std::size_t row = 0; row < table.rows(); ++row) {
    const Cyclo& v = table.value(row, cx);
    if (v.is_zero()) continue;
    norm += v * v.conj();
    out.push_back({row, table.degree(row), v});
  }
  if (norm != Cyclo(mpq_class(static_cast<unsigned long>(centralizer))))
    throw std::logic_error(
        "irr_x: column-norm identity sum |chi(x)|^2 = |C_G(x)| failed");
  return out;
}

const char* to_string(Mode m) {
  switch (m) {
    case Mode::picky: return "picky";
    case Mode::picky_plus: return "picky_plus";
    case Mode::strong: return "strong";
  }
  return "?";
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

bool VerificationKey::operator<(const VerificationKey& o) const {
  if (degree_ell_part != o.degree_ell_part)
    return degree_ell_part < o.degree_ell_part;
  if (field != o.field) return field < o.field;
  if (norm_valuation != o.norm_valuation)
    return norm_valuation < o.norm_valuation;
  return sign_class < o.sign_class;
}

std::string VerificationKey::to_string() const {
  std::ostringstream os;
  os << "(degreeEllPart=" << degree_ell_part;
  if (field) os << ", field=" << field->to_string();
  if (norm_valuation) os << ", normValuation=" << *norm_valuation;
  if (sign_class) os << ", signClass=" << *sign_class;
  os << ")";
  return os.str();
}

std::string Certificate::to_json_text() const {
  nlohmann::ordered_json j;
  j["group"] = group_label;
  j["ell"] = ell;
  nlohmann::ordered_json c;
  c["order"] = cls.element_order;
  c["centralizer"] = cls.centralizer_order;
  c["n_x"] = cls.sylow_count;
  j["class"] = std::move(c);
  j["mode"] = picky::to_string(mode);
  nlohmann::ordered_json ps = nlohmann::ordered_json::array();
  for (const CertificatePair& p : pairs) {
    nlohmann::ordered_json e;
    e["globalRow"] = p.global_row;
    e["localRow"] = p.local_row;
    e["key"] = key_to_json(p.key);
    e["globalDegree"] = p.global_degree;
    e["localDegree"] = p.local_degree;
    e["globalValue"] = nlohmann::ordered_json::parse(p.global_value.to_json_text());
    e["localValue"] = nlohmann::ordered_json::parse(p.local_value.to_json_text());
    ps.push_back(std::move(e));
  }
  j["pairs"] = std::move(ps);
  j["verdict"] = picky::to_string(verdict);
  if (!note.empty()) j["note"] = note;
  return j.dump(2);
}

Certificate verify(const EllContext& ctx, const CharTable& table_G,
                   const CharTable& table_N, const PickyClass& pc, Mode mode,
                   const std::string& group_label) {
  if (table_G.group() != ctx.G)
    throw std::invalid_argument("verify: table_G is not the table of ctx.G");
  if (table_N.group() != ctx.N)
    throw std::invalid_argument("verify: table_N is not the table of ctx.N");
  if (pc.ell != ctx.ell)
    throw std::invalid_argument("verify: class was surveyed for a different ell");
  if (ctx.classes->class_of(pc.rep) != pc.class_index)
    throw std::invalid_argument("verify: class index does not match its representative");
  if (!pc.picky())
    throw std::invalid_argument(
        "verify: element is not picky (n_x != 1); the statements under test "
        "are only about picky elements");

  // A picky class meets P (n_x * |N| = |x^G ^ P| * |C| > 0), and any member
  // inside P has P as its unique Sylow subgroup, so N really is the local
  // subgroup of the statement.  Pick the first member of P in the class.
  Perm x;
  bool found = false;
  ctx.P->enumerate([&](const Perm& u) {
    if (ctx.classes->class_of(u) == pc.class_index) {
      x = u;
      found = true;
      return false;
    }
    return true;
  });
  if (!found)
    throw std::logic_error("verify: picky class does not meet P (internal bug)");

  Certificate cert;
  cert.group_label = group_label.empty()
                         ? "group-of-order-" + std::to_string(ctx.G->order())
                         : group_label;
  cert.ell = ctx.ell;
  cert.cls = pc;
  cert.mode = mode;

  struct Side {
    std::map<VerificationKey, std::vector<std::size_t>> by_key;
  };
  auto collect = [&](const CharTable& T) {
    Side s;
    const unsigned cx = T.classes().class_of(x);
    for (std::size_t row = 0; row < T.rows(); ++row) {
      const Cyclo& v = T.value(row, cx);
      if (v.is_zero()) continue;
      s.by_key[make_key(mode, T.degree_ell_part(row, ctx.ell), v, ctx.ell)]
          .push_back(row);
    }
    return s;
  };
  Side g = collect(table_G), n = collect(table_N);

  // Multiset comparison: find the first key whose multiplicities differ.
  auto gi = g.by_key.begin();
  auto ni = n.by_key.begin();
  while (gi != g.by_key.end() || ni != n.by_key.end()) {
    if (ni == n.by_key.end() ||
        (gi != g.by_key.end() && gi->first < ni->first)) {
      cert.verdict = Verdict::fails;
      cert.note = "key " + gi->first.to_string() + ": multiplicity " +
                  std::to_string(gi->second.size()) + " in Irr^x(G) vs 0 in Irr^x(N)";
      return cert;
    }
    if (gi == g.by_key.end() || ni->first < gi->first) {
      cert.verdict = Verdict::fails;
      cert.note = "key " + ni->first.to_string() + ": multiplicity 0 in Irr^x(G) vs " +
                  std::to_string(ni->second.size()) + " in Irr^x(N)";
      return cert;
    }
    if (gi->second.size() != ni->second.size()) {
      cert.verdict = Verdict::fails;
      cert.note = "key " + gi->first.to_string() + ": multiplicity " +
                  std::to_string(gi->second.size()) + " in Irr^x(G) vs " +
                  std::to_string(ni->second.size()) + " in Irr^x(N)";
      return cert;
    }
    ++gi;
    ++ni;
  }

  // Equal multisets: emit the explicit pairing (equal keys pair in row order).
  const unsigned cxg = table_G.classes().class_of(x);
  const unsigned cxn = table_N.classes().class_of(x);
  cert.verdict = Verdict::holds;
  for (gi = g.by_key.begin(), ni = n.by_key.begin(); gi != g.by_key.end();
       ++gi, ++ni) {
    for (std::size_t t = 0; t < gi->second.size(); ++t) {
      CertificatePair p;
      p.global_row = gi->second[t];
      p.local_row = ni->second[t];
      p.key = gi->first;
      p.global_degree = table_G.degree(p.global_row);
      p.local_degree = table_N.degree(p.local_row);
      p.global_value = table_G.value(p.global_row, cxg);
      p.local_value = table_N.value(p.local_row, cxn);
      if (mode == Mode::picky_plus &&
          p.global_value.is_rational_integer() !=
              p.local_value.is_rational_integer()) {
        // The two documented readings of condition (3) cannot both be
        // evaluated on this pair; do not silently pick one.
        cert.verdict = Verdict::inconclusive;
        cert.note =
            "ell-part semantics disagree: paired values have different "
            "rationality at rows " +
            std::to_string(p.global_row) + "/" + std::to_string(p.local_row);
      }
      cert.pairs.push_back(std::move(p));
    }
  }
  return cert;
}

bool abelian_sylow_check(const EllContext& ctx, const CharTable& table_G,
                         const PickyClass& pc) {
  if (!ctx.P->is_abelian())
    throw std::invalid_argument(
        "abelian_sylow_check: Sylow subgroup is not abelian");
  if (!pc.picky())
    throw std::invalid_argument("abelian_sylow_check: class is not picky");
  if (table_G.group() != ctx.G)
    throw std::invalid_argument("abelian_sylow_check: table mismatch");
  const unsigned cx = table_G.classes().class_of(pc.rep);
  for (std::size_t row = 0; row < table_G.rows(); ++row) {
    const bool nonvanishing = !table_G.value(row, cx).is_zero();
    const bool ell_prime_degree = table_G.degree(row) % ctx.ell != 0;
    if (nonvanishing != ell_prime_degree) return false;
  }
  return true;
}

std::vector<Certificate> cyclic_sylow_check(const EllContext& ctx,
                                            const CharTable& table_G,
                                            const CharTable& table_N,
                                            const std::string& group_label) {
  if (ctx.P->is_trivial()) return {};  // vacuous: ell does not divide |G|
  if (!ctx.P->is_cyclic())
    throw std::invalid_argument(
        "cyclic_sylow_check: Sylow subgroup is not cyclic");
  std::vector<Certificate> out;
  for (const PickyClass& pc : picky_classes(ctx)) {
    out.push_back(verify(ctx, table_G, table_N, pc, Mode::strong, group_label));
    if (out.back().verdict != Verdict::holds)
      throw std::logic_error(
          "cyclic_sylow_check: strong verification failed on a cyclic-Sylow "
          "group; this contradicts a theorem (internal bug): " +
          out.back().note);
  }
  return out;
}

}  // namespace picky
