#include "picky/report.hpp"

#include <algorithm>
#include <cstdint>
#include <exception>
#include <fstream>
#include <iomanip>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "picky/chartab.hpp"
#include "picky/families.hpp"
#include "picky/matgrp.hpp"
#include "picky/pickycore.hpp"

namespace picky {

using ordered_json = nlohmann::ordered_json;

namespace {

// --------------------------------------------------------------------------
// Classical-spec realizations
// --------------------------------------------------------------------------

// Group order from the standard formulas, capped: nullopt means "exceeds
// `cap`" without ever overflowing (every factor fits in 128 bits and the
// running product bails out at the cap).
std::optional<std::uint64_t> capped_order(Family fam, unsigned n,
                                          std::uint64_t q, std::uint64_t cap) {
  const auto pow128 = [](std::uint64_t b, unsigned e) {
    unsigned __int128 r = 1;
    while (e--) r *= b;
    return r;
  };
  std::vector<unsigned __int128> factors;
  switch (fam) {
    case Family::SL:
      factors.push_back(pow128(q, n * (n - 1) / 2));
      for (unsigned i = 2; i <= n; ++i) factors.push_back(pow128(q, i) - 1);
      break;
    case Family::SU:
      factors.push_back(pow128(q, n * (n - 1) / 2));
      for (unsigned i = 2; i <= n; ++i)
        factors.push_back(pow128(q, i) - (i % 2 == 0 ? 1 : -1));
      break;
    case Family::Sp: {
      unsigned m = n / 2;
      factors.push_back(pow128(q, m * m));
      for (unsigned i = 1; i <= m; ++i) factors.push_back(pow128(q, 2 * i) - 1);
      break;
    }
  }
  unsigned __int128 r = 1;
  for (auto f : factors) {
    r *= f;
    if (r > cap) return std::nullopt;
  }
  return static_cast<std::uint64_t>(r);
}

std::uint64_t gcd64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

}  // namespace

Realization realize_classical(const FamilySpec& fs, const Budget& budget) {
  Realization r;
  r.label = fs.label();
  Family fam;
  switch (fs.family) {
    case LieFamily::SL: fam = Family::SL; break;
    case LieFamily::SU: fam = Family::SU; break;
    case LieFamily::Sp: fam = Family::Sp; break;
    default:
      r.reason = "no matrix constructor for " + to_string(fs.family);
      return r;
  }
  const unsigned n = fs.dim;
  const bool dims_ok = (fam == Family::SL && n >= 2 && n <= 4) ||
                       (fam == Family::SU && (n == 3 || n == 4)) ||
                       (fam == Family::Sp && n == 4);
  if (!dims_ok) {
    r.reason = "dimension " + std::to_string(n) + " is outside the matrix constructors";
    return r;
  }
  try {
    GF::factor_prime_power(static_cast<unsigned>(fs.q));
  } catch (const std::invalid_argument&) {
    r.reason = "q = " + std::to_string(fs.q) + " is not a prime power";
    return r;
  }
  if (fs.q > 4096) {  // any faithful point set would blow the degree cap
    r.reason = "defining field too large for the permutation layer";
    return r;
  }
  auto order = capped_order(fam, n, fs.q, budget.max_order);
  if (!order) {
    r.reason = "group order exceeds the budget (raise --budget-order)";
    return r;
  }
  // Faithful point action: projective points when the centre is trivial
  // (smallest degree), all nonzero vectors otherwise (always faithful).
  const std::uint64_t center = fam == Family::SL   ? gcd64(n, fs.q - 1)
                               : fam == Family::SU ? gcd64(n, fs.q + 1)
                                                   : gcd64(2, fs.q - 1);
  const std::uint64_t entry_field = fam == Family::SU ? fs.q * fs.q : fs.q;
  unsigned __int128 points = 1;
  for (unsigned i = 0; i < n; ++i) points *= entry_field;
  points -= 1;                                        // nonzero vectors
  if (center == 1) points /= entry_field - 1;         // projective points
  if (points > budget.max_degree) {
    r.reason = "permutation degree " +
               std::to_string(static_cast<std::uint64_t>(points)) +
               " exceeds the budget";
    return r;
  }
  r.group = classical_group(fam, n, static_cast<unsigned>(fs.q),
                            center == 1 ? Action::projective_points
                                        : Action::nonzero_vectors);
  return r;
}

std::optional<FamilySpec> table_row_realization(const std::string& group_label) {
  FamilySpec fs;
  if (group_label == "SU3(3)") {
    fs.family = LieFamily::SU, fs.dim = 3, fs.q = 3, fs.epsilon = -1, fs.ell = 2;
    return fs;
  }
  if (group_label == "SL4(3)") {
    fs.family = LieFamily::SL, fs.dim = 4, fs.q = 3, fs.epsilon = +1, fs.ell = 2;
    return fs;
  }
  if (group_label == "2.SU4(2)") {  // isomorphic to Sp4(3)
    fs.family = LieFamily::Sp, fs.dim = 4, fs.q = 3, fs.epsilon = +1, fs.ell = 3;
    return fs;
  }
  return std::nullopt;
}

namespace {

// --------------------------------------------------------------------------
// Shared plumbing
// --------------------------------------------------------------------------

ordered_json budget_json(const Budget& b) {
  return ordered_json{{"maxOrder", b.max_order},
                      {"maxClasses", b.max_classes},
                      {"maxDegree", b.max_degree}};
}

ordered_json base_json(const RunConfig& cfg) {
  ordered_json j;
  j["command"] = cfg.command;
  j["seed"] = cfg.seed;
  j["workers"] = cfg.workers;
  j["budget"] = budget_json(cfg.budget);
  return j;
}

void emit_json(const RunConfig& cfg, const ordered_json& j, std::ostream& err) {
  if (cfg.out_path.empty()) return;
  std::ofstream f(cfg.out_path);
  if (!f) {
    err << "warning: cannot write " << cfg.out_path << "\n";
    return;
  }
  f << j.dump(2) << "\n";
}

// The group a command acts on: --classical (engine realization) or --spec.
struct GroupSource {
  GroupRef G;
  std::string label;
  std::string budget_reason;  // non-empty when --classical was refused by budget
};

GroupSource resolve_group(const RunConfig& cfg) {
  GroupSource src;
  if (cfg.classical) {
    Realization r = realize_classical(*cfg.classical, cfg.budget);
    src.label = r.label;
    if (!r.group) {
      if (r.reason.find("budget") != std::string::npos)
        src.budget_reason = r.reason;
      else
        throw std::invalid_argument(r.label + ": " + r.reason);
    }
    src.G = r.group;
    return src;
  }
  std::string name;
  src.G = group_from_json_file(cfg.spec_path, &name);
  if (name.empty()) {
    auto slash = cfg.spec_path.find_last_of('/');
    name = slash == std::string::npos ? cfg.spec_path : cfg.spec_path.substr(slash + 1);
    if (auto dot = name.find_last_of('.'); dot != std::string::npos) name = name.substr(0, dot);
  }
  src.label = name;
  return src;
}

std::string centralizers_text(const std::vector<std::pair<std::uint64_t, unsigned>>& cs) {
  std::string out;
  for (const auto& [c, m] : cs) {
    if (!out.empty()) out += ", ";
    out += std::to_string(c);
    if (m > 1) out += " (x" + std::to_string(m) + ")";
  }
  return out;
}

std::string counts_text(const std::vector<std::uint64_t>& v) {
  std::string out;
  for (auto c : v) {
    if (!out.empty()) out += ", ";
    out += std::to_string(c);
  }
  return out;
}

ordered_json table_row_json(const TableRow& row) {
  ordered_json j;
  j["group"] = row.group;
  j["family"] = to_string(row.family);
  j["dim"] = row.dim;
  j["q"] = row.q;
  j["epsilon"] = row.epsilon;
  j["ell"] = row.ell;
  j["elementOrder"] = row.element_order;
  auto cents = ordered_json::array();
  for (const auto& [c, m] : row.centralizers) cents.push_back({c, m});
  j["centralizers"] = cents;
  j["irrCounts"] = row.irr_counts;
  return j;
}

// Nontrivial picky classes, in class-index order.
std::vector<PickyClass> nontrivial_picky(const EllContext& ctx, int workers) {
  auto all = picky_classes(ctx, workers);
  std::erase_if(all, [](const PickyClass& c) { return c.element_order == 1; });
  return all;
}

// Counts of Irr^x rows by the ell-adic valuation of the degree, as a dense
// vector indexed from valuation 0, trailing zeros stripped.
std::vector<std::uint64_t> irrx_valuation_counts(const CharTable& table,
                                                 const Perm& x,
                                                 std::uint64_t ell) {
  std::vector<std::uint64_t> counts;
  for (const auto& row : irr_x(table, x)) {
    unsigned v = 0;
    for (std::uint64_t d = row.degree; d % ell == 0; d /= ell) ++v;
    if (counts.size() <= v) counts.resize(v + 1, 0);
    ++counts[v];
  }
  while (!counts.empty() && counts.back() == 0) counts.pop_back();
  return counts;
}

std::vector<std::uint64_t> stripped(std::vector<std::uint64_t> v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
  return v;
}

// --------------------------------------------------------------------------
// classify
// --------------------------------------------------------------------------

// Human-readable reason attached to a positive existence verdict.
std::string existence_note(const FamilySpec& fs) {
  if (fs.ell == 3) return "published table membership";
  const bool shape_family =
      (fs.family == LieFamily::SL && (fs.dim == 2 || fs.dim == 3)) ||
      (fs.family == LieFamily::SU && fs.dim == 3 && fs.q != 3) ||
      (fs.family == LieFamily::Sp && fs.dim == 4);
  if (shape_family) {
    switch (fermat_mersenne(fs.q)) {
      case QShape::Fermat: return "Fermat prime";
      case QShape::Mersenne: return "Mersenne prime";
      case QShape::Nine: return "q = 9";
      case QShape::Neither: break;
    }
  }
  return "listed small-field case";
}

int cmd_classify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!cfg.classical) {
    err << "classify requires --classical FAMILY N Q\n";
    return kExitUsage;
  }
  FamilySpec fs = *cfg.classical;
  fs.ell = cfg.ell;
  ordered_json j = base_json(cfg);
  j["group"] = fs.label();
  j["ell"] = fs.ell;
  out << "group: " << fs.label() << "\n";
  out << "ell: " << fs.ell << "\n";

  std::string reason;
  if (!has_picky_supported(fs, &reason)) {
    err << "error: " << reason << "\n";
    return kExitUsage;
  }
  const bool predicted = has_picky(fs);
  j["picky"] = predicted;
  if (predicted) {
    const std::string note = existence_note(fs);
    j["note"] = note;
    out << "picky: yes (" << note << ")\n";
    const PickyProfile profile = predicted_picky_profile(fs);
    j["profile"] = ordered_json{{"normalSylow", profile.normal_sylow},
                                {"minOrder", profile.min_order},
                                {"partial", profile.partial},
                                {"description", profile.description}};
    auto rows = ordered_json::array();
    for (const auto& row : profile.rows) rows.push_back(table_row_json(row));
    j["profile"]["rows"] = rows;
    out << "profile: " << profile.description << "\n";
    for (const auto& row : profile.rows)
      out << "  row: " << row.group << "  o(x) = " << row.element_order
          << "  |C|: " << centralizers_text(row.centralizers)
          << "  counts: " << counts_text(row.irr_counts) << "\n";
  } else {
    out << "picky: no\n";
  }

  // Engine confirmation within budget.
  Realization r = realize_classical(fs, cfg.budget);
  if (!r.group) {
    out << "engine: analytic-only (" << r.reason << ")\n";
    j["engine"] = ordered_json{{"status", "analytic-only"}, {"reason", r.reason}};
    emit_json(cfg, j, err);
    return kExitHolds;
  }
  EllContext ctx = ell_context(r.group, fs.ell, cfg.budget);
  auto survey = ell_class_survey(ctx, cfg.workers);
  std::uint64_t picky_count = 0;
  auto classes = ordered_json::array();
  for (const auto& c : survey) {
    if (c.element_order == 1) continue;
    classes.push_back(ordered_json{{"order", c.element_order},
                                   {"centralizer", c.centralizer_order},
                                   {"sylowCount", c.sylow_count},
                                   {"picky", c.picky()}});
    if (c.picky()) ++picky_count;
  }
  const bool engine_has = picky_count > 0;
  j["engine"] = ordered_json{{"status", engine_has == predicted ? "confirmed" : "mismatch"},
                             {"order", r.group->order()},
                             {"pickyClasses", picky_count},
                             {"classes", classes}};
  if (engine_has != predicted) {
    out << "engine: MISMATCH — analytic predicate says " << (predicted ? "yes" : "no")
        << " but the survey found " << picky_count << " picky classes\n";
    emit_json(cfg, j, err);
    return kExitFails;
  }
  out << "engine: confirmed — " << picky_count << " picky "
      << (picky_count == 1 ? "class" : "classes") << " (|G| = " << r.group->order()
      << ")\n";
  for (const auto& c : survey) {
    if (c.element_order == 1) continue;
    out << "  order " << c.element_order << ": |C_G(x)| = " << c.centralizer_order
        << ", n_x = " << c.sylow_count << (c.picky() ? "  [picky]" : "") << "\n";
  }
  emit_json(cfg, j, err);
  return kExitHolds;
}

// --------------------------------------------------------------------------
// verify
// --------------------------------------------------------------------------

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!cfg.classical && cfg.spec_path.empty()) {
    err << "verify requires --classical or --spec\n";
    return kExitUsage;
  }
  GroupSource src = resolve_group(cfg);
  if (!src.budget_reason.empty()) {
    err << "budget exceeded: " << src.budget_reason << "\n";
    return kExitBudget;
  }
  out << "group: " << src.label << " (order " << src.G->order() << ")\n";
  out << "ell: " << cfg.ell << ", mode: " << to_string(cfg.mode) << "\n";

  EllContext ctx = ell_context(src.G, cfg.ell, cfg.budget);
  auto targets = nontrivial_picky(ctx, cfg.workers);
  ordered_json j = base_json(cfg);
  j["group"] = src.label;
  j["ell"] = cfg.ell;
  j["mode"] = to_string(cfg.mode);
  j["groupOrder"] = src.G->order();
  if (targets.empty()) {
    out << "no nontrivial picky classes; nothing to verify\n";
    j["certificates"] = ordered_json::array();
    j["allHold"] = true;
    emit_json(cfg, j, err);
    return kExitHolds;
  }

  CharTable table_G = CharTable::compute(src.G, cfg.budget, cfg.workers);
  CharTable table_N = CharTable::compute(ctx.N, cfg.budget, cfg.workers);

  // Independent verifications fan out over the worker pool; results are
  // merged back in input order, so the report is deterministic.
  std::vector<Certificate> certs(targets.size());
  std::exception_ptr failure;
  if (cfg.workers > 1) {
#pragma omp parallel for schedule(dynamic) num_threads(cfg.workers)
    for (std::size_t i = 0; i < targets.size(); ++i) {
      try {
        certs[i] = verify(ctx, table_G, table_N, targets[i], cfg.mode, src.label);
      } catch (...) {
#pragma omp critical
        if (!failure) failure = std::current_exception();
      }
    }
  } else {
    for (std::size_t i = 0; i < targets.size(); ++i)
      certs[i] = verify(ctx, table_G, table_N, targets[i], cfg.mode, src.label);
  }
  if (failure) std::rethrow_exception(failure);

  bool all_hold = true;
  auto arr = ordered_json::array();
  for (const auto& c : certs) {
    out << "class: order " << c.cls.element_order << ", |C_G(x)| = "
        << c.cls.centralizer_order << ", n_x = " << c.cls.sylow_count << " -> "
        << to_string(c.verdict) << " (" << c.pairs.size() << " pairs)";
    if (!c.note.empty()) out << "  [" << c.note << "]";
    out << "\n";
    all_hold = all_hold && c.verdict == Verdict::holds;
    arr.push_back(ordered_json::parse(c.to_json_text()));
  }
  j["certificates"] = arr;
  j["allHold"] = all_hold;
  out << (all_hold ? "all verdicts hold\n" : "NOT all verdicts hold\n");
  emit_json(cfg, j, err);
  return all_hold ? kExitHolds : kExitFails;
}

// --------------------------------------------------------------------------
// table
// --------------------------------------------------------------------------

struct RowOutcome {
  std::string status;  // reproduced | fixture-only | mismatch | budget-exceeded
  std::string detail;
};

// Reproduce one published row on the engine: the group's nontrivial picky
// classes must match the row set for (group, ell) exactly in (order, |C_G(x)|)
// multiset, and each class's Irr^x valuation counts must match its row.
RowOutcome reproduce_row(const std::vector<TableRow>& group_rows, const GroupRef& G,
                         const Budget& budget, int workers) {
  const std::uint64_t ell = group_rows.front().ell;
  EllContext ctx = ell_context(G, ell, budget);
  auto picky = nontrivial_picky(ctx, workers);

  std::multiset<std::pair<std::uint64_t, std::uint64_t>> expected, found;
  for (const auto& row : group_rows)
    for (const auto& [c, m] : row.centralizers)
      for (unsigned i = 0; i < m; ++i) expected.insert({row.element_order, c});
  for (const auto& pc : picky) found.insert({pc.element_order, pc.centralizer_order});
  if (expected != found) {
    std::string detail = "picky classes (order, |C|):";
    for (const auto& [o, c] : found)
      detail += " (" + std::to_string(o) + ", " + std::to_string(c) + ")";
    detail += "; published:";
    for (const auto& [o, c] : expected)
      detail += " (" + std::to_string(o) + ", " + std::to_string(c) + ")";
    return {"mismatch", detail};
  }

  CharTable table = CharTable::compute(G, budget, workers);
  for (const auto& pc : picky) {
    // The row whose centralizer list covers this class.
    const TableRow* row = nullptr;
    for (const auto& r : group_rows)
      for (const auto& [c, m] : r.centralizers)
        if (c == pc.centralizer_order && r.element_order == pc.element_order) row = &r;
    if (!row) return {"mismatch", "internal: no row covers a found picky class"};
    auto counts = irrx_valuation_counts(table, pc.rep, ell);
    if (counts != stripped(row->irr_counts)) {
      std::string detail = "Irr^x counts for the class of order " +
                           std::to_string(pc.element_order) + " with |C| = " +
                           std::to_string(pc.centralizer_order) + ": engine [" +
                           counts_text(counts) + "], published [" +
                           counts_text(row->irr_counts) + "]";
      return {"mismatch", detail};
    }
  }
  return {"reproduced", ""};
}

int cmd_table(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  // Group the published rows by (group label, ell); reproduction is per
  // group, row status is per row.
  std::vector<const TableRow*> rows;
  for (const auto& r : picky2_table()) rows.push_back(&r);
  for (const auto& r : picky3_table()) rows.push_back(&r);

  auto selected = [&](const std::string& name) {
    return cfg.rows.empty() ||
           std::find(cfg.rows.begin(), cfg.rows.end(), name) != cfg.rows.end();
  };

  bool any_mismatch = false, any_budget = false;
  ordered_json j = base_json(cfg);
  auto jrows = ordered_json::array();
  std::map<std::string, RowOutcome> outcome_by_group;  // keyed by label|ell

  std::uint64_t current_ell = 0;
  for (const TableRow* row : rows) {
    if (!selected(row->group)) continue;
    if (row->ell != current_ell) {
      current_ell = row->ell;
      out << "published picky " << current_ell << "-element rows\n";
    }
    const std::string key = row->group + "|" + std::to_string(row->ell);
    if (!outcome_by_group.count(key)) {
      RowOutcome oc{"fixture-only", ""};
      auto real = table_row_realization(row->group);
      if (real) {
        const bool stretch = row->group == "SL4(3)";
        if (stretch && !cfg.extended) {
          oc.detail = "stretch row; pass --extended";
        } else {
          Budget b = cfg.budget;
          if (stretch) b.max_order = std::max<std::uint64_t>(b.max_order, 13'000'000);
          real->ell = row->ell;
          Realization r = realize_classical(*real, b);
          if (!r.group) {
            oc = {"budget-exceeded", r.reason};
            any_budget = true;
          } else {
            std::vector<TableRow> group_rows;
            for (const TableRow* t : rows)
              if (t->group == row->group && t->ell == row->ell) group_rows.push_back(*t);
            try {
              oc = reproduce_row(group_rows, r.group, b, cfg.workers);
              if (real->label() != row->group)
                oc.detail = "realized as " + real->label() +
                            (oc.detail.empty() ? "" : "; " + oc.detail);
            } catch (const BudgetExceeded& e) {
              oc = {"budget-exceeded", e.what()};
              any_budget = true;
            }
          }
        }
      }
      outcome_by_group[key] = oc;
    }
    const RowOutcome& oc = outcome_by_group[key];
    if (oc.status == "mismatch") any_mismatch = true;
    out << "  " << std::left << std::setw(14) << row->group << " o(x) = " << std::setw(3)
        << row->element_order << " |C|: " << std::setw(16)
        << centralizers_text(row->centralizers) << " counts: " << std::setw(16)
        << counts_text(row->irr_counts) << " " << oc.status;
    if (!oc.detail.empty()) out << " (" << oc.detail << ")";
    out << "\n";
    ordered_json jr = table_row_json(*row);
    jr["status"] = oc.status;
    if (!oc.detail.empty()) jr["detail"] = oc.detail;
    jrows.push_back(jr);
  }
  j["rows"] = jrows;

  // Character-value fixtures for SU8(2): desk-unverifiable, always fixtures.
  if (selected("SU8(2)")) {
    out << "published character-value rows for SU8(2) at the two picky classes\n";
    auto jvals = ordered_json::array();
    for (const auto& r : su8_value_table()) {
      auto pairs_text = [](const std::vector<std::pair<std::uint64_t, unsigned>>& vs) {
        std::string s;
        for (const auto& [v, m] : vs) {
          if (!s.empty()) s += ", ";
          s += std::to_string(v) + " (x" + std::to_string(m) + ")";
        }
        return s;
      };
      out << "  " << std::left << std::setw(24) << r.series << " series x"
          << r.series_count << "  |values at x1|: " << pairs_text(r.x1_values)
          << "  |values at x2|: " << pairs_text(r.x2_values) << "  fixture-only\n";
      ordered_json jr;
      jr["series"] = r.series;
      jr["count"] = r.series_count;
      auto enc = [](const std::vector<std::pair<std::uint64_t, unsigned>>& vs) {
        auto a = ordered_json::array();
        for (const auto& [v, m] : vs) a.push_back({v, m});
        return a;
      };
      jr["x1"] = enc(r.x1_values);
      jr["x2"] = enc(r.x2_values);
      jr["status"] = "fixture-only";
      jvals.push_back(jr);
    }
    j["su8Values"] = jvals;
  }

  emit_json(cfg, j, err);
  if (any_mismatch) {
    out << "RESULT: mismatch against published data\n";
    return kExitFails;
  }
  if (any_budget) {
    out << "RESULT: budget exceeded on an attempted row\n";
    return kExitBudget;
  }
  out << "RESULT: no mismatches\n";
  return kExitHolds;
}

// --------------------------------------------------------------------------
// chartab
// --------------------------------------------------------------------------

int cmd_chartab(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!cfg.classical && cfg.spec_path.empty()) {
    err << "chartab requires --classical or --spec\n";
    return kExitUsage;
  }
  GroupSource src = resolve_group(cfg);
  if (!src.budget_reason.empty()) {
    err << "budget exceeded: " << src.budget_reason << "\n";
    return kExitBudget;
  }
  CharTable table = CharTable::compute(src.G, cfg.budget, cfg.workers);
  out << "group: " << src.label << " (order " << src.G->order() << ", "
      << table.classes().count() << " classes)\n";
  out << "degrees:";
  for (std::size_t r = 0; r < table.rows(); ++r) out << " " << table.degree(r);
  out << "\n";
  out << "orthogonality: rows " << (table.row_orthogonality_check() ? "ok" : "FAIL")
      << ", columns " << (table.column_orthogonality_check() ? "ok" : "FAIL") << "\n";
  ordered_json j = base_json(cfg);
  j["group"] = src.label;
  j["table"] = ordered_json::parse(table.to_json_text());
  emit_json(cfg, j, err);
  return kExitHolds;
}

// --------------------------------------------------------------------------
// Argument parsing
// --------------------------------------------------------------------------

struct ParseOutcome {
  std::optional<RunConfig> cfg;
  bool help = false;
  std::string message;  // help text or error diagnostic
};

ParseOutcome parse_internal(const std::vector<std::string>& args) {
  ParseOutcome res;
  RunConfig cfg;
  CLI::App app{"picky ell-elements: detection, certificates, published-table reports"};
  app.require_subcommand(1);

  std::vector<std::string> classical;
  int epsilon = +1;
  std::string mode = "strong";
  std::uint64_t budget_order = 0;  // 0 = per-command default
  unsigned budget_classes = 1024, budget_degree = 4096;

  auto add_group_flags = [&](CLI::App* sub, bool with_spec) {
    sub->add_option("--classical", classical,
                    "classical group FAMILY N Q (e.g. --classical SL 2 17)")
        ->expected(3);
    sub->add_option("--epsilon", epsilon, "twisting sign for Spin/Omega (+1 or -1)")
        ->check(CLI::IsMember({-1, 1}));
    if (with_spec)
      sub->add_option("--spec", cfg.spec_path, "JSON group description file");
  };
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--budget-order", budget_order, "refuse groups larger than this");
    sub->add_option("--budget-classes", budget_classes, "refuse class counts larger than this");
    sub->add_option("--budget-degree", budget_degree, "refuse permutation degrees larger than this");
    sub->add_option("--workers", cfg.workers, "worker threads for kernels and verification fan-out")
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "seed recorded in every output");
    sub->add_option("--out", cfg.out_path, "also write the JSON payload to this file");
  };

  CLI::App* classify = app.add_subcommand(
      "classify", "analytic existence verdict plus engine confirmation within budget");
  add_group_flags(classify, false);
  classify->add_option("--ell", cfg.ell, "the prime ell")->check(CLI::PositiveNumber);
  add_common(classify);

  CLI::App* verify = app.add_subcommand(
      "verify", "verify the chosen conjecture mode for every picky class");
  add_group_flags(verify, true);
  verify->add_option("--ell", cfg.ell, "the prime ell")->check(CLI::PositiveNumber);
  verify->add_option("--mode", mode, "picky | plus | strong")
      ->check(CLI::IsMember({"picky", "plus", "strong"}));
  add_common(verify);

  CLI::App* table = app.add_subcommand(
      "table", "reproduce published table rows within budget; label the rest fixture-only");
  table->add_option("rows", cfg.rows, "restrict to the named rows (e.g. SU3(3))");
  table->add_flag("--extended", cfg.extended, "attempt the stretch row SL4(3)");
  add_common(table);

  CLI::App* chartab = app.add_subcommand("chartab", "exact character table of a group");
  add_group_flags(chartab, true);
  add_common(chartab);

  std::vector<const char*> argv;
  argv.push_back("picky");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    res.help = true;
    res.message = app.help();
    return res;
  } catch (const CLI::ParseError& e) {
    res.message = std::string(e.what()) + "\n";
    return res;
  }

  CLI::App* sub = app.get_subcommands().front();
  cfg.command = sub->get_name();
  cfg.mode = mode == "picky" ? Mode::picky : mode == "plus" ? Mode::picky_plus : Mode::strong;
  cfg.budget.max_classes = budget_classes;
  cfg.budget.max_degree = budget_degree;
  cfg.budget.max_order =
      budget_order != 0 ? budget_order : cfg.command == "classify" ? 100'000 : 10'000'000;

  if (!classical.empty()) {
    auto fam = family_from_string(classical[0]);
    if (!fam) {
      res.message = "unknown family '" + classical[0] + "'\n";
      return res;
    }
    FamilySpec fs;
    fs.family = fam->first;
    fs.epsilon = fam->second;
    if (fs.family == LieFamily::Spin || fs.family == LieFamily::Omega)
      if (classical[0] == "Spin" || classical[0] == "Omega") fs.epsilon = epsilon;
    try {
      fs.dim = static_cast<unsigned>(std::stoul(classical[1]));
      fs.q = std::stoull(classical[2]);
    } catch (const std::exception&) {
      res.message = "bad --classical arguments: N and Q must be integers\n";
      return res;
    }
    cfg.classical = fs;
  }
  if (cfg.classical && !cfg.spec_path.empty()) {
    res.message = "--classical and --spec are mutually exclusive\n";
    return res;
  }
  res.cfg = std::move(cfg);
  return res;
}

}  // namespace

std::optional<RunConfig> parse_args(const std::vector<std::string>& args,
                                    std::ostream& err) {
  ParseOutcome res = parse_internal(args);
  if (!res.cfg) err << res.message;
  return res.cfg;
}

int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.command == "classify") return cmd_classify(cfg, out, err);
    if (cfg.command == "verify") return cmd_verify(cfg, out, err);
    if (cfg.command == "table") return cmd_table(cfg, out, err);
    if (cfg.command == "chartab") return cmd_chartab(cfg, out, err);
    err << "unknown command '" << cfg.command << "'\n";
    return kExitUsage;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFails;
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  ParseOutcome res = parse_internal(args);
  if (res.help) {
    out << res.message;
    return kExitHolds;
  }
  if (!res.cfg) {
    err << res.message;
    return kExitUsage;
  }
  return run_command(*res.cfg, out, err);
}

}  // namespace picky
