#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "picky/families.hpp"
#include "picky/group.hpp"
#include "picky/pickycore.hpp"

// Command-line layer: argument parsing, group-spec ingestion, report and
// certificate emission.  Everything here is a thin deterministic shell over
// the library; the same RunConfig always produces byte-identical output, so
// emitted files can be committed as fixtures and diffed in CI.

namespace picky {

// Process exit codes.
inline constexpr int kExitHolds = 0;   // all verdicts hold / report clean
inline constexpr int kExitFails = 1;   // a verification failed or a table row mismatched
inline constexpr int kExitUsage = 2;   // bad flags, unknown command, malformed spec
inline constexpr int kExitBudget = 3;  // the computation was refused by the budget

// One parsed invocation of the `picky` tool.
//
// `seed` feeds every randomized internal (none of the shipped pipelines are
// randomized today, but the knob is part of the output contract: each report
// records the seed it was produced with, so a committed report documents its
// full configuration).
struct RunConfig {
  std::string command;                  // classify | verify | table | chartab
  std::optional<FamilySpec> classical;  // --classical FAMILY N Q
  std::string spec_path;                // --spec FILE (JSON group description)
  std::uint64_t ell = 2;
  Mode mode = Mode::strong;
  Budget budget;                        // see parse_args for per-command defaults
  int workers = 1;
  std::uint64_t seed = 0;
  std::string out_path;                 // --out FILE: also write the JSON payload here
  std::vector<std::string> rows;        // table: restrict to the named rows
  bool extended = false;                // table: attempt the stretch row SL4(3)
};

// Parses argv-style arguments (program name excluded).  On error, writes a
// diagnostic to `err` and returns nullopt; `--help` output also goes through
// this path (returns nullopt, caller exits kExitUsage).
//
// Budget defaults: max_degree 4096 and max_classes 1024 everywhere (the
// permutation layer's hard cap); max_order 100000 for `classify` (its engine
// confirmation sweeps every ell-class, so the default stays desk-sized) and
// 10^7 for the other commands.  --budget-order overrides either.
std::optional<RunConfig> parse_args(const std::vector<std::string>& args,
                                    std::ostream& err);

// Executes one parsed command: human-readable report to `out`, diagnostics to
// `err`, JSON payload additionally written to cfg.out_path when set.  Returns
// the process exit code.
int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// parse_args + run_command.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

// --------------------------------------------------------------------------
// Engine realizations of classical specs (shared with the test suites)
// --------------------------------------------------------------------------

// Attempt to build the group of a classical FamilySpec as a faithful
// permutation group: projective points when the centre is trivial, nonzero
// vectors otherwise.  On success `group` is non-null; otherwise `reason`
// says why the spec is out of engine range (unsupported family/dimension,
// order above budget, or point set above the degree cap).
struct Realization {
  GroupRef group;
  std::string label;
  std::string reason;
};

Realization realize_classical(const FamilySpec& fs, const Budget& budget);

// The engine realization used by `picky table` for a published row label:
// SU3(3) and SL4(3) are built directly; 2.SU4(2) is realized as the
// isomorphic group Sp4(3).  Rows without a realization ship as fixtures.
std::optional<FamilySpec> table_row_realization(const std::string& group_label);

}  // namespace picky
