#pragma once

// Command implementations behind the shedkit CLI. Each returns values or
// rendered text; the CLI only parses flags, writes files and maps errors to
// exit codes.

#include <optional>
#include <string>
#include <vector>

#include "shedkit/drinfeld.hpp"
#include "shedkit/io.hpp"

namespace shedkit::commands {

enum class Theorem { terminal, essential, compact_terminal, compact_essential };

std::string to_string(Theorem t);
/// Throws UsageError for unknown ids.
Theorem parse_theorem(const std::string& s);
const std::vector<Theorem>& all_theorems();

struct ReplayResult {
  io::RunReport report;
  Fan fan;
  std::vector<ScheduleStep> log;
};

/// Builds the base fan, applies the theorem's schedule and verifies it:
///   terminal           terminal, strictly concave roof
///   essential          regular, added rays = schedule rays
///   compact-terminal   terminal, complete
///   compact-essential  regular, complete, σ̃_0 chain and support form
ReplayResult replay(Theorem t, const drinfeld::ModuliParams& p);

/// Properties: regular, terminal, concave-roof, complete, shed-volume.
/// Throws UsageError for an unknown property.
io::RunReport check_props(const Fan& f, const std::vector<std::string>& props,
                          const std::string& name);

const std::vector<std::string>& property_names();

struct SweepEntry {
  Theorem theorem;
  Integer q;
  bool pass = false;
  std::vector<std::string> failed;  // names of failed checks, or the error
  std::optional<Fan> fan;
};

constexpr long kMaxSweepQ = 32;

/// Runs every theorem for q_lo..q_hi on up to `jobs` threads. Entries are
/// ordered by q, then theorem, whatever the completion order.
/// Throws PreconditionError for q_lo < 2 or q_lo > q_hi and ResourceError
/// for q_hi > kMaxSweepQ.
std::vector<SweepEntry> sweep(long q_lo, long q_hi,
                              const std::vector<Theorem>& theorems,
                              unsigned jobs);

std::string sweep_report_json(long q_lo, long q_hi,
                              const std::vector<Theorem>& theorems,
                              const std::vector<SweepEntry>& entries);

/// kind,delta1,delta2,delta3,delta4,lattice
std::string basic_invariants_csv(const drinfeld::ModuliParams& p,
                                 std::optional<drinfeld::InvariantKind> kind,
                                 std::optional<Integer> delta4);
/// cone,point,level,kind with kind in {generator, interior, roof}
std::string shed_points_csv(const Fan& f);
/// cone,element
std::string hilbert_basis_csv(const Fan& f, const Integer& max_multiplicity);
/// cone,point; 2D fans only.
std::string resolution_2d_csv(const Fan& f);

/// SHEDKIT_MAX_MULT if set to a positive integer, else the default bound.
/// Throws UsageError for a malformed value.
Integer max_multiplicity_from_env();

}  // namespace shedkit::commands
