#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "carent/counterexamples.hpp"
#include "carent/inequalities.hpp"

namespace carent {

enum class Suite { Ssa, Triangle, MonoSsa, All };
enum class ParityMode { Any, Even, Mixed };  // Mixed: odd-numbered trials draw even states

Suite parse_suite(std::string_view text);
std::string to_string(Suite s);
std::string to_string(ParityMode p);

struct VerifyConfig {
  Suite suite = Suite::All;
  int sites = 3;
  int trials = 100;
  std::uint64_t seed = 0;
  ParityMode parity = ParityMode::Any;
  std::optional<int> rank;  // unset: uniform in [1, 2^sites] per trial
  std::optional<Region> I, J, K;
  Tolerance tolerance;
};

/// Regions a campaign uses for each suite after applying defaults.
struct SuiteRegions {
  Region ssa_I, ssa_J;
  Region tri_I, tri_J;
  Region mono_I, mono_J, mono_K;
};

SuiteRegions resolve_regions(const VerifyConfig& cfg);

struct GapRecord {
  double gap = 0;
  Verdict verdict = Verdict::Holds;
  bool unexpected = false;
};

struct TrialRecord {
  int trial = 0;
  std::uint64_t seed = 0;
  bool even = false;
  int rank = 0;
  std::optional<GapRecord> ssa, triangle, mono_ssa;
};

struct SuiteSummary {
  int evaluated = 0;
  int violations = 0;     // verdict Violated
  int indeterminate = 0;  // verdict Indeterminate
  int unexpected = 0;
  double min_gap = 0;
  double max_gap = 0;
  double max_violation = 0;  // largest violation amount seen, 0 if none
};

struct VerifyResult {
  VerifyConfig config;
  SuiteRegions regions;
  std::vector<TrialRecord> trials;
  std::optional<SuiteSummary> ssa, triangle, mono_ssa;

  int unexpected() const;
  int exit_code() const { return unexpected() == 0 ? 0 : 1; }
};

/// Per-trial seed derived from the master seed and the trial index.
std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial);

/// One trial; pure function of (cfg, regions, index).
TrialRecord run_trial(const ContextPtr& ctx, const VerifyConfig& cfg, const SuiteRegions& regions,
                      int index);

/// Trials fan out over OpenMP threads; records are stored by trial index.
VerifyResult run_verify(const VerifyConfig& cfg);
/// Single-threaded reference producing identical records.
VerifyResult run_verify_serial(const VerifyConfig& cfg);

struct Table1Cell {
  std::string property;  // SSA, Triangle, MONO-SSA
  std::string suite;
  std::string expected;  // "holds" or "violated"
  bool passed = false;
  int trials = 0;
  double min_gap = 0;
  double max_gap = 0;
};

struct Table1Result {
  std::uint64_t seed = 0;
  int trials = 0;
  int sites = 0;
  std::vector<Table1Cell> cells;
  std::string ssa_mark, triangle_mark, mono_ssa_mark;  // rendered CAR column
  bool all_passed = false;
};

/// Runs the six CAR-column suites and renders the column.
Table1Result run_table1(std::uint64_t seed, int trials = 200, int sites = 3);

}  // namespace carent
