#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "wupd/analysis.hpp"
#include "wupd/ast.hpp"
#include "wupd/interp.hpp"

namespace wupd {

// Deterministic across toolchains (explicit modulo mapping over mt19937_64).
std::vector<int64_t> gen_inputs(uint64_t seed, int length, int64_t lo, int64_t hi);

enum class MutKind { Reorder, DuplicateSkip, IfMotion, TrailingSkip, PrependGuard, PrependInit };
std::string mut_kind_name(MutKind k);

struct NoApplicableSite : std::runtime_error {
  explicit NoApplicableSite(const std::string& msg) : std::runtime_error(msg) {}
};

// Emits a mutant of p in the named shape; throws NoApplicableSite when the
// program offers no location for it.
Program mutate_pair(const Program& p, MutKind kind, uint64_t seed);

enum class TrialCmp { Equal, PrefixOldNew, Diverged, Inconclusive };
enum class InconclusiveReason { None, Fuel, InvalidOldRun, AssumptionViolated };
std::string trial_cmp_name(TrialCmp c);
std::string inconclusive_reason_name(InconclusiveReason r);

struct TrialReport {
  uint64_t seed = 0;
  std::vector<int64_t> inputs;
  RunResult oldResult, newResult;
  TrialCmp comparison = TrialCmp::Inconclusive;
  int64_t divergeIndex = -1;
  InconclusiveReason reason = InconclusiveReason::None;
  std::vector<std::string> assumptionViolations;
};

// Assumption monitor ids understood by the campaign driver.
inline constexpr const char* kAssumeNoUndefinedRead = "no-undefined-read";
inline constexpr const char* kAssumeNoNewEnumInput = "no-new-enum-input";
inline constexpr const char* kAssumeNoOverflowOnWeakened = "no-overflow-on-weakened";
inline constexpr const char* kAssumeNoGuardCrash = "no-guard-crash";

struct CampaignConfig {
  int trials = 100;
  int64_t fuel = 100000;
  uint64_t seed = 1;
  int inputLen = 6;
  int64_t lo = -8, hi = 8;
  bool promptModulo = false;  // compare Out events by origin label when tagged
  std::set<std::string> assumptions;
  std::vector<std::string> newEnumLabels;  // context for no-new-enum-input
  VarSet weakenedVars;                     // context for no-overflow-on-weakened
  // Store seeded into the new program before each trial (configuration vars).
  std::map<std::string, int64_t> newInitScalars;
  // Raw input values that convert into one of newEnumLabels; run_campaign
  // fills this from the new program when left empty.
  std::set<int64_t> newEnumInputValues;
};

struct CampaignResult {
  int trials = 0;
  int equal = 0;
  int prefixOldNew = 0;
  int diverged = 0;
  int inconclusive = 0;
  std::map<std::string, int> inconclusiveByReason;
  std::vector<TrialReport> reports;
};

// Compares one pair of finished runs under the campaign's comparison rules.
TrialReport compare_runs(const RunResult& oldR, const RunResult& newR,
                         const CampaignConfig& cfg);

CampaignResult run_campaign(const Program& oldP, const Program& newP,
                            const CampaignConfig& cfg);

}  // namespace wupd
