#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wupd/analysis.hpp"
#include "wupd/ast.hpp"
#include "wupd/equiv.hpp"

namespace wupd {

// Valuation of new configuration variables (each 0 or 1).
using ConfigValuation = std::map<std::string, int64_t>;

enum class UpdateClass {
  NewConfigVars,
  EnumExtension,
  TypeWeakening,
  ExitOnError,
  ImprovedPrompts,
  MissingInit,
  BehavioralEquiv,
  Unclassified,
};

std::string update_class_name(UpdateClass c);

struct UpdateClassReport {
  UpdateClass cls = UpdateClass::Unclassified;
  Verdict verdict;
  std::vector<std::string> assumptions;  // runtime monitors the lemma needs
  VarSet weakenedVars;                   // TypeWeakening
  std::vector<std::string> newEnumLabels;  // EnumExtension's E
  std::string error;  // e.g. "IncomparableEnums"; empty otherwise
};

UpdateClassReport check_new_config_vars(const Program& oldP, const Program& newP,
                                        const ConfigValuation& rho);
UpdateClassReport check_enum_extension(const Program& oldP, const Program& newP);
UpdateClassReport check_type_weakening(const Program& oldP, const Program& newP);
UpdateClassReport check_exit_on_error(const Program& oldP, const Program& newP);
UpdateClassReport check_prompt_change(const Program& oldP, const Program& newP);
UpdateClassReport check_missing_init(const Program& oldP, const Program& newP);

// Exhaustive search over {0,1}^k for up to 10 candidate guard variables.
std::optional<ConfigValuation> search_config_valuation(const Program& oldP,
                                                       const Program& newP);

// Runs the behavioral check first, then every class checker; returns all
// accepting reports (empty means unclassified).
std::vector<UpdateClassReport> classify_update(
    const Program& oldP, const Program& newP,
    const std::optional<ConfigValuation>& rho);

}  // namespace wupd
