#include "wupd/json_io.hpp"

namespace wupd {

using nlohmann::json;

namespace {

json varset_json(const VarSet& s) {
  json a = json::array();
  for (const auto& v : s) a.push_back(v);
  return a;
}

json string_list_json(const std::vector<std::string>& s) {
  json a = json::array();
  for (const auto& v : s) a.push_back(v);
  return a;
}

json int_list_json(const std::vector<int64_t>& s) {
  json a = json::array();
  for (int64_t v : s) a.push_back(v);
  return a;
}

}  // namespace

json trace_json(const IOTrace& t) {
  json a = json::array();
  for (const auto& ev : t) a.push_back(print_event(ev));
  return a;
}

json run_result_json(const RunResult& r) {
  json j;
  j["outcome"] = outcome_name(r.outcome);
  if (r.cause) j["cause"] = crash_cause_name(*r.cause);
  j["steps"] = r.steps;
  j["overflow"] = r.finalState.overflow;
  j["undefinedRead"] = r.undefinedReadOccurred;
  j["trace"] = trace_json(r.trace);
  return j;
}

json analysis_json(const AnalysisReport& r) {
  json j;
  j["use"] = varset_json(r.use);
  j["def"] = varset_json(r.def);
  j["lvar"] = varset_json(r.lvar);
  j["cvar"] = varset_json(r.cvar);
  j["tvar"] = varset_json(r.tvar);
  j["impO"] = varset_json(r.impO);
  j["tvarO"] = varset_json(r.tvarO);
  j["ovar"] = varset_json(r.ovar);
  j["size"] = r.size;
  return j;
}

json deriv_json(const DerivNode& d) {
  json j;
  j["rule"] = d.rule;
  if (!d.note.empty()) j["note"] = d.note;
  json kids = json::array();
  for (const auto& c : d.children) kids.push_back(deriv_json(c));
  j["children"] = std::move(kids);
  return j;
}

json verdict_json(const Verdict& v) {
  json j;
  j["accepted"] = v.accepted;
  if (v.accepted)
    j["derivation"] = deriv_json(v.derivation);
  else
    j["failureReason"] = v.failureReason;
  return j;
}

json update_report_json(const UpdateClassReport& r) {
  json j;
  j["class"] = update_class_name(r.cls);
  j["verdict"] = verdict_json(r.verdict);
  j["assumptions"] = string_list_json(r.assumptions);
  if (!r.weakenedVars.empty()) j["weakenedVars"] = varset_json(r.weakenedVars);
  if (!r.newEnumLabels.empty())
    j["newEnumLabels"] = string_list_json(r.newEnumLabels);
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

json compat_json(const CompatResult& r) {
  json j;
  j["status"] = compat_status_name(r.status);
  j["oldTrace"] = trace_json(r.oldTrace);
  j["newTrace"] = trace_json(r.newTrace);
  if (r.divergeIndex >= 0) j["divergeIndex"] = r.divergeIndex;
  if (!r.reason.empty()) j["reason"] = r.reason;
  return j;
}

json trial_json(const TrialReport& t) {
  json j;
  j["seed"] = t.seed;
  j["inputs"] = int_list_json(t.inputs);
  j["comparison"] = trial_cmp_name(t.comparison);
  if (t.divergeIndex >= 0) j["divergeIndex"] = t.divergeIndex;
  if (t.reason != InconclusiveReason::None)
    j["reason"] = inconclusive_reason_name(t.reason);
  if (!t.assumptionViolations.empty())
    j["assumptionViolations"] = string_list_json(t.assumptionViolations);
  j["old"] = run_result_json(t.oldResult);
  j["new"] = run_result_json(t.newResult);
  return j;
}

json campaign_json(const CampaignResult& r) {
  json j;
  j["trials"] = r.trials;
  j["equal"] = r.equal;
  j["prefixOldNew"] = r.prefixOldNew;
  j["diverged"] = r.diverged;
  j["inconclusive"] = r.inconclusive;
  json by = json::object();
  for (const auto& [k, v] : r.inconclusiveByReason) by[k] = v;
  j["inconclusiveByReason"] = std::move(by);
  json reps = json::array();
  for (const auto& t : r.reports) reps.push_back(trial_json(t));
  j["reports"] = std::move(reps);
  return j;
}

}  // namespace wupd
