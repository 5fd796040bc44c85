#pragma once

#include <json.hpp>

#include "wupd/analysis.hpp"
#include "wupd/difftest.hpp"
#include "wupd/dsu.hpp"
#include "wupd/equiv.hpp"
#include "wupd/interp.hpp"
#include "wupd/update_classes.hpp"

namespace wupd {

nlohmann::json trace_json(const IOTrace& t);
nlohmann::json run_result_json(const RunResult& r);
nlohmann::json analysis_json(const AnalysisReport& r);
nlohmann::json deriv_json(const DerivNode& d);
nlohmann::json verdict_json(const Verdict& v);
nlohmann::json update_report_json(const UpdateClassReport& r);
nlohmann::json compat_json(const CompatResult& r);
nlohmann::json trial_json(const TrialReport& t);
nlohmann::json campaign_json(const CampaignResult& r);

}  // namespace wupd
