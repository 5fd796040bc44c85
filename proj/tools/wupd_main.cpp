#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "wupd/diagnostics.hpp"
#include "wupd/json_io.hpp"
#include "wupd/parser.hpp"

using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<int64_t> read_inputs(const std::string& path) {
  if (path.empty()) return {};
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::vector<int64_t> vs;
  long long x = 0;
  while (f >> x) vs.push_back(x);
  return vs;
}

int64_t default_fuel() {
  if (const char* e = std::getenv("DSU_CHECK_FUEL")) {
    try {
      return std::stoll(e);
    } catch (...) {
    }
  }
  return 100000;
}

bool g_pretty = false;

void emit(const json& j) {
  std::cout << (g_pretty ? j.dump(2) : j.dump()) << "\n";
}

wupd::Program load(const std::string& path) {
  return wupd::parse_program(slurp(path));
}

wupd::ConfigValuation read_rho(const std::string& path) {
  json j = json::parse(slurp(path));
  wupd::ConfigValuation rho;
  for (auto it = j.begin(); it != j.end(); ++it)
    rho[it.key()] = it.value().get<int64_t>();
  return rho;
}

int exit_for_reports(const std::vector<wupd::UpdateClassReport>& reps) {
  for (const auto& r : reps)
    if (r.verdict.accepted) return 0;
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"toolkit for the typed W-extension language: run programs, "
               "analyze variables, check equivalences and update classes, "
               "simulate dynamic updates, and differential-test pairs"};
  app.require_subcommand(1);
  app.add_flag("--pretty", g_pretty, "indent JSON output");

  auto* cParse = app.add_subcommand("parse", "parse a program and reprint it");
  std::string parseFile;
  cParse->add_option("file", parseFile, "program file")->required();

  auto* cType = app.add_subcommand("typecheck", "typecheck a program");
  std::string typeFile;
  cType->add_option("file", typeFile, "program file")->required();

  auto* cRun = app.add_subcommand("run", "execute a program on given inputs");
  std::string runFile, runInputs;
  int64_t runFuel = default_fuel();
  cRun->add_option("file", runFile, "program file")->required();
  cRun->add_option("--inputs", runInputs, "whitespace-separated decimals");
  cRun->add_option("--fuel", runFuel, "step budget");

  auto* cAna = app.add_subcommand("analyze", "variable analyses and size");
  std::string anaFile;
  cAna->add_option("file", anaFile, "program file")->required();

  auto* cEq = app.add_subcommand("check-equiv", "equivalence proof rules");
  std::string eqOld, eqNew, eqRule, eqVar;
  cEq->add_option("old", eqOld, "first program")->required();
  cEq->add_option("new", eqNew, "second program")->required();
  cEq->add_option("--rule", eqRule, "comp | term | out")
      ->required()
      ->check(CLI::IsMember({"comp", "term", "out"}));
  cEq->add_option("--var", eqVar, "variable for --rule comp");

  auto* cUp = app.add_subcommand("check-update", "update class checkers");
  std::string upOld, upNew, upClass = "auto", upRho;
  cUp->add_option("old", upOld, "old program")->required();
  cUp->add_option("new", upNew, "new program")->required();
  cUp->add_option("--class", upClass, "auto | config | enum | weaken | exit | prompt | init")
      ->check(CLI::IsMember({"auto", "config", "enum", "weaken", "exit", "prompt", "init"}));
  cUp->add_option("--rho", upRho, "JSON file valuating new config variables");

  auto* cDsu = app.add_subcommand("dsu-sim", "simulate a dynamic update");
  std::string dsuOld, dsuNew, dsuInputs;
  int64_t dsuAt = 1, dsuFuel = default_fuel();
  cDsu->add_option("--old", dsuOld, "old program")->required();
  cDsu->add_option("--new", dsuNew, "new program")->required();
  cDsu->add_option("--inputs", dsuInputs, "input file");
  cDsu->add_option("--at-output", dsuAt, "pause before this output (1-based)");
  cDsu->add_option("--fuel", dsuFuel, "step budget");

  auto* cDiff = app.add_subcommand("difftest", "random-input differential campaign");
  std::string dOld, dNew;
  int dTrials = 100, dLen = 6;
  int64_t dFuel = default_fuel(), dLo = -8, dHi = 8;
  uint64_t dSeed = 1;
  bool dPromptModulo = false;
  std::vector<std::string> dAssume, dEnumLabels, dInit;
  cDiff->add_option("--old", dOld, "old program")->required();
  cDiff->add_option("--new", dNew, "new program")->required();
  cDiff->add_option("--trials", dTrials, "trial count");
  cDiff->add_option("--fuel", dFuel, "step budget per run");
  cDiff->add_option("--seed", dSeed, "campaign seed");
  cDiff->add_option("--input-len", dLen, "inputs per trial");
  cDiff->add_option("--lo", dLo, "input range low");
  cDiff->add_option("--hi", dHi, "input range high");
  cDiff->add_flag("--prompt-modulo", dPromptModulo,
                  "compare prompt outputs by origin label");
  cDiff->add_option("--assume", dAssume, "assumption monitor ids")
      ->delimiter(',');
  cDiff->add_option("--enum-labels", dEnumLabels,
                    "new enum labels for the no-new-enum-input monitor")
      ->delimiter(',');
  cDiff->add_option("--init", dInit, "name=value seeds for the new store")
      ->delimiter(',');

  for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  try {
    if (cParse->parsed()) {
      wupd::Program p = load(parseFile);
      emit(json{{"ok", true}, {"program", wupd::print_program(p)}});
      return 0;
    }

    if (cType->parsed()) {
      wupd::Program p = load(typeFile);
      wupd::typecheck(p);
      emit(json{{"ok", true}});
      return 0;
    }

    if (cRun->parsed()) {
      wupd::Program p = load(runFile);
      wupd::RunResult r = wupd::run(p, read_inputs(runInputs), runFuel);
      for (const auto& ev : r.trace) std::cerr << wupd::print_event(ev) << "\n";
      emit(wupd::run_result_json(r));
      switch (r.outcome) {
        case wupd::Outcome::Terminated: return 0;
        case wupd::Outcome::Crashed: return 1;
        case wupd::Outcome::FuelExhausted: return 2;
      }
      return 0;
    }

    if (cAna->parsed()) {
      wupd::Program p = load(anaFile);
      auto env = wupd::typecheck(p);
      emit(wupd::analysis_json(wupd::analyze(p, *env)));
      return 0;
    }

    if (cEq->parsed()) {
      wupd::Program p1 = load(eqOld);
      wupd::Program p2 = load(eqNew);
      wupd::Verdict v;
      if (eqRule == "comp") {
        if (eqVar.empty())
          throw CLI::ValidationError("--var is required with --rule comp");
        v = wupd::check_equiv_comp(p1, p2, eqVar);
      } else if (eqRule == "term") {
        v = wupd::check_term_same(p1, p2);
      } else {
        v = wupd::check_behavioral(p1, p2);
      }
      emit(wupd::verdict_json(v));
      return v.accepted ? 0 : 1;
    }

    if (cUp->parsed()) {
      wupd::Program oldP = load(upOld);
      wupd::Program newP = load(upNew);
      std::optional<wupd::ConfigValuation> rho;
      if (!upRho.empty()) rho = read_rho(upRho);

      std::vector<wupd::UpdateClassReport> reps;
      if (upClass == "auto") {
        reps = wupd::classify_update(oldP, newP, rho);
      } else if (upClass == "config") {
        if (!rho) rho = wupd::search_config_valuation(oldP, newP);
        if (rho) {
          reps.push_back(wupd::check_new_config_vars(oldP, newP, *rho));
        } else {
          wupd::UpdateClassReport r;
          r.cls = wupd::UpdateClass::NewConfigVars;
          r.verdict.failureReason = "no accepting configuration valuation found";
          reps.push_back(std::move(r));
        }
      } else if (upClass == "enum") {
        reps.push_back(wupd::check_enum_extension(oldP, newP));
      } else if (upClass == "weaken") {
        reps.push_back(wupd::check_type_weakening(oldP, newP));
      } else if (upClass == "exit") {
        reps.push_back(wupd::check_exit_on_error(oldP, newP));
      } else if (upClass == "prompt") {
        reps.push_back(wupd::check_prompt_change(oldP, newP));
      } else {
        reps.push_back(wupd::check_missing_init(oldP, newP));
      }

      json arr = json::array();
      for (const auto& r : reps) arr.push_back(wupd::update_report_json(r));
      emit(arr);
      return exit_for_reports(reps);
    }

    if (cDsu->parsed()) {
      wupd::Program oldP = load(dsuOld);
      wupd::Program newP = load(dsuNew);
      auto inputs = read_inputs(dsuInputs);

      auto up = wupd::find_update_point(oldP, inputs, dsuAt, dsuFuel);
      if (!up) {
        emit(json{{"mapped", false},
                  {"error", "the old run never reaches the requested output"}});
        return 2;
      }
      try {
        std::vector<int64_t> remaining(
            inputs.begin() + static_cast<long>(up->inputsConsumed), inputs.end());
        wupd::HybridTrace h =
            wupd::hybrid_execute(oldP, newP, *up, remaining, dsuFuel);
        wupd::RunResult pure = wupd::run(newP, inputs, dsuFuel);
        bool hybridEq = h.combined == pure.trace;
        wupd::CompatResult cr =
            wupd::empirical_backward_compat(oldP, newP, inputs, dsuFuel);

        for (const auto& ev : h.combined)
          std::cerr << wupd::print_event(ev) << "\n";
        emit(json{{"mapped", true},
                  {"hybridEqualsPureNew", hybridEq},
                  {"backwardCompatible", wupd::compat_status_name(cr.status)}});
        if (hybridEq && cr.status == wupd::CompatStatus::Compatible) return 0;
        if (!hybridEq || cr.status == wupd::CompatStatus::Incompatible) return 1;
        return 2;
      } catch (const wupd::DsuError& e) {
        emit(json{{"mapped", false},
                  {"kind", e.kind == wupd::DsuError::Kind::MappingNotFound
                               ? "MappingNotFound"
                               : "InvalidUpdatePoint"},
                  {"error", e.what()}});
        return 2;
      }
    }

    if (cDiff->parsed()) {
      wupd::Program oldP = load(dOld);
      wupd::Program newP = load(dNew);
      wupd::CampaignConfig cfg;
      cfg.trials = dTrials;
      cfg.fuel = dFuel;
      cfg.seed = dSeed;
      cfg.inputLen = dLen;
      cfg.lo = dLo;
      cfg.hi = dHi;
      cfg.promptModulo = dPromptModulo;
      cfg.assumptions.insert(dAssume.begin(), dAssume.end());
      cfg.newEnumLabels = dEnumLabels;
      for (const auto& kv : dInit) {
        auto eq = kv.find('=');
        if (eq == std::string::npos)
          throw CLI::ValidationError("--init expects name=value, got " + kv);
        cfg.newInitScalars[kv.substr(0, eq)] = std::stoll(kv.substr(eq + 1));
      }
      wupd::CampaignResult r = wupd::run_campaign(oldP, newP, cfg);
      emit(wupd::campaign_json(r));
      if (r.diverged > 0) return 1;
      if (r.inconclusive > 0) return 2;
      return 0;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const wupd::LangError& e) {
    json err{{"error",
              {{"class", wupd::err_class_name(e.cls)},
               {"message", e.what()},
               {"line", e.line},
               {"col", e.col}}}};
    if (!e.rule.empty()) err["error"]["rule"] = e.rule;
    emit(err);
    std::cerr << wupd::err_class_name(e.cls) << ": " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 3;
  }

  return 3;
}
