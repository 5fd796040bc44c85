#include "wupd/difftest.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "wupd/typecheck.hpp"

namespace wupd {

std::vector<int64_t> gen_inputs(uint64_t seed, int length, int64_t lo, int64_t hi) {
  if (length < 0) throw std::invalid_argument("gen_inputs: negative length");
  if (lo > hi) throw std::invalid_argument("gen_inputs: empty range");
  std::mt19937_64 rng(seed);
  const uint64_t span = static_cast<uint64_t>(hi) - static_cast<uint64_t>(lo) + 1;
  std::vector<int64_t> out;
  out.reserve(static_cast<size_t>(length));
  for (int i = 0; i < length; ++i)
    out.push_back(lo + static_cast<int64_t>(rng() % span));
  return out;
}

std::string mut_kind_name(MutKind k) {
  switch (k) {
    case MutKind::Reorder: return "reorder";
    case MutKind::DuplicateSkip: return "duplicate-skip";
    case MutKind::IfMotion: return "if-motion";
    case MutKind::TrailingSkip: return "trailing-skip";
    case MutKind::PrependGuard: return "prepend-guard";
    case MutKind::PrependInit: return "prepend-init";
  }
  return "?";
}

std::string trial_cmp_name(TrialCmp c) {
  switch (c) {
    case TrialCmp::Equal: return "Equal";
    case TrialCmp::PrefixOldNew: return "PrefixOldNew";
    case TrialCmp::Diverged: return "Diverged";
    case TrialCmp::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::string inconclusive_reason_name(InconclusiveReason r) {
  switch (r) {
    case InconclusiveReason::None: return "none";
    case InconclusiveReason::Fuel: return "fuel";
    case InconclusiveReason::InvalidOldRun: return "invalid-old-run";
    case InconclusiveReason::AssumptionViolated: return "assumption-violated";
  }
  return "?";
}

namespace {

bool is_plain(const StmtPtr& s) {
  return s->kind == StmtKind::Assign || s->kind == StmtKind::Skip;
}

bool independent(const StmtPtr& a, const StmtPtr& b) {
  VarSet da = def_stmt(a), db = def_stmt(b);
  return !intersects(da, use_stmt(b)) && !intersects(db, use_stmt(a)) &&
         !intersects(da, db);
}

std::vector<std::string> scalar_numeric_vars(const Program& p) {
  std::vector<std::string> vs;
  for (const auto& d : p.vars)
    if (!d.ty.isArray() &&
        (d.ty.kind == TyKind::Int || d.ty.kind == TyKind::Long))
      vs.push_back(d.name);
  return vs;
}

Program with_entry(const Program& p, Seq entry) {
  Program q = p;
  q.entry = std::move(entry);
  return q;
}

}  // namespace

Program mutate_pair(const Program& p, MutKind kind, uint64_t seed) {
  const Seq& e = p.entry;
  const size_t n = e.size();

  switch (kind) {
    case MutKind::TrailingSkip: {
      Seq out = e;
      out.push_back(make_skip());
      return with_entry(p, out);
    }

    case MutKind::DuplicateSkip: {
      std::vector<size_t> sites;
      for (size_t i = 0; i < n; ++i)
        if (e[i]->kind == StmtKind::Assign && is_value_expr(*e[i]->expr))
          sites.push_back(i);
      Seq out = e;
      if (!sites.empty()) {
        size_t at = sites[seed % sites.size()];
        out.insert(out.begin() + static_cast<long>(at), e[at]);
      } else {
        size_t at = seed % (n + 1);
        out.insert(out.begin() + static_cast<long>(at), make_skip());
      }
      return with_entry(p, out);
    }

    case MutKind::Reorder: {
      std::vector<size_t> sites;
      for (size_t i = 0; i + 1 < n; ++i)
        if (is_plain(e[i]) && is_plain(e[i + 1]) && independent(e[i], e[i + 1]))
          sites.push_back(i);
      if (sites.empty())
        throw NoApplicableSite("no adjacent independent statement pair");
      size_t at = sites[seed % sites.size()];
      Seq out = e;
      std::swap(out[at], out[at + 1]);
      return with_entry(p, out);
    }

    case MutKind::IfMotion: {
      std::vector<size_t> sites;
      for (size_t i = 0; i + 1 < n; ++i)
        if (is_plain(e[i]) && e[i + 1]->kind == StmtKind::If &&
            !intersects(def_stmt(e[i]), use_expr(e[i + 1]->expr)))
          sites.push_back(i);
      if (sites.empty())
        throw NoApplicableSite("no statement directly before an untouched branch");
      size_t at = sites[seed % sites.size()];
      const StmtPtr& moved = e[at];
      const StmtPtr& br = e[at + 1];
      Seq thenSeq = br->thenSeq, elseSeq = br->elseSeq;
      thenSeq.insert(thenSeq.begin(), moved);
      elseSeq.insert(elseSeq.begin(), moved);
      Seq out;
      for (size_t i = 0; i < n; ++i) {
        if (i == at) continue;
        if (i == at + 1)
          out.push_back(make_if(br->expr, thenSeq, elseSeq));
        else
          out.push_back(e[i]);
      }
      return with_entry(p, out);
    }

    case MutKind::PrependGuard: {
      auto vars = scalar_numeric_vars(p);
      ExprPtr pred = vars.empty()
                         ? make_int(1)
                         : make_lval(Lval{vars[seed % vars.size()], {}, {}});
      Seq out = e;
      out.insert(out.begin(), make_if(pred, {make_skip()}, {make_skip()}));
      return with_entry(p, out);
    }

    case MutKind::PrependInit: {
      VarSet imported = imported_vars(p.entry, {kIoSeqVar});
      std::vector<std::string> sites;
      for (const auto& v : scalar_numeric_vars(p))
        if (imported.count(v)) sites.push_back(v);
      if (sites.empty())
        throw NoApplicableSite("no scalar variable feeds the entry's output");
      const std::string& v = sites[seed % sites.size()];
      Seq out = e;
      out.insert(out.begin(),
                 make_assign(Lval{v, {}, {}},
                             make_int(static_cast<int64_t>(seed % 7))));
      return with_entry(p, out);
    }
  }
  throw std::logic_error("mutate_pair: unhandled kind");
}

namespace {

bool events_eq(const IOEvent& a, const IOEvent& b, bool promptModulo) {
  if (!promptModulo) return a == b;
  if (a.kind != b.kind) return false;
  if (a.kind == IOEvent::Kind::In) return a.value == b.value;
  if (a.promptOrigin.empty() != b.promptOrigin.empty()) return false;
  if (!a.promptOrigin.empty()) return a.promptOrigin == b.promptOrigin;
  return a.value == b.value;
}

bool trace_prefix_of(const IOTrace& a, const IOTrace& b, bool promptModulo,
                     int64_t& firstDiff) {
  size_t i = 0;
  while (i < a.size() && i < b.size() && events_eq(a[i], b[i], promptModulo)) ++i;
  firstDiff = static_cast<int64_t>(i);
  return i == a.size();
}

}  // namespace

TrialReport compare_runs(const RunResult& oldR, const RunResult& newR,
                         const CampaignConfig& cfg) {
  TrialReport t;
  t.oldResult = oldR;
  t.newResult = newR;

  auto monitored = [&](const char* id) { return cfg.assumptions.count(id) > 0; };

  if (monitored(kAssumeNoUndefinedRead) &&
      (oldR.undefinedReadOccurred || newR.undefinedReadOccurred))
    t.assumptionViolations.push_back(kAssumeNoUndefinedRead);

  if (monitored(kAssumeNoNewEnumInput)) {
    bool hit = false;
    for (const auto& ev : newR.trace)
      if (ev.kind == IOEvent::Kind::In && cfg.newEnumInputValues.count(ev.value))
        hit = true;
    if (hit) t.assumptionViolations.push_back(kAssumeNoNewEnumInput);
  }

  if (monitored(kAssumeNoOverflowOnWeakened) &&
      (oldR.finalState.overflow || newR.finalState.overflow))
    t.assumptionViolations.push_back(kAssumeNoOverflowOnWeakened);

  if (monitored(kAssumeNoGuardCrash) && newR.outcome == Outcome::Crashed &&
      oldR.outcome != Outcome::Crashed)
    t.assumptionViolations.push_back(kAssumeNoGuardCrash);

  if (oldR.outcome == Outcome::Crashed || oldR.undefinedReadOccurred) {
    t.comparison = TrialCmp::Inconclusive;
    t.reason = InconclusiveReason::InvalidOldRun;
    return t;
  }
  if (!t.assumptionViolations.empty()) {
    t.comparison = TrialCmp::Inconclusive;
    t.reason = InconclusiveReason::AssumptionViolated;
    return t;
  }
  if (oldR.outcome == Outcome::FuelExhausted ||
      newR.outcome == Outcome::FuelExhausted) {
    t.comparison = TrialCmp::Inconclusive;
    t.reason = InconclusiveReason::Fuel;
    return t;
  }

  int64_t firstDiff = 0;
  if (trace_prefix_of(oldR.trace, newR.trace, cfg.promptModulo, firstDiff)) {
    t.comparison = oldR.trace.size() == newR.trace.size() ? TrialCmp::Equal
                                                          : TrialCmp::PrefixOldNew;
    return t;
  }
  t.comparison = TrialCmp::Diverged;
  t.divergeIndex = firstDiff;
  return t;
}

namespace {

RunResult run_seeded(const Program& p, const TypeEnvPtr& env,
                     const std::vector<int64_t>& inputs, int64_t fuel,
                     const std::map<std::string, int64_t>& initScalars) {
  Config c = init_config(p, env, inputs);
  for (const auto& [name, v] : initScalars)
    if (c.state.store.scalars.count(name))
      c.state.store.scalars[name] = Value::ofInt(v);

  RunResult r;
  for (;;) {
    if (c.state.crash) { r.outcome = Outcome::Crashed; break; }
    if (is_terminal(c)) { r.outcome = Outcome::Terminated; break; }
    if (r.steps >= fuel) { r.outcome = Outcome::FuelExhausted; break; }
    step_inplace(c);
    ++r.steps;
  }
  r.cause = c.state.cause;
  r.trace = c.state.store.ioSeq;
  r.undefinedReadOccurred = c.state.undefinedRead;
  r.finalState = std::move(c.state);
  return r;
}

}  // namespace

CampaignResult run_campaign(const Program& oldP, const Program& newP,
                            const CampaignConfig& cfg) {
  auto env1 = typecheck(oldP);
  auto env2 = typecheck(newP);

  CampaignConfig local = cfg;
  if (local.newEnumInputValues.empty())
    for (const auto& l : local.newEnumLabels) {
      auto it = env2->enumLabelOf.find(l);
      if (it != env2->enumLabelOf.end())
        local.newEnumInputValues.insert(it->second.second);
    }

  CampaignResult R;
  R.trials = cfg.trials;
  R.reports.reserve(static_cast<size_t>(std::max(cfg.trials, 0)));

  for (int i = 0; i < cfg.trials; ++i) {
    const uint64_t s = cfg.seed + static_cast<uint64_t>(i) * 0x9e3779b97f4a7c15ULL;
    auto inputs = gen_inputs(s, cfg.inputLen, cfg.lo, cfg.hi);

    RunResult oldR = run(oldP, env1, inputs, cfg.fuel);
    RunResult newR = run_seeded(newP, env2, inputs, cfg.fuel, cfg.newInitScalars);

    TrialReport t = compare_runs(oldR, newR, local);
    t.seed = s;
    t.inputs = std::move(inputs);

    switch (t.comparison) {
      case TrialCmp::Equal: ++R.equal; break;
      case TrialCmp::PrefixOldNew: ++R.prefixOldNew; break;
      case TrialCmp::Diverged: ++R.diverged; break;
      case TrialCmp::Inconclusive:
        ++R.inconclusive;
        ++R.inconclusiveByReason[inconclusive_reason_name(t.reason)];
        break;
    }
    R.reports.push_back(std::move(t));
  }
  return R;
}

}  // namespace wupd
