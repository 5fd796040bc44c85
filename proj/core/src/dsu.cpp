#include "wupd/dsu.hpp"

#include <algorithm>

#include "wupd/typecheck.hpp"

namespace wupd {

namespace {

int64_t count_events(const IOTrace& t, IOEvent::Kind k) {
  return std::count_if(t.begin(), t.end(),
                       [&](const IOEvent& ev) { return ev.kind == k; });
}

bool front_is_output(const Config& c) {
  return !c.rest.empty() && c.rest.front()->kind == StmtKind::Output;
}

std::vector<int64_t> in_values(const IOTrace& t) {
  std::vector<int64_t> vs;
  for (const auto& ev : t)
    if (ev.kind == IOEvent::Kind::In) vs.push_back(ev.value);
  return vs;
}

}  // namespace

std::string compat_status_name(CompatStatus s) {
  switch (s) {
    case CompatStatus::Compatible: return "Compatible";
    case CompatStatus::Incompatible: return "Incompatible";
    case CompatStatus::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

CompatResult empirical_backward_compat(const Program& oldP, const Program& newP,
                                       const std::vector<int64_t>& inputs,
                                       int64_t fuel) {
  RunResult oldR = run(oldP, inputs, fuel);
  RunResult newR = run(newP, inputs, fuel);

  CompatResult res;
  res.oldTrace = oldR.trace;
  res.newTrace = newR.trace;

  if (oldR.outcome == Outcome::Crashed || oldR.undefinedReadOccurred) {
    res.status = CompatStatus::Inconclusive;
    res.reason = "invalid-old-run";
    return res;
  }
  if (oldR.outcome == Outcome::FuelExhausted) {
    res.status = CompatStatus::Inconclusive;
    res.reason = "fuel";
    return res;
  }

  const IOTrace oldOut = out_prefix(oldR.trace);
  size_t i = 0;
  while (i < oldOut.size() && i < newR.trace.size() &&
         oldOut[i] == newR.trace[i])
    ++i;

  if (i == oldOut.size()) {
    res.status = CompatStatus::Compatible;
    return res;
  }
  if (i == newR.trace.size() && newR.outcome == Outcome::FuelExhausted) {
    res.status = CompatStatus::Inconclusive;
    res.reason = "fuel";
    return res;
  }
  res.status = CompatStatus::Incompatible;
  res.divergeIndex = static_cast<int64_t>(i);
  return res;
}

std::optional<UpdatePoint> find_update_point(const Program& oldP,
                                             const std::vector<int64_t>& inputs,
                                             int64_t atOutput, int64_t fuel) {
  if (atOutput < 1) return std::nullopt;
  auto env = typecheck(oldP);
  Config c = init_config(oldP, env, inputs);
  const int64_t wantEmitted = atOutput - 1;

  for (int64_t used = 0;; ++used) {
    if (c.state.crash) return std::nullopt;
    int64_t outs = count_events(c.state.store.ioSeq, IOEvent::Kind::Out);
    if (outs == wantEmitted && front_is_output(c)) {
      UpdatePoint up;
      up.oldConfig = c;
      up.outputsEmitted = outs;
      up.inputsConsumed = count_events(c.state.store.ioSeq, IOEvent::Kind::In);
      return up;
    }
    if (outs > wantEmitted || is_terminal(c) || used >= fuel)
      return std::nullopt;
    step_inplace(c);
  }
}

StateMapping map_state(const Program& oldP, const Program& newP,
                       const UpdatePoint& up, int64_t fuel) {
  (void)oldP;
  if (up.oldConfig.state.crash)
    throw DsuError(DsuError::Kind::InvalidUpdatePoint,
                   "the paused configuration carries a crash flag");
  if (!front_is_output(up.oldConfig))
    throw DsuError(DsuError::Kind::InvalidUpdatePoint,
                   "the paused configuration's next redex is not an output");

  const std::vector<int64_t> consumed = in_values(up.oldConfig.state.store.ioSeq);

  auto env = typecheck(newP);
  Config c = init_config(newP, env, consumed);
  int64_t steps = 0;

  for (;;) {
    if (c.state.crash) {
      if (c.state.cause == CrashCause::EmptyInput)
        throw DsuError(DsuError::Kind::MappingNotFound,
                       "the replay demands an input beyond the consumed prefix");
      throw DsuError(DsuError::Kind::MappingNotFound,
                     "the replay crashed: " + crash_cause_name(*c.state.cause));
    }
    int64_t outs = count_events(c.state.store.ioSeq, IOEvent::Kind::Out);
    if (outs == up.outputsEmitted && front_is_output(c)) break;
    if (outs > up.outputsEmitted)
      throw DsuError(DsuError::Kind::MappingNotFound,
                     "the replay emitted more outputs than the paused run");
    if (is_terminal(c))
      throw DsuError(DsuError::Kind::MappingNotFound,
                     "the replay terminated before reaching the update point");
    if (steps >= fuel)
      throw DsuError(DsuError::Kind::MappingNotFound,
                     "fuel exhausted during the replay");
    step_inplace(c);
    ++steps;
  }

  if (in_values(c.state.store.ioSeq) != consumed)
    throw DsuError(DsuError::Kind::MappingNotFound,
                   "the replay consumed a different input prefix");

  StateMapping m;
  m.newConfig = std::move(c);
  m.replaySteps = steps;
  return m;
}

HybridTrace hybrid_execute(const Program& oldP, const Program& newP,
                           const UpdatePoint& up,
                           const std::vector<int64_t>& remainingInputs,
                           int64_t fuel) {
  StateMapping m = map_state(oldP, newP, up, fuel);

  HybridTrace h;
  h.prefix = up.oldConfig.state.store.ioSeq;

  Config c = std::move(m.newConfig);
  for (int64_t v : remainingInputs) c.state.store.inputSeq.push_back(v);
  const size_t mark = c.state.store.ioSeq.size();

  int64_t steps = 0;
  Outcome oc = Outcome::FuelExhausted;
  for (;;) {
    if (c.state.crash) { oc = Outcome::Crashed; break; }
    if (is_terminal(c)) { oc = Outcome::Terminated; break; }
    if (steps >= fuel) { oc = Outcome::FuelExhausted; break; }
    step_inplace(c);
    ++steps;
  }

  h.suffix.assign(c.state.store.ioSeq.begin() + static_cast<long>(mark),
                  c.state.store.ioSeq.end());
  h.combined = h.prefix;
  h.combined.insert(h.combined.end(), h.suffix.begin(), h.suffix.end());
  h.suffixOutcome = oc;
  return h;
}

}  // namespace wupd
