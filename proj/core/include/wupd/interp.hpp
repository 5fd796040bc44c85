#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wupd/ast.hpp"
#include "wupd/typecheck.hpp"

namespace wupd {

enum class VKind { Int64, Label, Undef };

struct Value {
  VKind kind = VKind::Undef;
  int64_t i = 0;      // Int64
  std::string label;  // Label
  Type undefTy;       // Undef

  static Value ofInt(int64_t v) { return {VKind::Int64, v, {}, {}}; }
  static Value ofLabel(std::string l) { return {VKind::Label, 0, std::move(l), {}}; }
  static Value undef(Type t) { return {VKind::Undef, 0, {}, std::move(t)}; }
  friend bool operator==(const Value&, const Value&) = default;
};

struct IOEvent {
  enum class Kind { In, Out } kind = Kind::In;
  int64_t value = 0;
  std::string promptOrigin;  // Out only; empty when not prompt-originated
  friend bool operator==(const IOEvent&, const IOEvent&) = default;
};

using IOTrace = std::vector<IOEvent>;

struct ValueStore {
  std::map<std::string, Value> scalars;
  std::map<std::string, std::vector<Value>> arrays;  // slot i-1 holds cell i
  std::deque<int64_t> inputSeq;
  IOTrace ioSeq;
};

enum class CrashCause { DivByZero, IndexOOB, ValueMismatch, EmptyInput, UndefinedRead };

struct ExecState {
  bool crash = false;
  bool overflow = false;
  TypeEnvPtr tenv;
  std::map<int, int64_t> loopCounters;
  ValueStore store;
  std::optional<CrashCause> cause;  // first crash cause
  bool undefinedRead = false;       // sticky marker
};

struct Config {
  Seq rest;  // [skip] is the terminal configuration
  ExecState state;
};

enum class Outcome { Terminated, Crashed, FuelExhausted };

struct RunResult {
  Outcome outcome = Outcome::FuelExhausted;
  std::optional<CrashCause> cause;
  int64_t steps = 0;
  ExecState finalState;
  IOTrace trace;
  bool undefinedReadOccurred = false;
};

struct EvalResult {
  bool ok = false;
  Value v;                // when ok
  bool overflowBit = false;
  std::optional<CrashCause> errCause;  // when !ok
  bool undefinedRead = false;
};

// Evaluates the whole expression over the store; never throws. Division or
// modulo by zero, out-of-bounds index and Undef reads report an error with
// the cause; arithmetic wraps in 64 bits and reports the overflow bit.
EvalResult eval_expr(const ExprPtr& e, const ValueStore& s);

bool is_terminal(const Config& c);
// Applies exactly one small-step rule; a crashed configuration is a fixpoint.
void step_inplace(Config& c);
Config step(const Config& c);

Config init_config(const Program& p, const TypeEnvPtr& env,
                   std::vector<int64_t> inputs);

RunResult run(const Program& p, const TypeEnvPtr& env,
              std::vector<int64_t> inputs, int64_t fuel);
RunResult run(const Program& p, std::vector<int64_t> inputs, int64_t fuel);

// Longest prefix ending at the last Out event; empty when no Out occurred.
IOTrace out_prefix(const IOTrace& t);

std::string print_value(const Value& v);
std::string print_event(const IOEvent& ev);   // "in 41" | "out 42" | "out 104 #pmpt:greet"
std::string print_trace(const IOTrace& t);    // events joined by "; "
std::string print_config(const Config& c);    // one-line golden-trace form

std::string crash_cause_name(CrashCause c);
std::string outcome_name(Outcome o);

}  // namespace wupd
