#include "wupd/interp.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace wupd {

namespace {

bool fits_int32(int64_t v) {
  return v >= INT32_MIN && v <= INT32_MAX;
}

struct Eval {
  const ValueStore& s;
  bool of = false;
  std::optional<CrashCause> err;
  bool undef = false;

  std::optional<int64_t> fail(CrashCause c) {
    if (!err) err = c;
    if (c == CrashCause::UndefinedRead) undef = true;
    return std::nullopt;
  }

  std::optional<Value> readLval(const Lval& lv) {
    if (!lv.isIndexed()) {
      auto it = s.scalars.find(lv.base);
      if (it == s.scalars.end()) {
        fail(CrashCause::UndefinedRead);
        return std::nullopt;
      }
      if (it->second.kind == VKind::Undef) {
        fail(CrashCause::UndefinedRead);
        return std::nullopt;
      }
      return it->second;
    }
    int64_t idx = 0;
    if (lv.litIndex) {
      idx = *lv.litIndex;
    } else {
      auto it = s.scalars.find(lv.varIndex);
      if (it == s.scalars.end() || it->second.kind == VKind::Undef) {
        fail(CrashCause::UndefinedRead);
        return std::nullopt;
      }
      if (it->second.kind != VKind::Int64) {
        fail(CrashCause::ValueMismatch);
        return std::nullopt;
      }
      idx = it->second.i;
    }
    auto ait = s.arrays.find(lv.base);
    if (ait == s.arrays.end()) {
      fail(CrashCause::UndefinedRead);
      return std::nullopt;
    }
    if (idx < 1 || idx > static_cast<int64_t>(ait->second.size())) {
      fail(CrashCause::IndexOOB);
      return std::nullopt;
    }
    const Value& cell = ait->second[static_cast<size_t>(idx - 1)];
    if (cell.kind == VKind::Undef) {
      fail(CrashCause::UndefinedRead);
      return std::nullopt;
    }
    return cell;
  }

  std::optional<int64_t> intOf(const Value& v) {
    if (v.kind != VKind::Int64) return fail(CrashCause::ValueMismatch);
    return v.i;
  }

  std::optional<Value> go(const ExprPtr& e) {
    switch (e->kind) {
      case ExprKind::IntLit:
        return Value::ofInt(e->intVal);
      case ExprKind::LabelLit:
        return Value::ofLabel(e->label);
      case ExprKind::LvalRef:
        return readLval(e->lval);
      case ExprKind::EnumEq: {
        auto it = s.scalars.find(e->enumVar);
        if (it == s.scalars.end() || it->second.kind == VKind::Undef) {
          fail(CrashCause::UndefinedRead);
          return std::nullopt;
        }
        if (it->second.kind != VKind::Label) {
          fail(CrashCause::ValueMismatch);
          return std::nullopt;
        }
        return Value::ofInt(it->second.label == e->label ? 1 : 0);
      }
      case ExprKind::Unary: {
        auto v = go(e->a);
        if (!v) return std::nullopt;
        auto n = intOf(*v);
        if (!n) return std::nullopt;
        if (e->unop == UnOp::Not) return Value::ofInt(*n == 0 ? 1 : 0);
        if (*n == INT64_MIN) {
          of = true;
          return Value::ofInt(INT64_MIN);
        }
        return Value::ofInt(-*n);
      }
      case ExprKind::Binary: {
        auto va = go(e->a);
        if (!va) return std::nullopt;
        auto vb = go(e->b);
        if (!vb) return std::nullopt;
        auto a = intOf(*va);
        if (!a) return std::nullopt;
        auto b = intOf(*vb);
        if (!b) return std::nullopt;
        int64_t r = 0;
        switch (e->binop) {
          case BinOp::Add:
            if (__builtin_add_overflow(*a, *b, &r)) of = true;
            return Value::ofInt(r);
          case BinOp::Sub:
            if (__builtin_sub_overflow(*a, *b, &r)) of = true;
            return Value::ofInt(r);
          case BinOp::Mul:
            if (__builtin_mul_overflow(*a, *b, &r)) of = true;
            return Value::ofInt(r);
          case BinOp::Div:
            if (*b == 0) {
              fail(CrashCause::DivByZero);
              return std::nullopt;
            }
            if (*a == INT64_MIN && *b == -1) {
              of = true;
              return Value::ofInt(INT64_MIN);
            }
            return Value::ofInt(*a / *b);
          case BinOp::Mod:
            if (*b == 0) {
              fail(CrashCause::DivByZero);
              return std::nullopt;
            }
            if (*a == INT64_MIN && *b == -1) {
              of = true;
              return Value::ofInt(0);
            }
            return Value::ofInt(*a % *b);
          case BinOp::Lt:
            return Value::ofInt(*a < *b ? 1 : 0);
          case BinOp::Le:
            return Value::ofInt(*a <= *b ? 1 : 0);
          case BinOp::Eq:
            return Value::ofInt(*a == *b ? 1 : 0);
          case BinOp::Ne:
            return Value::ofInt(*a != *b ? 1 : 0);
          case BinOp::Gt:
            return Value::ofInt(*a > *b ? 1 : 0);
          case BinOp::Ge:
            return Value::ofInt(*a >= *b ? 1 : 0);
          case BinOp::And:
            return Value::ofInt(*a != 0 && *b != 0 ? 1 : 0);
          case BinOp::Or:
            return Value::ofInt(*a != 0 || *b != 0 ? 1 : 0);
        }
        return std::nullopt;
      }
    }
    return std::nullopt;
  }
};

void set_crash(ExecState& st, CrashCause cause) {
  st.crash = true;
  if (!st.cause) st.cause = cause;
  if (cause == CrashCause::UndefinedRead) st.undefinedRead = true;
}

ExprPtr value_to_expr(const Value& v) {
  if (v.kind == VKind::Label) return make_label(v.label);
  return make_int(v.i);
}

// Evaluates the whole expression in one step. On success the expression
// position becomes the value literal and the overflow bit is merged; on an
// evaluation error the position becomes 0, the crash flag is set and the
// overflow bit is discarded.
ExprPtr eval_position(const ExprPtr& e, ExecState& st) {
  EvalResult r = eval_expr(e, st.store);
  if (!r.ok) {
    set_crash(st, *r.errCause);
    if (r.undefinedRead) st.undefinedRead = true;
    return make_int(0);
  }
  if (r.overflowBit) st.overflow = true;
  return value_to_expr(r.v);
}

StmtPtr with_expr(const StmtPtr& s, ExprPtr e) {
  auto copy = std::make_shared<Stmt>(*s);
  copy->expr = std::move(e);
  return StmtPtr(copy);
}

void splice_front(Seq& rest, const Seq& head) {
  rest.erase(rest.begin());
  rest.insert(rest.begin(), head.begin(), head.end());
}

void step_assign(Config& c) {
  ExecState& st = c.state;
  const StmtPtr& s = c.rest.front();
  if (s->target.isIndexed() && !s->target.litIndex) {
    // The index is the leftmost redex; it takes its own evaluation step.
    EvalResult r = eval_expr(make_lval(Lval{s->target.varIndex, {}, {}}), st.store);
    auto copy = std::make_shared<Stmt>(*s);
    if (!r.ok) {
      set_crash(st, *r.errCause);
      copy->target.litIndex = 0;
    } else {
      copy->target.litIndex = r.v.i;
    }
    copy->target.varIndex.clear();
    c.rest.front() = StmtPtr(copy);
    return;
  }
  if (!is_value_expr(*s->expr)) {
    c.rest.front() = with_expr(s, eval_position(s->expr, st));
    return;
  }
  EvalResult rv = eval_expr(s->expr, st.store);
  assert(rv.ok);
  const Value& v = rv.v;
  const Type ty = *st.tenv->varType(s->target.base);
  if (!s->target.isIndexed()) {
    if (ty.kind == TyKind::Int && v.kind == VKind::Int64 && !fits_int32(v.i)) {
      set_crash(st, CrashCause::ValueMismatch);
      return;
    }
    st.store.scalars[s->target.base] = v;
    c.rest.front() = make_skip();
    return;
  }
  auto& arr = st.store.arrays[s->target.base];
  int64_t idx = *s->target.litIndex;
  if (idx < 1 || idx > static_cast<int64_t>(arr.size())) {
    set_crash(st, CrashCause::IndexOOB);
    return;
  }
  if (ty.elem().kind == TyKind::Int && v.kind == VKind::Int64 && !fits_int32(v.i)) {
    set_crash(st, CrashCause::ValueMismatch);
    return;
  }
  arr[static_cast<size_t>(idx - 1)] = v;
  c.rest.front() = make_skip();
}

void step_input(Config& c) {
  ExecState& st = c.state;
  const StmtPtr& s = c.rest.front();
  if (st.store.inputSeq.empty()) {
    set_crash(st, CrashCause::EmptyInput);
    return;
  }
  int64_t v = st.store.inputSeq.front();
  const Type ty = *st.tenv->varType(s->inputVar);
  Value stored;
  switch (ty.kind) {
    case TyKind::Long:
      stored = Value::ofInt(v);
      break;
    case TyKind::Int:
      if (!fits_int32(v)) {
        set_crash(st, CrashCause::ValueMismatch);
        return;
      }
      stored = Value::ofInt(v);
      break;
    case TyKind::Enum: {
      const EnumDecl* ed = st.tenv->enumDecl(ty.enumName);
      if (!ed || v < 1 || v > static_cast<int64_t>(ed->labels.size())) {
        set_crash(st, CrashCause::ValueMismatch);
        return;
      }
      stored = Value::ofLabel(ed->labels[static_cast<size_t>(v - 1)]);
      break;
    }
    case TyKind::Pmpt:
      set_crash(st, CrashCause::ValueMismatch);
      return;
  }
  st.store.scalars[s->inputVar] = stored;
  st.store.inputSeq.pop_front();
  st.store.ioSeq.push_back({IOEvent::Kind::In, v, {}});
  c.rest.front() = make_skip();
}

void step_output(Config& c) {
  ExecState& st = c.state;
  const StmtPtr& s = c.rest.front();
  if (!is_value_expr(*s->expr)) {
    c.rest.front() = with_expr(s, eval_position(s->expr, st));
    return;
  }
  if (s->expr->kind == ExprKind::IntLit) {
    st.store.ioSeq.push_back({IOEvent::Kind::Out, s->expr->intVal, s->promptOrigin});
    c.rest.front() = make_skip();
    return;
  }
  const std::string& l = s->expr->label;
  if (st.tenv->isEnumLabel(l)) {
    auto [ename, idx] = st.tenv->enumLabelOf.at(l);
    (void)ename;
    st.store.ioSeq.push_back({IOEvent::Kind::Out, idx, {}});
    c.rest.front() = make_skip();
    return;
  }
  // Prompt label: rewrite to the configured value; the eventual Out event
  // carries the origin label.
  auto copy = std::make_shared<Stmt>(*s);
  copy->expr = make_int(st.tenv->promptConst.at(l));
  copy->promptOrigin = l;
  c.rest.front() = StmtPtr(copy);
}

void step_if(Config& c) {
  ExecState& st = c.state;
  const StmtPtr& s = c.rest.front();
  if (!is_value_expr(*s->expr)) {
    c.rest.front() = with_expr(s, eval_position(s->expr, st));
    return;
  }
  if (s->expr->kind != ExprKind::IntLit) {
    set_crash(st, CrashCause::ValueMismatch);
    return;
  }
  const Seq& branch = s->expr->intVal != 0 ? s->thenSeq : s->elseSeq;
  splice_front(c.rest, branch);
  if (c.rest.empty()) c.rest.push_back(make_skip());
}

void step_while(Config& c) {
  ExecState& st = c.state;
  const StmtPtr& s = c.rest.front();
  std::optional<int64_t> pred = s->predValue;
  if (!pred && s->expr->kind == ExprKind::IntLit) pred = s->expr->intVal;
  if (!pred) {
    EvalResult r = eval_expr(s->expr, st.store);
    auto copy = std::make_shared<Stmt>(*s);
    if (!r.ok) {
      set_crash(st, *r.errCause);
      copy->predValue = 0;
    } else {
      if (r.overflowBit) st.overflow = true;
      if (r.v.kind != VKind::Int64) {
        set_crash(st, CrashCause::ValueMismatch);
        copy->predValue = 0;
      } else {
        copy->predValue = r.v.i;
      }
    }
    c.rest.front() = StmtPtr(copy);
    return;
  }
  if (*pred != 0) {
    st.loopCounters[s->loopLabel] += 1;
    auto continuation = std::make_shared<Stmt>(*s);
    continuation->predValue.reset();
    Seq head = s->body;
    head.push_back(StmtPtr(continuation));
    splice_front(c.rest, head);
  } else {
    st.loopCounters[s->loopLabel] = 0;
    c.rest.front() = make_skip();
  }
}

void collect_loop_labels(const Seq& seq, std::map<int, int64_t>& out);

void collect_loop_labels(const StmtPtr& s, std::map<int, int64_t>& out) {
  switch (s->kind) {
    case StmtKind::If:
      collect_loop_labels(s->thenSeq, out);
      collect_loop_labels(s->elseSeq, out);
      break;
    case StmtKind::While:
      out[s->loopLabel] = 0;
      collect_loop_labels(s->body, out);
      break;
    default:
      break;
  }
}

void collect_loop_labels(const Seq& seq, std::map<int, int64_t>& out) {
  for (const auto& s : seq) collect_loop_labels(s, out);
}

std::string undef_suffix(const Type& t) {
  switch (t.kind) {
    case TyKind::Int:
      return "int";
    case TyKind::Long:
      return "long";
    case TyKind::Pmpt:
      return "pmpt";
    case TyKind::Enum:
      return t.enumName;
  }
  return "?";
}

}  // namespace

EvalResult eval_expr(const ExprPtr& e, const ValueStore& s) {
  Eval ev{s};
  auto v = ev.go(e);
  EvalResult r;
  r.overflowBit = ev.of;
  r.undefinedRead = ev.undef;
  if (v) {
    r.ok = true;
    r.v = *v;
  } else {
    r.errCause = ev.err;
  }
  return r;
}

bool is_terminal(const Config& c) {
  return c.rest.size() == 1 && c.rest.front()->kind == StmtKind::Skip;
}

void step_inplace(Config& c) {
  if (c.state.crash) return;  // rule Crash: fixpoint
  if (c.rest.empty()) return;
  const StmtPtr& s = c.rest.front();
  switch (s->kind) {
    case StmtKind::Skip:
      if (c.rest.size() > 1) c.rest.erase(c.rest.begin());  // rule Seq
      return;
    case StmtKind::Assign:
      step_assign(c);
      return;
    case StmtKind::Input:
      step_input(c);
      return;
    case StmtKind::Output:
      step_output(c);
      return;
    case StmtKind::If:
      step_if(c);
      return;
    case StmtKind::While:
      step_while(c);
      return;
  }
}

Config step(const Config& c) {
  Config next = c;
  step_inplace(next);
  return next;
}

Config init_config(const Program& p, const TypeEnvPtr& env,
                   std::vector<int64_t> inputs) {
  Config c;
  c.rest = p.entry;
  if (c.rest.empty()) c.rest.push_back(make_skip());
  c.state.tenv = env;
  collect_loop_labels(c.rest, c.state.loopCounters);
  for (const auto& vd : p.vars) {
    if (vd.ty.isArray()) {
      c.state.store.arrays[vd.name] =
          std::vector<Value>(static_cast<size_t>(*vd.ty.arraySize),
                             Value::undef(vd.ty.elem()));
    } else {
      c.state.store.scalars[vd.name] = Value::undef(vd.ty);
    }
  }
  c.state.store.inputSeq.assign(inputs.begin(), inputs.end());
  return c;
}

RunResult run(const Program& p, const TypeEnvPtr& env,
              std::vector<int64_t> inputs, int64_t fuel) {
  Config c = init_config(p, env, std::move(inputs));
  RunResult res;
  while (res.steps < fuel) {
    if (c.state.crash) break;
    if (is_terminal(c)) break;
    step_inplace(c);
    ++res.steps;
  }
  if (c.state.crash) {
    res.outcome = Outcome::Crashed;
    res.cause = c.state.cause;
  } else if (is_terminal(c)) {
    res.outcome = Outcome::Terminated;
  } else {
    res.outcome = Outcome::FuelExhausted;
  }
  res.trace = c.state.store.ioSeq;
  res.undefinedReadOccurred = c.state.undefinedRead;
  res.finalState = std::move(c.state);
  return res;
}

RunResult run(const Program& p, std::vector<int64_t> inputs, int64_t fuel) {
  return run(p, typecheck(p), std::move(inputs), fuel);
}

IOTrace out_prefix(const IOTrace& t) {
  size_t end = 0;
  for (size_t i = 0; i < t.size(); ++i)
    if (t[i].kind == IOEvent::Kind::Out) end = i + 1;
  return IOTrace(t.begin(), t.begin() + static_cast<ptrdiff_t>(end));
}

std::string print_value(const Value& v) {
  switch (v.kind) {
    case VKind::Int64:
      return std::to_string(v.i);
    case VKind::Label:
      return v.label;
    case VKind::Undef:
      return "udf:" + undef_suffix(v.undefTy);
  }
  return "?";
}

std::string print_event(const IOEvent& ev) {
  std::string s = ev.kind == IOEvent::Kind::In ? "in " : "out ";
  s += std::to_string(ev.value);
  if (!ev.promptOrigin.empty()) s += " #pmpt:" + ev.promptOrigin;
  return s;
}

std::string print_trace(const IOTrace& t) {
  std::string s;
  for (size_t i = 0; i < t.size(); ++i) {
    if (i) s += "; ";
    s += print_event(t[i]);
  }
  return s;
}

std::string print_config(const Config& c) {
  std::ostringstream os;
  os << (is_terminal(c) ? "skip" : print_seq(c.rest));
  const ExecState& st = c.state;
  os << " | f=" << (st.crash ? 1 : 0) << " of=" << (st.overflow ? 1 : 0);
  os << " | loops ";
  if (st.loopCounters.empty()) {
    os << "-";
  } else {
    bool first = true;
    for (const auto& [label, count] : st.loopCounters) {
      if (!first) os << ",";
      first = false;
      os << label << ":" << count;
    }
  }
  os << " | in=[";
  for (size_t i = 0; i < st.store.inputSeq.size(); ++i) {
    if (i) os << " ";
    os << st.store.inputSeq[i];
  }
  os << "] | io=[" << print_trace(st.store.ioSeq) << "] | ";
  std::vector<std::pair<std::string, std::string>> entries;
  for (const auto& [name, v] : st.store.scalars)
    entries.emplace_back(name, print_value(v));
  for (const auto& [name, cells] : st.store.arrays) {
    std::string t = "[";
    for (size_t i = 0; i < cells.size(); ++i) {
      if (i) t += " ";
      t += print_value(cells[i]);
    }
    t += "]";
    entries.emplace_back(name, std::move(t));
  }
  std::sort(entries.begin(), entries.end());
  if (entries.empty()) {
    os << "-";
  } else {
    for (size_t i = 0; i < entries.size(); ++i) {
      if (i) os << " ";
      os << entries[i].first << "=" << entries[i].second;
    }
  }
  return os.str();
}

std::string crash_cause_name(CrashCause c) {
  switch (c) {
    case CrashCause::DivByZero:
      return "DivByZero";
    case CrashCause::IndexOOB:
      return "IndexOOB";
    case CrashCause::ValueMismatch:
      return "ValueMismatch";
    case CrashCause::EmptyInput:
      return "EmptyInput";
    case CrashCause::UndefinedRead:
      return "UndefinedRead";
  }
  return "?";
}

std::string outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Terminated:
      return "Terminated";
    case Outcome::Crashed:
      return "Crashed";
    case Outcome::FuelExhausted:
      return "FuelExhausted";
  }
  return "?";
}

}  // namespace wupd
