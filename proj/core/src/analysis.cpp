#include "wupd/analysis.hpp"

#include <algorithm>

namespace wupd {

namespace {

Seq single(const StmtPtr& s) { return Seq{s}; }

// Gate of the crash-variable assignment case: the target has principal type
// Int and the expression types as Long under subsumption (any numeric).
bool int_target_long_expr(const TypeEnv& env, const StmtPtr& s) {
  Type tl = lval_type(env, s->target);
  return tl.kind == TyKind::Int && types_as_long(env, s->expr);
}

bool expr_can_crash(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::IntLit:
      return false;
    case ExprKind::LabelLit:
      return false;
    case ExprKind::LvalRef:
    case ExprKind::EnumEq:
      return true;  // reading a variable can hit Undef; a variable index can be OOB
    case ExprKind::Unary:
      return expr_can_crash(e->a);
    case ExprKind::Binary:
      if (e->binop == BinOp::Div || e->binop == BinOp::Mod) return true;
      return expr_can_crash(e->a) || expr_can_crash(e->b);
  }
  return true;
}

}  // namespace

VarSet set_union(const VarSet& a, const VarSet& b) {
  VarSet r = a;
  r.insert(b.begin(), b.end());
  return r;
}

bool intersects(const VarSet& a, const VarSet& b) {
  return std::any_of(a.begin(), a.end(),
                     [&](const std::string& x) { return b.count(x) > 0; });
}

VarSet idx_vars(const Lval& lv) {
  if (!lv.varIndex.empty()) return {lv.varIndex};
  return {};
}

VarSet base_vars(const Lval& lv) { return {lv.base}; }

VarSet use_expr(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::IntLit:
    case ExprKind::LabelLit:
      return {};
    case ExprKind::LvalRef:
      return set_union(base_vars(e->lval), idx_vars(e->lval));
    case ExprKind::EnumEq:
      return {e->enumVar};
    case ExprKind::Unary:
      return use_expr(e->a);
    case ExprKind::Binary:
      return set_union(use_expr(e->a), use_expr(e->b));
  }
  return {};
}

VarSet use_stmt(const StmtPtr& s) {
  switch (s->kind) {
    case StmtKind::Skip:
      return {};
    case StmtKind::Assign:
      return set_union(use_expr(s->expr), idx_vars(s->target));
    case StmtKind::Output:
      return set_union(use_expr(s->expr), {kIoSeqVar});
    case StmtKind::Input:
      return {kInputSeqVar, kIoSeqVar};
    case StmtKind::If:
      return set_union(use_expr(s->expr),
                       set_union(use_seq(s->thenSeq), use_seq(s->elseSeq)));
    case StmtKind::While:
      return set_union(use_expr(s->expr), use_seq(s->body));
  }
  return {};
}

VarSet use_seq(const Seq& s) {
  VarSet r;
  for (const auto& st : s) r = set_union(r, use_stmt(st));
  return r;
}

VarSet def_stmt(const StmtPtr& s) {
  switch (s->kind) {
    case StmtKind::Skip:
      return {};
    case StmtKind::Assign:
      return base_vars(s->target);
    case StmtKind::Input:
      return {kInputSeqVar, kIoSeqVar, s->inputVar};
    case StmtKind::Output:
      return {kIoSeqVar};
    case StmtKind::If:
      return set_union(def_seq(s->thenSeq), def_seq(s->elseSeq));
    case StmtKind::While:
      return def_seq(s->body);
  }
  return {};
}

VarSet def_seq(const Seq& s) {
  VarSet r;
  for (const auto& st : s) r = set_union(r, def_stmt(st));
  return r;
}

bool contains_while(const StmtPtr& s) {
  switch (s->kind) {
    case StmtKind::While:
      return true;
    case StmtKind::If:
      return contains_while(s->thenSeq) || contains_while(s->elseSeq);
    default:
      return false;
  }
}

bool contains_while(const Seq& s) {
  return std::any_of(s.begin(), s.end(),
                     [](const StmtPtr& st) { return contains_while(st); });
}

bool contains_output(const StmtPtr& s) {
  switch (s->kind) {
    case StmtKind::Output:
      return true;
    case StmtKind::If:
      return contains_output(s->thenSeq) || contains_output(s->elseSeq);
    case StmtKind::While:
      return contains_output(s->body);
    default:
      return false;
  }
}

bool contains_output(const Seq& s) {
  return std::any_of(s.begin(), s.end(),
                     [](const StmtPtr& st) { return contains_output(st); });
}

bool contains_input(const StmtPtr& s) {
  switch (s->kind) {
    case StmtKind::Input:
      return true;
    case StmtKind::If:
      return contains_input(s->thenSeq) || contains_input(s->elseSeq);
    case StmtKind::While:
      return contains_input(s->body);
    default:
      return false;
  }
}

bool contains_input(const Seq& s) {
  return std::any_of(s.begin(), s.end(),
                     [](const StmtPtr& st) { return contains_input(st); });
}

VarSet err_vars(const ExprPtr& e) {
  return expr_can_crash(e) ? use_expr(e) : VarSet{};
}

VarSet imported_vars(const StmtPtr& s, const VarSet& x) {
  VarSet defs = def_stmt(s);
  if (!intersects(defs, x)) return x;
  switch (s->kind) {
    case StmtKind::Skip:
      return x;  // unreachable: Def(skip) = {}
    case StmtKind::Assign:
    case StmtKind::Input:
    case StmtKind::Output: {
      VarSet rest;
      for (const auto& v : x)
        if (!defs.count(v)) rest.insert(v);
      return set_union(use_stmt(s), rest);
    }
    case StmtKind::If: {
      VarSet r = use_expr(s->expr);
      for (const auto& y : x) {
        r = set_union(r, imported_vars(s->thenSeq, {y}));
        r = set_union(r, imported_vars(s->elseSeq, {y}));
      }
      return r;
    }
    case StmtKind::While: {
      // Union over all unrollings, computed as the least fixpoint of
      // Y -> Use(e) + X + Imp(body, Y); the union law folds the unrollings.
      VarSet base = set_union(use_expr(s->expr), x);
      VarSet y = base;
      for (;;) {
        VarSet next = set_union(base, imported_vars(s->body, y));
        if (next == y) return y;
        y = std::move(next);
      }
    }
  }
  return x;
}

VarSet imported_vars(const Seq& s, const VarSet& x) {
  if (s.empty()) return x;
  VarSet acc = x;
  for (auto it = s.rbegin(); it != s.rend(); ++it)
    acc = imported_vars(*it, acc);
  return acc;
}

namespace {

VarSet lvar_seq(const Seq& s);

VarSet lvar_stmt(const StmtPtr& s) {
  if (!contains_while(s)) return {};
  if (s->kind == StmtKind::If)
    return set_union(use_expr(s->expr),
                     set_union(lvar_seq(s->thenSeq), lvar_seq(s->elseSeq)));
  // While: the whole statement imports the predicate and body loop variables.
  return imported_vars(s, set_union(use_expr(s->expr), lvar_seq(s->body)));
}

VarSet lvar_seq(const Seq& s) {
  if (!contains_while(s)) return {};
  if (s.size() == 1) return lvar_stmt(s.front());
  Seq prefix(s.begin(), s.end() - 1);
  return set_union(lvar_seq(prefix),
                   imported_vars(prefix, lvar_stmt(s.back())));
}

VarSet cvar_seq(const Seq& s, const TypeEnv& env);

VarSet cvar_stmt(const StmtPtr& s, const TypeEnv& env) {
  switch (s->kind) {
    case StmtKind::Skip:
      return {};
    case StmtKind::Assign:
      if (int_target_long_expr(env, s))
        return set_union(idx_vars(s->target), use_expr(s->expr));
      return set_union(idx_vars(s->target), err_vars(s->expr));
    case StmtKind::Input:
      return {kInputSeqVar};
    case StmtKind::Output:
      return err_vars(s->expr);
    case StmtKind::If: {
      VarSet branches =
          set_union(cvar_seq(s->thenSeq, env), cvar_seq(s->elseSeq, env));
      if (branches.empty()) return err_vars(s->expr);
      return set_union(use_expr(s->expr), branches);
    }
    case StmtKind::While:
      return imported_vars(
          s, set_union(use_expr(s->expr), cvar_seq(s->body, env)));
  }
  return {};
}

VarSet cvar_seq(const Seq& s, const TypeEnv& env) {
  if (s.empty()) return {};
  if (s.size() == 1) return cvar_stmt(s.front(), env);
  Seq prefix(s.begin(), s.end() - 1);
  return set_union(cvar_seq(prefix, env),
                   imported_vars(prefix, cvar_stmt(s.back(), env)));
}

VarSet impO_seq(const Seq& s);

VarSet impO_stmt(const StmtPtr& s) {
  if (!contains_output(s)) return {kIoSeqVar};
  switch (s->kind) {
    case StmtKind::Output:
      return set_union(VarSet{kIoSeqVar}, use_expr(s->expr));
    case StmtKind::If:
      return set_union(use_expr(s->expr),
                       set_union(impO_seq(s->thenSeq), impO_seq(s->elseSeq)));
    case StmtKind::While:
      return imported_vars(s, {kIoSeqVar});
    default:
      return {kIoSeqVar};
  }
}

VarSet impO_seq(const Seq& s) {
  if (!contains_output(s)) return {kIoSeqVar};
  if (s.size() == 1) return impO_stmt(s.front());
  Seq prefix(s.begin(), s.end() - 1);
  if (contains_output(s.back()))
    return imported_vars(prefix, impO_stmt(s.back()));
  return impO_seq(prefix);
}

VarSet tvarO_seq(const Seq& s, const TypeEnv& env);

VarSet tvarO_stmt(const StmtPtr& s, const TypeEnv& env) {
  if (!contains_output(s)) return {};
  switch (s->kind) {
    case StmtKind::Output:
      return err_vars(s->expr);
    case StmtKind::If:
      return set_union(use_expr(s->expr), set_union(tvarO_seq(s->thenSeq, env),
                                                    tvarO_seq(s->elseSeq, env)));
    case StmtKind::While: {
      TermSets t = termination_vars(single(s), env);
      return t.tvar;
    }
    default:
      return {};
  }
}

VarSet tvarO_seq(const Seq& s, const TypeEnv& env) {
  if (!contains_output(s)) return {};
  if (s.size() == 1) return tvarO_stmt(s.front(), env);
  Seq prefix(s.begin(), s.end() - 1);
  if (contains_output(s.back())) {
    TermSets t = termination_vars(prefix, env);
    return set_union(t.tvar,
                     imported_vars(prefix, tvarO_stmt(s.back(), env)));
  }
  return tvarO_seq(prefix, env);
}

}  // namespace

TermSets termination_vars(const Seq& s, const TypeEnv& env) {
  TermSets t;
  t.lvar = lvar_seq(s);
  t.cvar = cvar_seq(s, env);
  t.tvar = set_union(t.lvar, t.cvar);
  return t;
}

OutSets output_vars(const Seq& s, const TypeEnv& env) {
  OutSets o;
  o.impO = impO_seq(s);
  o.tvarO = tvarO_seq(s, env);
  o.ovar = set_union(o.impO, o.tvarO);
  return o;
}

int64_t program_size(const Seq& s) {
  int64_t n = 0;
  for (const auto& st : s) {
    switch (st->kind) {
      case StmtKind::If:
        n += 1 + program_size(st->thenSeq) + program_size(st->elseSeq);
        break;
      case StmtKind::While:
        n += 1 + program_size(st->body);
        break;
      default:
        n += 1;
        break;
    }
  }
  return n;
}

AnalysisReport analyze(const Program& p, const TypeEnv& env) {
  AnalysisReport r;
  r.use = use_seq(p.entry);
  r.def = def_seq(p.entry);
  TermSets t = termination_vars(p.entry, env);
  r.lvar = t.lvar;
  r.cvar = t.cvar;
  r.tvar = t.tvar;
  OutSets o = output_vars(p.entry, env);
  r.impO = o.impO;
  r.tvarO = o.tvarO;
  r.ovar = o.ovar;
  r.size = program_size(p.entry);
  return r;
}

}  // namespace wupd
