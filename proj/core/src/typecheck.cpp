#include "wupd/typecheck.hpp"

#include <limits>

#include "wupd/diagnostics.hpp"

namespace wupd {

namespace {

[[noreturn]] void fail(const std::string& rule, const std::string& msg) {
  throw LangError(ErrClass::Type, msg, 0, 0, rule);
}

bool numeric(const Type& t) {
  return !t.isArray() && (t.kind == TyKind::Int || t.kind == TyKind::Long);
}

bool fitsInt(int64_t v) {
  return v >= std::numeric_limits<int32_t>::min() &&
         v <= std::numeric_limits<int32_t>::max();
}

Type intTy() { return {TyKind::Int, "", std::nullopt}; }
Type longTy() { return {TyKind::Long, "", std::nullopt}; }

}  // namespace

Type lval_type(const TypeEnv& env, const Lval& lv) {
  const Type* t = env.varType(lv.base);
  if (!t) fail("Tassign", "undeclared variable '" + lv.base + "'");
  if (!lv.isIndexed()) {
    if (t->isArray()) fail("Topnd", "array '" + lv.base + "' used without an index");
    return *t;
  }
  if (!t->isArray()) fail("Tarray1", "'" + lv.base + "' is not an array");
  if (lv.litIndex) {
    if (*lv.litIndex < 1 || *lv.litIndex > *t->arraySize)
      fail("Tarray2", "index " + std::to_string(*lv.litIndex) + " outside 1.." +
                          std::to_string(*t->arraySize) + " for '" + lv.base + "'");
  } else {
    const Type* it = env.varType(lv.varIndex);
    if (!it) fail("Tarray1", "undeclared index variable '" + lv.varIndex + "'");
    if (!numeric(*it))
      fail("Tarray1", "index variable '" + lv.varIndex + "' must be numeric");
  }
  return t->elem();
}

Type expr_type(const TypeEnv& env, const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::IntLit:
      return fitsInt(e->intVal) ? intTy() : longTy();
    case ExprKind::LabelLit: {
      auto it = env.enumLabelOf.find(e->label);
      if (it != env.enumLabelOf.end())
        return {TyKind::Enum, it->second.first, std::nullopt};
      if (env.promptConst.count(e->label)) return {TyKind::Pmpt, "", std::nullopt};
      fail("Topnd", "unknown label '" + e->label + "'");
    }
    case ExprKind::LvalRef:
      return lval_type(env, e->lval);
    case ExprKind::EnumEq: {
      const Type* t = env.varType(e->enumVar);
      if (!t) fail("Tequiv", "undeclared variable '" + e->enumVar + "'");
      if (t->isArray() || t->kind != TyKind::Enum)
        fail("Tequiv", "'" + e->enumVar + "' is not an enum variable");
      auto it = env.enumLabelOf.find(e->label);
      if (it == env.enumLabelOf.end() || it->second.first != t->enumName)
        fail("Tequiv", "label '" + e->label + "' does not belong to enum '" +
                           t->enumName + "'");
      return longTy();
    }
    case ExprKind::Unary: {
      Type t = expr_type(env, e->a);
      if (!numeric(t)) fail("Topnd", "operand of unary operator must be numeric");
      return e->unop == UnOp::Neg ? t : longTy();
    }
    case ExprKind::Binary: {
      Type ta = expr_type(env, e->a);
      Type tb = expr_type(env, e->b);
      if (!numeric(ta) || !numeric(tb))
        fail("Topnd", "operands of binary operator must be numeric");
      switch (e->binop) {
        case BinOp::Add:
        case BinOp::Sub:
        case BinOp::Mul:
        case BinOp::Div:
        case BinOp::Mod:
          return (ta.kind == TyKind::Int && tb.kind == TyKind::Int) ? intTy()
                                                                    : longTy();
        default:
          return longTy();
      }
    }
  }
  fail("Topnd", "malformed expression");
}

bool types_as_long(const TypeEnv& env, const ExprPtr& e) {
  return numeric(expr_type(env, e));
}

namespace {

void check_seq(const TypeEnv& env, const Seq& s);

void check_stmt(const TypeEnv& env, const StmtPtr& s) {
  switch (s->kind) {
    case StmtKind::Assign: {
      Type tl = lval_type(env, s->target);
      Type te = expr_type(env, s->expr);
      bool ok = te == tl || (tl.kind == TyKind::Long && te.kind == TyKind::Int);
      if (!ok)
        fail("Tassign", "cannot assign " + print_type(te) + " to " +
                            print_lval(s->target) + " of type " + print_type(tl));
      return;
    }
    case StmtKind::Input: {
      const Type* t = env.varType(s->inputVar);
      if (!t) fail("Tinput", "undeclared variable '" + s->inputVar + "'");
      if (t->isArray()) fail("Tinput", "cannot read into array '" + s->inputVar + "'");
      if (t->kind == TyKind::Pmpt)
        throw LangError(ErrClass::InputOfPromptType,
                        "cannot read into prompt-typed variable '" + s->inputVar + "'",
                        0, 0, "Tinput");
      return;
    }
    case StmtKind::Output:
      expr_type(env, s->expr);
      return;
    case StmtKind::Skip:
      return;
    case StmtKind::If: {
      if (!numeric(expr_type(env, s->expr))) fail("Tif", "if predicate must be numeric");
      check_seq(env, s->thenSeq);
      check_seq(env, s->elseSeq);
      return;
    }
    case StmtKind::While: {
      if (!numeric(expr_type(env, s->expr)))
        fail("Twhile", "while predicate must be numeric");
      check_seq(env, s->body);
      return;
    }
  }
}

void check_seq(const TypeEnv& env, const Seq& s) {
  for (const auto& st : s) check_stmt(env, st);
}

}  // namespace

TypeEnvPtr typecheck(const Program& p) {
  auto env = std::make_shared<TypeEnv>();
  if (p.prompt) {
    for (const auto& [label, value] : p.prompt->entries) {
      env->promptEntries.emplace_back(label, value);
      env->promptConst[label] = value;
    }
  }
  for (const auto& e : p.enums) {
    if (e.labels.empty()) fail("Tlabels", "enum '" + e.name + "' has no labels");
    env->enums.push_back(e);
    int idx = 1;
    for (const auto& l : e.labels) env->enumLabelOf[l] = {e.name, idx++};
  }
  for (const auto& v : p.vars) {
    if (v.ty.kind == TyKind::Enum && !env->enumDecl(v.ty.enumName))
      fail("Tvar1", "unknown enum '" + v.ty.enumName + "' in declaration of '" +
                        v.name + "'");
    if (v.ty.isArray() && *v.ty.arraySize <= 0)
      fail("Tvar2", "array '" + v.name + "' needs positive size");
    env->vars[v.name] = v.ty;
  }
  check_seq(*env, p.entry);
  return env;
}

}  // namespace wupd
