#include "wupd/ast.hpp"

namespace wupd {

ExprPtr make_int(int64_t v) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::IntLit;
  e->intVal = v;
  return e;
}

ExprPtr make_label(std::string label) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::LabelLit;
  e->label = std::move(label);
  return e;
}

ExprPtr make_lval(Lval lv) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::LvalRef;
  e->lval = std::move(lv);
  return e;
}

ExprPtr make_enum_eq(std::string var, std::string label) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::EnumEq;
  e->enumVar = std::move(var);
  e->label = std::move(label);
  return e;
}

ExprPtr make_unary(UnOp op, ExprPtr a) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Unary;
  e->unop = op;
  e->a = std::move(a);
  return e;
}

ExprPtr make_binary(BinOp op, ExprPtr a, ExprPtr b) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Binary;
  e->binop = op;
  e->a = std::move(a);
  e->b = std::move(b);
  return e;
}

bool is_value_expr(const Expr& e) {
  return e.kind == ExprKind::IntLit || e.kind == ExprKind::LabelLit;
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case ExprKind::IntLit:
      return a->intVal == b->intVal;
    case ExprKind::LabelLit:
      return a->label == b->label;
    case ExprKind::LvalRef:
      return a->lval == b->lval;
    case ExprKind::EnumEq:
      return a->enumVar == b->enumVar && a->label == b->label;
    case ExprKind::Unary:
      return a->unop == b->unop && expr_equal(a->a, b->a);
    case ExprKind::Binary:
      return a->binop == b->binop && expr_equal(a->a, b->a) && expr_equal(a->b, b->b);
  }
  return false;
}

StmtPtr make_assign(Lval target, ExprPtr e) {
  auto s = std::make_shared<Stmt>();
  s->kind = StmtKind::Assign;
  s->target = std::move(target);
  s->expr = std::move(e);
  return s;
}

StmtPtr make_input(std::string var) {
  auto s = std::make_shared<Stmt>();
  s->kind = StmtKind::Input;
  s->inputVar = std::move(var);
  return s;
}

StmtPtr make_output(ExprPtr e, std::string promptOrigin) {
  auto s = std::make_shared<Stmt>();
  s->kind = StmtKind::Output;
  s->expr = std::move(e);
  s->promptOrigin = std::move(promptOrigin);
  return s;
}

StmtPtr make_skip() {
  auto s = std::make_shared<Stmt>();
  s->kind = StmtKind::Skip;
  return s;
}

StmtPtr make_if(ExprPtr pred, Seq thenSeq, Seq elseSeq) {
  auto s = std::make_shared<Stmt>();
  s->kind = StmtKind::If;
  s->expr = std::move(pred);
  s->thenSeq = std::move(thenSeq);
  s->elseSeq = std::move(elseSeq);
  return s;
}

StmtPtr make_while(ExprPtr pred, Seq body, int loopLabel) {
  auto s = std::make_shared<Stmt>();
  s->kind = StmtKind::While;
  s->expr = std::move(pred);
  s->body = std::move(body);
  s->loopLabel = loopLabel;
  return s;
}

bool stmt_equal(const StmtPtr& a, const StmtPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case StmtKind::Assign:
      return a->target == b->target && expr_equal(a->expr, b->expr);
    case StmtKind::Input:
      return a->inputVar == b->inputVar;
    case StmtKind::Output:
      return a->promptOrigin == b->promptOrigin && expr_equal(a->expr, b->expr);
    case StmtKind::Skip:
      return true;
    case StmtKind::If:
      return expr_equal(a->expr, b->expr) && seq_equal(a->thenSeq, b->thenSeq) &&
             seq_equal(a->elseSeq, b->elseSeq);
    case StmtKind::While:
      return a->predValue == b->predValue && expr_equal(a->expr, b->expr) &&
             seq_equal(a->body, b->body);
  }
  return false;
}

bool seq_equal(const Seq& a, const Seq& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!stmt_equal(a[i], b[i])) return false;
  return true;
}

bool program_equal(const Program& a, const Program& b) {
  return a.prompt == b.prompt && a.enums == b.enums && a.vars == b.vars &&
         seq_equal(a.entry, b.entry);
}

namespace {

StmtPtr relabel(const StmtPtr& s, int& next);

Seq relabel_seq(const Seq& seq, int& next) {
  Seq out;
  out.reserve(seq.size());
  for (const auto& s : seq) out.push_back(relabel(s, next));
  return out;
}

StmtPtr relabel(const StmtPtr& s, int& next) {
  switch (s->kind) {
    case StmtKind::If: {
      int before = next;
      Seq t = relabel_seq(s->thenSeq, next);
      Seq f = relabel_seq(s->elseSeq, next);
      if (next == before) return s;
      return make_if(s->expr, std::move(t), std::move(f));
    }
    case StmtKind::While: {
      int label = next++;
      Seq body = relabel_seq(s->body, next);
      if (label == s->loopLabel && seq_equal(body, s->body)) return s;
      return make_while(s->expr, std::move(body), label);
    }
    default:
      return s;
  }
}

}  // namespace

Program label_loops(const Program& p) {
  Program out = p;
  int next = 0;
  out.entry = relabel_seq(p.entry, next);
  return out;
}

}  // namespace wupd
