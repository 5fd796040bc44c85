#include <sstream>

#include "wupd/ast.hpp"

namespace wupd {

namespace {

const char* binop_text(BinOp op) {
  switch (op) {
    case BinOp::Add: return "+";
    case BinOp::Sub: return "-";
    case BinOp::Mul: return "*";
    case BinOp::Div: return "/";
    case BinOp::Mod: return "%";
    case BinOp::Lt: return "<";
    case BinOp::Le: return "<=";
    case BinOp::Eq: return "==";
    case BinOp::Ne: return "!=";
    case BinOp::Gt: return ">";
    case BinOp::Ge: return ">=";
    case BinOp::And: return "&&";
    case BinOp::Or: return "||";
  }
  return "?";
}

std::string atom(const ExprPtr& e);

std::string expr_text(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::IntLit: return std::to_string(e->intVal);
    case ExprKind::LabelLit: return e->label;
    case ExprKind::LvalRef: return print_lval(e->lval);
    case ExprKind::EnumEq: return e->enumVar + " == " + e->label;
    case ExprKind::Unary:
      return std::string(e->unop == UnOp::Neg ? "-" : "!") + atom(e->a);
    case ExprKind::Binary:
      return atom(e->a) + " " + binop_text(e->binop) + " " + atom(e->b);
  }
  return "?";
}

std::string atom(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::IntLit:
    case ExprKind::LabelLit:
    case ExprKind::LvalRef:
      return expr_text(e);
    default:
      return "(" + expr_text(e) + ")";
  }
}

}  // namespace

std::string print_type(const Type& t) {
  std::string base;
  switch (t.kind) {
    case TyKind::Int: base = "int"; break;
    case TyKind::Long: base = "long"; break;
    case TyKind::Pmpt: base = "pmpt"; break;
    case TyKind::Enum: base = "enum " + t.enumName; break;
  }
  return base;
}

std::string print_lval(const Lval& lv) {
  if (lv.litIndex) return lv.base + "[" + std::to_string(*lv.litIndex) + "]";
  if (!lv.varIndex.empty()) return lv.base + "[" + lv.varIndex + "]";
  return lv.base;
}

std::string print_expr(const ExprPtr& e) { return expr_text(e); }

std::string print_stmt(const StmtPtr& s) {
  switch (s->kind) {
    case StmtKind::Assign:
      return print_lval(s->target) + " := " + expr_text(s->expr) + ";";
    case StmtKind::Input:
      return "input " + s->inputVar + ";";
    case StmtKind::Output:
      return "output " + expr_text(s->expr) + ";";
    case StmtKind::Skip:
      return "skip;";
    case StmtKind::If:
      return "if (" + expr_text(s->expr) + ") { " + print_seq(s->thenSeq) +
             " } else { " + print_seq(s->elseSeq) + " }";
    case StmtKind::While: {
      std::string pred =
          s->predValue ? std::to_string(*s->predValue) : expr_text(s->expr);
      return "while (" + pred + ") { " + print_seq(s->body) + " }";
    }
  }
  return "?";
}

std::string print_seq(const Seq& s) {
  std::string out;
  for (size_t i = 0; i < s.size(); ++i) {
    if (i) out += " ";
    out += print_stmt(s[i]);
  }
  return out;
}

std::string print_program(const Program& p) {
  std::ostringstream os;
  if (p.prompt) {
    os << "prompt { ";
    for (size_t i = 0; i < p.prompt->entries.size(); ++i) {
      if (i) os << ", ";
      os << p.prompt->entries[i].first << ": " << p.prompt->entries[i].second;
    }
    os << " }\n";
  }
  for (const auto& e : p.enums) {
    os << "enum " << e.name << " {";
    for (size_t i = 0; i < e.labels.size(); ++i) {
      if (i) os << ", ";
      os << e.labels[i];
    }
    os << "};\n";
  }
  for (const auto& v : p.vars) {
    os << print_type(v.ty) << " " << v.name;
    if (v.ty.arraySize) os << "[" << *v.ty.arraySize << "]";
    os << ";\n";
  }
  for (const auto& s : p.entry) os << print_stmt(s) << "\n";
  return os.str();
}

}  // namespace wupd
