#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace wupd {

// Reserved names for the input sequence and the I/O sequence; they live in
// the value store and in analysis results but can never be declared.
inline constexpr const char* kInputSeqVar = "id_I";
inline constexpr const char* kIoSeqVar = "id_IO";

enum class TyKind { Int, Long, Pmpt, Enum };

struct Type {
  TyKind kind = TyKind::Long;
  std::string enumName;              // kind == Enum
  std::optional<int64_t> arraySize;  // present: array over the scalar type

  bool isArray() const { return arraySize.has_value(); }
  Type elem() const {
    Type t = *this;
    t.arraySize.reset();
    return t;
  }
  friend bool operator==(const Type&, const Type&) = default;
};

// ident | ident[int] | ident[ident]
struct Lval {
  std::string base;
  std::optional<int64_t> litIndex;
  std::string varIndex;

  bool isIndexed() const { return litIndex.has_value() || !varIndex.empty(); }
  friend bool operator==(const Lval&, const Lval&) = default;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class ExprKind { IntLit, LabelLit, LvalRef, EnumEq, Unary, Binary };
enum class UnOp { Neg, Not };
enum class BinOp { Add, Sub, Mul, Div, Mod, Lt, Le, Eq, Ne, Gt, Ge, And, Or };

struct Expr {
  ExprKind kind{};
  int64_t intVal = 0;    // IntLit
  std::string label;     // LabelLit; EnumEq right side
  Lval lval;             // LvalRef
  std::string enumVar;   // EnumEq left side
  UnOp unop{};
  BinOp binop{};
  ExprPtr a, b;
};

ExprPtr make_int(int64_t v);
ExprPtr make_label(std::string label);
ExprPtr make_lval(Lval lv);
ExprPtr make_enum_eq(std::string var, std::string label);
ExprPtr make_unary(UnOp op, ExprPtr a);
ExprPtr make_binary(BinOp op, ExprPtr a, ExprPtr b);

bool expr_equal(const ExprPtr& a, const ExprPtr& b);
bool is_value_expr(const Expr& e);  // IntLit or LabelLit

struct Stmt;
using StmtPtr = std::shared_ptr<const Stmt>;
using Seq = std::vector<StmtPtr>;

enum class StmtKind { Assign, Input, Output, Skip, If, While };

struct Stmt {
  StmtKind kind{};
  Lval target;            // Assign
  ExprPtr expr;           // Assign rhs; Output value; If/While predicate
  std::string inputVar;   // Input
  Seq thenSeq, elseSeq;   // If (else always present after desugaring)
  Seq body;               // While
  int loopLabel = -1;     // While
  // Set only on configurations produced by the prompt-rewrite step: the Out
  // event appended for this statement carries the origin label.
  std::string promptOrigin;  // Output
  // Set only on configurations where the loop predicate was just evaluated;
  // the while statement keeps its original predicate for the continuation.
  std::optional<int64_t> predValue;  // While
};

StmtPtr make_assign(Lval target, ExprPtr e);
StmtPtr make_input(std::string var);
StmtPtr make_output(ExprPtr e, std::string promptOrigin = {});
StmtPtr make_skip();
StmtPtr make_if(ExprPtr pred, Seq thenSeq, Seq elseSeq);
StmtPtr make_while(ExprPtr pred, Seq body, int loopLabel = -1);

// Structural equality; loop labels are ignored (they are bookkeeping, not
// syntax), promptOrigin is compared (it distinguishes runtime configs).
bool stmt_equal(const StmtPtr& a, const StmtPtr& b);
bool seq_equal(const Seq& a, const Seq& b);

struct EnumDecl {
  std::string name;
  std::vector<std::string> labels;
  friend bool operator==(const EnumDecl&, const EnumDecl&) = default;
};

struct PromptDecl {
  std::vector<std::pair<std::string, int64_t>> entries;
  friend bool operator==(const PromptDecl&, const PromptDecl&) = default;
};

struct VarDecl {
  std::string name;
  Type ty;
  friend bool operator==(const VarDecl&, const VarDecl&) = default;
};

struct Program {
  std::optional<PromptDecl> prompt;
  std::vector<EnumDecl> enums;
  std::vector<VarDecl> vars;
  Seq entry;
};

bool program_equal(const Program& a, const Program& b);

// Renumbers while labels 0,1,... in source order; idempotent.
Program label_loops(const Program& p);

std::string print_type(const Type& t);
std::string print_lval(const Lval& lv);
std::string print_expr(const ExprPtr& e);
std::string print_stmt(const StmtPtr& s);
std::string print_seq(const Seq& s);        // statements joined by one space
std::string print_program(const Program& p);

}  // namespace wupd
