#pragma once

#include <cstdint>
#include <set>
#include <string>

#include "wupd/ast.hpp"
#include "wupd/typecheck.hpp"

namespace wupd {

using VarSet = std::set<std::string>;

VarSet set_union(const VarSet& a, const VarSet& b);
bool intersects(const VarSet& a, const VarSet& b);

VarSet idx_vars(const Lval& lv);
VarSet base_vars(const Lval& lv);
VarSet use_expr(const ExprPtr& e);
VarSet use_stmt(const StmtPtr& s);
VarSet use_seq(const Seq& s);
VarSet def_stmt(const StmtPtr& s);
VarSet def_seq(const Seq& s);

bool contains_while(const Seq& s);
bool contains_output(const Seq& s);
bool contains_output(const StmtPtr& s);
bool contains_input(const Seq& s);

// Crash-risk variables of an expression: Use(e) when evaluating e can crash
// (division, modulo, variable array index, or any variable read), else empty.
VarSet err_vars(const ExprPtr& e);

// Backward def-use closure: variables whose initial values determine the
// final values of X after S. The while case is a Kleene fixpoint.
VarSet imported_vars(const Seq& s, const VarSet& x);
VarSet imported_vars(const StmtPtr& s, const VarSet& x);

struct TermSets {
  VarSet lvar, cvar, tvar;
};
TermSets termination_vars(const Seq& s, const TypeEnv& env);

struct OutSets {
  VarSet impO, tvarO, ovar;
};
OutSets output_vars(const Seq& s, const TypeEnv& env);

int64_t program_size(const Seq& s);

struct AnalysisReport {
  VarSet use, def, lvar, cvar, tvar, impO, tvarO, ovar;
  int64_t size = 0;
};
AnalysisReport analyze(const Program& p, const TypeEnv& env);

}  // namespace wupd
