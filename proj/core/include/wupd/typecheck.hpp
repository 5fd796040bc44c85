#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "wupd/ast.hpp"

namespace wupd {

struct TypeEnv {
  std::map<std::string, Type> vars;
  std::vector<EnumDecl> enums;
  // label -> (enum name, 1-based position)
  std::map<std::string, std::pair<std::string, int>> enumLabelOf;
  std::vector<std::pair<std::string, int64_t>> promptEntries;
  std::map<std::string, int64_t> promptConst;

  bool isVar(const std::string& n) const { return vars.count(n) != 0; }
  bool isEnumLabel(const std::string& n) const { return enumLabelOf.count(n) != 0; }
  bool isPromptLabel(const std::string& n) const { return promptConst.count(n) != 0; }
  bool isLabel(const std::string& n) const { return isEnumLabel(n) || isPromptLabel(n); }
  const Type* varType(const std::string& n) const {
    auto it = vars.find(n);
    return it == vars.end() ? nullptr : &it->second;
  }
  const EnumDecl* enumDecl(const std::string& name) const {
    for (const auto& e : enums)
      if (e.name == name) return &e;
    return nullptr;
  }
};

using TypeEnvPtr = std::shared_ptr<const TypeEnv>;

// Builds the environment and checks every statement; throws LangError with
// cls Type (rule field set) or InputOfPromptType.
TypeEnvPtr typecheck(const Program& p);

// Principal scalar type of a well-typed expression (literals in 32-bit range
// are Int; arithmetic is Int only when both operands are; comparisons,
// logicals and enum-label tests are Long).
Type expr_type(const TypeEnv& env, const ExprPtr& e);

// Derivable-as-Long (any numeric expression, via Int-to-Long subsumption).
bool types_as_long(const TypeEnv& env, const ExprPtr& e);

// Scalar type an lval reads/stores.
Type lval_type(const TypeEnv& env, const Lval& lv);

}  // namespace wupd
