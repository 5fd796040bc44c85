#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wupd/ast.hpp"
#include "wupd/typecheck.hpp"

namespace wupd {

struct DerivNode {
  std::string rule;  // applied case id, e.g. "eqc-2b", "term-base-2"
  std::string note;  // instantiation detail (variable, obligation)
  std::vector<DerivNode> children;
};

struct Verdict {
  bool accepted = false;
  DerivNode derivation;       // complete proof tree when accepted
  std::string failureReason;  // first unprovable obligation otherwise
};

// Typing context for the two sides; for same-program queries both point to
// the same environment.
struct EquivContext {
  TypeEnvPtr env1, env2;
};

// Equivalent computation of variable x by two terminating sequences.
Verdict check_equiv_comp(const EquivContext& cx, const Seq& s1, const Seq& s2,
                         const std::string& x);
// Termination in the same way.
Verdict check_term_same(const EquivContext& cx, const Seq& s1, const Seq& s2);
// Same emitted output sequence (behavioral equivalence).
Verdict check_behavioral(const EquivContext& cx, const Seq& s1, const Seq& s2);

Verdict check_equiv_comp(const Program& p1, const Program& p2, const std::string& x);
Verdict check_term_same(const Program& p1, const Program& p2);
Verdict check_behavioral(const Program& p1, const Program& p2);

// A label shared by two programs must mean the same event value (same 1-based
// enum position, same prompt constant); returns a description of the first
// clash.
std::optional<std::string> label_meanings_conflict(const TypeEnv& a,
                                                   const TypeEnv& b);

}  // namespace wupd
