#include "wupd/update_classes.hpp"

#include <algorithm>
#include <map>

namespace wupd {

namespace {

Verdict accept(std::string rule, std::string note,
               std::vector<DerivNode> children = {}) {
  Verdict v;
  v.accepted = true;
  v.derivation = {std::move(rule), std::move(note), std::move(children)};
  return v;
}

Verdict reject(std::string reason) {
  Verdict v;
  v.failureReason = std::move(reason);
  return v;
}

Seq padded_prefix(const Seq& s) {
  if (s.size() <= 1) return Seq{make_skip()};
  return Seq(s.begin(), s.end() - 1);
}

bool all_skip(const Seq& s) {
  for (const auto& st : s)
    if (st->kind != StmtKind::Skip) return false;
  return true;
}

bool single_skip(const Seq& s) {
  return s.size() == 1 && s.front()->kind == StmtKind::Skip;
}

Seq normalized(const Seq& s) { return s.empty() ? Seq{make_skip()} : s; }

std::string pair_key(const Seq& a, const Seq& b) {
  return print_seq(a) + "\x01" + print_seq(b);
}

void assign_targets_into(const Seq& s, VarSet& out) {
  for (const auto& st : s) {
    switch (st->kind) {
      case StmtKind::Assign:
        out.insert(st->target.base);
        break;
      case StmtKind::If:
        assign_targets_into(st->thenSeq, out);
        assign_targets_into(st->elseSeq, out);
        break;
      case StmtKind::While:
        assign_targets_into(st->body, out);
        break;
      default:
        break;
    }
  }
}

VarSet assign_targets(const Seq& s) {
  VarSet v;
  assign_targets_into(s, v);
  return v;
}

// One engine for the three statement-level update relations. They share the
// If/While congruence, output-equivalence fallback and sequence cases; the
// guard case absorbing the new code is what distinguishes them.
struct UpdateRel {
  enum class Kind { Config, EnumExt, ExitGuard };

  EquivContext cx;  // env1: old side, env2: new side
  Kind kind;
  const ConfigValuation* rho = nullptr;  // Config
  VarSet newLabels;                      // EnumExt: labels only the new program declares
  VarSet assignedInNew;                  // EnumExt: assignment targets anywhere in it
  std::map<std::string, Verdict> memo;

  const char* tag() const {
    switch (kind) {
      case Kind::Config: return "cfg";
      case Kind::EnumExt: return "enum";
      case Kind::ExitGuard: return "exit";
    }
    return "";
  }

  std::string id(const char* suffix) const { return tag() + std::string(suffix); }

  Verdict rel(const Seq& newSeq, const Seq& oldSeq) {
    std::string k = pair_key(newSeq, oldSeq);
    auto it = memo.find(k);
    if (it != memo.end()) return it->second;
    Verdict v = relUncached(newSeq, oldSeq);
    memo.emplace(std::move(k), v);
    return v;
  }

  Verdict relUncached(const Seq& s2, const Seq& s1) {
    std::string why;
    if (auto v = guardCase(s2, s1, why)) return *v;
    // the config relation lists the fallback before the congruences
    if (kind == Kind::Config) {
      if (auto v = behavioralCase(s2, s1, why)) return *v;
      if (auto v = congruenceCases(s2, s1, why)) return *v;
    } else {
      if (auto v = congruenceCases(s2, s1, why)) return *v;
      if (auto v = behavioralCase(s2, s1, why)) return *v;
    }
    if (auto v = seqCase(s2, s1, why)) return *v;
    return reject("`" + print_seq(s2) + "` vs `" + print_seq(s1) + "`: " +
                  (why.empty() ? "no case of the relation applies" : why));
  }

  std::optional<Verdict> guardCase(const Seq& s2, const Seq& s1,
                                   std::string& why) {
    switch (kind) {
      case Kind::Config: {
        // the new sequence is one If switched by a configuration variable;
        // the branch rho selects must relate to the old sequence
        if (s2.size() != 1 || s2.front()->kind != StmtKind::If)
          return std::nullopt;
        const Stmt& g = *s2.front();
        if (g.expr->kind != ExprKind::LvalRef || g.expr->lval.isIndexed())
          return std::nullopt;
        auto it = rho->find(g.expr->lval.base);
        if (it == rho->end()) return std::nullopt;
        bool takeThen = it->second != 0;
        Verdict v = rel(takeThen ? g.thenSeq : g.elseSeq, s1);
        if (v.accepted)
          return accept(id("-guard"),
                        "rho(" + it->first + ")=" + (takeThen ? "1" : "0"),
                        {std::move(v.derivation)});
        why = "branch selected by " + it->first + ": " + v.failureReason;
        return std::nullopt;
      }
      case Kind::EnumExt: {
        // wrapping guard: one If testing a fresh label; only the else branch
        // is reachable while no value maps into the new labels
        if (s2.size() == 1 && s2.front()->kind == StmtKind::If &&
            s2.front()->expr->kind == ExprKind::EnumEq &&
            newLabels.count(s2.front()->expr->label)) {
          const Stmt& g = *s2.front();
          if (assignedInNew.count(g.expr->enumVar)) {
            why = "guard variable " + g.expr->enumVar +
                  " is an assignment target in the new program";
          } else {
            Verdict v = rel(g.elseSeq, s1);
            if (v.accepted)
              return accept(id("-guard"), "new label " + g.expr->label,
                            {std::move(v.derivation)});
            why = "else branch under " + g.expr->label + ": " + v.failureReason;
          }
        }
        // appended guard: a trailing If testing a fresh label whose else
        // branch is a skip acts as a skip for the same reason
        if (s2.size() >= 2 && s2.back()->kind == StmtKind::If &&
            s2.back()->expr->kind == ExprKind::EnumEq &&
            newLabels.count(s2.back()->expr->label)) {
          const Stmt& g = *s2.back();
          if (assignedInNew.count(g.expr->enumVar)) {
            why = "guard variable " + g.expr->enumVar +
                  " is an assignment target in the new program";
          } else if (!all_skip(g.elseSeq)) {
            why = "trailing guard on " + g.expr->label +
                  " has a non-skip else branch";
          } else {
            Verdict v = rel(Seq(s2.begin(), s2.end() - 1), s1);
            if (v.accepted)
              return accept(id("-guard-tail"), "new label " + g.expr->label,
                            {std::move(v.derivation)});
            why = "statements before the trailing guard: " + v.failureReason;
          }
        }
        return std::nullopt;
      }
      case Kind::ExitGuard: {
        // the old sequence verbatim behind one skip/skip guard
        if (s2.size() != s1.size() + 1 || s2.front()->kind != StmtKind::If)
          return std::nullopt;
        const Stmt& g = *s2.front();
        if (!single_skip(g.thenSeq) || !single_skip(g.elseSeq)) {
          why = "leading If is not a skip/skip guard";
          return std::nullopt;
        }
        if (!seq_equal(Seq(s2.begin() + 1, s2.end()), s1)) {
          why = "statements after the guard differ from the old sequence";
          return std::nullopt;
        }
        return accept(id("-guard"), "guard (" + print_expr(g.expr) + ")");
      }
    }
    return std::nullopt;
  }

  std::optional<Verdict> behavioralCase(const Seq& s2, const Seq& s1,
                                        std::string& why) {
    Verdict v = check_behavioral(cx, s1, s2);
    if (v.accepted)
      return accept(id("-behavioral"), "same output sequence",
                    {std::move(v.derivation)});
    if (why.empty()) why = "output equivalence: " + v.failureReason;
    return std::nullopt;
  }

  std::optional<Verdict> congruenceCases(const Seq& s2, const Seq& s1,
                                         std::string& why) {
    if (s1.size() != 1 || s2.size() != 1) return std::nullopt;
    const StmtPtr& a = s1.front();
    const StmtPtr& b = s2.front();
    if (a->kind == StmtKind::If && b->kind == StmtKind::If &&
        expr_equal(a->expr, b->expr)) {
      Verdict t = rel(b->thenSeq, a->thenSeq);
      if (!t.accepted) {
        why = "then branches: " + t.failureReason;
        return std::nullopt;
      }
      Verdict f = rel(b->elseSeq, a->elseSeq);
      if (!f.accepted) {
        why = "else branches: " + f.failureReason;
        return std::nullopt;
      }
      return accept(id("-if"), "(" + print_expr(a->expr) + ")",
                    {std::move(t.derivation), std::move(f.derivation)});
    }
    if (a->kind == StmtKind::While && b->kind == StmtKind::While &&
        expr_equal(a->expr, b->expr)) {
      Verdict v = rel(b->body, a->body);
      if (!v.accepted) {
        why = "loop bodies: " + v.failureReason;
        return std::nullopt;
      }
      return accept(id("-while"), "(" + print_expr(a->expr) + ")",
                    {std::move(v.derivation)});
    }
    return std::nullopt;
  }

  std::optional<Verdict> seqCase(const Seq& s2, const Seq& s1,
                                 std::string& why) {
    if (s1.size() < 2 && s2.size() < 2) return std::nullopt;
    Seq p1 = padded_prefix(s1), p2 = padded_prefix(s2);
    Verdict pre = rel(p2, p1);
    if (!pre.accepted) {
      why = "prefixes: " + pre.failureReason;
      return std::nullopt;
    }
    Verdict ts = check_term_same(cx, p1, p2);
    if (!ts.accepted) {
      why = "prefixes do not terminate in the same way: " + ts.failureReason;
      return std::nullopt;
    }
    std::vector<DerivNode> kids{std::move(pre.derivation),
                                std::move(ts.derivation)};
    VarSet xs = set_union(imported_vars(s1.back(), VarSet{kIoSeqVar}),
                          imported_vars(s2.back(), VarSet{kIoSeqVar}));
    for (const auto& x : xs) {
      Verdict v = check_equiv_comp(cx, p1, p2, x);
      if (!v.accepted) {
        why = "prefixes do not compute " + x + " equivalently: " +
              v.failureReason;
        return std::nullopt;
      }
      kids.push_back(std::move(v.derivation));
    }
    Verdict last = rel(Seq{s2.back()}, Seq{s1.back()});
    if (!last.accepted) {
      why = "last statements: " + last.failureReason;
      return std::nullopt;
    }
    kids.push_back(std::move(last.derivation));
    return accept(id("-seq"),
                  "split at `" + print_stmt(s1.back()) + "` / `" +
                      print_stmt(s2.back()) + "`",
                  std::move(kids));
  }
};

std::string joined(const VarSet& s) {
  std::string out;
  for (const auto& v : s) {
    if (!out.empty()) out += ", ";
    out += v;
  }
  return out;
}

}  // namespace

std::string update_class_name(UpdateClass c) {
  switch (c) {
    case UpdateClass::NewConfigVars: return "NewConfigVars";
    case UpdateClass::EnumExtension: return "EnumExtension";
    case UpdateClass::TypeWeakening: return "TypeWeakening";
    case UpdateClass::ExitOnError: return "ExitOnError";
    case UpdateClass::ImprovedPrompts: return "ImprovedPrompts";
    case UpdateClass::MissingInit: return "MissingInit";
    case UpdateClass::BehavioralEquiv: return "BehavioralEquiv";
    case UpdateClass::Unclassified: return "Unclassified";
  }
  return "Unclassified";
}

UpdateClassReport check_new_config_vars(const Program& oldP, const Program& newP,
                                        const ConfigValuation& rho) {
  UpdateClassReport r;
  r.cls = UpdateClass::NewConfigVars;
  for (const auto& [id, v] : rho) {
    if (v != 0 && v != 1) {
      r.verdict = reject("rho(" + id + ")=" + std::to_string(v) +
                         " is not 0 or 1");
      return r;
    }
  }
  EquivContext cx{typecheck(oldP), typecheck(newP)};
  if (auto c = label_meanings_conflict(*cx.env1, *cx.env2)) {
    r.verdict = reject(*c);
    return r;
  }
  VarSet def2 = def_seq(newP.entry);
  for (const auto& [id, v] : rho) {
    if (def2.count(id)) {
      r.verdict = reject("configuration variable " + id +
                         " is defined by the new entry sequence");
      return r;
    }
  }
  UpdateRel u{cx, UpdateRel::Kind::Config, &rho};
  r.verdict = u.rel(normalized(newP.entry), normalized(oldP.entry));
  if (r.verdict.accepted) r.assumptions = {"config-vars-match-rho"};
  return r;
}

UpdateClassReport check_enum_extension(const Program& oldP, const Program& newP) {
  UpdateClassReport r;
  r.cls = UpdateClass::EnumExtension;
  if (oldP.enums.size() != newP.enums.size()) {
    r.error = "IncomparableEnums";
    r.verdict = reject("enum declaration lists differ in length");
    return r;
  }
  std::vector<std::string> added;
  for (size_t i = 0; i < oldP.enums.size(); ++i) {
    const EnumDecl& d1 = oldP.enums[i];
    const EnumDecl& d2 = newP.enums[i];
    if (d1.name != d2.name) {
      r.error = "IncomparableEnums";
      r.verdict = reject("enum " + d1.name + " vs " + d2.name +
                         ": names differ");
      return r;
    }
    if (d2.labels.size() < d1.labels.size() ||
        !std::equal(d1.labels.begin(), d1.labels.end(), d2.labels.begin())) {
      r.error = "IncomparableEnums";
      r.verdict = reject("enum " + d1.name +
                         ": old labels are not a prefix of the new ones");
      return r;
    }
    added.insert(added.end(), d2.labels.begin() + d1.labels.size(),
                 d2.labels.end());
  }
  if (added.empty()) {
    r.error = "IncomparableEnums";
    r.verdict = reject("the new program adds no enum labels");
    return r;
  }
  EquivContext cx{typecheck(oldP), typecheck(newP)};
  if (auto c = label_meanings_conflict(*cx.env1, *cx.env2)) {
    r.verdict = reject(*c);
    return r;
  }
  UpdateRel u{cx, UpdateRel::Kind::EnumExt};
  u.newLabels = VarSet(added.begin(), added.end());
  u.assignedInNew = assign_targets(newP.entry);
  r.newEnumLabels = added;
  r.verdict = u.rel(normalized(newP.entry), normalized(oldP.entry));
  if (r.verdict.accepted)
    r.assumptions = {"no-new-enum-input", "no-initial-value-in-new-labels"};
  return r;
}

UpdateClassReport check_type_weakening(const Program& oldP, const Program& newP) {
  UpdateClassReport r;
  r.cls = UpdateClass::TypeWeakening;
  typecheck(oldP);
  typecheck(newP);
  if (oldP.prompt != newP.prompt) {
    r.verdict = reject("prompt declarations differ");
    return r;
  }
  if (oldP.enums != newP.enums) {
    r.verdict = reject("enum declarations differ");
    return r;
  }
  if (!seq_equal(oldP.entry, newP.entry)) {
    r.verdict = reject("entry sequences differ");
    return r;
  }
  if (oldP.vars.size() != newP.vars.size()) {
    r.verdict = reject("variable declaration lists differ in length");
    return r;
  }
  VarSet weakened;
  for (size_t i = 0; i < oldP.vars.size(); ++i) {
    const VarDecl& d1 = oldP.vars[i];
    const VarDecl& d2 = newP.vars[i];
    if (d1.name != d2.name) {
      r.verdict = reject("declaration " + d1.name + " vs " + d2.name +
                         ": names differ");
      return r;
    }
    if (d1.ty == d2.ty) continue;
    bool scalarWiden = !d1.ty.isArray() && !d2.ty.isArray() &&
                       d1.ty.kind == TyKind::Int && d2.ty.kind == TyKind::Long;
    bool arrayGrow = d1.ty.isArray() && d2.ty.isArray() &&
                     d1.ty.elem() == d2.ty.elem() &&
                     *d2.ty.arraySize > *d1.ty.arraySize;
    if (!scalarWiden && !arrayGrow) {
      r.verdict = reject("declaration of " + d1.name +
                         " changes without weakening the type");
      return r;
    }
    weakened.insert(d1.name);
  }
  if (weakened.empty()) {
    r.verdict = reject("no declaration is weakened");
    return r;
  }
  r.weakenedVars = weakened;
  r.verdict = accept("weaken-decls", joined(weakened));
  r.assumptions = {"no-overflow-on-weakened"};
  return r;
}

UpdateClassReport check_exit_on_error(const Program& oldP, const Program& newP) {
  UpdateClassReport r;
  r.cls = UpdateClass::ExitOnError;
  EquivContext cx{typecheck(oldP), typecheck(newP)};
  if (auto c = label_meanings_conflict(*cx.env1, *cx.env2)) {
    r.verdict = reject(*c);
    return r;
  }
  UpdateRel u{cx, UpdateRel::Kind::ExitGuard};
  r.verdict = u.rel(normalized(newP.entry), normalized(oldP.entry));
  if (r.verdict.accepted) r.assumptions = {"no-guard-crash"};
  return r;
}

UpdateClassReport check_prompt_change(const Program& oldP, const Program& newP) {
  UpdateClassReport r;
  r.cls = UpdateClass::ImprovedPrompts;
  typecheck(oldP);
  typecheck(newP);
  if (oldP.enums != newP.enums) {
    r.verdict = reject("enum declarations differ");
    return r;
  }
  if (oldP.vars != newP.vars) {
    r.verdict = reject("variable declarations differ");
    return r;
  }
  if (!seq_equal(oldP.entry, newP.entry)) {
    r.verdict = reject("entry sequences differ");
    return r;
  }
  if (oldP.prompt == newP.prompt) {
    r.verdict = reject("prompt declarations are identical");
    return r;
  }
  r.verdict = accept("prompt-diff", "only the prompt declarations differ");
  r.assumptions = {"prompt-outputs-equivalent"};
  return r;
}

UpdateClassReport check_missing_init(const Program& oldP, const Program& newP) {
  UpdateClassReport r;
  r.cls = UpdateClass::MissingInit;
  typecheck(oldP);
  typecheck(newP);
  if (oldP.prompt != newP.prompt || oldP.enums != newP.enums ||
      oldP.vars != newP.vars) {
    r.verdict = reject("declarations differ");
    return r;
  }
  size_t n1 = oldP.entry.size(), n2 = newP.entry.size();
  if (n2 <= n1) {
    r.verdict = reject("the new entry sequence adds no leading statements");
    return r;
  }
  if (!seq_equal(Seq(newP.entry.begin() + (n2 - n1), newP.entry.end()),
                 oldP.entry)) {
    r.verdict = reject("the trailing statements differ from the old sequence");
    return r;
  }
  Seq init(newP.entry.begin(), newP.entry.begin() + (n2 - n1));
  for (const auto& st : init) {
    if (st->kind != StmtKind::Assign || !is_value_expr(*st->expr)) {
      r.verdict = reject("`" + print_stmt(st) +
                         "` is not a literal initialization");
      return r;
    }
  }
  VarSet defInit = def_seq(init);
  VarSet imp = imported_vars(oldP.entry, VarSet{kIoSeqVar});
  for (const auto& d : defInit) {
    if (!imp.count(d)) {
      r.verdict = reject("initialized variable " + d +
                         " does not affect the old I/O sequence");
      return r;
    }
  }
  r.verdict = accept("init-prefix",
                     std::to_string(init.size()) + " literal initialization" +
                         (init.size() == 1 ? "" : "s") + " of " +
                         joined(defInit));
  r.assumptions = {"no-undefined-read", "init-does-not-crash"};
  return r;
}

std::optional<ConfigValuation> search_config_valuation(const Program& oldP,
                                                       const Program& newP) {
  VarSet oldNames;
  for (const auto& d : oldP.vars) oldNames.insert(d.name);
  VarSet def2 = def_seq(newP.entry);
  std::vector<std::string> cand;
  for (const auto& d : newP.vars) {
    if (!oldNames.count(d.name) && !d.ty.isArray() &&
        (d.ty.kind == TyKind::Int || d.ty.kind == TyKind::Long) &&
        !def2.count(d.name))
      cand.push_back(d.name);
  }
  if (cand.empty() || cand.size() > 10) return std::nullopt;
  for (uint32_t mask = 0; mask < (1u << cand.size()); ++mask) {
    ConfigValuation rho;
    for (size_t i = 0; i < cand.size(); ++i) rho[cand[i]] = (mask >> i) & 1;
    if (check_new_config_vars(oldP, newP, rho).verdict.accepted) return rho;
  }
  return std::nullopt;
}

std::vector<UpdateClassReport> classify_update(
    const Program& oldP, const Program& newP,
    const std::optional<ConfigValuation>& rho) {
  std::vector<UpdateClassReport> out;
  {
    UpdateClassReport r;
    r.cls = UpdateClass::BehavioralEquiv;
    r.verdict = check_behavioral(oldP, newP);
    if (r.verdict.accepted) out.push_back(std::move(r));
  }
  auto pushAccepted = [&](UpdateClassReport r) {
    if (!r.verdict.accepted) return;
    // a derivation that is nothing but the output-equivalence fallback adds
    // no information beyond the BehavioralEquiv report above
    if (r.verdict.derivation.rule.ends_with("-behavioral")) return;
    out.push_back(std::move(r));
  };
  if (rho) {
    pushAccepted(check_new_config_vars(oldP, newP, *rho));
  } else if (auto found = search_config_valuation(oldP, newP)) {
    pushAccepted(check_new_config_vars(oldP, newP, *found));
  }
  pushAccepted(check_enum_extension(oldP, newP));
  pushAccepted(check_type_weakening(oldP, newP));
  pushAccepted(check_exit_on_error(oldP, newP));
  pushAccepted(check_prompt_change(oldP, newP));
  pushAccepted(check_missing_init(oldP, newP));
  return out;
}

}  // namespace wupd
