#include "wupd/equiv.hpp"

#include <functional>
#include <map>
#include <optional>
#include <set>

#include "wupd/analysis.hpp"

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

bool is_simple(const StmtPtr& s) {
  return s->kind != StmtKind::If && s->kind != StmtKind::While;
}

bool all_skip(const Seq& s) {
  for (const auto& st : s)
    if (st->kind != StmtKind::Skip) return false;
  return true;
}

Seq real_prefix(const Seq& s) { return Seq(s.begin(), s.end() - 1); }

// Standalone prefix obligations of a one-statement sequence use "skip",
// which is transparent to Def/Use/Imp and the variable analyses.
Seq padded_prefix(const Seq& s) {
  if (s.size() == 1) return Seq{make_skip()};
  return real_prefix(s);
}

Seq concat(Seq a, const Seq& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::string pair_key(const Seq& a, const Seq& b) {
  return print_seq(a) + "\x01" + print_seq(b);
}

struct Checker {
  EquivContext cx;
  std::map<std::string, Verdict> memoEqc, memoTerm, memoBeq;
  std::set<std::string> inflight;

  // The rules are inductive: a query that reappears inside its own
  // derivation could only be proven by an infinite derivation, so fail it.
  template <class F>
  Verdict cached(std::map<std::string, Verdict>& memo, std::string key,
                 F&& go) {
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    if (!inflight.insert(key).second) return reject("cyclic derivation");
    Verdict v = go();
    inflight.erase(key);
    memo.emplace(std::move(key), v);
    return v;
  }

  VarSet tvar1(const Seq& s) { return termination_vars(s, *cx.env1).tvar; }
  VarSet tvar2(const Seq& s) { return termination_vars(s, *cx.env2).tvar; }
  VarSet ovar1(const Seq& s) { return output_vars(s, *cx.env1).ovar; }
  VarSet ovar2(const Seq& s) { return output_vars(s, *cx.env2).ovar; }

  // ---- equivalent computation of a variable -----------------------------

  Verdict eqc(const Seq& s1, const Seq& s2, const std::string& x) {
    return cached(memoEqc, "eqc\x01" + pair_key(s1, s2) + "\x01" + x,
                  [&] { return eqcUncached(s1, s2, x); });
  }

  std::optional<std::vector<DerivNode>> eqcAll(const VarSet& ys, const Seq& a,
                                               const Seq& b,
                                               std::string& why) {
    std::vector<DerivNode> kids;
    for (const auto& y : ys) {
      Verdict v = eqc(a, b, y);
      if (!v.accepted) {
        why = "equivalent computation of " + y + " fails: " + v.failureReason;
        return std::nullopt;
      }
      kids.push_back(std::move(v.derivation));
    }
    return kids;
  }

  Verdict eqcSimple(const StmtPtr& a, const StmtPtr& b, const std::string& x) {
    if (stmt_equal(a, b)) return accept("eqc-base-1", "identical");
    if (a->kind == StmtKind::Input && b->kind == StmtKind::Input &&
        x != a->inputVar && x != b->inputVar)
      return accept("eqc-base-2a", "inputs not targeting " + x);
    if (!def_stmt(a).count(x) && !def_stmt(b).count(x))
      return accept("eqc-base-2b", x + " not defined");
    return reject("`" + print_stmt(a) + "` vs `" + print_stmt(b) +
                  "`: no base case computes " + x + " equivalently");
  }

  Verdict eqcUncached(const Seq& s1, const Seq& s2, const std::string& x) {
    bool single1 = s1.size() == 1, single2 = s2.size() == 1;
    if (single1 && single2) {
      const StmtPtr& a = s1.front();
      const StmtPtr& b = s2.front();
      if (is_simple(a) && is_simple(b)) {
        Verdict v = eqcSimple(a, b, x);
        if (v.accepted)
          return accept("eqc-1a", "x=" + x, {std::move(v.derivation)});
        return v;
      }
      if (a->kind == StmtKind::If && b->kind == StmtKind::If &&
          expr_equal(a->expr, b->expr) && def_stmt(a).count(x) &&
          def_stmt(b).count(x)) {
        Verdict t = eqc(a->thenSeq, b->thenSeq, x);
        Verdict f = t.accepted ? eqc(a->elseSeq, b->elseSeq, x) : Verdict{};
        if (t.accepted && f.accepted)
          return accept("eqc-1b", "x=" + x,
                        {std::move(t.derivation), std::move(f.derivation)});
      }
      if (a->kind == StmtKind::While && b->kind == StmtKind::While &&
          expr_equal(a->expr, b->expr) && def_stmt(a).count(x) &&
          def_stmt(b).count(x)) {
        VarSet ys = set_union(imported_vars(a, {x}), imported_vars(b, {x}));
        std::string why;
        auto kids = eqcAll(ys, a->body, b->body, why);
        if (kids)
          return accept("eqc-1c", "x=" + x, std::move(*kids));
      }
      if (!def_stmt(a).count(x) && !def_stmt(b).count(x))
        return accept("eqc-1d", x + " not defined");
      return reject("`" + print_seq(s1) + "` vs `" + print_seq(s2) +
                    "`: no single-statement case computes " + x +
                    " equivalently");
    }
    if (single1 && single2) return reject("unreachable");

    const StmtPtr& l1 = s1.back();
    const StmtPtr& l2 = s2.back();
    Seq p1 = padded_prefix(s1), p2 = padded_prefix(s2);

    // 2a: both last statements define x
    if (def_stmt(l1).count(x) && def_stmt(l2).count(x)) {
      VarSet ys = set_union(imported_vars(l1, {x}), imported_vars(l2, {x}));
      std::string why;
      auto kids = eqcAll(ys, p1, p2, why);
      if (kids) {
        Verdict last = eqc(Seq{l1}, Seq{l2}, x);
        if (last.accepted) {
          kids->push_back(std::move(last.derivation));
          return accept("eqc-2a", "x=" + x, std::move(*kids));
        }
      }
    }
    // 2b: a last statement that does not define x can be dropped
    // (needs a real prefix, or the query repeats)
    if (s2.size() >= 2 && !def_stmt(l2).count(x)) {
      Verdict v = eqc(s1, p2, x);
      if (v.accepted)
        return accept("eqc-2b", "drop right `" + print_stmt(l2) + "`",
                      {std::move(v.derivation)});
    }
    if (s1.size() >= 2 && !def_stmt(l1).count(x)) {
      Verdict v = eqc(p1, s2, x);
      if (v.accepted)
        return accept("eqc-2b", "drop left `" + print_stmt(l1) + "`",
                      {std::move(v.derivation)});
    }
    // 2c: statement motion across the branches of a trailing If. Both Ifs
    // must define x, or the moved statement's own target would slip through
    // with different imported variables on the two sides.
    if (l1->kind == StmtKind::If && l2->kind == StmtKind::If &&
        expr_equal(l1->expr, l2->expr) && def_stmt(l1).count(x) &&
        def_stmt(l2).count(x)) {
      Seq r1 = real_prefix(s1), r2 = real_prefix(s2);
      std::string why;
      auto kids = eqcAll(use_expr(l1->expr), p1, p2, why);
      if (kids) {
        Verdict t = eqc(concat(r1, l1->thenSeq), concat(r2, l2->thenSeq), x);
        Verdict f = t.accepted ? eqc(concat(r1, l1->elseSeq),
                                     concat(r2, l2->elseSeq), x)
                               : Verdict{};
        if (t.accepted && f.accepted) {
          kids->push_back(std::move(t.derivation));
          kids->push_back(std::move(f.derivation));
          return accept("eqc-2c", "x=" + x, std::move(*kids));
        }
      }
    }
    return reject("`" + print_seq(s1) + "` vs `" + print_seq(s2) +
                  "`: no sequence case computes " + x + " equivalently");
  }

  // ---- termination in the same way ---------------------------------------

  Verdict term(const Seq& s1, const Seq& s2) {
    return cached(memoTerm, "term\x01" + pair_key(s1, s2),
                  [&] { return termUncached(s1, s2); });
  }

  // No possible value mismatch: the target is not Int, or the expression is
  // not numeric, or its principal type is already Int.
  bool noMismatch(const TypeEnv& env, const StmtPtr& s) {
    if (s->kind != StmtKind::Assign) return true;
    if (lval_type(env, s->target).kind != TyKind::Int) return true;
    if (!types_as_long(env, s->expr)) return true;
    return expr_type(env, s->expr).kind == TyKind::Int;
  }

  Verdict termSimple(const StmtPtr& a, const StmtPtr& b) {
    if (stmt_equal(a, b)) return accept("term-base-1", "identical");
    if (a->kind == StmtKind::Input && b->kind == StmtKind::Input &&
        cx.env1->varType(a->inputVar) == cx.env2->varType(b->inputVar))
      return accept("term-base-2", "inputs of same type");
    bool formA = a->kind == StmtKind::Output ||
                 (a->kind == StmtKind::Assign && !a->target.isIndexed());
    bool formB = b->kind == StmtKind::Output ||
                 (b->kind == StmtKind::Assign && !b->target.isIndexed());
    if (formA && formB && expr_equal(a->expr, b->expr) &&
        noMismatch(*cx.env1, a) && noMismatch(*cx.env2, b))
      return accept("term-base-3", "same expression, no value mismatch");
    return reject("`" + print_stmt(a) + "` vs `" + print_stmt(b) +
                  "`: no base case for termination in the same way");
  }

  Verdict termUncached(const Seq& s1, const Seq& s2) {
    bool single1 = s1.size() == 1, single2 = s2.size() == 1;
    if (single1 && single2) {
      const StmtPtr& a = s1.front();
      const StmtPtr& b = s2.front();
      if (is_simple(a) && is_simple(b)) {
        Verdict v = termSimple(a, b);
        if (v.accepted) return accept("term-1a", "", {std::move(v.derivation)});
        return v;
      }
      if (a->kind == StmtKind::If && b->kind == StmtKind::If &&
          expr_equal(a->expr, b->expr)) {
        if (all_skip(a->thenSeq) && all_skip(a->elseSeq) &&
            all_skip(b->thenSeq) && all_skip(b->elseSeq))
          return accept("term-1b-i", "all branches skip");
        Verdict t = term(a->thenSeq, b->thenSeq);
        Verdict f = t.accepted ? term(a->elseSeq, b->elseSeq) : Verdict{};
        if (t.accepted && f.accepted)
          return accept("term-1b-ii", "",
                        {std::move(t.derivation), std::move(f.derivation)});
      }
      if (a->kind == StmtKind::While && b->kind == StmtKind::While &&
          expr_equal(a->expr, b->expr)) {
        Verdict body = term(a->body, b->body);
        if (body.accepted) {
          VarSet xs = set_union(tvar1(s1), tvar2(s2));
          std::string why;
          auto kids = eqcAll(xs, a->body, b->body, why);
          if (kids) {
            kids->insert(kids->begin(), std::move(body.derivation));
            return accept("term-1c", "", std::move(*kids));
          }
        }
      }
      return reject("`" + print_seq(s1) + "` vs `" + print_seq(s2) +
                    "`: no single-statement case terminates in the same way");
    }

    const StmtPtr& l1 = s1.back();
    const StmtPtr& l2 = s2.back();
    Seq p1 = padded_prefix(s1), p2 = padded_prefix(s2);

    // 2a: split off the last statements
    if (l1->kind != StmtKind::Skip && l2->kind != StmtKind::Skip) {
      Verdict pre = term(p1, p2);
      if (pre.accepted) {
        VarSet xs = set_union(tvar1(Seq{l1}), tvar2(Seq{l2}));
        std::string why;
        auto kids = eqcAll(xs, p1, p2, why);
        if (kids) {
          Verdict last = term(Seq{l1}, Seq{l2});
          if (last.accepted) {
            kids->insert(kids->begin(), std::move(pre.derivation));
            kids->push_back(std::move(last.derivation));
            return accept("term-2a", "", std::move(*kids));
          }
        }
      }
    }
    // 2b: drop a trailing skip (needs a real prefix, or the query repeats)
    if (s1.size() >= 2 && l1->kind == StmtKind::Skip) {
      Verdict v = term(p1, s2);
      if (v.accepted)
        return accept("term-2b", "drop left skip", {std::move(v.derivation)});
    }
    if (s2.size() >= 2 && l2->kind == StmtKind::Skip) {
      Verdict v = term(s1, p2);
      if (v.accepted)
        return accept("term-2b", "drop right skip", {std::move(v.derivation)});
    }
    // 2c: the last statement duplicates an earlier one
    if (s1.size() >= 2 && l1->kind != StmtKind::Skip) {
      Verdict rest = term(real_prefix(s1), s2);
      if (rest.accepted) {
        VarSet tv = tvar1(Seq{l1});
        for (size_t j = 0; j + 1 < s1.size(); ++j) {
          Verdict dup = term(Seq{s1[j]}, Seq{l1});
          if (!dup.accepted) continue;
          Seq between(s1.begin() + static_cast<ptrdiff_t>(j),
                      s1.end() - 1);  // s1' followed by the segment after it
          if (intersects(def_seq(between), tv)) continue;
          return accept("term-2c", "left duplicate of `" + print_stmt(l1) + "`",
                        {rest.derivation, std::move(dup.derivation)});
        }
      }
    }
    if (s2.size() >= 2 && l2->kind != StmtKind::Skip) {
      Verdict rest = term(s1, real_prefix(s2));
      if (rest.accepted) {
        VarSet tv = tvar2(Seq{l2});
        for (size_t j = 0; j + 1 < s2.size(); ++j) {
          Verdict dup = term(Seq{s2[j]}, Seq{l2});
          if (!dup.accepted) continue;
          Seq between(s2.begin() + static_cast<ptrdiff_t>(j), s2.end() - 1);
          if (intersects(def_seq(between), tv)) continue;
          return accept("term-2c",
                        "right duplicate of `" + print_stmt(l2) + "`",
                        {rest.derivation, std::move(dup.derivation)});
        }
      }
    }
    // 2d: the two trailing statements are reordered
    if (s1.size() >= 2 && s2.size() >= 2) {
      const StmtPtr& a2 = l1;                 // s1' in the rule
      const StmtPtr& a1 = s1[s1.size() - 2];  // s1
      const StmtPtr& b2 = l2;
      const StmtPtr& b1 = s2[s2.size() - 2];
      Seq q1(s1.begin(), s1.end() - 2);
      Seq q2(s2.begin(), s2.end() - 2);
      if (q1.empty()) q1.push_back(make_skip());
      if (q2.empty()) q2.push_back(make_skip());
      Verdict pre = term(q1, q2);
      if (pre.accepted &&
          !intersects(def_stmt(a1), tvar1(Seq{a2})) &&
          !intersects(def_stmt(b1), tvar2(Seq{b2}))) {
        VarSet xs = set_union(tvar1(Seq{a1, a2}), tvar2(Seq{b1, b2}));
        std::string why;
        auto kids = eqcAll(xs, q1, q2, why);
        if (kids) {
          Verdict x1 = term(Seq{a1}, Seq{b2});
          Verdict x2 = x1.accepted ? term(Seq{a2}, Seq{b1}) : Verdict{};
          if (x1.accepted && x2.accepted) {
            kids->insert(kids->begin(), std::move(pre.derivation));
            kids->push_back(std::move(x1.derivation));
            kids->push_back(std::move(x2.derivation));
            return accept("term-2d", "trailing statements reordered",
                          std::move(*kids));
          }
        }
      }
    }
    return reject("`" + print_seq(s1) + "` vs `" + print_seq(s2) +
                  "`: no sequence case terminates in the same way");
  }

  // ---- behavioral equivalence --------------------------------------------

  Verdict beq(const Seq& s1, const Seq& s2) {
    return cached(memoBeq, "beq\x01" + pair_key(s1, s2),
                  [&] { return beqUncached(s1, s2); });
  }

  Verdict beqUncached(const Seq& s1, const Seq& s2) {
    bool single1 = s1.size() == 1, single2 = s2.size() == 1;
    if (single1 && single2) {
      const StmtPtr& a = s1.front();
      const StmtPtr& b = s2.front();
      if (is_simple(a) && is_simple(b)) {
        if (a->kind != StmtKind::Output && b->kind != StmtKind::Output)
          return accept("beq-1a-i", "no output statement");
        if (a->kind == StmtKind::Output && b->kind == StmtKind::Output &&
            stmt_equal(a, b))
          return accept("beq-1a-ii", "identical output");
        return reject("`" + print_stmt(a) + "` vs `" + print_stmt(b) +
                      "`: output statements differ");
      }
      if (a->kind == StmtKind::If && b->kind == StmtKind::If &&
          expr_equal(a->expr, b->expr) && contains_output(a) &&
          contains_output(b)) {
        Verdict t = beq(a->thenSeq, b->thenSeq);
        Verdict f = t.accepted ? beq(a->elseSeq, b->elseSeq) : Verdict{};
        if (t.accepted && f.accepted)
          return accept("beq-1b", "",
                        {std::move(t.derivation), std::move(f.derivation)});
      }
      if (a->kind == StmtKind::While && b->kind == StmtKind::While &&
          expr_equal(a->expr, b->expr) && contains_output(a) &&
          contains_output(b)) {
        Verdict body = beq(a->body, b->body);
        if (body.accepted) {
          VarSet xs = set_union(ovar1(s1), ovar2(s2));
          std::string why;
          auto kids = eqcAll(xs, a->body, b->body, why);
          if (kids) {
            Verdict h = term(a->body, b->body);
            if (h.accepted) {
              kids->insert(kids->begin(), std::move(body.derivation));
              kids->push_back(std::move(h.derivation));
              return accept("beq-1c", "", std::move(*kids));
            }
          }
        }
      }
      if (!contains_output(a) && !contains_output(b))
        return accept("beq-1d", "no output statement");
      return reject("`" + print_seq(s1) + "` vs `" + print_seq(s2) +
                    "`: no single-statement case yields the same outputs");
    }

    const StmtPtr& l1 = s1.back();
    const StmtPtr& l2 = s2.back();
    Seq p1 = padded_prefix(s1), p2 = padded_prefix(s2);

    // 2a: both last statements produce output
    if (contains_output(l1) && contains_output(l2)) {
      Verdict pre = beq(p1, p2);
      if (pre.accepted) {
        VarSet xs = set_union(ovar1(Seq{l1}), ovar2(Seq{l2}));
        std::string why;
        auto kids = eqcAll(xs, p1, p2, why);
        if (kids) {
          Verdict h = term(p1, p2);
          if (h.accepted) {
            Verdict last = beq(Seq{l1}, Seq{l2});
            if (last.accepted) {
              kids->insert(kids->begin(), std::move(pre.derivation));
              kids->push_back(std::move(h.derivation));
              kids->push_back(std::move(last.derivation));
              return accept("beq-2a", "", std::move(*kids));
            }
          }
        }
      }
    }
    // 2b: drop an output-free last statement
    // (needs a real prefix, or the query repeats)
    if (s1.size() >= 2 && !contains_output(l1)) {
      Verdict v = beq(p1, s2);
      if (v.accepted)
        return accept("beq-2b", "drop left `" + print_stmt(l1) + "`",
                      {std::move(v.derivation)});
    }
    if (s2.size() >= 2 && !contains_output(l2)) {
      Verdict v = beq(s1, p2);
      if (v.accepted)
        return accept("beq-2b", "drop right `" + print_stmt(l2) + "`",
                      {std::move(v.derivation)});
    }
    return reject("`" + print_seq(s1) + "` vs `" + print_seq(s2) +
                  "`: no sequence case yields the same outputs");
  }
};

}  // namespace

std::optional<std::string> label_meanings_conflict(const TypeEnv& a,
                                                   const TypeEnv& b) {
  for (const auto& [label, where] : a.enumLabelOf) {
    auto it = b.enumLabelOf.find(label);
    if (it != b.enumLabelOf.end() && it->second.second != where.second)
      return "enum label " + label + " maps to different positions";
    if (b.promptConst.count(label))
      return "label " + label + " is enum in one program, prompt in the other";
  }
  for (const auto& [label, value] : a.promptConst) {
    auto it = b.promptConst.find(label);
    if (it != b.promptConst.end() && it->second != value)
      return "prompt label " + label + " maps to different values";
    if (b.enumLabelOf.count(label))
      return "label " + label + " is prompt in one program, enum in the other";
  }
  return std::nullopt;
}

Verdict check_equiv_comp(const EquivContext& cx, const Seq& s1, const Seq& s2,
                         const std::string& x) {
  Checker c{cx};
  return c.eqc(s1, s2, x);
}

Verdict check_term_same(const EquivContext& cx, const Seq& s1, const Seq& s2) {
  Checker c{cx};
  return c.term(s1, s2);
}

Verdict check_behavioral(const EquivContext& cx, const Seq& s1, const Seq& s2) {
  Checker c{cx};
  return c.beq(s1, s2);
}

namespace {

Verdict check_programs(const Program& p1, const Program& p2,
                       const std::function<Verdict(const EquivContext&)>& go) {
  EquivContext cx{typecheck(p1), typecheck(p2)};
  if (auto conflict = label_meanings_conflict(*cx.env1, *cx.env2))
    return reject(*conflict);
  return go(cx);
}

}  // namespace

Verdict check_equiv_comp(const Program& p1, const Program& p2,
                         const std::string& x) {
  return check_programs(p1, p2, [&](const EquivContext& cx) {
    return check_equiv_comp(cx, p1.entry, p2.entry, x);
  });
}

Verdict check_term_same(const Program& p1, const Program& p2) {
  return check_programs(p1, p2, [&](const EquivContext& cx) {
    return check_term_same(cx, p1.entry, p2.entry);
  });
}

Verdict check_behavioral(const Program& p1, const Program& p2) {
  return check_programs(p1, p2, [&](const EquivContext& cx) {
    return check_behavioral(cx, p1.entry, p2.entry);
  });
}

}  // namespace wupd
