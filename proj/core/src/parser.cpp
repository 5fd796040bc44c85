#include "wupd/parser.hpp"

#include <set>

#include "lexer.hpp"
#include "wupd/diagnostics.hpp"

namespace wupd {

namespace {

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Program parse() {
    Program p;
    if (at(Tok::KwPrompt)) p.prompt = parsePrompt();
    while (at(Tok::KwEnum) && peek(1).kind == Tok::Ident &&
           peek(2).kind == Tok::LBrace)
      p.enums.push_back(parseEnum());
    while (atTypeStart()) p.vars.push_back(parseVar());
    while (!at(Tok::End)) p.entry.push_back(parseStmt());
    if (p.entry.empty())
      throw LangError(ErrClass::Syntax, "program needs at least one statement",
                      cur().line, cur().col);
    return p;
  }

 private:
  std::vector<Token> toks_;
  size_t pos_ = 0;
  std::set<std::string> names_;
  std::set<std::string> labels_;  // enum and prompt labels
  std::set<std::string> varNames_;
  std::set<std::string> enumNames_;
  int nextLoop_ = 0;

  const Token& cur() const { return toks_[pos_]; }
  const Token& peek(size_t n) const {
    size_t i = pos_ + n;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  bool at(Tok k) const { return cur().kind == k; }
  Token eat(Tok k, const std::string& what) {
    if (!at(k))
      throw LangError(ErrClass::Syntax,
                      "expected " + what + ", found '" + cur().text + "'",
                      cur().line, cur().col);
    return toks_[pos_++];
  }

  void declare(const Token& t) {
    if (t.text == kInputSeqVar || t.text == kIoSeqVar)
      throw LangError(ErrClass::Syntax, "reserved identifier '" + t.text + "'",
                      t.line, t.col);
    if (!names_.insert(t.text).second)
      throw LangError(ErrClass::DuplicateIdentifier,
                      "duplicate identifier '" + t.text + "'", t.line, t.col);
  }

  PromptDecl parsePrompt() {
    eat(Tok::KwPrompt, "'prompt'");
    eat(Tok::LBrace, "'{'");
    PromptDecl d;
    while (true) {
      Token l = eat(Tok::Ident, "prompt label");
      declare(l);
      labels_.insert(l.text);
      eat(Tok::Colon, "':'");
      d.entries.emplace_back(l.text, parseIntConst());
      if (at(Tok::Comma)) {
        ++pos_;
        continue;
      }
      break;
    }
    eat(Tok::RBrace, "'}'");
    return d;
  }

  int64_t parseIntConst() {
    bool neg = false;
    if (at(Tok::Minus)) {
      neg = true;
      ++pos_;
    }
    Token t = eat(Tok::Int, "integer");
    return neg ? -t.intVal : t.intVal;
  }

  EnumDecl parseEnum() {
    eat(Tok::KwEnum, "'enum'");
    Token name = eat(Tok::Ident, "enum name");
    declare(name);
    enumNames_.insert(name.text);
    eat(Tok::LBrace, "'{'");
    EnumDecl d;
    d.name = name.text;
    while (true) {
      Token l = eat(Tok::Ident, "enum label");
      declare(l);
      labels_.insert(l.text);
      d.labels.push_back(l.text);
      if (at(Tok::Comma)) {
        ++pos_;
        continue;
      }
      break;
    }
    eat(Tok::RBrace, "'}'");
    eat(Tok::Semi, "';'");
    return d;
  }

  bool atTypeStart() const {
    if (at(Tok::KwInt) || at(Tok::KwLong) || at(Tok::KwPmpt)) return true;
    // "enum color c;" (enum declarations were already consumed)
    return at(Tok::KwEnum) && peek(1).kind == Tok::Ident;
  }

  VarDecl parseVar() {
    Type ty;
    if (at(Tok::KwInt)) {
      ty.kind = TyKind::Int;
      ++pos_;
    } else if (at(Tok::KwLong)) {
      ty.kind = TyKind::Long;
      ++pos_;
    } else if (at(Tok::KwPmpt)) {
      ty.kind = TyKind::Pmpt;
      ++pos_;
    } else {
      eat(Tok::KwEnum, "type");
      Token n = eat(Tok::Ident, "enum name");
      ty.kind = TyKind::Enum;
      ty.enumName = n.text;
    }
    Token name = eat(Tok::Ident, "variable name");
    declare(name);
    varNames_.insert(name.text);
    if (at(Tok::LBracket)) {
      ++pos_;
      Token n = eat(Tok::Int, "array size");
      ty.arraySize = n.intVal;
      eat(Tok::RBracket, "']'");
    }
    eat(Tok::Semi, "';'");
    return {name.text, ty};
  }

  Seq parseBlock() {
    eat(Tok::LBrace, "'{'");
    Seq s;
    do {
      s.push_back(parseStmt());
    } while (!at(Tok::RBrace));
    eat(Tok::RBrace, "'}'");
    return s;
  }

  StmtPtr parseStmt() {
    if (at(Tok::KwSkip)) {
      ++pos_;
      eat(Tok::Semi, "';'");
      return make_skip();
    }
    if (at(Tok::KwInput)) {
      ++pos_;
      Token v = eat(Tok::Ident, "variable");
      eat(Tok::Semi, "';'");
      return make_input(v.text);
    }
    if (at(Tok::KwOutput)) {
      ++pos_;
      ExprPtr e = parseExpr();
      eat(Tok::Semi, "';'");
      return make_output(std::move(e));
    }
    if (at(Tok::KwIf)) {
      ++pos_;
      eat(Tok::LParen, "'('");
      ExprPtr pred = parseExpr();
      eat(Tok::RParen, "')'");
      Seq thenSeq = parseBlock();
      Seq elseSeq;
      if (at(Tok::KwElse)) {
        ++pos_;
        elseSeq = parseBlock();
      } else {
        elseSeq.push_back(make_skip());
      }
      return make_if(std::move(pred), std::move(thenSeq), std::move(elseSeq));
    }
    if (at(Tok::KwWhile)) {
      ++pos_;
      int label = nextLoop_++;
      eat(Tok::LParen, "'('");
      ExprPtr pred = parseExpr();
      eat(Tok::RParen, "')'");
      Seq body = parseBlock();
      return make_while(std::move(pred), std::move(body), label);
    }
    if (at(Tok::Ident)) {
      Lval lv = parseLval();
      eat(Tok::Assign, "':='");
      ExprPtr e = parseExpr();
      eat(Tok::Semi, "';'");
      return make_assign(std::move(lv), std::move(e));
    }
    throw LangError(ErrClass::Syntax,
                    "expected statement, found '" + cur().text + "'",
                    cur().line, cur().col);
  }

  Lval parseLval() {
    Token base = eat(Tok::Ident, "identifier");
    Lval lv;
    lv.base = base.text;
    if (at(Tok::LBracket)) {
      ++pos_;
      if (at(Tok::Int)) {
        lv.litIndex = cur().intVal;
        ++pos_;
      } else {
        Token idx = eat(Tok::Ident, "index");
        lv.varIndex = idx.text;
      }
      eat(Tok::RBracket, "']'");
    }
    return lv;
  }

  // precedence: || < && < == != < relational < additive < multiplicative < unary
  ExprPtr parseExpr() { return parseOr(); }

  ExprPtr parseOr() {
    ExprPtr e = parseAnd();
    while (at(Tok::OrOr)) {
      ++pos_;
      e = make_binary(BinOp::Or, e, parseAnd());
    }
    return e;
  }

  ExprPtr parseAnd() {
    ExprPtr e = parseEquality();
    while (at(Tok::AndAnd)) {
      ++pos_;
      e = make_binary(BinOp::And, e, parseEquality());
    }
    return e;
  }

  ExprPtr parseEquality() {
    ExprPtr e = parseRel();
    while (at(Tok::EqEq) || at(Tok::Ne)) {
      bool eq = at(Tok::EqEq);
      ++pos_;
      ExprPtr rhs = parseRel();
      if (eq && rhs->kind == ExprKind::LabelLit && e->kind == ExprKind::LvalRef &&
          !e->lval.isIndexed()) {
        e = make_enum_eq(e->lval.base, rhs->label);
      } else {
        e = make_binary(eq ? BinOp::Eq : BinOp::Ne, e, rhs);
      }
    }
    return e;
  }

  ExprPtr parseRel() {
    ExprPtr e = parseAdd();
    while (at(Tok::Lt) || at(Tok::Le) || at(Tok::Gt) || at(Tok::Ge)) {
      BinOp op = at(Tok::Lt)   ? BinOp::Lt
                 : at(Tok::Le) ? BinOp::Le
                 : at(Tok::Gt) ? BinOp::Gt
                               : BinOp::Ge;
      ++pos_;
      e = make_binary(op, e, parseAdd());
    }
    return e;
  }

  ExprPtr parseAdd() {
    ExprPtr e = parseMul();
    while (at(Tok::Plus) || at(Tok::Minus)) {
      BinOp op = at(Tok::Plus) ? BinOp::Add : BinOp::Sub;
      ++pos_;
      e = make_binary(op, e, parseMul());
    }
    return e;
  }

  ExprPtr parseMul() {
    ExprPtr e = parseUnary();
    while (at(Tok::Star) || at(Tok::Slash) || at(Tok::Percent)) {
      BinOp op = at(Tok::Star)    ? BinOp::Mul
                 : at(Tok::Slash) ? BinOp::Div
                                  : BinOp::Mod;
      ++pos_;
      e = make_binary(op, e, parseUnary());
    }
    return e;
  }

  ExprPtr parseUnary() {
    if (at(Tok::Minus)) {
      ++pos_;
      ExprPtr e = parseUnary();
      if (e->kind == ExprKind::IntLit) return make_int(-e->intVal);
      return make_unary(UnOp::Neg, e);
    }
    if (at(Tok::Bang)) {
      ++pos_;
      return make_unary(UnOp::Not, parseUnary());
    }
    return parsePrimary();
  }

  ExprPtr parsePrimary() {
    if (at(Tok::Int)) {
      int64_t v = cur().intVal;
      ++pos_;
      return make_int(v);
    }
    if (at(Tok::LParen)) {
      ++pos_;
      ExprPtr e = parseExpr();
      eat(Tok::RParen, "')'");
      return e;
    }
    if (at(Tok::Ident)) {
      if (labels_.count(cur().text)) {
        std::string l = cur().text;
        ++pos_;
        return make_label(std::move(l));
      }
      Lval lv = parseLval();
      return make_lval(std::move(lv));
    }
    throw LangError(ErrClass::Syntax,
                    "expected expression, found '" + cur().text + "'",
                    cur().line, cur().col);
  }
};

}  // namespace

Program parse_program(const std::string& source) {
  Parser p(lex(source));
  return p.parse();
}

}  // namespace wupd
