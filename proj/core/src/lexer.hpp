#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace wupd {

enum class Tok {
  Ident,
  Int,
  KwPrompt,
  KwEnum,
  KwInt,
  KwLong,
  KwPmpt,
  KwInput,
  KwOutput,
  KwSkip,
  KwIf,
  KwElse,
  KwWhile,
  LBrace,
  RBrace,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Comma,
  Colon,
  Semi,
  Assign,  // :=
  Plus,
  Minus,
  Star,
  Slash,
  Percent,
  Lt,
  Le,
  EqEq,
  Ne,
  Gt,
  Ge,
  AndAnd,
  OrOr,
  Bang,
  End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int64_t intVal = 0;
  int line = 1;
  int col = 1;
};

// Throws LangError (Syntax) on unknown characters or malformed literals.
std::vector<Token> lex(const std::string& source);

}  // namespace wupd
