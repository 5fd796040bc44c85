#include "lexer.hpp"

#include <cctype>
#include <map>

#include "wupd/diagnostics.hpp"

namespace wupd {

namespace {

const std::map<std::string, Tok>& keywords() {
  static const std::map<std::string, Tok> kw = {
      {"prompt", Tok::KwPrompt}, {"enum", Tok::KwEnum},   {"int", Tok::KwInt},
      {"long", Tok::KwLong},     {"pmpt", Tok::KwPmpt},   {"input", Tok::KwInput},
      {"output", Tok::KwOutput}, {"skip", Tok::KwSkip},   {"if", Tok::KwIf},
      {"else", Tok::KwElse},     {"while", Tok::KwWhile},
  };
  return kw;
}

}  // namespace

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto err = [&](const std::string& m) {
    throw LangError(ErrClass::Syntax, m, line, col);
  };
  auto push = [&](Tok k, std::string text, int l, int c, int64_t v = 0) {
    out.push_back({k, std::move(text), v, l, c});
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++col;
      ++i;
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') ++i;
      continue;
    }
    int tl = line, tc = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
        ++j;
      std::string word = src.substr(i, j - i);
      col += static_cast<int>(j - i);
      i = j;
      auto it = keywords().find(word);
      if (it != keywords().end())
        push(it->second, word, tl, tc);
      else
        push(Tok::Ident, word, tl, tc);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      uint64_t v = 0;
      bool overflow = false;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) {
        uint64_t d = static_cast<uint64_t>(src[j] - '0');
        if (v > (UINT64_MAX - d) / 10) overflow = true;
        v = v * 10 + d;
        ++j;
      }
      if (overflow || v > static_cast<uint64_t>(INT64_MAX))
        err("integer literal out of range");
      std::string text = src.substr(i, j - i);
      col += static_cast<int>(j - i);
      i = j;
      push(Tok::Int, text, tl, tc, static_cast<int64_t>(v));
      continue;
    }
    auto two = [&](char a, char b) {
      return c == a && i + 1 < src.size() && src[i + 1] == b;
    };
    if (two(':', '=')) { push(Tok::Assign, ":=", tl, tc); i += 2; col += 2; continue; }
    if (two('<', '=')) { push(Tok::Le, "<=", tl, tc); i += 2; col += 2; continue; }
    if (two('>', '=')) { push(Tok::Ge, ">=", tl, tc); i += 2; col += 2; continue; }
    if (two('=', '=')) { push(Tok::EqEq, "==", tl, tc); i += 2; col += 2; continue; }
    if (two('!', '=')) { push(Tok::Ne, "!=", tl, tc); i += 2; col += 2; continue; }
    if (two('&', '&')) { push(Tok::AndAnd, "&&", tl, tc); i += 2; col += 2; continue; }
    if (two('|', '|')) { push(Tok::OrOr, "||", tl, tc); i += 2; col += 2; continue; }
    Tok k;
    switch (c) {
      case '{': k = Tok::LBrace; break;
      case '}': k = Tok::RBrace; break;
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case '[': k = Tok::LBracket; break;
      case ']': k = Tok::RBracket; break;
      case ',': k = Tok::Comma; break;
      case ':': k = Tok::Colon; break;
      case ';': k = Tok::Semi; break;
      case '+': k = Tok::Plus; break;
      case '-': k = Tok::Minus; break;
      case '*': k = Tok::Star; break;
      case '/': k = Tok::Slash; break;
      case '%': k = Tok::Percent; break;
      case '<': k = Tok::Lt; break;
      case '>': k = Tok::Gt; break;
      case '!': k = Tok::Bang; break;
      default:
        err(std::string("unexpected character '") + c + "'");
        return out;  // unreachable
    }
    push(k, std::string(1, c), tl, tc);
    ++i;
    ++col;
  }
  out.push_back({Tok::End, "", 0, line, col});
  return out;
}

std::string err_class_name(ErrClass c) {
  switch (c) {
    case ErrClass::Syntax: return "SyntaxError";
    case ErrClass::DuplicateIdentifier: return "DuplicateIdentifier";
    case ErrClass::Type: return "TypeError";
    case ErrClass::InputOfPromptType: return "InputOfPromptType";
  }
  return "Error";
}

}  // namespace wupd
