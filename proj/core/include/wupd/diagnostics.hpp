#pragma once

#include <stdexcept>
#include <string>

namespace wupd {

enum class ErrClass {
  Syntax,
  DuplicateIdentifier,
  Type,
  InputOfPromptType,
};

struct LangError : std::runtime_error {
  ErrClass cls;
  std::string rule;  // violated typing rule, e.g. "Tassign"; empty for syntax
  int line = 0;
  int col = 0;

  LangError(ErrClass cls, std::string message, int line = 0, int col = 0,
            std::string rule = {})
      : std::runtime_error(std::move(message)),
        cls(cls),
        rule(std::move(rule)),
        line(line),
        col(col) {}
};

std::string err_class_name(ErrClass c);

}  // namespace wupd
