#pragma once

#include <string>

#include "wupd/ast.hpp"

namespace wupd {

// Parses a program; throws LangError (Syntax or DuplicateIdentifier).
// If-without-else gets an explicit { skip; } branch; while statements are
// labeled 0,1,... in source order.
Program parse_program(const std::string& source);

}  // namespace wupd
