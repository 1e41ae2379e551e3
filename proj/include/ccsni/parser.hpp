#pragma once

#include <stdexcept>
#include <string>

#include "ccsni/ast.hpp"

namespace ccsni {

struct SyntaxError : std::runtime_error {
  SyntaxError(const std::string& msg, int line, int column)
      : std::runtime_error(msg + " at " + std::to_string(line) + ":" +
                           std::to_string(column)),
        line(line),
        column(column) {}
  int line;
  int column;
};

/// Parses a source file. Grammar (comments run from '#' to end of line):
///
///   program  := (decl NEWLINE)* "main" "=" proc
///   decl     := "values" "{" ident ("," ident)* "}"
///             | "levels" ident ("<" ident)+
///             | "agent" IDENT "(" [ident ("," ident)*] ")" "=" proc
///   proc     := sum ("|" sum)*
///   sum      := term ("+" term)*
///   term     := "0" | prefix "." term | "new" chan "." term
///             | IDENT "(" [arg ("," arg)*] ")" | "(" proc ")"
///   prefix   := chan "(" ident ")" | "'" chan "<" arg ">"
///   chan     := ident "_" ident
///
/// Nullary prefix sugar: a bare `chan` is an input that binds nothing and
/// `'chan` is an output of the default value u.
Program parse(const std::string& text, const std::string& path = "");

std::string pretty_print(const Program& prog);
std::string pretty_print(const ProcPtr& p);

}  // namespace ccsni
