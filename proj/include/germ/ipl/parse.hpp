#pragma once

#include <stdexcept>
#include <string>

#include "germ/ipl/ast.hpp"

namespace germ::ipl {

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(SourcePos pos, const std::string& reason)
      : std::runtime_error("syntax error at " + std::to_string(pos.line) +
                           ":" + std::to_string(pos.column) + ": " + reason),
        pos_(pos) {}

  SourcePos pos() const { return pos_; }

 private:
  SourcePos pos_;
};

struct ParseOptions {
  /// When false, 'while' is rejected (strict base-language mode).
  bool allow_while = true;
};

/// Parses a program into a statement tree; sequences are right-associated
/// and terminated by Skip. Throws SyntaxError.
StmtPtr parse_program(const std::string& source, ParseOptions opts = {});

}  // namespace germ::ipl
