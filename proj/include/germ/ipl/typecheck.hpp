#pragma once

#include <stdexcept>
#include <string>

#include "germ/ipl/ast.hpp"
#include "germ/ipl/typed.hpp"

namespace germ::ipl {

enum class TypeErrorKind {
  NonBoolCondition,
  OperandMismatch,
  AssignMismatch,
  NonVariableTarget,
  UnknownIdentifier,
};

class TypeError : public std::runtime_error {
 public:
  TypeError(TypeErrorKind kind, SourcePos pos, const std::string& reason)
      : std::runtime_error("type error at " + std::to_string(pos.line) + ":" +
                           std::to_string(pos.column) + ": " + reason),
        kind_(kind),
        pos_(pos) {}

  TypeErrorKind kind() const { return kind_; }
  SourcePos pos() const { return pos_; }

 private:
  TypeErrorKind kind_;
  SourcePos pos_;
};

/// Checks the untyped tree against the table and produces a typed tree
/// with every variable resolved to its label. Throws TypeError.
TypedStmtPtr typecheck(const StmtPtr& ast, const SymbolTable& table);

TypedExprPtr typecheck_expr(const ExprPtr& expr, const SymbolTable& table);

}  // namespace germ::ipl
