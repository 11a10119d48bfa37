#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace germ::ipl {

struct SourcePos {
  int line = 0;
  int column = 0;
};

enum class BinOp : std::uint8_t { Eq, Plus, Minus, Or, And };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  struct NatLit {
    std::uint64_t value;
  };
  struct BoolLit {
    bool value;
  };
  struct Ident {
    std::string name;
  };
  struct Binary {
    BinOp op;
    ExprPtr lhs;
    ExprPtr rhs;
  };

  std::variant<NatLit, BoolLit, Ident, Binary> node;
  SourcePos pos;
};

struct Stmt;
using StmtPtr = std::shared_ptr<const Stmt>;

struct Stmt {
  struct If {
    ExprPtr cond;
    StmtPtr then_branch;
    StmtPtr else_branch;  // Skip-equivalent when absent in source
  };
  struct While {
    ExprPtr cond;
    StmtPtr body;
  };
  struct Assign {
    ExprPtr target;
    ExprPtr value;
  };
  struct Seq {
    StmtPtr first;
    StmtPtr second;
  };
  struct Skip {};
  struct Throw {};

  std::variant<If, While, Assign, Seq, Skip, Throw> node;
  SourcePos pos;
};

}  // namespace germ::ipl
