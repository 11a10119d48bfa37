#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>

#include "germ/mem/layout.hpp"

namespace germ::ipl {

/// Language types: nat, bool, and the transitional variable-id type
/// carrying an optional address.
struct Ty {
  enum class Kind : std::uint8_t { Nat, Bool, Vid };

  Kind kind = Kind::Nat;
  std::optional<mem::LabelAddress> vid_addr;  // meaningful for Vid only

  static Ty nat() { return Ty{Kind::Nat, std::nullopt}; }
  static Ty boolean() { return Ty{Kind::Bool, std::nullopt}; }
  static Ty vid(std::optional<mem::LabelAddress> addr) {
    return Ty{Kind::Vid, addr};
  }

  friend bool operator==(const Ty&, const Ty&) = default;
};

std::string render_ty(const Ty& ty);

struct Lit {
  struct VNat {
    std::uint64_t value;
    friend bool operator==(const VNat&, const VNat&) = default;
  };
  struct VBool {
    bool value;
    friend bool operator==(const VBool&, const VBool&) = default;
  };

  std::variant<VNat, VBool> node;

  Ty type() const {
    return std::holds_alternative<VNat>(node) ? Ty::nat() : Ty::boolean();
  }

  friend bool operator==(const Lit&, const Lit&) = default;
};

enum class Bop : std::uint8_t { EqNat, PlusNat, SubNat, OrBool, AndBool };

Ty bop_operand_ty(Bop op);
Ty bop_result_ty(Bop op);

struct TypedExpr;
using TypedExprPtr = std::shared_ptr<const TypedExpr>;

struct TypedExpr {
  struct Const {
    Lit lit;
  };
  struct Var {
    std::string name;
    mem::LabelAddress label;
  };
  struct Binop {
    Bop op;
    TypedExprPtr lhs;
    TypedExprPtr rhs;
  };

  std::variant<Const, Var, Binop> node;
  Ty cur_ty;
  Ty res_ty;
  int id = 0;
};

struct TypedStmt;
using TypedStmtPtr = std::shared_ptr<const TypedStmt>;

struct TypedStmt {
  struct If {
    TypedExprPtr cond;
    TypedStmtPtr then_branch;
    TypedStmtPtr else_branch;
  };
  struct While {
    TypedExprPtr cond;
    TypedStmtPtr body;
  };
  struct Assign {
    TypedExprPtr lhs;  // always a Var
    TypedExprPtr rhs;
  };
  struct Seq {
    TypedStmtPtr first;
    TypedStmtPtr second;
  };
  struct Snil {};
  struct Throw {};

  std::variant<If, While, Assign, Seq, Snil, Throw> node;
  int id = 0;
};

/// Structural equality ignoring node ids.
bool structurally_equal(const TypedExpr& a, const TypedExpr& b);
bool structurally_equal(const TypedStmt& a, const TypedStmt& b);

/// Name resolution table populated from spec-file declarations.
class SymbolTable {
 public:
  struct Entry {
    mem::LabelAddress label;
    Ty type;
  };

  /// Throws std::invalid_argument on redeclaration or a label already in
  /// use.
  void declare(const std::string& name, mem::LabelAddress label, Ty type);

  const Entry* lookup(const std::string& name) const;
  const std::map<std::string, Entry>& entries() const { return entries_; }

 private:
  std::map<std::string, Entry> entries_;
};

}  // namespace germ::ipl
