#include "germ/ipl/typed.hpp"

#include <stdexcept>

namespace germ::ipl {

std::string render_ty(const Ty& ty) {
  switch (ty.kind) {
    case Ty::Kind::Nat: return "nat";
    case Ty::Kind::Bool: return "bool";
    case Ty::Kind::Vid: return "vid";
  }
  return "?";
}

Ty bop_operand_ty(Bop op) {
  switch (op) {
    case Bop::EqNat:
    case Bop::PlusNat:
    case Bop::SubNat: return Ty::nat();
    case Bop::OrBool:
    case Bop::AndBool: return Ty::boolean();
  }
  return Ty::nat();
}

Ty bop_result_ty(Bop op) {
  switch (op) {
    case Bop::EqNat: return Ty::boolean();
    case Bop::PlusNat:
    case Bop::SubNat: return Ty::nat();
    case Bop::OrBool:
    case Bop::AndBool: return Ty::boolean();
  }
  return Ty::nat();
}

bool structurally_equal(const TypedExpr& a, const TypedExpr& b) {
  if (a.cur_ty != b.cur_ty || a.res_ty != b.res_ty) return false;
  if (a.node.index() != b.node.index()) return false;
  if (const auto* ca = std::get_if<TypedExpr::Const>(&a.node)) {
    return ca->lit == std::get<TypedExpr::Const>(b.node).lit;
  }
  if (const auto* va = std::get_if<TypedExpr::Var>(&a.node)) {
    const auto& vb = std::get<TypedExpr::Var>(b.node);
    return va->name == vb.name && va->label == vb.label;
  }
  const auto& ba = std::get<TypedExpr::Binop>(a.node);
  const auto& bb = std::get<TypedExpr::Binop>(b.node);
  return ba.op == bb.op && structurally_equal(*ba.lhs, *bb.lhs) &&
         structurally_equal(*ba.rhs, *bb.rhs);
}

bool structurally_equal(const TypedStmt& a, const TypedStmt& b) {
  if (a.node.index() != b.node.index()) return false;
  if (const auto* ia = std::get_if<TypedStmt::If>(&a.node)) {
    const auto& ib = std::get<TypedStmt::If>(b.node);
    return structurally_equal(*ia->cond, *ib.cond) &&
           structurally_equal(*ia->then_branch, *ib.then_branch) &&
           structurally_equal(*ia->else_branch, *ib.else_branch);
  }
  if (const auto* wa = std::get_if<TypedStmt::While>(&a.node)) {
    const auto& wb = std::get<TypedStmt::While>(b.node);
    return structurally_equal(*wa->cond, *wb.cond) &&
           structurally_equal(*wa->body, *wb.body);
  }
  if (const auto* aa = std::get_if<TypedStmt::Assign>(&a.node)) {
    const auto& ab = std::get<TypedStmt::Assign>(b.node);
    return structurally_equal(*aa->lhs, *ab.lhs) &&
           structurally_equal(*aa->rhs, *ab.rhs);
  }
  if (const auto* sa = std::get_if<TypedStmt::Seq>(&a.node)) {
    const auto& sb = std::get<TypedStmt::Seq>(b.node);
    return structurally_equal(*sa->first, *sb.first) &&
           structurally_equal(*sa->second, *sb.second);
  }
  return true;  // Snil / Throw
}

void SymbolTable::declare(const std::string& name, mem::LabelAddress label,
                          Ty type) {
  if (entries_.count(name)) {
    throw std::invalid_argument("redeclaration of '" + name + "'");
  }
  for (const auto& [other, entry] : entries_) {
    if (entry.label == label) {
      throw std::invalid_argument("label of '" + name +
                                  "' already bound to '" + other + "'");
    }
  }
  entries_.emplace(name, Entry{label, type});
}

const SymbolTable::Entry* SymbolTable::lookup(const std::string& name) const {
  auto it = entries_.find(name);
  return it == entries_.end() ? nullptr : &it->second;
}

}  // namespace germ::ipl
