#include "germ/ipl/typecheck.hpp"

#include <utility>

namespace germ::ipl {

namespace {

class Checker {
 public:
  explicit Checker(const SymbolTable& table) : table_(table) {}

  TypedStmtPtr stmt(const Stmt& s) {
    int id = next_id_++;
    if (const auto* n = std::get_if<Stmt::If>(&s.node)) {
      TypedExprPtr cond = bool_condition(*n->cond, "if");
      TypedStmtPtr then_branch = stmt(*n->then_branch);
      TypedStmtPtr else_branch = stmt(*n->else_branch);
      return make(TypedStmt::If{cond, then_branch, else_branch}, id);
    }
    if (const auto* n = std::get_if<Stmt::While>(&s.node)) {
      TypedExprPtr cond = bool_condition(*n->cond, "while");
      TypedStmtPtr body = stmt(*n->body);
      return make(TypedStmt::While{cond, body}, id);
    }
    if (const auto* n = std::get_if<Stmt::Assign>(&s.node)) {
      const auto* target = std::get_if<Expr::Ident>(&n->target->node);
      if (!target) {
        throw TypeError(TypeErrorKind::NonVariableTarget, n->target->pos,
                        "assignment target must be a variable");
      }
      TypedExprPtr lhs = expr(*n->target);
      TypedExprPtr rhs = expr(*n->value);
      if (lhs->res_ty != rhs->res_ty) {
        throw TypeError(TypeErrorKind::AssignMismatch, s.pos,
                        "cannot assign " + render_ty(rhs->res_ty) + " to '" +
                            target->name + "' of type " +
                            render_ty(lhs->res_ty));
      }
      return make(TypedStmt::Assign{lhs, rhs}, id);
    }
    if (const auto* n = std::get_if<Stmt::Seq>(&s.node)) {
      TypedStmtPtr first = stmt(*n->first);
      TypedStmtPtr second = stmt(*n->second);
      return make(TypedStmt::Seq{first, second}, id);
    }
    if (std::holds_alternative<Stmt::Throw>(s.node)) {
      return make(TypedStmt::Throw{}, id);
    }
    return make(TypedStmt::Snil{}, id);
  }

  TypedExprPtr expr(const Expr& e) {
    int id = next_id_++;
    if (const auto* n = std::get_if<Expr::NatLit>(&e.node)) {
      Lit lit{Lit::VNat{n->value}};
      return make_expr(TypedExpr::Const{lit}, Ty::nat(), Ty::nat(), id);
    }
    if (const auto* n = std::get_if<Expr::BoolLit>(&e.node)) {
      Lit lit{Lit::VBool{n->value}};
      return make_expr(TypedExpr::Const{lit}, Ty::boolean(), Ty::boolean(),
                       id);
    }
    if (const auto* n = std::get_if<Expr::Ident>(&e.node)) {
      const auto* entry = table_.lookup(n->name);
      if (!entry) {
        throw TypeError(TypeErrorKind::UnknownIdentifier, e.pos,
                        "unknown identifier '" + n->name + "'");
      }
      return make_expr(TypedExpr::Var{n->name, entry->label},
                       Ty::vid(entry->label), entry->type, id);
    }
    const auto& n = std::get<Expr::Binary>(e.node);
    TypedExprPtr lhs = expr(*n.lhs);
    TypedExprPtr rhs = expr(*n.rhs);
    Bop op = resolve_bop(n.op, *lhs, *rhs, e.pos);
    Ty result = bop_result_ty(op);
    return make_expr(TypedExpr::Binop{op, lhs, rhs}, result, result, id);
  }

  TypedExprPtr bool_condition(const Expr& e, const std::string& which) {
    TypedExprPtr cond = expr(e);
    if (cond->res_ty != Ty::boolean()) {
      throw TypeError(TypeErrorKind::NonBoolCondition, e.pos,
                      which + " condition must be bool, got " +
                          render_ty(cond->res_ty));
    }
    return cond;
  }

 private:
  Bop resolve_bop(BinOp op, const TypedExpr& lhs, const TypedExpr& rhs,
                  SourcePos pos) {
    Bop out;
    switch (op) {
      case BinOp::Eq: out = Bop::EqNat; break;
      case BinOp::Plus: out = Bop::PlusNat; break;
      case BinOp::Minus: out = Bop::SubNat; break;
      case BinOp::Or: out = Bop::OrBool; break;
      case BinOp::And: out = Bop::AndBool; break;
    }
    Ty want = bop_operand_ty(out);
    if (lhs.res_ty != want || rhs.res_ty != want) {
      throw TypeError(TypeErrorKind::OperandMismatch, pos,
                      "operator expects " + render_ty(want) + " operands, got " +
                          render_ty(lhs.res_ty) + " and " +
                          render_ty(rhs.res_ty));
    }
    return out;
  }

  static TypedStmtPtr make(
      std::variant<TypedStmt::If, TypedStmt::While, TypedStmt::Assign,
                   TypedStmt::Seq, TypedStmt::Snil, TypedStmt::Throw>
          node,
      int id) {
    return std::make_shared<TypedStmt>(TypedStmt{std::move(node), id});
  }

  static TypedExprPtr make_expr(
      std::variant<TypedExpr::Const, TypedExpr::Var, TypedExpr::Binop> node,
      Ty cur, Ty res, int id) {
    return std::make_shared<TypedExpr>(
        TypedExpr{std::move(node), cur, res, id});
  }

  const SymbolTable& table_;
  int next_id_ = 0;
};

}  // namespace

TypedStmtPtr typecheck(const StmtPtr& ast, const SymbolTable& table) {
  return Checker(table).stmt(*ast);
}

TypedExprPtr typecheck_expr(const ExprPtr& expr, const SymbolTable& table) {
  return Checker(table).expr(*expr);
}

}  // namespace germ::ipl
