#include "germ/ipl/pretty.hpp"

#include <sstream>

namespace germ::ipl {

namespace {

// Grammar levels: or=0, and=1, eq=2, add=3, atom=4.
int expr_level(const TypedExpr& e) {
  const auto* binop = std::get_if<TypedExpr::Binop>(&e.node);
  if (!binop) return 4;
  switch (binop->op) {
    case Bop::OrBool: return 0;
    case Bop::AndBool: return 1;
    case Bop::EqNat: return 2;
    case Bop::PlusNat:
    case Bop::SubNat: return 3;
  }
  return 4;
}

const char* bop_symbol(Bop op) {
  switch (op) {
    case Bop::EqNat: return "==";
    case Bop::PlusNat: return "+";
    case Bop::SubNat: return "-";
    case Bop::OrBool: return "||";
    case Bop::AndBool: return "&&";
  }
  return "?";
}

void print_expr(std::ostream& out, const TypedExpr& e, int min_level) {
  if (expr_level(e) < min_level) {
    out << "(";
    print_expr(out, e, 0);
    out << ")";
    return;
  }
  if (const auto* c = std::get_if<TypedExpr::Const>(&e.node)) {
    if (const auto* n = std::get_if<Lit::VNat>(&c->lit.node)) {
      out << n->value;
    } else {
      out << (std::get<Lit::VBool>(c->lit.node).value ? "true" : "false");
    }
    return;
  }
  if (const auto* v = std::get_if<TypedExpr::Var>(&e.node)) {
    out << v->name;
    return;
  }
  const auto& b = std::get<TypedExpr::Binop>(e.node);
  int level = expr_level(e);
  // Operands sit one level up except the left side of left-associative
  // chains; == is non-associative so both sides need add level.
  int lhs_min = b.op == Bop::EqNat ? 3 : level;
  int rhs_min = b.op == Bop::EqNat ? 3 : level + 1;
  print_expr(out, *b.lhs, lhs_min);
  out << " " << bop_symbol(b.op) << " ";
  print_expr(out, *b.rhs, rhs_min);
}

void print_stmt(std::ostream& out, const TypedStmt& s, int indent);

void print_block(std::ostream& out, const TypedStmt& body, int indent) {
  out << "{\n";
  if (!std::holds_alternative<TypedStmt::Snil>(body.node)) {
    print_stmt(out, body, indent + 1);
  }
  for (int i = 0; i < indent; ++i) out << "  ";
  out << "}";
}

void print_stmt(std::ostream& out, const TypedStmt& s, int indent) {
  if (const auto* seq = std::get_if<TypedStmt::Seq>(&s.node)) {
    print_stmt(out, *seq->first, indent);
    print_stmt(out, *seq->second, indent);
    return;
  }
  for (int i = 0; i < indent; ++i) out << "  ";
  if (std::holds_alternative<TypedStmt::Snil>(s.node)) {
    out << "skip;\n";
  } else if (std::holds_alternative<TypedStmt::Throw>(s.node)) {
    out << "throw;\n";
  } else if (const auto* a = std::get_if<TypedStmt::Assign>(&s.node)) {
    print_expr(out, *a->lhs, 0);
    out << " = ";
    print_expr(out, *a->rhs, 0);
    out << ";\n";
  } else if (const auto* w = std::get_if<TypedStmt::While>(&s.node)) {
    out << "while (";
    print_expr(out, *w->cond, 0);
    out << ") ";
    print_block(out, *w->body, indent);
    out << "\n";
  } else {
    const auto& br = std::get<TypedStmt::If>(s.node);
    out << "if (";
    print_expr(out, *br.cond, 0);
    out << ") ";
    print_block(out, *br.then_branch, indent);
    if (!std::holds_alternative<TypedStmt::Snil>(br.else_branch->node)) {
      out << " else ";
      print_block(out, *br.else_branch, indent);
    }
    out << "\n";
  }
}

}  // namespace

std::string pretty(const TypedStmt& stmt) {
  std::ostringstream out;
  print_stmt(out, stmt, 0);
  return out.str();
}

std::string pretty(const TypedExpr& expr) {
  std::ostringstream out;
  print_expr(out, expr, 0);
  return out.str();
}

}  // namespace germ::ipl
