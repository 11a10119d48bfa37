#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "corpus.hpp"
#include "germ/ipl/parse.hpp"
#include "germ/ipl/pretty.hpp"
#include "germ/ipl/typecheck.hpp"

using namespace germ;

namespace {

ipl::TypedStmtPtr check(const char* src) {
  return ipl::typecheck(ipl::parse_program(src), corpus::standard_table());
}

}  // namespace

TEST_CASE("parser produces the canonical statement shapes") {
  // Empty program is a bare skip.
  auto empty = ipl::parse_program("");
  CHECK(std::holds_alternative<ipl::Stmt::Skip>(empty->node));

  // A single statement is not wrapped in Seq.
  auto single = ipl::parse_program("n = 1;");
  CHECK(std::holds_alternative<ipl::Stmt::Assign>(single->node));

  // Multiple statements right-associate.
  auto triple = ipl::parse_program("n = 1; m = 2; throw;");
  const auto* seq = std::get_if<ipl::Stmt::Seq>(&triple->node);
  REQUIRE(seq != nullptr);
  CHECK(std::holds_alternative<ipl::Stmt::Assign>(seq->first->node));
  const auto* inner = std::get_if<ipl::Stmt::Seq>(&seq->second->node);
  REQUIRE(inner != nullptr);
  CHECK(std::holds_alternative<ipl::Stmt::Throw>(inner->second->node));
}

TEST_CASE("expression precedence: || < && < == < +/-") {
  auto t = check("b = n == 0 && c || b;");
  const auto& assign = std::get<ipl::TypedStmt::Assign>(t->node);
  const auto& top = std::get<ipl::TypedExpr::Binop>(assign.rhs->node);
  CHECK(top.op == ipl::Bop::OrBool);
  const auto& left = std::get<ipl::TypedExpr::Binop>(top.lhs->node);
  CHECK(left.op == ipl::Bop::AndBool);
  const auto& eq = std::get<ipl::TypedExpr::Binop>(left.lhs->node);
  CHECK(eq.op == ipl::Bop::EqNat);

  auto u = check("n = n + 1 - m;");
  const auto& sub = std::get<ipl::TypedExpr::Binop>(
      std::get<ipl::TypedStmt::Assign>(u->node).rhs->node);
  CHECK(sub.op == ipl::Bop::SubNat);  // left-associative chain
  CHECK(std::get<ipl::TypedExpr::Binop>(sub.lhs->node).op ==
        ipl::Bop::PlusNat);
}

TEST_CASE("syntax errors carry positions") {
  CHECK_THROWS_AS(ipl::parse_program("n = ;"), ipl::SyntaxError);
  CHECK_THROWS_AS(ipl::parse_program("if b { skip; }"), ipl::SyntaxError);
  CHECK_THROWS_AS(ipl::parse_program("n = 1"), ipl::SyntaxError);
  CHECK_THROWS_AS(ipl::parse_program("n = 1 |& 2;"), ipl::SyntaxError);
  try {
    ipl::parse_program("n = 1;\nm = ;\n");
    FAIL("expected a syntax error");
  } catch (const ipl::SyntaxError& err) {
    CHECK(err.pos().line == 2);
  }
}

TEST_CASE("while can be disabled") {
  ipl::ParseOptions strict;
  strict.allow_while = false;
  CHECK_THROWS_AS(ipl::parse_program("while (b) { skip; }", strict),
                  ipl::SyntaxError);
  CHECK_NOTHROW(ipl::parse_program("if (b) { skip; }", strict));
}

TEST_CASE("well-typed corpus is accepted") {
  for (const char* src : corpus::well_typed()) {
    CAPTURE(src);
    CHECK_NOTHROW(check(src));
  }
  CHECK(corpus::well_typed().size() >= 20);
}

TEST_CASE("ill-typed corpus is rejected with the expected error class") {
  for (const auto& bad : corpus::ill_typed()) {
    CAPTURE(bad.src);
    try {
      check(bad.src);
      FAIL("expected a type error for: ", bad.src);
    } catch (const ipl::TypeError& err) {
      CHECK(err.kind() == bad.kind);
    }
  }
  CHECK(corpus::ill_typed().size() >= 20);
}

TEST_CASE("non-variable assignment targets are rejected") {
  // Not reachable from the surface grammar; build the tree directly.
  using ipl::Expr;
  auto lit = std::make_shared<Expr>(Expr{Expr::NatLit{1}, {}});
  auto stmt = std::make_shared<ipl::Stmt>(
      ipl::Stmt{ipl::Stmt::Assign{lit, lit}, {}});
  try {
    ipl::typecheck(stmt, corpus::standard_table());
    FAIL("expected a type error");
  } catch (const ipl::TypeError& err) {
    CHECK(err.kind() == ipl::TypeErrorKind::NonVariableTarget);
  }
}

TEST_CASE("typed trees resolve variables to their labels") {
  auto t = check("n = m + 1;");
  const auto& assign = std::get<ipl::TypedStmt::Assign>(t->node);
  const auto& lhs = std::get<ipl::TypedExpr::Var>(assign.lhs->node);
  CHECK(lhs.label == mem::LabelAddress{0});
  CHECK(assign.lhs->cur_ty == ipl::Ty::vid(mem::LabelAddress{0}));
  CHECK(assign.lhs->res_ty == ipl::Ty::nat());
  const auto& rhs = std::get<ipl::TypedExpr::Binop>(assign.rhs->node);
  CHECK(std::get<ipl::TypedExpr::Var>(rhs.lhs->node).label ==
        mem::LabelAddress{1});
}

TEST_CASE("symbol table rejects duplicate names and reused labels") {
  ipl::SymbolTable table;
  table.declare("x", mem::LabelAddress{0}, ipl::Ty::nat());
  CHECK_THROWS_AS(table.declare("x", mem::LabelAddress{1}, ipl::Ty::nat()),
                  std::invalid_argument);
  CHECK_THROWS_AS(table.declare("y", mem::LabelAddress{0}, ipl::Ty::nat()),
                  std::invalid_argument);
  CHECK(table.lookup("x") != nullptr);
  CHECK(table.lookup("missing") == nullptr);
}

TEST_CASE("pretty/parse round-trip is exact on the accepted corpus") {
  for (const char* src : corpus::well_typed()) {
    CAPTURE(src);
    auto typed = check(src);
    std::string printed = ipl::pretty(*typed);
    auto reparsed = ipl::typecheck(ipl::parse_program(printed),
                                   corpus::standard_table());
    CHECK(ipl::structurally_equal(*typed, *reparsed));
    // A second print is a fixed point.
    CHECK(ipl::pretty(*reparsed) == printed);
  }
}

TEST_CASE("pretty printing is paren-minimal but faithful") {
  CHECK(ipl::pretty(*check("b = n == 0 && c || b;")) ==
        "b = n == 0 && c || b;\n");
  CHECK(ipl::pretty(*check("c = (b || c) && b;")) == "c = (b || c) && b;\n");
  CHECK(ipl::pretty(*check("n = n - (m - 1);")) == "n = n - (m - 1);\n");
  CHECK(ipl::pretty(*check("b = (n + 1) == m;")) == "b = n + 1 == m;\n");
}

TEST_CASE("structural equality ignores node ids") {
  auto a = check("n = 1; m = 2;");
  auto b = check("n = 1; m = 2;");
  auto c = check("n = 1; m = 3;");
  CHECK(ipl::structurally_equal(*a, *b));
  CHECK_FALSE(ipl::structurally_equal(*a, *c));
}
