#pragma once

// Shared program corpus: well-typed and ill-typed sources over a fixed
// declaration set, plus symbolic-input programs for the verifier tests.

#include <vector>

#include "germ/evi/spec.hpp"
#include "germ/ipl/typecheck.hpp"
#include "germ/ipl/typed.hpp"

namespace corpus {

// n, m : nat at labels 0/1; b, c : bool at labels 2/3.
inline germ::ipl::SymbolTable standard_table() {
  using germ::ipl::Ty;
  germ::ipl::SymbolTable table;
  table.declare("n", germ::mem::LabelAddress{0}, Ty::nat());
  table.declare("m", germ::mem::LabelAddress{1}, Ty::nat());
  table.declare("b", germ::mem::LabelAddress{2}, Ty::boolean());
  table.declare("c", germ::mem::LabelAddress{3}, Ty::boolean());
  return table;
}

inline const std::vector<const char*>& well_typed() {
  static const std::vector<const char*> programs = {
      "skip;",
      "n = 1;",
      "n = n + 1;",
      "n = n - m;",
      "b = true;",
      "b = n == 0;",
      "b = b || c;",
      "b = b && c;",
      "if (b) { n = 1; }",
      "if (n == 0) { n = 1; } else { n = 2; }",
      "while (n == 0) { n = 1; }",
      "throw;",
      "if (b || c) { throw; }",
      "n = 1; m = 2; b = n == m;",
      "if (b && n == 0) { m = n + 1; } else { skip; }",
      "b = n + 1 == m - 1;",
      "while (b) { b = false; n = n + 1; }",
      "if (n == 0 || b || c) { throw; } m = 1;",
      "n = 0; while (n == 0) { n = n + 1; }",
      "b = n == 0 && c || b;",
      "skip; skip; n = 5;",
      "if (b) { if (c) { throw; } }",
      "m = n + n + n;",
      "c = (b || c) && b;",
  };
  return programs;
}

struct IllTyped {
  const char* src;
  germ::ipl::TypeErrorKind kind;
};

inline const std::vector<IllTyped>& ill_typed() {
  using K = germ::ipl::TypeErrorKind;
  static const std::vector<IllTyped> programs = {
      {"if (n) { skip; }", K::NonBoolCondition},
      {"if (1) { skip; }", K::NonBoolCondition},
      {"while (n + 1) { skip; }", K::NonBoolCondition},
      {"if (n - m) { skip; }", K::NonBoolCondition},
      {"while (0) { skip; }", K::NonBoolCondition},
      {"if (m) { throw; }", K::NonBoolCondition},
      {"n = n + b;", K::OperandMismatch},
      {"b = b || n;", K::OperandMismatch},
      {"b = n && c;", K::OperandMismatch},
      {"b = true == false;", K::OperandMismatch},
      {"n = b + 1;", K::OperandMismatch},
      {"b = b == c;", K::OperandMismatch},
      {"b = (n == 0) || m;", K::OperandMismatch},
      {"n = n - c;", K::OperandMismatch},
      {"b = 1 && b;", K::OperandMismatch},
      {"if (b == c) { skip; }", K::OperandMismatch},
      {"n = true;", K::AssignMismatch},
      {"b = 0;", K::AssignMismatch},
      {"n = b || c;", K::AssignMismatch},
      {"b = n + m;", K::AssignMismatch},
      {"m = c;", K::AssignMismatch},
      {"x = 1;", K::UnknownIdentifier},
      {"n = y;", K::UnknownIdentifier},
      {"if (zz) { skip; }", K::UnknownIdentifier},
      {"n = n + unknown;", K::UnknownIdentifier},
  };
  return programs;
}

// Verifier corpus: program + variable declarations, some symbolic.
struct SymProgram {
  const char* name;
  const char* src;
  std::vector<germ::evi::VarDecl> vars;
};

inline germ::evi::VarDecl nat_var(const char* name, std::uint64_t v) {
  using germ::evi::VarDecl;
  return VarDecl{name, germ::ipl::Ty::nat(),
                 VarDecl::Literal{germ::ipl::Lit{germ::ipl::Lit::VNat{v}}}};
}

inline germ::evi::VarDecl bool_var(const char* name, bool v) {
  using germ::evi::VarDecl;
  return VarDecl{name, germ::ipl::Ty::boolean(),
                 VarDecl::Literal{germ::ipl::Lit{germ::ipl::Lit::VBool{v}}}};
}

inline germ::evi::VarDecl sym_nat(const char* name) {
  using germ::evi::VarDecl;
  return VarDecl{name, germ::ipl::Ty::nat(), VarDecl::Symbolic{name}};
}

inline germ::evi::VarDecl sym_bool(const char* name) {
  using germ::evi::VarDecl;
  return VarDecl{name, germ::ipl::Ty::boolean(), VarDecl::Symbolic{name}};
}

inline const std::vector<SymProgram>& sym_programs() {
  static const std::vector<SymProgram> programs = {
      {"straight-line", "n = 1; m = n + 1;", {nat_var("n", 0), nat_var("m", 0)}},
      {"bool-branch",
       "if (b) { n = 1; } else { n = 2; }",
       {sym_bool("b"), nat_var("n", 0)}},
      {"nat-zero-split",
       "if (n == 0) { m = 1; } else { m = 2; }",
       {sym_nat("n"), nat_var("m", 0)}},
      {"pledge",
       "if (n == 0 || b1 || b2) { throw; } refnd = true;",
       {sym_nat("n"), sym_bool("b1"), sym_bool("b2"),
        bool_var("refnd", false)}},
      {"and-chain",
       "if (b1 && b2) { n = 1; } else { n = 0; }",
       {sym_bool("b1"), sym_bool("b2"), nat_var("n", 9)}},
      {"nested",
       "if (n == 0) { if (b) { throw; } m = 1; } else { m = 2; }",
       {sym_nat("n"), sym_bool("b"), nat_var("m", 0)}},
      {"two-nats",
       "if (n == 0) { skip; } if (m == 0) { skip; } k = 1;",
       {sym_nat("n"), sym_nat("m"), nat_var("k", 0)}},
      {"loop-concrete",
       "k = 0; while (k == 0) { k = 1; } m = k + 1;",
       {nat_var("k", 5), nat_var("m", 0)}},
      {"or-skew",
       "if (b1 || false) { n = 1; } else { n = 2; }",
       {sym_bool("b1"), nat_var("n", 0)}},
      {"four-syms",
       "if (b1) { n = 1; } if (b2) { n = n + 1; } if (b3) { n = n + 1; } "
       "if (b4) { n = n + 1; }",
       {sym_bool("b1"), sym_bool("b2"), sym_bool("b3"), sym_bool("b4"),
        nat_var("n", 0)}},
  };
  return programs;
}

}  // namespace corpus
