#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "germ/ipl/typed.hpp"

namespace germ::evi {

class SpecParseError : public std::runtime_error {
 public:
  SpecParseError(int line, const std::string& reason)
      : std::runtime_error("spec parse error at line " +
                           std::to_string(line) + ": " + reason),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

/// Boolean formula over declared symbols; atoms test a bool symbol or a
/// nat symbol against zero.
struct Guard {
  struct SymIsTrue {
    std::string sym;
  };
  struct SymIsFalse {
    std::string sym;
  };
  struct NatEqZero {
    std::string sym;
  };
  struct NatNeZero {
    std::string sym;
  };
  struct And;
  struct Or;

  using Node = std::variant<SymIsTrue, SymIsFalse, NatEqZero, NatNeZero,
                            std::shared_ptr<And>, std::shared_ptr<Or>>;

  Node node;
};

struct Guard::And {
  Guard lhs;
  Guard rhs;
};

struct Guard::Or {
  Guard lhs;
  Guard rhs;
};

/// Postcondition / invariant assertion forms.
struct Assertion {
  struct Reverted {};
  struct MemoryIsInit {};
  struct ReadEq {
    std::string var;
    ipl::Lit literal;
  };
  struct FrameExcept {
    std::vector<std::string> vars;
  };

  std::variant<Reverted, MemoryIsInit, ReadEq, FrameExcept> node;
  std::string text;  // source rendering for reports
};

struct VarDecl {
  std::string name;
  ipl::Ty type;

  struct Literal {
    ipl::Lit value;
  };
  struct Symbolic {
    std::string sym_name;
  };
  std::variant<Literal, Symbolic> init;
};

struct AssertCase {
  std::optional<Guard> guard;  // nullopt = else-case
  std::string guard_text;
  std::vector<Assertion> assertions;
};

struct InvariantClause {
  std::string loop_label;
  std::vector<Assertion> assertions;  // one conjunctive case
};

/// A parsed verification spec: layout + fuel + variable declarations +
/// program + guarded postcondition cases (+ optional loop invariants).
struct Spec {
  std::string layout_path;
  std::uint64_t fuel = 64;
  std::string program_path;
  std::vector<VarDecl> vars;
  std::vector<InvariantClause> invariants;
  std::vector<AssertCase> cases;  // else-case last when present
};

/// Parses the line-based spec format:
///   germ-spec v1
///   layout <path>
///   fuel <nat>
///   program <path>
///   var <ident> : <nat|bool> = <literal | sym <name>>
///   invariant <loop-label> : <assertion> { && <assertion> }
///   assert case <guard> : <assertion> { && <assertion> }
///   assert else : <assertion> { && <assertion> }
Spec parse_spec(const std::string& text);

/// Reads and parses a spec file; relative layout/program paths are
/// resolved against the spec file's directory.
Spec load_spec_file(const std::string& path);

}  // namespace germ::evi
