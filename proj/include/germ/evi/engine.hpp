#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "germ/evi/spec.hpp"
#include "germ/evi/sym.hpp"
#include "germ/interp/interp.hpp"
#include "germ/ipl/typecheck.hpp"
#include "germ/layout/generate.hpp"
#include "germ/mem/memory.hpp"

namespace germ::evi {

class VerifyError : public std::runtime_error {
 public:
  explicit VerifyError(const std::string& what) : std::runtime_error(what) {}
};

/// Precondition memory built from a spec's variable declarations plus the
/// bookkeeping needed to talk about its symbols afterwards.
struct Precondition {
  SymMemory memory;
  ipl::SymbolTable table;
  std::map<std::string, std::uint32_t> sym_ids;    // symbol name -> id
  std::map<std::uint32_t, std::string> sym_names;  // id -> symbol name
  std::map<std::uint32_t, ipl::Ty> sym_types;      // id -> declared type
};

/// Allocates a block per declared variable in the fresh engine memory and
/// writes its initializer (concrete literal or fresh symbol). Throws
/// VerifyError on allocation exhaustion or duplicate names.
Precondition build_precondition(mem::LayoutPtr layout,
                                const std::vector<VarDecl>& vars);

struct ExecSettings {
  std::uint64_t fuel = 64;
  mem::Env env;
  mem::Blc blc;
  mem::CheckPolicy policy = mem::default_check_policy();
};

/// Symbolic execution with destruct-on-demand case splitting. Each fork
/// pins one symbol (boolean true/false, or natural zero/successor) in the
/// starting memory and re-executes. Results are sorted by canonical path
/// condition order; reverted paths are normalized to the initialized
/// memory. An UNDECIDED path marks a symbolic value reaching an operation
/// the atom language cannot decide.
std::vector<PathResult> sym_exec(const ExecSettings& cfg, const SymMemory& pre,
                                 const ipl::TypedStmt& program);

enum class PathStatus : std::uint8_t { Pass, Fail, Undecided };

struct AssertionOutcome {
  std::string text;
  PathStatus status = PathStatus::Pass;
};

struct PathRecord {
  PathCondition condition;
  std::string condition_text;
  std::string obligation = "triple";  // "triple" | "head" | "step" | "tail"
  int matched_case = -1;              // index into Spec::cases, -1 = none
  std::string guard_text;
  bool reverted = false;
  PathStatus status = PathStatus::Pass;
  std::vector<AssertionOutcome> assertions;
  std::map<std::string, std::string> witness;  // FAIL only: sym -> value
  std::string note;                            // UNDECIDED reason
};

struct Verdict {
  bool pass = false;
  bool undecided = false;
  std::vector<PathRecord> paths;
};

/// A spec with its referenced artifacts loaded, the program typechecked
/// under the built symbol table.
struct LoadedSpec {
  Spec spec;
  mem::LayoutPtr layout;
  Precondition pre;
  ipl::TypedStmtPtr program;
};

/// Loads layout and program files, builds the precondition, parses and
/// typechecks. Throws LayoutParseError, SpecParseError, ipl::SyntaxError,
/// ipl::TypeError, or VerifyError.
LoadedSpec load_spec(const Spec& spec);

/// Process II: symbolic execution from the precondition, first-match
/// guard dispatch of each path, assertion evaluation per path.
Verdict check_triple(const LoadedSpec& ls);

/// Process III when the spec carries invariant clauses: head, step, and
/// tail obligations for the labeled top-level loop, composed with
/// check_triple semantics. Without invariants this is check_triple.
Verdict check_with_invariant(const LoadedSpec& ls);

/// Loop labels in a program: "loop1", "loop2", ... for top-level while
/// statements in textual order.
std::vector<std::string> loop_labels(const ipl::TypedStmt& program);

/// True when the binding (symbol id -> concrete data) satisfies every
/// atom of the condition.
bool condition_satisfied(const PathCondition& pc,
                         const std::map<std::uint32_t, mem::Data>& binding);

}  // namespace germ::evi
