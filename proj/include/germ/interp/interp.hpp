#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "germ/ipl/typed.hpp"
#include "germ/mem/memory.hpp"

namespace germ::interp {

/// Execution configuration: step budget, the environment/block info the
/// run is performed under, and the permission policy.
struct ExecConfig {
  std::uint64_t fuel = 64;
  mem::Env env;
  mem::Blc blc;
  mem::CheckPolicy policy = mem::default_check_policy();
};

enum class EventKind : std::uint8_t {
  FuelExhausted,
  SilentReadFailure,
  ThrowRaised,
  BreakpointDump,
};

struct ExecEvent {
  EventKind kind;
  int stmt_id = -1;
  std::optional<std::size_t> break_index;
};

struct ExecOutcome {
  mem::MemoryState memory;
  std::vector<ExecEvent> diagnostics;
  std::optional<mem::MemoryState> breakpoint_snapshot;
};

/// Lifts a language literal into a stored value under the given context.
std::optional<mem::Value> val_to_value(const mem::Env& env,
                                       const mem::Blc& blc,
                                       const ipl::Lit& lit);

/// Left-value evaluation: only variables have addresses.
std::optional<mem::LabelAddress> expr_l(const ipl::TypedExpr& e);

/// Right-value evaluation over concrete memory. None signals a read
/// denial, missing payload, or operand kind mismatch.
std::optional<mem::Value> expr_r(const mem::MemoryState& m,
                                 const ExecConfig& cfg,
                                 const ipl::TypedExpr& e);

// Arithmetic/logic helpers over optional values; defined only on
// Nat/Bool data with present payloads, None otherwise. Natural
// subtraction truncates at zero.
std::optional<mem::Value> eqb_val(const ExecConfig& cfg,
                                  const std::optional<mem::Value>& a,
                                  const std::optional<mem::Value>& b);
std::optional<mem::Value> plus_val(const ExecConfig& cfg,
                                   const std::optional<mem::Value>& a,
                                   const std::optional<mem::Value>& b);
std::optional<mem::Value> sub_val(const ExecConfig& cfg,
                                  const std::optional<mem::Value>& a,
                                  const std::optional<mem::Value>& b);
std::optional<mem::Value> orb_val(const ExecConfig& cfg,
                                  const std::optional<mem::Value>& a,
                                  const std::optional<mem::Value>& b);
std::optional<mem::Value> andb_val(const ExecConfig& cfg,
                                   const std::optional<mem::Value>& a,
                                   const std::optional<mem::Value>& b);

/// True when the layout's throw flag is set in m.
bool throw_flag_set(const mem::MemoryState& m);

/// Core statement evaluator. All failure modes silently return the
/// memory unchanged; diagnostics, when a sink is supplied, make them
/// observable.
mem::MemoryState exec(const ExecConfig& cfg, const mem::MemoryState& m,
                      const ipl::TypedStmt& s,
                      std::vector<ExecEvent>* diagnostics = nullptr);

/// Runs exec and normalizes: a final state with the throw flag set is
/// replaced by the initialized memory. An optional breakpoint snapshots
/// the state after the Nth top-level statement (0-based).
ExecOutcome run_program(const ExecConfig& cfg, const mem::MemoryState& m,
                        const ipl::TypedStmt& program,
                        std::optional<std::size_t> breakpoint = std::nullopt);

}  // namespace germ::interp
