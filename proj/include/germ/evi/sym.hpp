#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "germ/interp/interp.hpp"
#include "germ/mem/memory.hpp"

namespace germ::evi {

struct SymBool {
  std::uint32_t id;
  friend bool operator==(const SymBool&, const SymBool&) = default;
};

struct SymNat {
  std::uint32_t id;
  friend bool operator==(const SymNat&, const SymNat&) = default;
};

/// A nat symbol known to be nonzero after a zero/successor split.
struct SymNatSucc {
  std::uint32_t id;
  friend bool operator==(const SymNatSucc&, const SymNatSucc&) = default;
};

/// Concrete data or a symbolic placeholder.
using SymData = std::variant<mem::Data, SymBool, SymNat, SymNatSucc>;

struct SymValue {
  SymData data;
  mem::Env env;
  mem::Blc blc;

  friend bool operator==(const SymValue&, const SymValue&) = default;
};

bool is_concrete(const SymData& d);
std::string render_sym_data(const SymData& d);

/// Symbolic counterpart of MemoryState: same layout, slots may hold
/// symbols.
class SymMemory {
 public:
  static SymMemory initial(mem::LayoutPtr layout);
  static SymMemory from_concrete(const mem::MemoryState& m);

  const mem::MemoryLayout& layout() const { return *layout_; }
  const mem::LayoutPtr& layout_ptr() const { return layout_; }
  std::uint32_t slot_count() const {
    return static_cast<std::uint32_t>(slots_.size());
  }
  const SymValue& slot(mem::SlotIndex s) const { return slots_.at(s.position); }
  const std::vector<SymValue>& slots() const { return slots_; }

  SymMemory with_slot(mem::SlotIndex s, SymValue v) const;

  const SymValue& at_label(mem::LabelAddress a) const;
  SymMemory write_label(mem::LabelAddress a, SymValue v) const;

  /// Replaces every occurrence of the given symbols by the bound data.
  SymMemory substitute(const std::map<std::uint32_t, mem::Data>& binding)
      const;

  /// Pins one symbol: bool symbols become concrete booleans; nat symbols
  /// become 0 (zero case) or SymNatSucc (successor case).
  SymMemory pin_bool(std::uint32_t sym, bool value) const;
  SymMemory pin_nat_zero(std::uint32_t sym) const;
  SymMemory pin_nat_succ(std::uint32_t sym) const;

  friend bool operator==(const SymMemory& a, const SymMemory& b) {
    return *a.layout_ == *b.layout_ && a.slots_ == b.slots_;
  }

 private:
  SymMemory(mem::LayoutPtr layout, std::vector<SymValue> slots)
      : layout_(std::move(layout)), slots_(std::move(slots)) {}

  mem::LayoutPtr layout_;
  std::vector<SymValue> slots_;
};

/// Some state iff every slot is concrete.
std::optional<mem::MemoryState> embed_concrete(const SymMemory& sm);

/// set_all(v_init) + reserved defaults, lifted to the symbolic memory.
SymMemory init_mem_sym(const SymMemory& sm);

enum class AtomKind : std::uint8_t {
  BoolTrue,
  BoolFalse,
  NatZero,
  NatSucc,
};

struct Atom {
  std::uint32_t sym;
  AtomKind kind;

  friend bool operator==(const Atom&, const Atom&) = default;
  friend auto operator<=>(const Atom&, const Atom&) = default;
};

/// Conjunction of case-split atoms, kept in canonical (symbol, kind)
/// order with at most one atom per symbol.
class PathCondition {
 public:
  /// Throws std::logic_error on a contradictory atom for a symbol that
  /// is already pinned differently.
  void add(Atom atom);

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::optional<AtomKind> lookup(std::uint32_t sym) const;

  friend bool operator==(const PathCondition&, const PathCondition&) = default;
  friend auto operator<=>(const PathCondition&, const PathCondition&) = default;

 private:
  std::vector<Atom> atoms_;  // sorted
};

/// "n = 0 && b1 = true" style rendering using the supplied symbol names.
std::string render_condition(
    const PathCondition& pc,
    const std::map<std::uint32_t, std::string>& names);

/// One symbolic execution path.
struct PathResult {
  PathCondition condition;
  SymMemory memory;
  bool reverted = false;
  bool undecided = false;
  std::string undecided_reason;
  std::vector<interp::ExecEvent> diagnostics;
};

}  // namespace germ::evi
