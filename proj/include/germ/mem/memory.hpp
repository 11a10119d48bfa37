#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "germ/mem/layout.hpp"
#include "germ/mem/value.hpp"

namespace germ::mem {

/// Immutable fixed-size memory state. Every write produces a new state;
/// old states stay valid.
class MemoryState {
 public:
  /// All slots v_init (the distinguished m_init state).
  static MemoryState initial(LayoutPtr layout);

  const MemoryLayout& layout() const { return *layout_; }
  const LayoutPtr& layout_ptr() const { return layout_; }

  std::uint32_t slot_count() const {
    return static_cast<std::uint32_t>(slots_.size());
  }
  const Value& slot(SlotIndex s) const { return slots_.at(s.position); }
  const std::vector<Value>& slots() const { return slots_; }

  MemoryState with_slot(SlotIndex s, Value v) const;
  MemoryState with_all(const Value& v) const;

  friend bool operator==(const MemoryState& a, const MemoryState& b) {
    return *a.layout_ == *b.layout_ && a.slots_ == b.slots_;
  }

 private:
  MemoryState(LayoutPtr layout, std::vector<Value> slots)
      : layout_(std::move(layout)), slots_(std::move(slots)) {}

  LayoutPtr layout_;
  std::vector<Value> slots_;
};

/// Permission policy consulted by checked reads/writes.
using CheckPolicy = std::function<bool(const Env&, const Blc&)>;

/// Allocation policy: true when a block's stored value marks it free.
using AllocPolicy = std::function<bool(const Value&)>;

using ValueFilter = std::function<bool(const Value&)>;
using OffsetFn = std::function<std::uint64_t(std::uint64_t, std::uint64_t)>;

/// Grants access to public blocks only.
const CheckPolicy& default_check_policy();

// Map operations.
SlotIndex map_label_to_slot(const MemoryLayout& layout, LabelAddress a);
std::optional<LabelAddress> map_slot_to_label(const MemoryLayout& layout,
                                              SlotIndex s);
std::uint64_t map_label_to_nat(LabelAddress a);
std::optional<LabelAddress> map_nat_to_label(const MemoryLayout& layout,
                                             std::uint64_t n);

// Read operations.
Value read_low(const MemoryState& m, SlotIndex s);
Value read_dir(const MemoryState& m, LabelAddress a);
bool infor_check(const CheckPolicy& policy, const Env& env, const Blc& blc);
std::optional<Value> read_chck(const MemoryState& m, const CheckPolicy& policy,
                               const Env& env, const Blc& blc, LabelAddress a);

// Write operations.
MemoryState write_low(const MemoryState& m, SlotIndex s, Value v);
MemoryState write_dir(const MemoryState& m, LabelAddress a, Value v);
std::pair<bool, MemoryState> write_chck(const MemoryState& m,
                                        const CheckPolicy& policy,
                                        const Env& env, const Blc& blc,
                                        LabelAddress a, Value v);

// Search operations.
std::optional<LabelAddress> address_offset(const MemoryLayout& layout,
                                           LabelAddress a, const OffsetFn& f,
                                           std::uint64_t offset);
std::optional<LabelAddress> address_srch(const MemoryState& m,
                                         LabelAddress start,
                                         const ValueFilter& filter);
bool value_dec(const Value& v0, const Value& v1);
std::optional<LabelAddress> empty_srch(const MemoryState& m,
                                       LabelAddress start);

// Allocate operations.
bool alloc_chck(const Value& v);
std::optional<LabelAddress> allocate(const MemoryState& m, LabelAddress start);
std::optional<LabelAddress> allocate(const MemoryState& m, LabelAddress start,
                                     const AllocPolicy& policy);

// Free / initialize operations.
MemoryState free_mem(LabelAddress a, const MemoryState& m);
MemoryState set_all(const MemoryState& m, const Value& v);

/// set_all(v_init), then reserved blocks restored to their defaults
/// (throw flag = Bool(Some false)).
MemoryState init_mem(const MemoryState& m);

/// Default value a reserved block holds after init_mem.
const Value& reserved_default();

/// Fresh engine state: init_mem applied to the all-v_init state.
MemoryState engine_initial(LayoutPtr layout);

}  // namespace germ::mem
