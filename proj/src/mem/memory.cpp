#include "germ/mem/memory.hpp"

#include <cassert>

namespace germ::mem {

MemoryState MemoryState::initial(LayoutPtr layout) {
  std::vector<Value> slots(layout->slot_count(), v_init());
  return MemoryState(std::move(layout), std::move(slots));
}

MemoryState MemoryState::with_slot(SlotIndex s, Value v) const {
  std::vector<Value> slots = slots_;
  slots.at(s.position) = std::move(v);
  return MemoryState(layout_, std::move(slots));
}

MemoryState MemoryState::with_all(const Value& v) const {
  std::vector<Value> slots(slots_.size(), v);
  return MemoryState(layout_, std::move(slots));
}

const CheckPolicy& default_check_policy() {
  static const CheckPolicy policy = [](const Env&, const Blc& blc) {
    return blc.access == Access::Public;
  };
  return policy;
}

SlotIndex map_label_to_slot(const MemoryLayout& layout, LabelAddress a) {
  assert(layout.valid_label(a));
  if (a.reserved) {
    auto slot = layout.special_slot(layout.reserved()[a.index].special);
    assert(slot.has_value());
    return *slot;
  }
  return SlotIndex{layout.special_count() + a.index};
}

std::optional<LabelAddress> map_slot_to_label(const MemoryLayout& layout,
                                              SlotIndex s) {
  assert(layout.valid_slot(s));
  if (s.position < layout.special_count()) return std::nullopt;
  return LabelAddress{.index = s.position - layout.special_count()};
}

std::uint64_t map_label_to_nat(LabelAddress a) {
  assert(!a.reserved);
  return a.index;
}

std::optional<LabelAddress> map_nat_to_label(const MemoryLayout& layout,
                                             std::uint64_t n) {
  if (n >= layout.normal_count()) return std::nullopt;
  return LabelAddress{.index = static_cast<std::uint32_t>(n)};
}

Value read_low(const MemoryState& m, SlotIndex s) {
  return m.slot(s);
}

Value read_dir(const MemoryState& m, LabelAddress a) {
  return read_low(m, map_label_to_slot(m.layout(), a));
}

bool infor_check(const CheckPolicy& policy, const Env& env, const Blc& blc) {
  return policy(env, blc);
}

std::optional<Value> read_chck(const MemoryState& m, const CheckPolicy& policy,
                               const Env& env, const Blc& blc,
                               LabelAddress a) {
  if (!infor_check(policy, env, blc)) return std::nullopt;
  return read_dir(m, a);
}

MemoryState write_low(const MemoryState& m, SlotIndex s, Value v) {
  return m.with_slot(s, std::move(v));
}

MemoryState write_dir(const MemoryState& m, LabelAddress a, Value v) {
  return write_low(m, map_label_to_slot(m.layout(), a), std::move(v));
}

std::pair<bool, MemoryState> write_chck(const MemoryState& m,
                                        const CheckPolicy& policy,
                                        const Env& env, const Blc& blc,
                                        LabelAddress a, Value v) {
  if (!infor_check(policy, env, blc)) return {false, m};
  return {true, write_dir(m, a, std::move(v))};
}

std::optional<LabelAddress> address_offset(const MemoryLayout& layout,
                                           LabelAddress a, const OffsetFn& f,
                                           std::uint64_t offset) {
  return map_nat_to_label(layout, f(map_label_to_nat(a), offset));
}

std::optional<LabelAddress> address_srch(const MemoryState& m,
                                         LabelAddress start,
                                         const ValueFilter& filter) {
  assert(m.layout().valid_label(start) && !start.reserved);
  LabelAddress current = start;
  // Bounded by the finite address space: at most normal_count probes.
  while (true) {
    if (filter(read_dir(m, current))) return current;
    auto next = address_offset(
        m.layout(), current,
        [](std::uint64_t n, std::uint64_t off) { return n + off; }, 1);
    if (!next) return std::nullopt;
    current = *next;
  }
}

bool value_dec(const Value& v0, const Value& v1) {
  return v0 == v1;
}

std::optional<LabelAddress> empty_srch(const MemoryState& m,
                                       LabelAddress start) {
  return address_srch(m, start,
                      [](const Value& v) { return value_dec(v_init(), v); });
}

bool alloc_chck(const Value& v) {
  return value_dec(v, v_init());
}

std::optional<LabelAddress> allocate(const MemoryState& m,
                                     LabelAddress start) {
  return allocate(m, start, alloc_chck);
}

std::optional<LabelAddress> allocate(const MemoryState& m, LabelAddress start,
                                     const AllocPolicy& policy) {
  return address_srch(m, start, policy);
}

MemoryState free_mem(LabelAddress a, const MemoryState& m) {
  return write_dir(m, a, v_init());
}

MemoryState set_all(const MemoryState& m, const Value& v) {
  return m.with_all(v);
}

const Value& reserved_default() {
  static const Value v = bool_value(false);
  return v;
}

MemoryState init_mem(const MemoryState& m) {
  MemoryState out = set_all(m, v_init());
  for (const auto& binding : m.layout().reserved()) {
    auto slot = m.layout().special_slot(binding.special);
    assert(slot.has_value());
    out = write_low(out, *slot, reserved_default());
  }
  return out;
}

MemoryState engine_initial(LayoutPtr layout) {
  return init_mem(MemoryState::initial(std::move(layout)));
}

}  // namespace germ::mem
