#include "germ/evi/sym.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace germ::evi {

bool is_concrete(const SymData& d) {
  return std::holds_alternative<mem::Data>(d);
}

std::string render_sym_data(const SymData& d) {
  if (const auto* conc = std::get_if<mem::Data>(&d)) {
    return mem::render_data(*conc);
  }
  if (const auto* b = std::get_if<SymBool>(&d)) {
    return "SymBool(#" + std::to_string(b->id) + ")";
  }
  if (const auto* n = std::get_if<SymNat>(&d)) {
    return "SymNat(#" + std::to_string(n->id) + ")";
  }
  const auto& s = std::get<SymNatSucc>(d);
  return "SymNat(#" + std::to_string(s.id) + ")+1";
}

SymMemory SymMemory::initial(mem::LayoutPtr layout) {
  std::vector<SymValue> slots(
      layout->slot_count(),
      SymValue{mem::v_init().data, mem::v_init().env, mem::v_init().blc});
  return SymMemory(std::move(layout), std::move(slots));
}

SymMemory SymMemory::from_concrete(const mem::MemoryState& m) {
  std::vector<SymValue> slots;
  slots.reserve(m.slot_count());
  for (const auto& v : m.slots()) {
    slots.push_back(SymValue{v.data, v.env, v.blc});
  }
  return SymMemory(m.layout_ptr(), std::move(slots));
}

SymMemory SymMemory::with_slot(mem::SlotIndex s, SymValue v) const {
  std::vector<SymValue> slots = slots_;
  slots.at(s.position) = std::move(v);
  return SymMemory(layout_, std::move(slots));
}

const SymValue& SymMemory::at_label(mem::LabelAddress a) const {
  return slot(mem::map_label_to_slot(*layout_, a));
}

SymMemory SymMemory::write_label(mem::LabelAddress a, SymValue v) const {
  return with_slot(mem::map_label_to_slot(*layout_, a), std::move(v));
}

SymMemory SymMemory::substitute(
    const std::map<std::uint32_t, mem::Data>& binding) const {
  std::vector<SymValue> slots = slots_;
  for (auto& slot : slots) {
    std::uint32_t id = 0;
    bool succ = false;
    if (const auto* b = std::get_if<SymBool>(&slot.data)) {
      id = b->id;
    } else if (const auto* n = std::get_if<SymNat>(&slot.data)) {
      id = n->id;
    } else if (const auto* s = std::get_if<SymNatSucc>(&slot.data)) {
      id = s->id;
      succ = true;
    } else {
      continue;
    }
    auto it = binding.find(id);
    if (it == binding.end()) continue;
    if (succ) {
      // A successor placeholder only admits nonzero nat bindings.
      const auto* nat = std::get_if<mem::NatData>(&it->second);
      if (!nat || !nat->value || *nat->value == 0) {
        throw std::logic_error("binding for successor symbol must be a "
                               "nonzero nat");
      }
    }
    slot.data = it->second;
  }
  return SymMemory(layout_, std::move(slots));
}

namespace {

SymMemory pin(const SymMemory& sm, std::uint32_t sym,
              const std::function<std::optional<SymData>(const SymData&)>&
                  rewrite) {
  SymMemory out = sm;
  for (std::uint32_t i = 0; i < sm.slot_count(); ++i) {
    mem::SlotIndex s{i};
    auto replaced = rewrite(sm.slot(s).data);
    if (replaced) {
      SymValue v = sm.slot(s);
      v.data = *replaced;
      out = out.with_slot(s, std::move(v));
    }
  }
  (void)sym;
  return out;
}

}  // namespace

SymMemory SymMemory::pin_bool(std::uint32_t sym, bool value) const {
  return pin(*this, sym, [&](const SymData& d) -> std::optional<SymData> {
    const auto* b = std::get_if<SymBool>(&d);
    if (b && b->id == sym) return SymData{mem::Data{mem::BoolData{value}}};
    return std::nullopt;
  });
}

SymMemory SymMemory::pin_nat_zero(std::uint32_t sym) const {
  return pin(*this, sym, [&](const SymData& d) -> std::optional<SymData> {
    const auto* n = std::get_if<SymNat>(&d);
    if (n && n->id == sym) {
      return SymData{mem::Data{mem::NatData{std::uint64_t{0}}}};
    }
    return std::nullopt;
  });
}

SymMemory SymMemory::pin_nat_succ(std::uint32_t sym) const {
  return pin(*this, sym, [&](const SymData& d) -> std::optional<SymData> {
    const auto* n = std::get_if<SymNat>(&d);
    if (n && n->id == sym) return SymData{SymNatSucc{sym}};
    return std::nullopt;
  });
}

std::optional<mem::MemoryState> embed_concrete(const SymMemory& sm) {
  mem::MemoryState out = mem::MemoryState::initial(sm.layout_ptr());
  for (std::uint32_t i = 0; i < sm.slot_count(); ++i) {
    const SymValue& v = sm.slot(mem::SlotIndex{i});
    const auto* conc = std::get_if<mem::Data>(&v.data);
    if (!conc) return std::nullopt;
    out = out.with_slot(mem::SlotIndex{i}, mem::Value{*conc, v.env, v.blc});
  }
  return out;
}

SymMemory init_mem_sym(const SymMemory& sm) {
  SymMemory out = SymMemory::initial(sm.layout_ptr());
  for (const auto& binding : sm.layout().reserved()) {
    auto slot = sm.layout().special_slot(binding.special);
    if (slot) {
      const mem::Value& def = mem::reserved_default();
      out = out.with_slot(*slot, SymValue{def.data, def.env, def.blc});
    }
  }
  return out;
}

void PathCondition::add(Atom atom) {
  auto existing = lookup(atom.sym);
  if (existing) {
    if (*existing != atom.kind) {
      throw std::logic_error("contradictory path atoms for symbol #" +
                             std::to_string(atom.sym));
    }
    return;
  }
  atoms_.push_back(atom);
  std::sort(atoms_.begin(), atoms_.end());
}

std::optional<AtomKind> PathCondition::lookup(std::uint32_t sym) const {
  for (const auto& atom : atoms_) {
    if (atom.sym == sym) return atom.kind;
  }
  return std::nullopt;
}

std::string render_condition(
    const PathCondition& pc,
    const std::map<std::uint32_t, std::string>& names) {
  if (pc.atoms().empty()) return "true";
  std::ostringstream out;
  bool first = true;
  for (const auto& atom : pc.atoms()) {
    if (!first) out << " && ";
    first = false;
    auto it = names.find(atom.sym);
    std::string name =
        it != names.end() ? it->second : "#" + std::to_string(atom.sym);
    switch (atom.kind) {
      case AtomKind::BoolTrue: out << name; break;
      case AtomKind::BoolFalse: out << "!" << name; break;
      case AtomKind::NatZero: out << name << " == 0"; break;
      case AtomKind::NatSucc: out << name << " != 0"; break;
    }
  }
  return out.str();
}

}  // namespace germ::evi
