#include "germ/mem/layout.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

namespace germ::mem {

std::string render_normal_label(std::uint32_t index) {
  static const char* digits = "0123456789ABCDEF";
  std::string out = "_0x00000000";
  for (int i = 0; i < 8; ++i) {
    out[10 - i] = digits[(index >> (4 * i)) & 0xF];
  }
  return out;
}

std::optional<std::uint32_t> parse_normal_label(std::string_view text) {
  if (text.size() != 11 || text.substr(0, 3) != "_0x") return std::nullopt;
  std::uint32_t value = 0;
  for (char c : text.substr(3)) {
    value <<= 4;
    if (c >= '0' && c <= '9') {
      value |= static_cast<std::uint32_t>(c - '0');
    } else if (c >= 'A' && c <= 'F') {
      value |= static_cast<std::uint32_t>(c - 'A' + 10);
    } else {
      return std::nullopt;
    }
  }
  return value;
}

MemoryLayout MemoryLayout::create(std::uint32_t normal_count,
                                  std::vector<std::string> special_names,
                                  std::vector<ReservedBinding> reserved) {
  if (normal_count == 0) {
    throw LayoutError("normal block count must be at least 1");
  }
  std::unordered_set<std::string> seen;
  for (const auto& name : special_names) {
    if (name.empty()) throw LayoutError("empty special block name");
    if (!seen.insert(name).second) {
      throw LayoutError("duplicate special block name: " + name);
    }
  }
  std::unordered_set<std::string> seen_labels;
  for (const auto& binding : reserved) {
    if (!seen_labels.insert(binding.label).second) {
      throw LayoutError("duplicate reserved label: " + binding.label);
    }
    if (std::find(special_names.begin(), special_names.end(),
                  binding.special) == special_names.end()) {
      throw LayoutError("reserved label " + binding.label +
                        " bound to unknown special block " + binding.special);
    }
    if (parse_normal_label(binding.label).has_value()) {
      throw LayoutError("reserved label " + binding.label +
                        " collides with the normal label namespace");
    }
  }
  MemoryLayout layout;
  layout.normal_count_ = normal_count;
  layout.special_names_ = std::move(special_names);
  layout.reserved_ = std::move(reserved);
  return layout;
}

bool MemoryLayout::valid_label(LabelAddress a) const {
  if (a.reserved) return a.index < reserved_.size();
  return a.index < normal_count_;
}

bool MemoryLayout::valid_slot(SlotIndex s) const {
  return s.position < slot_count();
}

std::optional<SlotIndex> MemoryLayout::special_slot(
    std::string_view name) const {
  for (std::uint32_t i = 0; i < special_names_.size(); ++i) {
    if (special_names_[i] == name) return SlotIndex{i};
  }
  return std::nullopt;
}

std::optional<LabelAddress> MemoryLayout::reserved_label(
    std::string_view name) const {
  for (std::uint32_t i = 0; i < reserved_.size(); ++i) {
    if (reserved_[i].label == name) {
      return LabelAddress{.index = i, .reserved = true};
    }
  }
  return std::nullopt;
}

std::optional<LabelAddress> MemoryLayout::throw_label() const {
  if (auto a = reserved_label("_0xthrow")) return a;
  if (!reserved_.empty()) return LabelAddress{.index = 0, .reserved = true};
  return std::nullopt;
}

std::string MemoryLayout::label_name(LabelAddress a) const {
  if (a.reserved) return reserved_.at(a.index).label;
  return render_normal_label(a.index);
}

std::string MemoryLayout::slot_name(SlotIndex s) const {
  if (s.position < special_count()) return special_names_[s.position];
  return render_normal_label(s.position - special_count());
}

}  // namespace germ::mem
