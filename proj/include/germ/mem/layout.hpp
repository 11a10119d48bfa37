#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace germ::mem {

class MemoryLayout;

/// A user-visible address of a memory block. Normal labels render as
/// "_0x" followed by eight uppercase hex digits of the index; reserved
/// labels carry an index into the layout's reserved-binding table and
/// render as the bound name (e.g. "_0xthrow").
struct LabelAddress {
  std::uint32_t index = 0;
  bool reserved = false;

  friend bool operator==(const LabelAddress&, const LabelAddress&) = default;
  friend auto operator<=>(const LabelAddress&, const LabelAddress&) = default;
};

/// Position of a slot in the flat memory array: specials first in
/// declaration order, then normal blocks.
struct SlotIndex {
  std::uint32_t position = 0;

  friend bool operator==(const SlotIndex&, const SlotIndex&) = default;
  friend auto operator<=>(const SlotIndex&, const SlotIndex&) = default;
};

class LayoutError : public std::runtime_error {
 public:
  explicit LayoutError(const std::string& what) : std::runtime_error(what) {}
};

/// Static shape of a memory space: how many normal blocks exist, which
/// special blocks precede them, and which labels are bound to special
/// blocks as engine-reserved exceptions.
class MemoryLayout {
 public:
  struct ReservedBinding {
    std::string label;    // e.g. "_0xthrow"
    std::string special;  // e.g. "m_throw"

    friend bool operator==(const ReservedBinding&,
                           const ReservedBinding&) = default;
  };

  /// Validates and builds a layout. Throws LayoutError on zero normal
  /// count, duplicate names, or reserved bindings to unknown specials.
  static MemoryLayout create(std::uint32_t normal_count,
                             std::vector<std::string> special_names,
                             std::vector<ReservedBinding> reserved);

  std::uint32_t normal_count() const { return normal_count_; }
  const std::vector<std::string>& special_names() const {
    return special_names_;
  }
  const std::vector<ReservedBinding>& reserved() const { return reserved_; }

  std::uint32_t special_count() const {
    return static_cast<std::uint32_t>(special_names_.size());
  }
  std::uint32_t slot_count() const { return special_count() + normal_count_; }

  bool valid_label(LabelAddress a) const;
  bool valid_slot(SlotIndex s) const;

  /// Slot holding the named special block, if declared.
  std::optional<SlotIndex> special_slot(std::string_view name) const;

  /// Reserved label with the given rendered name, if declared.
  std::optional<LabelAddress> reserved_label(std::string_view name) const;

  /// The engine throw-flag label ("_0xthrow" when present, otherwise the
  /// first reserved binding).
  std::optional<LabelAddress> throw_label() const;

  /// Rendered name of a label under this layout.
  std::string label_name(LabelAddress a) const;

  /// Name of the block at a slot ("m_..." for specials, "_0x..." for
  /// normals).
  std::string slot_name(SlotIndex s) const;

  friend bool operator==(const MemoryLayout&, const MemoryLayout&) = default;

 private:
  MemoryLayout() = default;

  std::uint32_t normal_count_ = 0;
  std::vector<std::string> special_names_;
  std::vector<ReservedBinding> reserved_;
};

using LayoutPtr = std::shared_ptr<const MemoryLayout>;

/// "_0x" + 8 uppercase hex digits.
std::string render_normal_label(std::uint32_t index);

/// Inverse of render_normal_label; nullopt if the text is not of that form.
std::optional<std::uint32_t> parse_normal_label(std::string_view text);

}  // namespace germ::mem
