#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "germ/mem/layout.hpp"

namespace germ::layout {

/// User requirements for a memory space: how many normal blocks, which
/// special blocks, and which labels are reserved for engine state.
struct Requirements {
  std::uint32_t normal_count = 0;
  std::vector<std::string> special_names = {"m_0xinit", "m_throw"};
  std::vector<mem::MemoryLayout::ReservedBinding> reserved = {
      {"_0xthrow", "m_throw"}};
};

class GenerateError : public std::runtime_error {
 public:
  explicit GenerateError(const std::string& what)
      : std::runtime_error(what) {}
};

/// Parse failure with the offending line number.
class LayoutParseError : public std::runtime_error {
 public:
  LayoutParseError(int line, const std::string& reason)
      : std::runtime_error("layout parse error at line " +
                           std::to_string(line) + ": " + reason),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

/// Deterministically builds a layout from requirements: labels
/// _0x00000000.._0x(normal_count-1) in order. Rejects invalid
/// requirements with GenerateError.
mem::MemoryLayout generate_layout(const Requirements& req);

/// Line-based descriptor format; see parse_layout for the grammar.
std::string serialize_layout(const mem::MemoryLayout& layout);

/// Parses the descriptor format:
///   germ-layout v1
///   normal <count>
///   special <name>            (zero or more)
///   reserved <label> -> <special-name>   (zero or more)
/// "#" starts a comment; blank lines are ignored.
mem::MemoryLayout parse_layout(const std::string& text);

/// Reads and parses a layout file; throws on I/O or parse failure.
mem::MemoryLayout load_layout_file(const std::string& path);

}  // namespace germ::layout
