#include "germ/layout/generate.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace germ::layout {

namespace {

bool well_formed_identifier(const std::string& name) {
  if (name.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_')) {
    return false;
  }
  for (char c : name) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) {
      return false;
    }
  }
  return true;
}

std::string strip_comment(const std::string& line) {
  auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

std::vector<std::string> split_words(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> words;
  std::string word;
  while (in >> word) words.push_back(word);
  return words;
}

}  // namespace

mem::MemoryLayout generate_layout(const Requirements& req) {
  if (req.normal_count == 0) {
    throw GenerateError("normal block count must be at least 1");
  }
  for (const auto& name : req.special_names) {
    if (!well_formed_identifier(name)) {
      throw GenerateError("ill-formed special block name: '" + name + "'");
    }
  }
  for (const auto& binding : req.reserved) {
    if (!well_formed_identifier(binding.label)) {
      throw GenerateError("ill-formed reserved label: '" + binding.label +
                          "'");
    }
  }
  try {
    return mem::MemoryLayout::create(req.normal_count, req.special_names,
                                     req.reserved);
  } catch (const mem::LayoutError& e) {
    throw GenerateError(e.what());
  }
}

std::string serialize_layout(const mem::MemoryLayout& layout) {
  std::ostringstream out;
  out << "germ-layout v1\n";
  out << "normal " << layout.normal_count() << "\n";
  for (const auto& name : layout.special_names()) {
    out << "special " << name << "\n";
  }
  for (const auto& binding : layout.reserved()) {
    out << "reserved " << binding.label << " -> " << binding.special << "\n";
  }
  return out.str();
}

mem::MemoryLayout parse_layout(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;

  std::optional<std::uint32_t> normal_count;
  std::vector<std::string> special_names;
  std::vector<mem::MemoryLayout::ReservedBinding> reserved;
  bool saw_header = false;

  while (std::getline(in, raw)) {
    ++line_no;
    auto words = split_words(strip_comment(raw));
    if (words.empty()) continue;

    if (!saw_header) {
      if (words.size() != 2 || words[0] != "germ-layout" || words[1] != "v1") {
        throw LayoutParseError(line_no, "expected header 'germ-layout v1'");
      }
      saw_header = true;
      continue;
    }

    if (words[0] == "normal") {
      if (normal_count) {
        throw LayoutParseError(line_no, "duplicate 'normal' line");
      }
      if (words.size() != 2) {
        throw LayoutParseError(line_no, "expected 'normal <count>'");
      }
      std::uint64_t count = 0;
      try {
        size_t consumed = 0;
        count = std::stoull(words[1], &consumed);
        if (consumed != words[1].size()) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw LayoutParseError(line_no, "invalid count '" + words[1] + "'");
      }
      if (count == 0) {
        throw LayoutParseError(line_no, "normal count must be at least 1");
      }
      if (count > 0xFFFFFFFFull) {
        throw LayoutParseError(line_no, "normal count out of range");
      }
      normal_count = static_cast<std::uint32_t>(count);
    } else if (words[0] == "special") {
      if (words.size() != 2 || !well_formed_identifier(words[1])) {
        throw LayoutParseError(line_no, "expected 'special <identifier>'");
      }
      for (const auto& existing : special_names) {
        if (existing == words[1]) {
          throw LayoutParseError(line_no,
                                 "duplicate special name '" + words[1] + "'");
        }
      }
      special_names.push_back(words[1]);
    } else if (words[0] == "reserved") {
      if (words.size() != 4 || words[2] != "->" ||
          !well_formed_identifier(words[1]) ||
          !well_formed_identifier(words[3])) {
        throw LayoutParseError(
            line_no, "expected 'reserved <label> -> <special-name>'");
      }
      reserved.push_back({words[1], words[3]});
    } else {
      throw LayoutParseError(line_no, "unknown directive '" + words[0] + "'");
    }
  }

  if (!saw_header) throw LayoutParseError(1, "missing 'germ-layout v1' header");
  if (!normal_count) throw LayoutParseError(line_no, "missing 'normal' line");

  try {
    return mem::MemoryLayout::create(*normal_count, std::move(special_names),
                                     std::move(reserved));
  } catch (const mem::LayoutError& e) {
    throw LayoutParseError(line_no, e.what());
  }
}

mem::MemoryLayout load_layout_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw LayoutParseError(0, "cannot open layout file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_layout(buffer.str());
}

}  // namespace germ::layout
