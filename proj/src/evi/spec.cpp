#include "germ/evi/spec.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace germ::evi {

namespace {

struct LineScanner {
  const std::string& text;
  std::size_t pos = 0;
  int line_no;

  explicit LineScanner(const std::string& t, int line) : text(t), line_no(line) {}

  void skip_space() {
    while (pos < text.size() &&
           std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
    }
  }

  bool at_end() {
    skip_space();
    return pos >= text.size();
  }

  bool try_consume(std::string_view token) {
    skip_space();
    if (text.compare(pos, token.size(), token) == 0) {
      // Word tokens must not run into identifier characters.
      if (!token.empty() &&
          (std::isalnum(static_cast<unsigned char>(token.back())) ||
           token.back() == '_')) {
        std::size_t after = pos + token.size();
        if (after < text.size() &&
            (std::isalnum(static_cast<unsigned char>(text[after])) ||
             text[after] == '_')) {
          return false;
        }
      }
      pos += token.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view token, const std::string& what) {
    if (!try_consume(token)) {
      throw SpecParseError(line_no, "expected " + what);
    }
  }

  std::string identifier(const std::string& what) {
    skip_space();
    std::size_t start = pos;
    if (pos < text.size() &&
        (std::isalpha(static_cast<unsigned char>(text[pos])) ||
         text[pos] == '_')) {
      while (pos < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[pos])) ||
              text[pos] == '_')) {
        ++pos;
      }
    }
    if (start == pos) {
      throw SpecParseError(line_no, "expected " + what);
    }
    return text.substr(start, pos - start);
  }

  std::uint64_t natural(const std::string& what) {
    skip_space();
    std::size_t start = pos;
    while (pos < text.size() &&
           std::isdigit(static_cast<unsigned char>(text[pos]))) {
      ++pos;
    }
    if (start == pos) throw SpecParseError(line_no, "expected " + what);
    return std::stoull(text.substr(start, pos - start));
  }

  bool peek_digit() {
    skip_space();
    return pos < text.size() &&
           std::isdigit(static_cast<unsigned char>(text[pos]));
  }

  std::string rest() {
    skip_space();
    return text.substr(pos);
  }
};

ipl::Lit parse_literal(LineScanner& scan) {
  if (scan.try_consume("true")) return ipl::Lit{ipl::Lit::VBool{true}};
  if (scan.try_consume("false")) return ipl::Lit{ipl::Lit::VBool{false}};
  if (scan.peek_digit()) {
    return ipl::Lit{ipl::Lit::VNat{scan.natural("literal")}};
  }
  throw SpecParseError(scan.line_no, "expected a literal");
}

Guard parse_guard_atom(LineScanner& scan) {
  if (scan.try_consume("!")) {
    return Guard{Guard::SymIsFalse{scan.identifier("symbol name")}};
  }
  std::string sym = scan.identifier("symbol name");
  if (scan.try_consume("==")) {
    if (scan.natural("0") != 0) {
      throw SpecParseError(scan.line_no,
                           "nat guards may only compare against 0");
    }
    return Guard{Guard::NatEqZero{sym}};
  }
  if (scan.try_consume("!=")) {
    if (scan.natural("0") != 0) {
      throw SpecParseError(scan.line_no,
                           "nat guards may only compare against 0");
    }
    return Guard{Guard::NatNeZero{sym}};
  }
  return Guard{Guard::SymIsTrue{sym}};
}

Guard parse_guard_and(LineScanner& scan) {
  Guard lhs = parse_guard_atom(scan);
  while (scan.try_consume("&&")) {
    Guard rhs = parse_guard_atom(scan);
    lhs = Guard{std::make_shared<Guard::And>(
        Guard::And{std::move(lhs), std::move(rhs)})};
  }
  return lhs;
}

Guard parse_guard(LineScanner& scan) {
  Guard lhs = parse_guard_and(scan);
  while (scan.try_consume("||")) {
    Guard rhs = parse_guard_and(scan);
    lhs = Guard{std::make_shared<Guard::Or>(
        Guard::Or{std::move(lhs), std::move(rhs)})};
  }
  return lhs;
}

Assertion parse_assertion(LineScanner& scan) {
  std::size_t start = scan.pos;
  Assertion out;
  if (scan.try_consume("reverted")) {
    out.node = Assertion::Reverted{};
  } else if (scan.try_consume("memory")) {
    scan.expect("==", "'==' after 'memory'");
    scan.expect("init", "'init'");
    out.node = Assertion::MemoryIsInit{};
  } else if (scan.try_consume("read")) {
    scan.expect("(", "'('");
    std::string var = scan.identifier("variable name");
    scan.expect(")", "')'");
    scan.expect("==", "'=='");
    ipl::Lit lit = parse_literal(scan);
    out.node = Assertion::ReadEq{std::move(var), lit};
  } else if (scan.try_consume("frame_except")) {
    scan.expect("(", "'('");
    std::vector<std::string> vars;
    if (!scan.try_consume(")")) {
      vars.push_back(scan.identifier("variable name"));
      while (scan.try_consume(",")) {
        vars.push_back(scan.identifier("variable name"));
      }
      scan.expect(")", "')'");
    }
    out.node = Assertion::FrameExcept{std::move(vars)};
  } else {
    throw SpecParseError(scan.line_no, "expected an assertion");
  }
  std::string raw = scan.text.substr(start, scan.pos - start);
  // Trim for report rendering.
  std::size_t first = raw.find_first_not_of(" \t");
  std::size_t last = raw.find_last_not_of(" \t");
  out.text = first == std::string::npos
                 ? raw
                 : raw.substr(first, last - first + 1);
  return out;
}

std::vector<Assertion> parse_assertion_list(LineScanner& scan) {
  std::vector<Assertion> out;
  out.push_back(parse_assertion(scan));
  while (scan.try_consume("&&")) {
    out.push_back(parse_assertion(scan));
  }
  if (!scan.at_end()) {
    throw SpecParseError(scan.line_no, "trailing input after assertions");
  }
  return out;
}

std::string strip_comment(const std::string& line) {
  auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

}  // namespace

Spec parse_spec(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  bool saw_header = false;
  bool saw_else = false;

  Spec spec;
  bool have_layout = false, have_program = false, have_fuel = false;

  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = strip_comment(raw);
    LineScanner scan(line, line_no);
    if (scan.at_end()) continue;

    if (!saw_header) {
      scan.expect("germ-spec", "header 'germ-spec v1'");
      scan.expect("v1", "header 'germ-spec v1'");
      saw_header = true;
      continue;
    }

    if (scan.try_consume("layout")) {
      if (have_layout) throw SpecParseError(line_no, "duplicate 'layout'");
      spec.layout_path = scan.rest();
      if (spec.layout_path.empty()) {
        throw SpecParseError(line_no, "missing layout path");
      }
      have_layout = true;
    } else if (scan.try_consume("fuel")) {
      if (have_fuel) throw SpecParseError(line_no, "duplicate 'fuel'");
      spec.fuel = scan.natural("fuel bound");
      have_fuel = true;
    } else if (scan.try_consume("program")) {
      if (have_program) throw SpecParseError(line_no, "duplicate 'program'");
      spec.program_path = scan.rest();
      if (spec.program_path.empty()) {
        throw SpecParseError(line_no, "missing program path");
      }
      have_program = true;
    } else if (scan.try_consume("var")) {
      VarDecl decl;
      decl.name = scan.identifier("variable name");
      scan.expect(":", "':'");
      if (scan.try_consume("nat")) {
        decl.type = ipl::Ty::nat();
      } else if (scan.try_consume("bool")) {
        decl.type = ipl::Ty::boolean();
      } else {
        throw SpecParseError(line_no, "expected type 'nat' or 'bool'");
      }
      scan.expect("=", "'='");
      if (scan.try_consume("sym")) {
        decl.init = VarDecl::Symbolic{scan.identifier("symbol name")};
      } else {
        decl.init = VarDecl::Literal{parse_literal(scan)};
      }
      if (!scan.at_end()) {
        throw SpecParseError(line_no, "trailing input after declaration");
      }
      for (const auto& existing : spec.vars) {
        if (existing.name == decl.name) {
          throw SpecParseError(line_no,
                               "duplicate variable '" + decl.name + "'");
        }
      }
      spec.vars.push_back(std::move(decl));
    } else if (scan.try_consume("invariant")) {
      InvariantClause clause;
      clause.loop_label = scan.identifier("loop label");
      scan.expect(":", "':'");
      clause.assertions = parse_assertion_list(scan);
      spec.invariants.push_back(std::move(clause));
    } else if (scan.try_consume("assert")) {
      AssertCase acase;
      if (scan.try_consume("case")) {
        // Guard runs until the separating ':'.
        std::size_t colon = line.find(':', scan.pos);
        if (colon == std::string::npos) {
          throw SpecParseError(line_no, "expected ':' after guard");
        }
        std::string guard_text = line.substr(scan.pos, colon - scan.pos);
        LineScanner guard_scan(guard_text, line_no);
        acase.guard = parse_guard(guard_scan);
        if (!guard_scan.at_end()) {
          throw SpecParseError(line_no, "trailing input in guard");
        }
        std::size_t first = guard_text.find_first_not_of(" \t");
        std::size_t last = guard_text.find_last_not_of(" \t");
        acase.guard_text =
            first == std::string::npos
                ? guard_text
                : guard_text.substr(first, last - first + 1);
        scan.pos = colon + 1;
      } else if (scan.try_consume("else")) {
        if (saw_else) throw SpecParseError(line_no, "duplicate 'assert else'");
        saw_else = true;
        scan.expect(":", "':'");
        acase.guard_text = "else";
      } else {
        throw SpecParseError(line_no, "expected 'case' or 'else'");
      }
      acase.assertions = parse_assertion_list(scan);
      if (acase.guard && saw_else && !spec.cases.empty() &&
          !spec.cases.back().guard) {
        throw SpecParseError(line_no,
                             "'assert else' must be the last assert line");
      }
      spec.cases.push_back(std::move(acase));
    } else {
      throw SpecParseError(line_no, "unknown directive");
    }
  }

  if (!saw_header) throw SpecParseError(1, "missing 'germ-spec v1' header");
  if (!have_layout) throw SpecParseError(line_no, "missing 'layout' line");
  if (!have_program) throw SpecParseError(line_no, "missing 'program' line");
  if (spec.cases.empty()) {
    throw SpecParseError(line_no, "spec declares no assert cases");
  }
  return spec;
}

Spec load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw SpecParseError(0, "cannot open spec file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  Spec spec = parse_spec(buffer.str());

  auto base = std::filesystem::path(path).parent_path();
  auto resolve = [&](const std::string& p) {
    std::filesystem::path fp(p);
    return fp.is_absolute() ? fp.string() : (base / fp).string();
  };
  spec.layout_path = resolve(spec.layout_path);
  spec.program_path = resolve(spec.program_path);
  return spec;
}

}  // namespace germ::evi
