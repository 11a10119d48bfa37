#include "germ/cli/commands.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "germ/evi/engine.hpp"
#include "germ/interp/interp.hpp"
#include "germ/ipl/parse.hpp"
#include "germ/ipl/typecheck.hpp"
#include "germ/layout/generate.hpp"

namespace germ::cli {

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

bool color_enabled() {
  const char* setting = std::getenv("GERM_COLOR");
  return setting == nullptr || std::string(setting) != "0";
}

std::string paint(const std::string& text, const char* code) {
  if (!color_enabled()) return text;
  return std::string("\x1b[") + code + "m" + text + "\x1b[0m";
}

std::string status_text(evi::PathStatus s) {
  switch (s) {
    case evi::PathStatus::Pass: return "PASS";
    case evi::PathStatus::Fail: return "FAIL";
    default: return "UNDECIDED";
  }
}

std::string status_colored(evi::PathStatus s) {
  switch (s) {
    case evi::PathStatus::Pass: return paint("PASS", "32");
    case evi::PathStatus::Fail: return paint("FAIL", "31");
    default: return paint("UNDECIDED", "33");
  }
}

void print_memory(std::ostream& out, const mem::MemoryState& m) {
  // One line per block, specials first (layout order).
  for (std::uint32_t i = 0; i < m.slot_count(); ++i) {
    mem::SlotIndex s{i};
    out << "  " << m.layout().slot_name(s) << " : "
        << mem::render_value(m.slot(s)) << "\n";
  }
}

int cmd_gen_layout(std::uint32_t size, const std::vector<std::string>& extra,
                   const std::string& out_path) {
  layout::Requirements req;
  req.normal_count = size;
  for (const std::string& name : extra) req.special_names.push_back(name);
  try {
    mem::MemoryLayout layout = layout::generate_layout(req);
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "error: cannot write '" << out_path << "'\n";
      return kExitUsage;
    }
    out << layout::serialize_layout(layout);
    return kExitPass;
  } catch (const layout::GenerateError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitUsage;
  }
}

nlohmann::json verdict_json(const evi::Verdict& verdict, double ms) {
  nlohmann::json paths = nlohmann::json::array();
  for (const evi::PathRecord& r : verdict.paths) {
    nlohmann::json assertions = nlohmann::json::array();
    for (const auto& a : r.assertions) {
      assertions.push_back(
          {{"text", a.text}, {"status", status_text(a.status)}});
    }
    paths.push_back({{"condition", r.condition_text},
                     {"obligation", r.obligation},
                     {"guard", r.guard_text},
                     {"status", status_text(r.status)},
                     {"reverted", r.reverted},
                     {"assertions", assertions},
                     {"witness", r.witness},
                     {"note", r.note}});
  }
  return {{"verdict", verdict.pass ? "PASS"
                      : verdict.undecided ? "UNDECIDED"
                                          : "FAIL"},
          {"pass", verdict.pass},
          {"paths", paths},
          {"timing_ms", ms}};
}

void print_report(std::ostream& out, const evi::Verdict& verdict, double ms) {
  out << verdict.paths.size() << " path"
      << (verdict.paths.size() == 1 ? "" : "s") << " explored\n";
  for (const evi::PathRecord& r : verdict.paths) {
    out << "  [" << status_colored(r.status) << "] ";
    if (r.obligation != "triple") out << "(" << r.obligation << ") ";
    out << "{" << r.condition_text << "}";
    if (!r.guard_text.empty()) out << " matched: " << r.guard_text;
    out << "\n";
    for (const auto& a : r.assertions) {
      out << "      " << a.text << " ... " << status_text(a.status) << "\n";
    }
    if (!r.witness.empty()) {
      out << "      witness:";
      for (const auto& [name, value] : r.witness) {
        out << " " << name << "=" << value;
      }
      out << "\n";
    }
    if (!r.note.empty()) out << "      note: " << r.note << "\n";
  }
  out << "overall: "
      << (verdict.pass ? status_colored(evi::PathStatus::Pass)
          : verdict.undecided
              ? status_colored(evi::PathStatus::Undecided)
              : status_colored(evi::PathStatus::Fail))
      << " (" << ms << " ms)\n";
}

int cmd_check(const std::string& spec_path, bool json_output) {
  std::optional<evi::LoadedSpec> ls;
  try {
    ls = evi::load_spec(evi::load_spec_file(spec_path));
  } catch (const evi::SpecParseError& err) {
    std::cerr << "spec error: " << err.what() << "\n";
    return kExitUsage;
  } catch (const layout::LayoutParseError& err) {
    std::cerr << "layout error: " << err.what() << "\n";
    return kExitUsage;
  } catch (const ipl::SyntaxError& err) {
    std::cerr << "program parse error: " << err.what() << "\n";
    return kExitUsage;
  } catch (const ipl::TypeError& err) {
    std::cerr << "program type error: " << err.what() << "\n";
    return kExitUsage;
  } catch (const std::runtime_error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitUsage;
  }

  auto start = std::chrono::steady_clock::now();
  evi::Verdict verdict;
  try {
    verdict = evi::check_with_invariant(*ls);
  } catch (const evi::VerifyError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitUsage;
  }
  auto stop = std::chrono::steady_clock::now();
  double ms =
      std::chrono::duration<double, std::milli>(stop - start).count();

  if (json_output) {
    std::cout << verdict_json(verdict, ms).dump(2) << "\n";
  } else {
    print_report(std::cout, verdict, ms);
  }
  return verdict.pass ? kExitPass : kExitFail;
}

int cmd_run(const std::string& spec_path,
            const std::vector<std::string>& binds,
            std::optional<std::size_t> break_at) {
  std::optional<evi::LoadedSpec> loaded;
  try {
    loaded = evi::load_spec(evi::load_spec_file(spec_path));
  } catch (const std::runtime_error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitUsage;
  }
  const evi::LoadedSpec& ls = *loaded;

  std::map<std::uint32_t, mem::Data> binding;
  for (const std::string& bind : binds) {
    auto eq = bind.find('=');
    if (eq == std::string::npos) {
      std::cerr << "error: --bind expects sym=value, got '" << bind << "'\n";
      return kExitUsage;
    }
    std::string name = bind.substr(0, eq);
    std::string value = bind.substr(eq + 1);
    auto it = ls.pre.sym_ids.find(name);
    if (it == ls.pre.sym_ids.end()) {
      std::cerr << "error: unknown symbol '" << name << "'\n";
      return kExitUsage;
    }
    bool is_bool = ls.pre.sym_types.at(it->second) == ipl::Ty::boolean();
    if (is_bool) {
      if (value != "true" && value != "false") {
        std::cerr << "error: symbol '" << name << "' is bool, got '" << value
                  << "'\n";
        return kExitUsage;
      }
      binding[it->second] = mem::BoolData{value == "true"};
    } else {
      try {
        std::size_t used = 0;
        std::uint64_t n = std::stoull(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        binding[it->second] = mem::NatData{n};
      } catch (const std::exception&) {
        std::cerr << "error: symbol '" << name << "' is nat, got '" << value
                  << "'\n";
        return kExitUsage;
      }
    }
  }
  for (const auto& [name, id] : ls.pre.sym_ids) {
    if (binding.find(id) == binding.end()) {
      std::cerr << "error: symbol '" << name << "' is not bound\n";
      return kExitUsage;
    }
  }

  auto concrete = evi::embed_concrete(ls.pre.memory.substitute(binding));
  if (!concrete) {
    std::cerr << "error: binding does not make the memory concrete\n";
    return kExitUsage;
  }

  interp::ExecConfig cfg;
  cfg.fuel = ls.spec.fuel;
  interp::ExecOutcome outcome =
      interp::run_program(cfg, *concrete, *ls.program, break_at);

  if (outcome.breakpoint_snapshot) {
    std::cout << "breakpoint after statement " << *break_at << ":\n";
    print_memory(std::cout, *outcome.breakpoint_snapshot);
  }
  std::cout << "final memory:\n";
  print_memory(std::cout, outcome.memory);
  return kExitPass;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"germ: formal memory model tools"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen-layout", "generate a layout file");
  std::uint32_t size = 0;
  std::vector<std::string> extra_specials;
  std::string out_path;
  gen->add_option("--size", size, "number of normal blocks")->required();
  gen->add_option("--special", extra_specials,
                  "additional special block name");
  gen->add_option("-o,--out", out_path, "output file")->required();

  auto* check = app.add_subcommand("check", "verify a spec");
  std::string check_spec;
  bool json_output = false;
  check->add_option("--spec", check_spec, "spec file")->required();
  check->add_flag("--json", json_output, "machine-readable report");

  auto* runc = app.add_subcommand("run", "concrete run with bound symbols");
  std::string run_spec;
  std::vector<std::string> binds;
  std::optional<std::size_t> break_at;
  runc->add_option("--spec", run_spec, "spec file")->required();
  runc->add_option("--bind", binds, "symbol binding sym=value");
  runc->add_option("--break", break_at,
                   "dump memory after the Nth top-level statement");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (gen->parsed()) return cmd_gen_layout(size, extra_specials, out_path);
  if (check->parsed()) return cmd_check(check_spec, json_output);
  return cmd_run(run_spec, binds, break_at);
}

}  // namespace germ::cli
