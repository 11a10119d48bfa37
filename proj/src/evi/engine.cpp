#include "germ/evi/engine.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <fstream>
#include <sstream>

#include "germ/ipl/parse.hpp"

namespace germ::evi {

namespace {

using ipl::TypedExpr;
using ipl::TypedStmt;
using ipl::TypedStmtPtr;

// Internal control-flow signals raised when execution must split on a
// symbol or give up.
struct ForkBoolSignal {
  std::uint32_t id;
};
struct ForkNatSignal {
  std::uint32_t id;
};
struct UndecidedSignal {
  std::string reason;
};

void emit(std::vector<interp::ExecEvent>* diagnostics, interp::EventKind kind,
          int stmt_id) {
  if (diagnostics) diagnostics->push_back({kind, stmt_id, std::nullopt});
}

// Operand view for natural-number operations.
struct NatOperand {
  enum class Kind { Conc, Sym, Succ, Invalid } kind = Kind::Invalid;
  std::uint64_t value = 0;  // Conc
  std::uint32_t id = 0;     // Sym / Succ
};

NatOperand nat_operand(const SymData& d) {
  if (const auto* conc = std::get_if<mem::Data>(&d)) {
    const auto* nat = std::get_if<mem::NatData>(conc);
    if (nat && nat->value) {
      return {NatOperand::Kind::Conc, *nat->value, 0};
    }
    return {};
  }
  if (const auto* sym = std::get_if<SymNat>(&d)) {
    return {NatOperand::Kind::Sym, 0, sym->id};
  }
  if (const auto* succ = std::get_if<SymNatSucc>(&d)) {
    return {NatOperand::Kind::Succ, 0, succ->id};
  }
  return {};
}

// Operand view for boolean operations.
struct BoolOperand {
  enum class Kind { Conc, Sym, Invalid } kind = Kind::Invalid;
  bool value = false;
  std::uint32_t id = 0;
};

BoolOperand bool_operand(const SymData& d) {
  if (const auto* conc = std::get_if<mem::Data>(&d)) {
    const auto* b = std::get_if<mem::BoolData>(conc);
    if (b && b->value) return {BoolOperand::Kind::Conc, *b->value, 0};
    return {};
  }
  if (const auto* sym = std::get_if<SymBool>(&d)) {
    return {BoolOperand::Kind::Sym, false, sym->id};
  }
  return {};
}

SymValue conc_nat(const ExecSettings& cfg, std::uint64_t n) {
  return SymValue{mem::Data{mem::NatData{n}}, cfg.env, cfg.blc};
}

SymValue conc_bool(const ExecSettings& cfg, bool b) {
  return SymValue{mem::Data{mem::BoolData{b}}, cfg.env, cfg.blc};
}

std::optional<SymValue> eval_eq_nat(const ExecSettings& cfg,
                                    const NatOperand& a, const NatOperand& b) {
  using K = NatOperand::Kind;
  if (a.kind == K::Invalid || b.kind == K::Invalid) return std::nullopt;
  if (a.kind == K::Conc && b.kind == K::Conc) {
    return conc_bool(cfg, a.value == b.value);
  }
  // Exactly one concrete side, or none.
  const NatOperand& sym = a.kind == K::Conc ? b : a;
  const NatOperand& other = a.kind == K::Conc ? a : b;
  if (other.kind != K::Conc) {
    throw UndecidedSignal{"equality between two symbolic naturals"};
  }
  if (other.value != 0) {
    throw UndecidedSignal{
        "symbolic natural compared against a nonzero literal"};
  }
  if (sym.kind == K::Succ) return conc_bool(cfg, false);
  throw ForkNatSignal{sym.id};
}

std::optional<SymValue> eval_arith(const ExecSettings& cfg, ipl::Bop op,
                                   const NatOperand& a, const NatOperand& b) {
  using K = NatOperand::Kind;
  if (a.kind == K::Invalid || b.kind == K::Invalid) return std::nullopt;
  if (a.kind != K::Conc || b.kind != K::Conc) {
    throw UndecidedSignal{"arithmetic on a symbolic natural"};
  }
  if (op == ipl::Bop::PlusNat) return conc_nat(cfg, a.value + b.value);
  std::uint64_t diff = a.value >= b.value ? a.value - b.value : 0;
  return conc_nat(cfg, diff);
}

std::optional<SymValue> eval_or(const ExecSettings& cfg, const BoolOperand& a,
                                const BoolOperand& b) {
  using K = BoolOperand::Kind;
  if (a.kind == K::Invalid || b.kind == K::Invalid) return std::nullopt;
  if (a.kind == K::Conc && a.value) return conc_bool(cfg, true);
  if (b.kind == K::Conc && b.value) return conc_bool(cfg, true);
  if (a.kind == K::Conc && b.kind == K::Conc) {
    return conc_bool(cfg, a.value || b.value);
  }
  if (a.kind == K::Conc) return SymValue{SymBool{b.id}, cfg.env, cfg.blc};
  if (b.kind == K::Conc) return SymValue{SymBool{a.id}, cfg.env, cfg.blc};
  throw ForkBoolSignal{a.id};
}

std::optional<SymValue> eval_and(const ExecSettings& cfg, const BoolOperand& a,
                                 const BoolOperand& b) {
  using K = BoolOperand::Kind;
  if (a.kind == K::Invalid || b.kind == K::Invalid) return std::nullopt;
  if (a.kind == K::Conc && !a.value) return conc_bool(cfg, false);
  if (b.kind == K::Conc && !b.value) return conc_bool(cfg, false);
  if (a.kind == K::Conc && b.kind == K::Conc) {
    return conc_bool(cfg, a.value && b.value);
  }
  if (a.kind == K::Conc) return SymValue{SymBool{b.id}, cfg.env, cfg.blc};
  if (b.kind == K::Conc) return SymValue{SymBool{a.id}, cfg.env, cfg.blc};
  throw ForkBoolSignal{a.id};
}

std::optional<SymValue> seval(const SymMemory& m, const ExecSettings& cfg,
                              const TypedExpr& e) {
  if (const auto* c = std::get_if<TypedExpr::Const>(&e.node)) {
    auto v = interp::val_to_value(cfg.env, cfg.blc, c->lit);
    if (!v) return std::nullopt;
    return SymValue{v->data, v->env, v->blc};
  }
  if (const auto* var = std::get_if<TypedExpr::Var>(&e.node)) {
    if (!mem::infor_check(cfg.policy, cfg.env, cfg.blc)) return std::nullopt;
    return m.at_label(var->label);
  }
  const auto& binop = std::get<TypedExpr::Binop>(e.node);
  std::optional<SymValue> lhs = seval(m, cfg, *binop.lhs);
  std::optional<SymValue> rhs = seval(m, cfg, *binop.rhs);
  if (!lhs || !rhs) return std::nullopt;
  switch (binop.op) {
    case ipl::Bop::EqNat:
      return eval_eq_nat(cfg, nat_operand(lhs->data), nat_operand(rhs->data));
    case ipl::Bop::PlusNat:
    case ipl::Bop::SubNat:
      return eval_arith(cfg, binop.op, nat_operand(lhs->data),
                        nat_operand(rhs->data));
    case ipl::Bop::OrBool:
      return eval_or(cfg, bool_operand(lhs->data), bool_operand(rhs->data));
    case ipl::Bop::AndBool:
      return eval_and(cfg, bool_operand(lhs->data), bool_operand(rhs->data));
  }
  return std::nullopt;
}

bool throw_flag_set_sym(const SymMemory& m) {
  auto label = m.layout().throw_label();
  if (!label) return false;
  const SymValue& v = m.at_label(*label);
  const auto* conc = std::get_if<mem::Data>(&v.data);
  if (!conc) return false;
  const auto* flag = std::get_if<mem::BoolData>(conc);
  return flag && flag->value == std::optional<bool>(true);
}

// Resolves a condition value: concrete boolean, or a fork demand.
std::optional<bool> cond_value(const SymMemory& m, const ExecSettings& cfg,
                               const TypedExpr& cond) {
  std::optional<SymValue> v = seval(m, cfg, cond);
  if (!v) return std::nullopt;
  if (const auto* sym = std::get_if<SymBool>(&v->data)) {
    throw ForkBoolSignal{sym->id};
  }
  const auto* conc = std::get_if<mem::Data>(&v->data);
  if (!conc) throw UndecidedSignal{"non-boolean condition value"};
  const auto* flag = std::get_if<mem::BoolData>(conc);
  if (!flag || !flag->value) return std::nullopt;
  return *flag->value;
}

SymMemory sexec(const ExecSettings& cfg, std::uint64_t fuel,
                const SymMemory& m, const TypedStmt& s,
                std::vector<interp::ExecEvent>* diagnostics) {
  if (fuel == 0) {
    emit(diagnostics, interp::EventKind::FuelExhausted, s.id);
    return m;
  }
  if (throw_flag_set_sym(m)) return init_mem_sym(m);

  if (std::holds_alternative<TypedStmt::Snil>(s.node)) return m;

  if (std::holds_alternative<TypedStmt::Throw>(s.node)) {
    auto label = m.layout().throw_label();
    assert(label.has_value());
    emit(diagnostics, interp::EventKind::ThrowRaised, s.id);
    SymValue flag{mem::Data{mem::BoolData{true}}, cfg.env, cfg.blc};
    return m.write_label(*label, std::move(flag));
  }

  if (const auto* seq = std::get_if<TypedStmt::Seq>(&s.node)) {
    SymMemory mid = sexec(cfg, fuel - 1, m, *seq->first, diagnostics);
    return sexec(cfg, fuel - 1, mid, *seq->second, diagnostics);
  }

  if (const auto* branch = std::get_if<TypedStmt::If>(&s.node)) {
    std::optional<bool> cond = cond_value(m, cfg, *branch->cond);
    if (!cond) {
      emit(diagnostics, interp::EventKind::SilentReadFailure, s.id);
      return m;
    }
    const TypedStmt& taken =
        *cond ? *branch->then_branch : *branch->else_branch;
    return sexec(cfg, fuel - 1, m, taken, diagnostics);
  }

  if (const auto* loop = std::get_if<TypedStmt::While>(&s.node)) {
    std::optional<bool> cond = cond_value(m, cfg, *loop->cond);
    if (!cond) {
      emit(diagnostics, interp::EventKind::SilentReadFailure, s.id);
      return m;
    }
    if (!*cond) return m;
    TypedStmt again{TypedStmt::Seq{loop->body,
                                   TypedStmtPtr(&s, [](const TypedStmt*) {})},
                    s.id};
    return sexec(cfg, fuel - 1, m, again, diagnostics);
  }

  const auto& assign = std::get<TypedStmt::Assign>(s.node);
  std::optional<SymValue> value = seval(m, cfg, *assign.rhs);
  if (!value) {
    emit(diagnostics, interp::EventKind::SilentReadFailure, s.id);
    return m;
  }
  std::optional<mem::LabelAddress> target = interp::expr_l(*assign.lhs);
  if (!target) {
    emit(diagnostics, interp::EventKind::SilentReadFailure, s.id);
    return m;
  }
  if (!mem::infor_check(cfg.policy, cfg.env, cfg.blc)) return m;
  return m.write_label(*target, std::move(*value));
}

bool contains_throw(const std::vector<interp::ExecEvent>& events) {
  return std::any_of(events.begin(), events.end(), [](const auto& e) {
    return e.kind == interp::EventKind::ThrowRaised;
  });
}

SymMemory apply_pins(const SymMemory& m, const PathCondition& pc) {
  SymMemory out = m;
  for (const Atom& atom : pc.atoms()) {
    switch (atom.kind) {
      case AtomKind::BoolTrue: out = out.pin_bool(atom.sym, true); break;
      case AtomKind::BoolFalse: out = out.pin_bool(atom.sym, false); break;
      case AtomKind::NatZero: out = out.pin_nat_zero(atom.sym); break;
      case AtomKind::NatSucc: out = out.pin_nat_succ(atom.sym); break;
    }
  }
  return out;
}

}  // namespace

Precondition build_precondition(mem::LayoutPtr layout,
                                const std::vector<VarDecl>& vars) {
  Precondition pre{SymMemory::from_concrete(mem::engine_initial(layout)),
                   {},
                   {},
                   {},
                   {}};
  std::uint32_t next_sym = 0;
  const SymValue vacant{mem::v_init().data, mem::v_init().env,
                        mem::v_init().blc};

  for (const VarDecl& decl : vars) {
    // First vacant normal block, scanning from label 0 (allocate).
    std::optional<mem::LabelAddress> label;
    for (std::uint32_t i = 0; i < layout->normal_count(); ++i) {
      mem::LabelAddress candidate{i};
      if (pre.memory.at_label(candidate) == vacant) {
        label = candidate;
        break;
      }
    }
    if (!label) {
      throw VerifyError("cannot allocate a block for variable '" + decl.name +
                        "': memory exhausted");
    }

    try {
      pre.table.declare(decl.name, *label, decl.type);
    } catch (const std::invalid_argument& err) {
      throw VerifyError(err.what());
    }

    SymData data;
    if (const auto* lit = std::get_if<VarDecl::Literal>(&decl.init)) {
      auto v = interp::val_to_value({}, {}, lit->value);
      assert(v.has_value());
      data = v->data;
    } else {
      const auto& sym = std::get<VarDecl::Symbolic>(decl.init);
      if (pre.sym_ids.count(sym.sym_name) != 0) {
        throw VerifyError("symbol '" + sym.sym_name +
                          "' bound to more than one variable");
      }
      std::uint32_t id = next_sym++;
      pre.sym_ids[sym.sym_name] = id;
      pre.sym_names[id] = sym.sym_name;
      pre.sym_types.emplace(id, decl.type);
      if (decl.type == ipl::Ty::boolean()) {
        data = SymBool{id};
      } else {
        data = SymNat{id};
      }
    }
    pre.memory = pre.memory.write_label(
        *label, SymValue{std::move(data), mem::Env{},
                         mem::Blc{mem::Access::Public,
                                  mem::Occupation::Occupied}});
  }
  return pre;
}

std::vector<PathResult> sym_exec(const ExecSettings& cfg, const SymMemory& pre,
                                 const ipl::TypedStmt& program) {
  struct Work {
    PathCondition pc;
    SymMemory start;
  };
  std::deque<Work> queue;
  queue.push_back({PathCondition{}, pre});
  std::vector<PathResult> results;

  while (!queue.empty()) {
    Work w = std::move(queue.front());
    queue.pop_front();
    try {
      std::vector<interp::ExecEvent> diagnostics;
      SymMemory fin = sexec(cfg, cfg.fuel, w.start, program, &diagnostics);
      bool reverted = contains_throw(diagnostics);
      if (throw_flag_set_sym(fin)) fin = init_mem_sym(fin);
      results.push_back(PathResult{std::move(w.pc), std::move(fin), reverted,
                                   false, "", std::move(diagnostics)});
    } catch (const ForkBoolSignal& fork) {
      Work yes{w.pc, w.start.pin_bool(fork.id, true)};
      yes.pc.add({fork.id, AtomKind::BoolTrue});
      Work no{w.pc, w.start.pin_bool(fork.id, false)};
      no.pc.add({fork.id, AtomKind::BoolFalse});
      queue.push_back(std::move(yes));
      queue.push_back(std::move(no));
    } catch (const ForkNatSignal& fork) {
      Work zero{w.pc, w.start.pin_nat_zero(fork.id)};
      zero.pc.add({fork.id, AtomKind::NatZero});
      Work succ{w.pc, w.start.pin_nat_succ(fork.id)};
      succ.pc.add({fork.id, AtomKind::NatSucc});
      queue.push_back(std::move(zero));
      queue.push_back(std::move(succ));
    } catch (const UndecidedSignal& stop) {
      results.push_back(PathResult{std::move(w.pc), w.start, false, true,
                                   stop.reason, {}});
    }
  }

  std::sort(results.begin(), results.end(),
            [](const PathResult& a, const PathResult& b) {
              return a.condition < b.condition;
            });
  return results;
}

std::vector<std::string> loop_labels(const ipl::TypedStmt& program) {
  std::vector<std::string> labels;
  const TypedStmt* cursor = &program;
  int count = 0;
  auto visit = [&](const TypedStmt& s) {
    if (std::holds_alternative<TypedStmt::While>(s.node)) {
      labels.push_back("loop" + std::to_string(++count));
    }
  };
  while (true) {
    if (const auto* seq = std::get_if<TypedStmt::Seq>(&cursor->node)) {
      visit(*seq->first);
      cursor = seq->second.get();
    } else {
      visit(*cursor);
      break;
    }
  }
  return labels;
}

bool condition_satisfied(const PathCondition& pc,
                         const std::map<std::uint32_t, mem::Data>& binding) {
  for (const Atom& atom : pc.atoms()) {
    auto it = binding.find(atom.sym);
    if (it == binding.end()) return false;
    switch (atom.kind) {
      case AtomKind::BoolTrue:
      case AtomKind::BoolFalse: {
        const auto* b = std::get_if<mem::BoolData>(&it->second);
        if (!b || !b->value) return false;
        bool want = atom.kind == AtomKind::BoolTrue;
        if (*b->value != want) return false;
        break;
      }
      case AtomKind::NatZero:
      case AtomKind::NatSucc: {
        const auto* n = std::get_if<mem::NatData>(&it->second);
        if (!n || !n->value) return false;
        bool zero = atom.kind == AtomKind::NatZero;
        if ((*n->value == 0) != zero) return false;
        break;
      }
    }
  }
  return true;
}

namespace {

enum class Tri : std::uint8_t { True, False, Unknown };

Tri tri_and(Tri a, Tri b) {
  if (a == Tri::False || b == Tri::False) return Tri::False;
  if (a == Tri::True && b == Tri::True) return Tri::True;
  return Tri::Unknown;
}

Tri tri_or(Tri a, Tri b) {
  if (a == Tri::True || b == Tri::True) return Tri::True;
  if (a == Tri::False && b == Tri::False) return Tri::False;
  return Tri::Unknown;
}

Tri from_atom(std::optional<AtomKind> pinned, AtomKind yes, AtomKind no) {
  if (!pinned) return Tri::Unknown;
  if (*pinned == yes) return Tri::True;
  if (*pinned == no) return Tri::False;
  return Tri::Unknown;
}

Tri eval_guard(const Guard& g, const PathCondition& pc,
               const std::map<std::string, std::uint32_t>& sym_ids) {
  auto id_of = [&](const std::string& name) -> std::optional<std::uint32_t> {
    auto it = sym_ids.find(name);
    if (it == sym_ids.end()) return std::nullopt;
    return it->second;
  };
  if (const auto* a = std::get_if<Guard::SymIsTrue>(&g.node)) {
    auto id = id_of(a->sym);
    if (!id) return Tri::Unknown;
    return from_atom(pc.lookup(*id), AtomKind::BoolTrue, AtomKind::BoolFalse);
  }
  if (const auto* a = std::get_if<Guard::SymIsFalse>(&g.node)) {
    auto id = id_of(a->sym);
    if (!id) return Tri::Unknown;
    return from_atom(pc.lookup(*id), AtomKind::BoolFalse, AtomKind::BoolTrue);
  }
  if (const auto* a = std::get_if<Guard::NatEqZero>(&g.node)) {
    auto id = id_of(a->sym);
    if (!id) return Tri::Unknown;
    return from_atom(pc.lookup(*id), AtomKind::NatZero, AtomKind::NatSucc);
  }
  if (const auto* a = std::get_if<Guard::NatNeZero>(&g.node)) {
    auto id = id_of(a->sym);
    if (!id) return Tri::Unknown;
    return from_atom(pc.lookup(*id), AtomKind::NatSucc, AtomKind::NatZero);
  }
  if (const auto* both = std::get_if<std::shared_ptr<Guard::And>>(&g.node)) {
    return tri_and(eval_guard((*both)->lhs, pc, sym_ids),
                   eval_guard((*both)->rhs, pc, sym_ids));
  }
  const auto& either = std::get<std::shared_ptr<Guard::Or>>(g.node);
  return tri_or(eval_guard(either->lhs, pc, sym_ids),
                eval_guard(either->rhs, pc, sym_ids));
}

mem::Data lit_data(const ipl::Lit& lit) {
  if (const auto* n = std::get_if<ipl::Lit::VNat>(&lit.node)) {
    return mem::NatData{n->value};
  }
  return mem::BoolData{std::get<ipl::Lit::VBool>(lit.node).value};
}

// Resolves a symbolic payload under the path condition's pins.
SymData resolve(const SymData& d, const PathCondition& pc) {
  if (const auto* b = std::get_if<SymBool>(&d)) {
    auto pinned = pc.lookup(b->id);
    if (pinned == AtomKind::BoolTrue) return mem::Data{mem::BoolData{true}};
    if (pinned == AtomKind::BoolFalse) return mem::Data{mem::BoolData{false}};
    return d;
  }
  if (const auto* n = std::get_if<SymNat>(&d)) {
    auto pinned = pc.lookup(n->id);
    if (pinned == AtomKind::NatZero) {
      return mem::Data{mem::NatData{std::uint64_t{0}}};
    }
    if (pinned == AtomKind::NatSucc) return SymNatSucc{n->id};
    return d;
  }
  return d;
}

Tri eval_read_eq(const Assertion::ReadEq& a, const PathResult& path,
                 const ipl::SymbolTable& table) {
  const auto* entry = table.lookup(a.var);
  if (!entry) return Tri::Unknown;
  SymData actual = resolve(path.memory.at_label(entry->label).data,
                           path.condition);
  mem::Data expected = lit_data(a.literal);
  if (const auto* conc = std::get_if<mem::Data>(&actual)) {
    return *conc == expected ? Tri::True : Tri::False;
  }
  if (std::holds_alternative<SymNatSucc>(actual)) {
    const auto* n = std::get_if<mem::NatData>(&expected);
    if (!n) return Tri::False;  // kind mismatch
    if (n->value == std::optional<std::uint64_t>(0)) return Tri::False;
    return Tri::Unknown;
  }
  if (std::holds_alternative<SymNat>(actual)) {
    if (!std::holds_alternative<mem::NatData>(expected)) return Tri::False;
    return Tri::Unknown;
  }
  // SymBool
  if (!std::holds_alternative<mem::BoolData>(expected)) return Tri::False;
  return Tri::Unknown;
}

Tri eval_frame(const Assertion::FrameExcept& a, const PathResult& path,
               const SymMemory& pre, const ipl::SymbolTable& table) {
  std::vector<mem::LabelAddress> excluded;
  for (const std::string& var : a.vars) {
    const auto* entry = table.lookup(var);
    if (!entry) return Tri::Unknown;
    excluded.push_back(entry->label);
  }
  Tri out = Tri::True;
  for (std::uint32_t i = 0; i < path.memory.layout().normal_count(); ++i) {
    mem::LabelAddress label{i};
    if (std::find(excluded.begin(), excluded.end(), label) != excluded.end()) {
      continue;
    }
    SymValue was = pre.at_label(label);
    SymValue now = path.memory.at_label(label);
    was.data = resolve(was.data, path.condition);
    now.data = resolve(now.data, path.condition);
    if (was == now) continue;
    if (is_concrete(was.data) && is_concrete(now.data)) return Tri::False;
    out = Tri::Unknown;
  }
  return out;
}

Tri eval_assertion(const Assertion& a, const PathResult& path,
                   const SymMemory& pre, const ipl::SymbolTable& table) {
  if (std::holds_alternative<Assertion::Reverted>(a.node)) {
    return path.reverted ? Tri::True : Tri::False;
  }
  if (std::holds_alternative<Assertion::MemoryIsInit>(a.node)) {
    return path.memory == init_mem_sym(path.memory) ? Tri::True : Tri::False;
  }
  if (const auto* read = std::get_if<Assertion::ReadEq>(&a.node)) {
    return eval_read_eq(*read, path, table);
  }
  return eval_frame(std::get<Assertion::FrameExcept>(a.node), path, pre,
                    table);
}

PathStatus tri_status(Tri t) {
  switch (t) {
    case Tri::True: return PathStatus::Pass;
    case Tri::False: return PathStatus::Fail;
    default: return PathStatus::Undecided;
  }
}

std::map<std::string, std::string> minimal_witness(const PathCondition& pc,
                                                   const Precondition& pre) {
  std::map<std::string, std::string> witness;
  for (const auto& [name, id] : pre.sym_ids) {
    bool is_bool = pre.sym_types.at(id) == ipl::Ty::boolean();
    auto pinned = pc.lookup(id);
    if (is_bool) {
      witness[name] = pinned == AtomKind::BoolTrue ? "true" : "false";
    } else {
      witness[name] = pinned == AtomKind::NatSucc ? "1" : "0";
    }
  }
  return witness;
}

// Fills a record's assertion outcomes / status / witness from one case.
void apply_case(PathRecord& record, const AssertCase& acase,
                const PathResult& path, const SymMemory& pre_memory,
                const Precondition& pre) {
  Tri overall = Tri::True;
  for (const Assertion& a : acase.assertions) {
    Tri t = eval_assertion(a, path, pre_memory, pre.table);
    record.assertions.push_back({a.text, tri_status(t)});
    overall = tri_and(overall, t);
  }
  record.status = tri_status(overall);
  if (record.status == PathStatus::Fail) {
    record.witness = minimal_witness(path.condition, pre);
  } else if (record.status == PathStatus::Undecided) {
    record.note = "assertion not decidable on this path";
  }
}

PathRecord dispatch_path(const PathResult& path, const LoadedSpec& ls,
                         const std::string& obligation) {
  PathRecord record;
  record.condition = path.condition;
  record.condition_text =
      render_condition(path.condition, ls.pre.sym_names);
  record.obligation = obligation;
  record.reverted = path.reverted;

  if (path.undecided) {
    record.status = PathStatus::Undecided;
    record.note = path.undecided_reason;
    return record;
  }

  for (std::size_t i = 0; i < ls.spec.cases.size(); ++i) {
    const AssertCase& acase = ls.spec.cases[i];
    if (acase.guard &&
        eval_guard(*acase.guard, path.condition, ls.pre.sym_ids) !=
            Tri::True) {
      continue;
    }
    record.matched_case = static_cast<int>(i);
    record.guard_text = acase.guard_text;
    apply_case(record, acase, path, ls.pre.memory, ls.pre);
    return record;
  }

  record.status = PathStatus::Undecided;
  record.note = "no assertion case matches this path";
  return record;
}

Verdict finish(std::vector<PathRecord> records) {
  Verdict verdict;
  verdict.paths = std::move(records);
  verdict.pass = true;
  for (const PathRecord& r : verdict.paths) {
    if (r.status == PathStatus::Undecided) verdict.undecided = true;
    if (r.status != PathStatus::Pass) verdict.pass = false;
  }
  return verdict;
}

void validate_guard_syms(const Guard& g,
                         const std::map<std::string, std::uint32_t>& ids) {
  auto check = [&](const std::string& name) {
    if (ids.find(name) == ids.end()) {
      throw VerifyError("guard references undeclared symbol '" + name + "'");
    }
  };
  if (const auto* a = std::get_if<Guard::SymIsTrue>(&g.node)) check(a->sym);
  if (const auto* a = std::get_if<Guard::SymIsFalse>(&g.node)) check(a->sym);
  if (const auto* a = std::get_if<Guard::NatEqZero>(&g.node)) check(a->sym);
  if (const auto* a = std::get_if<Guard::NatNeZero>(&g.node)) check(a->sym);
  if (const auto* both = std::get_if<std::shared_ptr<Guard::And>>(&g.node)) {
    validate_guard_syms((*both)->lhs, ids);
    validate_guard_syms((*both)->rhs, ids);
  }
  if (const auto* either = std::get_if<std::shared_ptr<Guard::Or>>(&g.node)) {
    validate_guard_syms((*either)->lhs, ids);
    validate_guard_syms((*either)->rhs, ids);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw VerifyError("cannot open file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

LoadedSpec load_spec(const Spec& spec) {
  auto layout = std::make_shared<const mem::MemoryLayout>(
      layout::load_layout_file(spec.layout_path));
  Precondition pre = build_precondition(layout, spec.vars);
  ipl::StmtPtr ast = ipl::parse_program(read_file(spec.program_path));
  ipl::TypedStmtPtr program = ipl::typecheck(ast, pre.table);

  for (const AssertCase& acase : spec.cases) {
    if (acase.guard) validate_guard_syms(*acase.guard, pre.sym_ids);
  }
  for (const AssertCase& acase : spec.cases) {
    for (const Assertion& a : acase.assertions) {
      if (const auto* read = std::get_if<Assertion::ReadEq>(&a.node)) {
        if (!pre.table.lookup(read->var)) {
          throw VerifyError("assertion references undeclared variable '" +
                            read->var + "'");
        }
      }
    }
  }
  return LoadedSpec{spec, std::move(layout), std::move(pre),
                    std::move(program)};
}

Verdict check_triple(const LoadedSpec& ls) {
  ExecSettings cfg;
  cfg.fuel = ls.spec.fuel;
  std::vector<PathResult> paths =
      sym_exec(cfg, ls.pre.memory, *ls.program);
  std::vector<PathRecord> records;
  records.reserve(paths.size());
  for (const PathResult& path : paths) {
    records.push_back(dispatch_path(path, ls, "triple"));
  }
  return finish(std::move(records));
}

namespace {

// Assumable invariant disjunct: variable pins extracted from read(x)==lit
// assertions. Other assertion forms are checkable afterwards but cannot
// be assumed as a starting state.
struct Disjunct {
  std::vector<std::pair<mem::LabelAddress, mem::Data>> pins;
  const InvariantClause* clause;
};

Disjunct make_disjunct(const InvariantClause& clause,
                       const ipl::SymbolTable& table) {
  Disjunct d{{}, &clause};
  for (const Assertion& a : clause.assertions) {
    const auto* read = std::get_if<Assertion::ReadEq>(&a.node);
    if (!read) {
      throw VerifyError(
          "only read(x) == literal assertions can seed an invariant state");
    }
    const auto* entry = table.lookup(read->var);
    if (!entry) {
      throw VerifyError("invariant references undeclared variable '" +
                        read->var + "'");
    }
    d.pins.push_back({entry->label, lit_data(read->literal)});
  }
  return d;
}

// Havocs every declared variable to a fresh symbol, then applies pins.
SymMemory invariant_state(const Precondition& pre, const Disjunct& d,
                          std::uint32_t* next_sym) {
  SymMemory m = pre.memory;
  for (const auto& [name, entry] : pre.table.entries()) {
    SymData data;
    if (entry.type == ipl::Ty::boolean()) {
      data = SymBool{(*next_sym)++};
    } else {
      data = SymNat{(*next_sym)++};
    }
    m = m.write_label(entry.label,
                      SymValue{std::move(data), mem::Env{},
                               mem::Blc{mem::Access::Public,
                                        mem::Occupation::Occupied}});
  }
  for (const auto& [label, data] : d.pins) {
    SymValue v = m.at_label(label);
    v.data = data;
    m = m.write_label(label, std::move(v));
  }
  return m;
}

Tri invariant_holds(const std::vector<Disjunct>& disjuncts,
                    const PathResult& path, const SymMemory& pre_memory,
                    const ipl::SymbolTable& table) {
  Tri any = Tri::False;
  for (const Disjunct& d : disjuncts) {
    Tri all = Tri::True;
    for (const Assertion& a : d.clause->assertions) {
      all = tri_and(all, eval_assertion(a, path, pre_memory, table));
    }
    any = tri_or(any, all);
  }
  return any;
}

// Truth of the loop guard at a path's pinned starting memory.
std::optional<bool> guard_at_start(const ExecSettings& cfg,
                                   const SymMemory& start,
                                   const PathCondition& pc,
                                   const TypedExpr& cond) {
  SymMemory pinned = apply_pins(start, pc);
  try {
    std::optional<SymValue> v = seval(pinned, cfg, cond);
    if (!v) return std::nullopt;
    const auto* conc = std::get_if<mem::Data>(&v->data);
    if (!conc) return std::nullopt;
    const auto* flag = std::get_if<mem::BoolData>(conc);
    if (!flag || !flag->value) return std::nullopt;
    return *flag->value;
  } catch (const ForkBoolSignal&) {
    return std::nullopt;
  } catch (const ForkNatSignal&) {
    return std::nullopt;
  } catch (const UndecidedSignal&) {
    return std::nullopt;
  }
}

TypedStmtPtr snil() {
  return std::make_shared<TypedStmt>(TypedStmt{TypedStmt::Snil{}, -1});
}

TypedStmtPtr fold_seq(const std::vector<TypedStmtPtr>& stmts) {
  if (stmts.empty()) return snil();
  TypedStmtPtr out = stmts.back();
  for (std::size_t i = stmts.size() - 1; i-- > 0;) {
    out = std::make_shared<TypedStmt>(
        TypedStmt{TypedStmt::Seq{stmts[i], out}, stmts[i]->id});
  }
  return out;
}

void flatten(const TypedStmtPtr& s, std::vector<TypedStmtPtr>* out) {
  if (const auto* seq = std::get_if<TypedStmt::Seq>(&s->node)) {
    out->push_back(seq->first);
    flatten(seq->second, out);
  } else {
    out->push_back(s);
  }
}

PathRecord base_record(const PathResult& path, const Precondition& pre,
                       const std::map<std::uint32_t, std::string>& names,
                       const std::string& obligation) {
  PathRecord record;
  record.condition = path.condition;
  record.condition_text = render_condition(path.condition, names);
  record.obligation = obligation;
  record.reverted = path.reverted;
  (void)pre;
  return record;
}

}  // namespace

Verdict check_with_invariant(const LoadedSpec& ls) {
  if (ls.spec.invariants.empty()) return check_triple(ls);

  const std::string& label = ls.spec.invariants.front().loop_label;
  for (const InvariantClause& clause : ls.spec.invariants) {
    if (clause.loop_label != label) {
      throw VerifyError("invariants for more than one loop are not supported");
    }
  }

  // Locate the labeled loop on the top-level statement spine.
  std::vector<TypedStmtPtr> spine;
  flatten(std::make_shared<TypedStmt>(*ls.program), &spine);
  std::optional<std::size_t> loop_index;
  int loop_count = 0;
  for (std::size_t i = 0; i < spine.size(); ++i) {
    if (std::holds_alternative<TypedStmt::While>(spine[i]->node)) {
      ++loop_count;
      if ("loop" + std::to_string(loop_count) == label) loop_index = i;
    }
  }
  if (!loop_index) {
    throw VerifyError("no top-level loop named '" + label + "'");
  }
  const auto& loop = std::get<TypedStmt::While>(spine[*loop_index]->node);

  std::vector<Disjunct> disjuncts;
  for (const InvariantClause& clause : ls.spec.invariants) {
    disjuncts.push_back(make_disjunct(clause, ls.pre.table));
  }

  ExecSettings cfg;
  cfg.fuel = ls.spec.fuel;
  std::vector<PathRecord> records;

  // Head: the prefix establishes the invariant.
  {
    std::vector<TypedStmtPtr> prefix(spine.begin(),
                                     spine.begin() +
                                         static_cast<std::ptrdiff_t>(
                                             *loop_index));
    TypedStmtPtr head = fold_seq(prefix);
    for (const PathResult& path : sym_exec(cfg, ls.pre.memory, *head)) {
      PathRecord r =
          base_record(path, ls.pre, ls.pre.sym_names, "head");
      if (path.undecided) {
        r.status = PathStatus::Undecided;
        r.note = path.undecided_reason;
      } else {
        Tri t = invariant_holds(disjuncts, path, ls.pre.memory,
                                ls.pre.table);
        r.status = tri_status(t);
        if (r.status == PathStatus::Fail) {
          r.note = "invariant not established at loop entry";
          r.witness = minimal_witness(path.condition, ls.pre);
        }
      }
      records.push_back(std::move(r));
    }
  }

  std::uint32_t next_sym =
      static_cast<std::uint32_t>(ls.pre.sym_ids.size()) + 1000;

  // Step: from any invariant state with the guard true, one body
  // execution re-establishes the invariant.
  for (const Disjunct& d : disjuncts) {
    SymMemory start = invariant_state(ls.pre, d, &next_sym);
    TypedStmt step{TypedStmt::If{loop.cond, loop.body, snil()}, -1};
    for (const PathResult& path : sym_exec(cfg, start, step)) {
      PathRecord r = base_record(path, ls.pre, ls.pre.sym_names, "step");
      if (path.undecided) {
        r.status = PathStatus::Undecided;
        r.note = path.undecided_reason;
        records.push_back(std::move(r));
        continue;
      }
      std::optional<bool> guard =
          guard_at_start(cfg, start, path.condition, *loop.cond);
      if (!guard) {
        r.status = PathStatus::Undecided;
        r.note = "loop guard not decidable on this path";
      } else if (!*guard) {
        r.status = PathStatus::Pass;
        r.note = "guard false: vacuous";
      } else {
        Tri t = invariant_holds(disjuncts, path, start, ls.pre.table);
        r.status = tri_status(t);
        if (r.status == PathStatus::Fail) {
          r.note = "loop body does not preserve the invariant";
        }
      }
      records.push_back(std::move(r));
    }
  }

  // Tail: from any invariant state with the guard false, the remainder
  // satisfies the postcondition cases.
  {
    std::vector<TypedStmtPtr> rest(spine.begin() +
                                       static_cast<std::ptrdiff_t>(
                                           *loop_index + 1),
                                   spine.end());
    TypedStmtPtr suffix = fold_seq(rest);
    for (const Disjunct& d : disjuncts) {
      SymMemory start = invariant_state(ls.pre, d, &next_sym);
      TypedStmt tail{TypedStmt::If{loop.cond, snil(), suffix}, -1};
      for (const PathResult& path : sym_exec(cfg, start, tail)) {
        PathRecord r = base_record(path, ls.pre, ls.pre.sym_names, "tail");
        if (path.undecided) {
          r.status = PathStatus::Undecided;
          r.note = path.undecided_reason;
          records.push_back(std::move(r));
          continue;
        }
        std::optional<bool> guard =
            guard_at_start(cfg, start, path.condition, *loop.cond);
        if (!guard) {
          r.status = PathStatus::Undecided;
          r.note = "loop guard not decidable on this path";
          records.push_back(std::move(r));
          continue;
        }
        if (*guard) {
          r.status = PathStatus::Pass;
          r.note = "guard true: vacuous";
          records.push_back(std::move(r));
          continue;
        }
        bool matched = false;
        for (std::size_t i = 0; i < ls.spec.cases.size(); ++i) {
          const AssertCase& acase = ls.spec.cases[i];
          if (acase.guard &&
              eval_guard(*acase.guard, path.condition, ls.pre.sym_ids) !=
                  Tri::True) {
            continue;
          }
          r.matched_case = static_cast<int>(i);
          r.guard_text = acase.guard_text;
          apply_case(r, acase, path, start, ls.pre);
          matched = true;
          break;
        }
        if (!matched) {
          r.status = PathStatus::Undecided;
          r.note = "no assertion case matches this path";
        }
        records.push_back(std::move(r));
      }
    }
  }

  return finish(std::move(records));
}

}  // namespace germ::evi
