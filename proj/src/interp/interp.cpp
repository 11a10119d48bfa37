#include "germ/interp/interp.hpp"

#include <cassert>

namespace germ::interp {

namespace {

using ipl::TypedExpr;
using ipl::TypedStmt;
using ipl::TypedStmtPtr;
using mem::MemoryState;
using mem::Value;

const mem::NatData* nat_payload(const std::optional<Value>& v) {
  if (!v) return nullptr;
  return std::get_if<mem::NatData>(&v->data);
}

const mem::BoolData* bool_payload(const std::optional<Value>& v) {
  if (!v) return nullptr;
  return std::get_if<mem::BoolData>(&v->data);
}

void emit(std::vector<ExecEvent>* diagnostics, EventKind kind, int stmt_id) {
  if (diagnostics) diagnostics->push_back({kind, stmt_id, std::nullopt});
}

}  // namespace

std::optional<Value> val_to_value(const mem::Env& env, const mem::Blc& blc,
                                  const ipl::Lit& lit) {
  if (const auto* n = std::get_if<ipl::Lit::VNat>(&lit.node)) {
    return mem::nat_value(n->value, env, blc);
  }
  return mem::bool_value(std::get<ipl::Lit::VBool>(lit.node).value, env, blc);
}

std::optional<mem::LabelAddress> expr_l(const TypedExpr& e) {
  if (const auto* var = std::get_if<TypedExpr::Var>(&e.node)) {
    return var->label;
  }
  return std::nullopt;
}

std::optional<Value> eqb_val(const ExecConfig& cfg,
                             const std::optional<Value>& a,
                             const std::optional<Value>& b) {
  const auto* na = nat_payload(a);
  const auto* nb = nat_payload(b);
  if (!na || !nb || !na->value || !nb->value) return std::nullopt;
  return mem::bool_value(*na->value == *nb->value, cfg.env, cfg.blc);
}

std::optional<Value> plus_val(const ExecConfig& cfg,
                              const std::optional<Value>& a,
                              const std::optional<Value>& b) {
  const auto* na = nat_payload(a);
  const auto* nb = nat_payload(b);
  if (!na || !nb || !na->value || !nb->value) return std::nullopt;
  return mem::nat_value(*na->value + *nb->value, cfg.env, cfg.blc);
}

std::optional<Value> sub_val(const ExecConfig& cfg,
                             const std::optional<Value>& a,
                             const std::optional<Value>& b) {
  const auto* na = nat_payload(a);
  const auto* nb = nat_payload(b);
  if (!na || !nb || !na->value || !nb->value) return std::nullopt;
  std::uint64_t diff =
      *na->value >= *nb->value ? *na->value - *nb->value : 0;  // truncated
  return mem::nat_value(diff, cfg.env, cfg.blc);
}

std::optional<Value> orb_val(const ExecConfig& cfg,
                             const std::optional<Value>& a,
                             const std::optional<Value>& b) {
  const auto* ba = bool_payload(a);
  const auto* bb = bool_payload(b);
  if (!ba || !bb || !ba->value || !bb->value) return std::nullopt;
  return mem::bool_value(*ba->value || *bb->value, cfg.env, cfg.blc);
}

std::optional<Value> andb_val(const ExecConfig& cfg,
                              const std::optional<Value>& a,
                              const std::optional<Value>& b) {
  const auto* ba = bool_payload(a);
  const auto* bb = bool_payload(b);
  if (!ba || !bb || !ba->value || !bb->value) return std::nullopt;
  return mem::bool_value(*ba->value && *bb->value, cfg.env, cfg.blc);
}

std::optional<Value> expr_r(const MemoryState& m, const ExecConfig& cfg,
                            const TypedExpr& e) {
  if (const auto* c = std::get_if<TypedExpr::Const>(&e.node)) {
    return val_to_value(cfg.env, cfg.blc, c->lit);
  }
  if (const auto* var = std::get_if<TypedExpr::Var>(&e.node)) {
    return mem::read_chck(m, cfg.policy, cfg.env, cfg.blc, var->label);
  }
  const auto& binop = std::get<TypedExpr::Binop>(e.node);
  std::optional<Value> lhs = expr_r(m, cfg, *binop.lhs);
  std::optional<Value> rhs = expr_r(m, cfg, *binop.rhs);
  switch (binop.op) {
    case ipl::Bop::EqNat: return eqb_val(cfg, lhs, rhs);
    case ipl::Bop::PlusNat: return plus_val(cfg, lhs, rhs);
    case ipl::Bop::SubNat: return sub_val(cfg, lhs, rhs);
    case ipl::Bop::OrBool: return orb_val(cfg, lhs, rhs);
    case ipl::Bop::AndBool: return andb_val(cfg, lhs, rhs);
  }
  return std::nullopt;
}

bool throw_flag_set(const MemoryState& m) {
  auto label = m.layout().throw_label();
  if (!label) return false;
  Value v = mem::read_dir(m, *label);
  const auto* flag = std::get_if<mem::BoolData>(&v.data);
  return flag && flag->value == std::optional<bool>(true);
}

namespace {

MemoryState exec_impl(const ExecConfig& cfg, std::uint64_t fuel,
                      const MemoryState& m, const TypedStmt& s,
                      std::vector<ExecEvent>* diagnostics) {
  if (fuel == 0) {
    emit(diagnostics, EventKind::FuelExhausted, s.id);
    return m;
  }
  if (throw_flag_set(m)) return mem::init_mem(m);

  if (std::holds_alternative<TypedStmt::Snil>(s.node)) return m;

  if (std::holds_alternative<TypedStmt::Throw>(s.node)) {
    auto label = m.layout().throw_label();
    assert(label.has_value());
    emit(diagnostics, EventKind::ThrowRaised, s.id);
    return mem::write_dir(m, *label, mem::bool_value(true, cfg.env, cfg.blc));
  }

  if (const auto* seq = std::get_if<TypedStmt::Seq>(&s.node)) {
    MemoryState mid = exec_impl(cfg, fuel - 1, m, *seq->first, diagnostics);
    return exec_impl(cfg, fuel - 1, mid, *seq->second, diagnostics);
  }

  if (const auto* branch = std::get_if<TypedStmt::If>(&s.node)) {
    std::optional<Value> cond = expr_r(m, cfg, *branch->cond);
    if (!cond) {
      emit(diagnostics, EventKind::SilentReadFailure, s.id);
      return m;
    }
    const auto* flag = std::get_if<mem::BoolData>(&cond->data);
    // Typed progress: a typechecked condition can only be Bool.
    assert(flag != nullptr);
    if (!flag || !flag->value) {
      emit(diagnostics, EventKind::SilentReadFailure, s.id);
      return m;
    }
    const TypedStmt& taken =
        *flag->value ? *branch->then_branch : *branch->else_branch;
    return exec_impl(cfg, fuel - 1, m, taken, diagnostics);
  }

  if (const auto* loop = std::get_if<TypedStmt::While>(&s.node)) {
    // One-step desugaring: if (cond) { body; self } else skip.
    std::optional<Value> cond = expr_r(m, cfg, *loop->cond);
    if (!cond) {
      emit(diagnostics, EventKind::SilentReadFailure, s.id);
      return m;
    }
    const auto* flag = std::get_if<mem::BoolData>(&cond->data);
    assert(flag != nullptr);
    if (!flag || !flag->value) {
      emit(diagnostics, EventKind::SilentReadFailure, s.id);
      return m;
    }
    if (!*flag->value) return m;
    TypedStmt again{TypedStmt::Seq{loop->body,
                                   TypedStmtPtr(&s, [](const TypedStmt*) {})},
                    s.id};
    return exec_impl(cfg, fuel - 1, m, again, diagnostics);
  }

  const auto& assign = std::get<TypedStmt::Assign>(s.node);
  std::optional<Value> value = expr_r(m, cfg, *assign.rhs);
  if (!value) {
    emit(diagnostics, EventKind::SilentReadFailure, s.id);
    return m;
  }
  std::optional<mem::LabelAddress> target = expr_l(*assign.lhs);
  if (!target) {
    emit(diagnostics, EventKind::SilentReadFailure, s.id);
    return m;
  }
  return mem::write_chck(m, cfg.policy, cfg.env, cfg.blc, *target,
                         std::move(*value))
      .second;
}

void flatten_spine(const TypedStmtPtr& s, std::vector<TypedStmtPtr>* out) {
  if (const auto* seq = std::get_if<TypedStmt::Seq>(&s->node)) {
    out->push_back(seq->first);
    flatten_spine(seq->second, out);
  } else {
    out->push_back(s);
  }
}

}  // namespace

MemoryState exec(const ExecConfig& cfg, const MemoryState& m,
                 const TypedStmt& s, std::vector<ExecEvent>* diagnostics) {
  return exec_impl(cfg, cfg.fuel, m, s, diagnostics);
}

ExecOutcome run_program(const ExecConfig& cfg, const MemoryState& m,
                        const ipl::TypedStmt& program,
                        std::optional<std::size_t> breakpoint) {
  std::vector<ExecEvent> diagnostics;
  MemoryState final = exec(cfg, m, program, &diagnostics);
  std::optional<MemoryState> snapshot;

  if (breakpoint) {
    auto shared = std::make_shared<TypedStmt>(program);
    std::vector<TypedStmtPtr> spine;
    flatten_spine(shared, &spine);
    std::size_t count = std::min(*breakpoint, spine.size());
    TypedStmtPtr prefix;
    if (count == 0) {
      prefix = std::make_shared<TypedStmt>(TypedStmt{TypedStmt::Snil{}, -1});
    } else {
      prefix = spine[count - 1];
      for (std::size_t i = count - 1; i-- > 0;) {
        prefix = std::make_shared<TypedStmt>(
            TypedStmt{TypedStmt::Seq{spine[i], prefix}, spine[i]->id});
      }
    }
    snapshot = exec(cfg, m, *prefix, nullptr);
    diagnostics.push_back(
        {EventKind::BreakpointDump, prefix->id, breakpoint});
  }

  if (throw_flag_set(final)) {
    final = mem::init_mem(final);
  }
  return ExecOutcome{std::move(final), std::move(diagnostics),
                     std::move(snapshot)};
}

}  // namespace germ::interp
