#include "germ/mem/value.hpp"

#include <sstream>

namespace germ::mem {

namespace {

template <typename T>
bool ptr_equal(const std::shared_ptr<const T>& a,
               const std::shared_ptr<const T>& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

}  // namespace

bool operator==(const ArrData& a, const ArrData& b) {
  return a.base == b.base && a.elem_type == b.elem_type &&
         a.length == b.length && ptr_equal(a.init_value, b.init_value);
}

bool operator==(const FunPtrData& a, const FunPtrData& b) {
  return a.addr == b.addr && ptr_equal(a.args, b.args);
}

bool operator==(const CompositeValData& a, const CompositeValData& b) {
  return a.type_name == b.type_name && ptr_equal(a.members, b.members);
}

bool operator==(const Value& a, const Value& b) {
  return a.data == b.data && a.env == b.env && a.blc == b.blc;
}

DataKind data_kind(const Data& d) {
  return static_cast<DataKind>(d.index());
}

const Value& v_init() {
  static const Value v{UndefData{}, Env{},
                       Blc{Access::Public, Occupation::Vacant}};
  return v;
}

Value nat_value(std::optional<std::uint64_t> n, Env env, Blc blc) {
  return Value{NatData{n}, env, blc};
}

Value bool_value(std::optional<bool> b, Env env, Blc blc) {
  return Value{BoolData{b}, env, blc};
}

namespace {

std::string render_opt_label(const std::optional<LabelAddress>& a) {
  if (!a) return "None";
  return (a->reserved ? "reserved#" + std::to_string(a->index)
                      : render_normal_label(a->index));
}

struct DataRenderer {
  std::string operator()(const UndefData&) const { return "Undef"; }
  std::string operator()(const NatData& d) const {
    return d.value ? "Nat(" + std::to_string(*d.value) + ")" : "Nat(None)";
  }
  std::string operator()(const BoolData& d) const {
    if (!d.value) return "Bool(None)";
    return *d.value ? "Bool(true)" : "Bool(false)";
  }
  std::string operator()(const FloatData& d) const {
    if (!d.value) return "Float(None)";
    return "Float(" + std::to_string(d.value->first) + "/" +
           std::to_string(d.value->second) + ")";
  }
  std::string operator()(const StrData& d) const {
    return d.value ? "Str(\"" + *d.value + "\")" : "Str(None)";
  }
  std::string operator()(const ArrData& d) const {
    return "Arr(" + render_normal_label(d.base.index) + ", len " +
           std::to_string(d.length) + ")";
  }
  std::string operator()(const VarPtrData& d) const {
    return "VarPtr(" + render_opt_label(d.addr) + ")";
  }
  std::string operator()(const ParPtrData& d) const {
    return "ParPtr(" + render_opt_label(d.addr) + ")";
  }
  std::string operator()(const FunPtrData& d) const {
    return "FunPtr(" + render_opt_label(d.addr) + ")";
  }
  std::string operator()(const StmtValData& d) const {
    return "Stmt(#" + std::to_string(d.handle) + ")";
  }
  std::string operator()(const CompositeTypeData& d) const {
    return "CompositeType(" + render_normal_label(d.name.index) + ")";
  }
  std::string operator()(const CompositeValData& d) const {
    return "CompositeVal(" + render_normal_label(d.type_name.index) + ")";
  }
};

}  // namespace

std::string render_data(const Data& d) {
  return std::visit(DataRenderer{}, d);
}

std::string render_value(const Value& v) {
  std::ostringstream out;
  out << render_data(v.data);
  out << (v.env.scope == LexScope::Load ? " load" : " local");
  out << (v.env.domain == LexDomain::Global ? " global" : " block");
  out << (v.blc.access == Access::Public ? " public" : " private");
  out << (v.blc.occupation == Occupation::Occupied ? " occupied" : " vacant");
  return out.str();
}

}  // namespace germ::mem
