#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "germ/mem/layout.hpp"

namespace germ::mem {

enum class LexScope : std::uint8_t { Load, Local };
enum class LexDomain : std::uint8_t { Global, Block };

/// Data environment of a stored value: lexical scope and domain.
struct Env {
  LexScope scope = LexScope::Load;
  LexDomain domain = LexDomain::Global;

  friend bool operator==(const Env&, const Env&) = default;
};

enum class Access : std::uint8_t { Public, Private };
enum class Occupation : std::uint8_t { Occupied, Vacant };

/// Block information: access authority and occupation.
struct Blc {
  Access access = Access::Public;
  Occupation occupation = Occupation::Vacant;

  friend bool operator==(const Blc&, const Blc&) = default;
};

enum class DataKind : std::uint8_t {
  Undef,
  Nat,
  Bool,
  Float,
  Str,
  Arr,
  VarPtr,
  ParPtr,
  FunPtr,
  StmtVal,
  CompositeType,
  CompositeVal,
};

struct Value;

struct UndefData {
  friend bool operator==(const UndefData&, const UndefData&) = default;
};

struct NatData {
  std::optional<std::uint64_t> value;
  friend bool operator==(const NatData&, const NatData&) = default;
};

struct BoolData {
  std::optional<bool> value;
  friend bool operator==(const BoolData&, const BoolData&) = default;
};

/// Inert rational placeholder; equality only, no arithmetic.
struct FloatData {
  std::optional<std::pair<std::int64_t, std::uint64_t>> value;
  friend bool operator==(const FloatData&, const FloatData&) = default;
};

struct StrData {
  std::optional<std::string> value;
  friend bool operator==(const StrData&, const StrData&) = default;
};

struct ArrData {
  LabelAddress base;
  DataKind elem_type = DataKind::Undef;
  std::shared_ptr<const Value> init_value;  // compared by pointee
  std::uint64_t length = 0;

  friend bool operator==(const ArrData&, const ArrData&);
};

struct VarPtrData {
  std::optional<LabelAddress> addr;
  friend bool operator==(const VarPtrData&, const VarPtrData&) = default;
};

struct ParPtrData {
  std::optional<LabelAddress> addr;
  friend bool operator==(const ParPtrData&, const ParPtrData&) = default;
};

struct FunPtrData {
  std::optional<LabelAddress> addr;
  std::shared_ptr<const std::vector<Value>> args;  // null = None

  friend bool operator==(const FunPtrData&, const FunPtrData&);
};

/// Opaque statement handle.
struct StmtValData {
  std::uint64_t handle = 0;
  friend bool operator==(const StmtValData&, const StmtValData&) = default;
};

struct CompositeTypeData {
  LabelAddress name;
  std::vector<std::pair<std::string, DataKind>> members;

  friend bool operator==(const CompositeTypeData&,
                         const CompositeTypeData&) = default;
};

struct CompositeValData {
  LabelAddress type_name;
  std::shared_ptr<const std::vector<Value>> members;  // null = None

  friend bool operator==(const CompositeValData&, const CompositeValData&);
};

using Data = std::variant<UndefData, NatData, BoolData, FloatData, StrData,
                          ArrData, VarPtrData, ParPtrData, FunPtrData,
                          StmtValData, CompositeTypeData, CompositeValData>;

DataKind data_kind(const Data& d);

/// The stored triple <data, env, blc>. Equality is structural over the
/// full triple.
struct Value {
  Data data;
  Env env;
  Blc blc;

  friend bool operator==(const Value&, const Value&);
};

/// Canonical undefined value: Undef payload, default Env, public vacant
/// block.
const Value& v_init();

Value nat_value(std::optional<std::uint64_t> n, Env env = {}, Blc blc = {});
Value bool_value(std::optional<bool> b, Env env = {}, Blc blc = {});

/// Human-readable rendering ("Undef", "Nat(5)", "Bool(true)", ...).
std::string render_data(const Data& d);
std::string render_value(const Value& v);

}  // namespace germ::mem
