// Copyright 2026 The LZ Authors
//
// Licensed under the Apache License v2.0 with LLVM Exceptions.
// See https://llvm.org/LICENSE.txt for license information.
// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception
//
// SSA IR with nested regions. Operations own regions, regions own blocks and
// blocks own operations, all by value. Values are function-scoped integer ids
// whose types live in a side table on the function.

#ifndef LZ_IR_H
#define LZ_IR_H

#include "lz/Support.h"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

namespace lz::ir {

//===----------------------------------------------------------------------===//
// Types
//===----------------------------------------------------------------------===//

struct Type {
  enum class Kind : uint8_t { Obj, Int, RgnVal };

  Kind kind = Kind::Obj;
  unsigned width = 0;       // Int only
  std::vector<Type> params; // RgnVal only

  static Type obj() { return Type{}; }
  static Type i(unsigned width) { return Type{Kind::Int, width, {}}; }
  static Type rgnVal(std::vector<Type> params) {
    return Type{Kind::RgnVal, 0, std::move(params)};
  }

  bool isObj() const { return kind == Kind::Obj; }
  bool isInt() const { return kind == Kind::Int; }
  bool isInt(unsigned w) const { return kind == Kind::Int && width == w; }
  bool isRgnVal() const { return kind == Kind::RgnVal; }

  friend bool operator==(const Type &, const Type &) = default;
};

std::string toString(const Type &type);

/// A type is well formed when integer widths are one of 1/8/32/64 and region
/// value parameter lists do not nest region values.
bool isWellFormed(const Type &type);

//===----------------------------------------------------------------------===//
// Attributes
//===----------------------------------------------------------------------===//

struct IntAttr {
  BigInt value;
  friend bool operator==(const IntAttr &, const IntAttr &) = default;
};
struct SymbolAttr {
  std::string name; // without the leading '@'
  friend bool operator==(const SymbolAttr &, const SymbolAttr &) = default;
};
struct IntListAttr {
  std::vector<BigInt> values;
  friend bool operator==(const IntListAttr &, const IntListAttr &) = default;
};
struct FlagAttr {
  friend bool operator==(const FlagAttr &, const FlagAttr &) = default;
};

using Attr = std::variant<IntAttr, SymbolAttr, IntListAttr, FlagAttr>;
using AttrDict = std::map<std::string, Attr, std::less<>>;

/// Symbol names follow `[A-Za-z_][A-Za-z0-9_]*`.
bool isValidSymbol(std::string_view name);

/// Canonical text of an attribute value (`42`, `@f`, `[1, 2]`); flags print
/// as the empty string since only their key is meaningful.
std::string toString(const Attr &attr);

//===----------------------------------------------------------------------===//
// Operations, blocks, regions
//===----------------------------------------------------------------------===//

using ValueId = uint32_t;
inline constexpr ValueId kNoValue = UINT32_MAX;

struct Region;

/// A CFG edge: target block index within the function body plus the values
/// bound to the target's parameters.
struct Successor {
  uint32_t block = 0;
  std::vector<ValueId> args;
};

struct Op {
  std::string name;
  std::vector<ValueId> operands;
  std::vector<ValueId> results;
  AttrDict attrs;
  std::vector<Successor> successors;
  std::vector<Region> regions;

  bool isTerminator() const;

  ValueId result() const { return results.at(0); }

  const Attr *attr(std::string_view key) const;
  std::optional<BigInt> intAttr(std::string_view key) const;
  const std::string *symbolAttr(std::string_view key) const;
  const std::vector<BigInt> *intListAttr(std::string_view key) const;
  bool hasFlag(std::string_view key) const;
};

struct Block {
  std::vector<ValueId> params;
  std::vector<Op> ops;

  bool empty() const { return ops.empty(); }
  const Op &terminator() const { return ops.back(); }
  Op &terminator() { return ops.back(); }
};

struct Region {
  std::vector<Block> blocks;

  Block &entry() { return blocks.front(); }
  const Block &entry() const { return blocks.front(); }
};

static_assert(std::is_nothrow_move_constructible_v<Op>,
              "block pointers into nested regions rely on moves");

//===----------------------------------------------------------------------===//
// Functions and modules
//===----------------------------------------------------------------------===//

enum class DefKind : uint8_t { OpResult, BlockParam, Erased };

struct ValueInfo {
  Type type;
  DefKind def = DefKind::OpResult;
};

struct Func {
  std::string name;
  std::vector<Type> paramTypes;
  Type resultType;
  Region body;
  std::vector<ValueInfo> values;

  ValueId addValue(Type type, DefKind def);
  const Type &typeOf(ValueId v) const { return values.at(v).type; }
  bool hasValue(ValueId v) const {
    return v < values.size() && values[v].def != DefKind::Erased;
  }
  std::size_t numValues() const { return values.size(); }

  /// Creates a func with a single empty entry block whose params match
  /// paramTypes.
  static Func create(std::string name, std::vector<Type> paramTypes,
                     Type resultType);
};

/// A global closure slot, filled before the entry point runs by calling the
/// zero-argument initializer function and storing its result.
struct Global {
  std::string name;
  std::string initializer;
};

struct Module {
  std::vector<Func> funcs;
  std::vector<Global> globals;

  Func *lookupFunc(std::string_view name);
  const Func *lookupFunc(std::string_view name) const;
  const Global *lookupGlobal(std::string_view name) const;
};

//===----------------------------------------------------------------------===//
// Locations and diagnostics
//===----------------------------------------------------------------------===//

/// Position of an op inside a function: [block, op] for top-level ops, with a
/// further [region, block, op] triple per level of nesting.
using OpPath = std::vector<uint32_t>;

struct Location {
  std::string func;
  OpPath path;

  uint32_t blockIndex() const { return path.empty() ? 0 : path[0]; }
  uint32_t opIndex() const { return path.size() < 2 ? 0 : path[1]; }
};

struct Diagnostic {
  enum class Severity : uint8_t { Error, Warning };

  Severity severity = Severity::Error;
  std::string message;
  Location loc;
};

std::string toString(const Diagnostic &diag);

Op *opAt(Func &func, const OpPath &path);
const Op *opAt(const Func &func, const OpPath &path);

/// Preorder walk over every op of a region, including ops nested in regions.
void walk(const Region &region,
          const std::function<void(const Op &, const OpPath &)> &fn);
void walk(Region &region, const std::function<void(Op &, const OpPath &)> &fn);

/// Number of operand and successor-argument references to each value id.
std::vector<uint32_t> countUses(const Func &func);

/// Total op count of a region, nested ops included.
std::size_t countOps(const Region &region);

//===----------------------------------------------------------------------===//
// Builder
//===----------------------------------------------------------------------===//

/// Appends ops to a block. Nested regions are built as standalone Region
/// objects and moved into their op when it is created.
class Builder {
public:
  Builder(Func &func, Block &block) : func_(&func), block_(&block) {}

  Func &func() { return *func_; }
  Block &block() { return *block_; }
  void setBlock(Block &block) { block_ = &block; }

  /// Appends an op with at most one result and returns it (kNoValue when
  /// resultType is empty).
  ValueId create(std::string name, std::vector<ValueId> operands,
                 std::optional<Type> resultType, AttrDict attrs = {},
                 std::vector<Region> regions = {});

  ValueId intConst(const BigInt &value, Type type);

  /// Returns a fresh single-block region with the given parameter types.
  Region makeRegion(const std::vector<Type> &paramTypes);

private:
  Func *func_;
  Block *block_;
};

} // namespace lz::ir

#endif // LZ_IR_H
