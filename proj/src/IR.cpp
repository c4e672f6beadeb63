// Copyright 2026 The LZ Authors
//
// Licensed under the Apache License v2.0 with LLVM Exceptions.
// See https://llvm.org/LICENSE.txt for license information.
// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception

#include "lz/IR.h"
#include "lz/Dialects.h"

#include <sstream>

namespace lz::ir {

std::string toString(const Type &type) {
  switch (type.kind) {
  case Type::Kind::Obj:
    return "!lp.t";
  case Type::Kind::Int:
    return "i" + std::to_string(type.width);
  case Type::Kind::RgnVal: {
    std::string s = "!rgn.val<";
    for (std::size_t i = 0; i < type.params.size(); ++i) {
      if (i)
        s += ", ";
      s += toString(type.params[i]);
    }
    return s + ">";
  }
  }
  return "<invalid>";
}

bool isWellFormed(const Type &type) {
  switch (type.kind) {
  case Type::Kind::Obj:
    return true;
  case Type::Kind::Int:
    return type.width == 1 || type.width == 8 || type.width == 32 ||
           type.width == 64;
  case Type::Kind::RgnVal:
    for (const Type &p : type.params)
      if (p.isRgnVal() || !isWellFormed(p))
        return false;
    return true;
  }
  return false;
}

bool isValidSymbol(std::string_view name) {
  if (name.empty())
    return false;
  auto head = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  };
  if (!head(name[0]))
    return false;
  for (char c : name.substr(1))
    if (!head(c) && !(c >= '0' && c <= '9'))
      return false;
  return true;
}

std::string toString(const Attr &attr) {
  return std::visit(
      [](const auto &a) -> std::string {
        using A = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<A, IntAttr>) {
          return a.value.str();
        } else if constexpr (std::is_same_v<A, SymbolAttr>) {
          return "@" + a.name;
        } else if constexpr (std::is_same_v<A, IntListAttr>) {
          std::string s = "[";
          for (std::size_t i = 0; i < a.values.size(); ++i) {
            if (i)
              s += ", ";
            s += a.values[i].str();
          }
          return s + "]";
        } else {
          return "";
        }
      },
      attr);
}

//===----------------------------------------------------------------------===//
// Op
//===----------------------------------------------------------------------===//

bool Op::isTerminator() const {
  const dialect::OpSignature *sig = dialect::lookupOp(name);
  return sig && sig->isTerminator;
}

const Attr *Op::attr(std::string_view key) const {
  auto it = attrs.find(key);
  return it == attrs.end() ? nullptr : &it->second;
}

std::optional<BigInt> Op::intAttr(std::string_view key) const {
  if (const Attr *a = attr(key))
    if (const auto *i = std::get_if<IntAttr>(a))
      return i->value;
  return std::nullopt;
}

const std::string *Op::symbolAttr(std::string_view key) const {
  if (const Attr *a = attr(key))
    if (const auto *s = std::get_if<SymbolAttr>(a))
      return &s->name;
  return nullptr;
}

const std::vector<BigInt> *Op::intListAttr(std::string_view key) const {
  if (const Attr *a = attr(key))
    if (const auto *l = std::get_if<IntListAttr>(a))
      return &l->values;
  return nullptr;
}

bool Op::hasFlag(std::string_view key) const {
  const Attr *a = attr(key);
  return a && std::holds_alternative<FlagAttr>(*a);
}

//===----------------------------------------------------------------------===//
// Func / Module
//===----------------------------------------------------------------------===//

ValueId Func::addValue(Type type, DefKind def) {
  values.push_back(ValueInfo{std::move(type), def});
  return static_cast<ValueId>(values.size() - 1);
}

Func Func::create(std::string name, std::vector<Type> paramTypes,
                  Type resultType) {
  Func f;
  f.name = std::move(name);
  f.paramTypes = std::move(paramTypes);
  f.resultType = std::move(resultType);
  f.body.blocks.emplace_back();
  for (const Type &t : f.paramTypes)
    f.body.blocks[0].params.push_back(f.addValue(t, DefKind::BlockParam));
  return f;
}

Func *Module::lookupFunc(std::string_view name) {
  for (Func &f : funcs)
    if (f.name == name)
      return &f;
  return nullptr;
}

const Func *Module::lookupFunc(std::string_view name) const {
  for (const Func &f : funcs)
    if (f.name == name)
      return &f;
  return nullptr;
}

const Global *Module::lookupGlobal(std::string_view name) const {
  for (const Global &g : globals)
    if (g.name == name)
      return &g;
  return nullptr;
}

//===----------------------------------------------------------------------===//
// Diagnostics and traversal
//===----------------------------------------------------------------------===//

std::string toString(const Diagnostic &diag) {
  std::ostringstream os;
  os << (diag.severity == Diagnostic::Severity::Error ? "error" : "warning");
  if (!diag.loc.func.empty()) {
    os << ": @" << diag.loc.func;
    if (!diag.loc.path.empty()) {
      os << " [";
      for (std::size_t i = 0; i < diag.loc.path.size(); ++i)
        os << (i ? "." : "") << diag.loc.path[i];
      os << "]";
    }
  }
  os << ": " << diag.message;
  return os.str();
}

namespace {

template <typename RegionT, typename OpT>
OpT *opAtImpl(RegionT &body, const OpPath &path) {
  if (path.size() < 2 || (path.size() - 2) % 3 != 0)
    return nullptr;
  RegionT *region = &body;
  std::size_t i = 0;
  while (true) {
    if (path[i] >= region->blocks.size())
      return nullptr;
    auto &block = region->blocks[path[i]];
    if (path[i + 1] >= block.ops.size())
      return nullptr;
    OpT *op = &block.ops[path[i + 1]];
    if (i + 2 == path.size())
      return op;
    if (path[i + 2] >= op->regions.size())
      return nullptr;
    region = &op->regions[path[i + 2]];
    i += 3;
  }
}

template <typename RegionT, typename OpT, typename Fn>
void walkImpl(RegionT &region, OpPath &path, const Fn &fn) {
  for (uint32_t b = 0; b < region.blocks.size(); ++b) {
    auto &block = region.blocks[b];
    for (uint32_t o = 0; o < block.ops.size(); ++o) {
      path.push_back(b);
      path.push_back(o);
      OpT &op = block.ops[o];
      fn(op, path);
      for (uint32_t r = 0; r < op.regions.size(); ++r) {
        path.push_back(r);
        walkImpl<RegionT, OpT, Fn>(op.regions[r], path, fn);
        path.pop_back();
      }
      path.pop_back();
      path.pop_back();
    }
  }
}

} // namespace

Op *opAt(Func &func, const OpPath &path) {
  return opAtImpl<Region, Op>(func.body, path);
}

const Op *opAt(const Func &func, const OpPath &path) {
  return opAtImpl<const Region, const Op>(func.body, path);
}

void walk(const Region &region,
          const std::function<void(const Op &, const OpPath &)> &fn) {
  OpPath path;
  walkImpl<const Region, const Op>(region, path, fn);
}

void walk(Region &region, const std::function<void(Op &, const OpPath &)> &fn) {
  OpPath path;
  walkImpl<Region, Op>(region, path, fn);
}

std::vector<uint32_t> countUses(const Func &func) {
  std::vector<uint32_t> uses(func.numValues(), 0);
  walk(func.body, [&](const Op &op, const OpPath &) {
    for (ValueId v : op.operands)
      if (v < uses.size())
        ++uses[v];
    for (const Successor &s : op.successors)
      for (ValueId v : s.args)
        if (v < uses.size())
          ++uses[v];
  });
  return uses;
}

std::size_t countOps(const Region &region) {
  std::size_t n = 0;
  walk(region, [&](const Op &, const OpPath &) { ++n; });
  return n;
}

//===----------------------------------------------------------------------===//
// Builder
//===----------------------------------------------------------------------===//

ValueId Builder::create(std::string name, std::vector<ValueId> operands,
                        std::optional<Type> resultType, AttrDict attrs,
                        std::vector<Region> regions) {
  Op op;
  op.name = std::move(name);
  op.operands = std::move(operands);
  op.attrs = std::move(attrs);
  op.regions = std::move(regions);
  ValueId result = kNoValue;
  if (resultType) {
    result = func_->addValue(std::move(*resultType), DefKind::OpResult);
    op.results.push_back(result);
  }
  block_->ops.push_back(std::move(op));
  return result;
}

ValueId Builder::intConst(const BigInt &value, Type type) {
  return create("lp.int", {}, std::move(type),
                AttrDict{{"value", IntAttr{value}}});
}

Region Builder::makeRegion(const std::vector<Type> &paramTypes) {
  Region region;
  region.blocks.emplace_back();
  for (const Type &t : paramTypes)
    region.blocks[0].params.push_back(func_->addValue(t, DefKind::BlockParam));
  return region;
}

} // namespace lz::ir
