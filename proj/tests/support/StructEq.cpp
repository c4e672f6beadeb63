// Copyright 2026 The LZ Authors
//
// Licensed under the Apache License v2.0 with LLVM Exceptions.
// See https://llvm.org/LICENSE.txt for license information.
// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception

#include "StructEq.h"

#include <unordered_map>

namespace lz::test {

using namespace lz::ir;

namespace {

struct Matcher {
  const Func &fa;
  const Func &fb;
  std::unordered_map<ValueId, ValueId> ab, ba;
  std::string diff;

  bool fail(std::string why) {
    diff = "@" + fa.name + ": " + why;
    return false;
  }

  bool bind(ValueId a, ValueId b) {
    if (!fa.hasValue(a) || !fb.hasValue(b))
      return fail("invalid value id");
    if (fa.typeOf(a) != fb.typeOf(b))
      return fail("value types differ");
    if (ab.count(a) || ba.count(b))
      return fail("value bound twice");
    ab[a] = b;
    ba[b] = a;
    return true;
  }

  bool same(ValueId a, ValueId b) {
    auto it = ab.find(a);
    auto jt = ba.find(b);
    if (it == ab.end() && jt == ba.end())
      return bind(a, b); // forward reference
    if (it == ab.end() || it->second != b)
      return fail("operands differ");
    return true;
  }

  bool values(const std::vector<ValueId> &a, const std::vector<ValueId> &b) {
    if (a.size() != b.size())
      return fail("operand counts differ");
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!same(a[i], b[i]))
        return false;
    return true;
  }

  bool params(const Block &a, const Block &b) {
    if (a.params.size() != b.params.size())
      return fail("block parameter counts differ");
    for (std::size_t i = 0; i < a.params.size(); ++i) {
      auto it = ab.find(a.params[i]);
      if (it != ab.end()) {
        if (it->second != b.params[i])
          return fail("block parameters differ");
      } else if (!bind(a.params[i], b.params[i])) {
        return false;
      }
    }
    return true;
  }

  bool op(const Op &a, const Op &b) {
    if (a.name != b.name)
      return fail("op names differ: " + a.name + " vs " + b.name);
    if (!(a.attrs == b.attrs))
      return fail("attributes of " + a.name + " differ");
    if (a.results.size() != b.results.size())
      return fail("result counts of " + a.name + " differ");
    if (!values(a.operands, b.operands))
      return false;
    if (a.successors.size() != b.successors.size())
      return fail("successor counts differ");
    for (std::size_t i = 0; i < a.successors.size(); ++i) {
      if (a.successors[i].block != b.successors[i].block)
        return fail("successor targets differ");
      if (!values(a.successors[i].args, b.successors[i].args))
        return false;
    }
    for (std::size_t i = 0; i < a.results.size(); ++i)
      if (!same(a.results[i], b.results[i]))
        return false;
    if (a.regions.size() != b.regions.size())
      return fail("region counts of " + a.name + " differ");
    for (std::size_t i = 0; i < a.regions.size(); ++i)
      if (!region(a.regions[i], b.regions[i]))
        return false;
    return true;
  }

  bool region(const Region &a, const Region &b) {
    if (a.blocks.size() != b.blocks.size())
      return fail("block counts differ");
    for (std::size_t i = 0; i < a.blocks.size(); ++i) {
      const Block &x = a.blocks[i], &y = b.blocks[i];
      if (!params(x, y))
        return false;
      if (x.ops.size() != y.ops.size())
        return fail("op counts differ");
      for (std::size_t j = 0; j < x.ops.size(); ++j)
        if (!op(x.ops[j], y.ops[j]))
          return false;
    }
    return true;
  }
};

} // namespace

std::optional<std::string> structuralDiff(const Func &a, const Func &b) {
  if (a.name != b.name)
    return "function names differ: @" + a.name + " vs @" + b.name;
  if (a.paramTypes != b.paramTypes || a.resultType != b.resultType)
    return "@" + a.name + ": signatures differ";
  Matcher m{a, b, {}, {}, {}};
  if (!m.region(a.body, b.body))
    return m.diff;
  return std::nullopt;
}

std::optional<std::string> structuralDiff(const Module &a, const Module &b) {
  if (a.globals.size() != b.globals.size())
    return "global counts differ";
  for (std::size_t i = 0; i < a.globals.size(); ++i)
    if (a.globals[i].name != b.globals[i].name ||
        a.globals[i].initializer != b.globals[i].initializer)
      return "globals differ";
  if (a.funcs.size() != b.funcs.size())
    return "function counts differ";
  for (std::size_t i = 0; i < a.funcs.size(); ++i)
    if (auto d = structuralDiff(a.funcs[i], b.funcs[i]))
      return d;
  return std::nullopt;
}

} // namespace lz::test
