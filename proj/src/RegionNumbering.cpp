// Copyright 2026 The LZ Authors
//
// Licensed under the Apache License v2.0 with LLVM Exceptions.
// See https://llvm.org/LICENSE.txt for license information.
// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception

#include "lz/Passes.h"

#include <unordered_map>

namespace lz::passes {

using namespace lz::ir;

namespace {

constexpr uint64_t kRollingMultiplier = 1000003;

// Tags keep the three operand-number domains apart.
constexpr uint8_t kParamTag = 1;
constexpr uint8_t kLocalTag = 2;
constexpr uint8_t kExternalTag = 3;

uint64_t tagged(uint8_t tag, uint64_t v) {
  Fnv1a h;
  h.addByte(tag);
  h.addU64(v);
  return h.state;
}

bool straightLine(const Region &r) {
  if (r.blocks.size() != 1)
    return false;
  for (const Op &op : r.entry().ops)
    if (!op.regions.empty() || !op.successors.empty())
      return false;
  return true;
}

} // namespace

Expected<ValueNumber, std::string> regionValueNumber(const Func &f,
                                                     const Region &r,
                                                     NumberingCtx &ctx) {
  using R = Expected<ValueNumber, std::string>;
  if (!straightLine(r))
    return R::failure("region is not straight-line");

  std::unordered_map<ValueId, uint64_t> local;
  uint64_t h = 0;
  const Block &b = r.entry();
  for (std::size_t i = 0; i < b.params.size(); ++i) {
    local[b.params[i]] = tagged(kParamTag, i);
    Fnv1a t;
    t.addBytes(toString(f.typeOf(b.params[i])));
    h = h * kRollingMultiplier + t.state;
  }

  auto operandNumber = [&](ValueId v) {
    auto it = local.find(v);
    if (it != local.end())
      return it->second;
    auto [ext, inserted] = ctx.table.emplace(v, 0);
    if (inserted)
      ext->second = tagged(kExternalTag, ctx.nextExternal++);
    return ext->second;
  };

  for (const Op &op : b.ops) {
    Fnv1a n;
    n.addBytes(op.name);
    n.addByte(0);
    for (const auto &[key, value] : op.attrs) {
      n.addBytes(key);
      n.addByte('=');
      n.addBytes(toString(value));
      n.addByte(';');
    }
    for (ValueId res : op.results) {
      n.addBytes(toString(f.typeOf(res)));
      n.addByte(0);
    }
    for (ValueId v : op.operands)
      n.addU64(operandNumber(v));
    uint64_t num = n.state;
    for (ValueId res : op.results)
      local[res] = tagged(kLocalTag, num);
    h = h * kRollingMultiplier + num;
  }
  return h;
}

bool alphaEquivalent(const Func &f, const Region &a, const Region &b) {
  if (!straightLine(a) || !straightLine(b))
    return false;
  const Block &x = a.entry(), &y = b.entry();
  if (x.params.size() != y.params.size() || x.ops.size() != y.ops.size())
    return false;
  std::unordered_map<ValueId, ValueId> map; // x-local -> y-local
  std::unordered_map<ValueId, ValueId> rev;
  auto bind = [&](ValueId p, ValueId q) {
    map[p] = q;
    rev[q] = p;
  };
  for (std::size_t i = 0; i < x.params.size(); ++i) {
    if (f.typeOf(x.params[i]) != f.typeOf(y.params[i]))
      return false;
    bind(x.params[i], y.params[i]);
  }
  for (std::size_t i = 0; i < x.ops.size(); ++i) {
    const Op &p = x.ops[i], &q = y.ops[i];
    if (p.name != q.name || !(p.attrs == q.attrs) ||
        p.operands.size() != q.operands.size() ||
        p.results.size() != q.results.size())
      return false;
    for (std::size_t k = 0; k < p.operands.size(); ++k) {
      ValueId u = p.operands[k], v = q.operands[k];
      auto it = map.find(u);
      if (it != map.end()) {
        if (it->second != v)
          return false;
      } else if (rev.count(v) || u != v) {
        // u is external: v must be the very same external value.
        return false;
      }
    }
    for (std::size_t k = 0; k < p.results.size(); ++k) {
      if (f.typeOf(p.results[k]) != f.typeOf(q.results[k]))
        return false;
      bind(p.results[k], q.results[k]);
    }
  }
  return true;
}

} // namespace lz::passes
