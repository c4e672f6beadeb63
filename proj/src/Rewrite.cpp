// Copyright 2026 The LZ Authors
//
// Licensed under the Apache License v2.0 with LLVM Exceptions.
// See https://llvm.org/LICENSE.txt for license information.
// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception

#include "lz/Rewrite.h"
#include "lz/Verifier.h"

namespace lz::ir {

void substitute(Op &op, const std::unordered_map<ValueId, ValueId> &mapping) {
  auto map = [&](ValueId &v) {
    auto it = mapping.find(v);
    if (it != mapping.end())
      v = it->second;
  };
  for (ValueId &v : op.operands)
    map(v);
  for (Successor &s : op.successors)
    for (ValueId &v : s.args)
      map(v);
  for (Region &r : op.regions)
    substitute(r, mapping);
}

void substitute(Region &region,
                const std::unordered_map<ValueId, ValueId> &mapping) {
  for (Block &b : region.blocks)
    for (Op &op : b.ops)
      substitute(op, mapping);
}

void markErased(Func &f, const Op &op) {
  auto erase = [&](ValueId v) {
    if (v < f.values.size())
      f.values[v].def = DefKind::Erased;
  };
  for (ValueId r : op.results)
    erase(r);
  for (const Region &r : op.regions) {
    for (const Block &b : r.blocks)
      for (ValueId p : b.params)
        erase(p);
    walk(r, [&](const Op &inner, const OpPath &) {
      for (ValueId res : inner.results)
        erase(res);
      for (const Region &ir : inner.regions)
        for (const Block &b : ir.blocks)
          for (ValueId p : b.params)
            erase(p);
    });
  }
}

Status replaceAllUses(Func &f, ValueId from, ValueId to) {
  if (!f.hasValue(from) || !f.hasValue(to))
    return Status::failure("unknown value");
  if (f.typeOf(from) != f.typeOf(to))
    return Status::failure("type mismatch: cannot replace " +
                           toString(f.typeOf(from)) + " value with " +
                           toString(f.typeOf(to)) + " value");
  if (from == to)
    return Status::success();

  Region saved = f.body;
  substitute(f.body, {{from, to}});
  for (const Diagnostic &d : verifyDominance(f)) {
    if (d.message == "operand does not dominate its use") {
      f.body = std::move(saved);
      return Status::failure("dominance violation: replacement value does "
                             "not dominate every use");
    }
  }
  return Status::success();
}

Status eraseOp(Func &f, const OpPath &path) {
  Op *op = opAt(f, path);
  if (!op)
    return Status::failure("no operation at the given path");
  if (op->isTerminator())
    return Status::failure("cannot erase a block terminator");
  std::vector<uint32_t> uses = countUses(f);
  for (ValueId r : op->results)
    if (r < uses.size() && uses[r] > 0)
      return Status::failure("operation has uses");

  markErased(f, *op);
  // Locate the parent block and drop the op.
  Block *block = nullptr;
  if (path.size() == 2) {
    block = &f.body.blocks[path[0]];
  } else {
    Op *owner = opAt(f, OpPath(path.begin(), path.end() - 3));
    block = &owner->regions[path[path.size() - 3]].blocks[path[path.size() - 2]];
  }
  block->ops.erase(block->ops.begin() + path.back());
  return Status::success();
}

void pruneValues(Func &f) {
  std::vector<char> defined(f.numValues(), 0);
  auto def = [&](ValueId v) {
    if (v < defined.size())
      defined[v] = 1;
  };
  for (const Block &b : f.body.blocks)
    for (ValueId p : b.params)
      def(p);
  walk(f.body, [&](const Op &op, const OpPath &) {
    for (ValueId r : op.results)
      def(r);
    for (const Region &r : op.regions)
      for (const Block &b : r.blocks)
        for (ValueId p : b.params)
          def(p);
  });
  for (ValueId v = 0; v < f.numValues(); ++v)
    if (!defined[v])
      f.values[v].def = DefKind::Erased;
}

} // namespace lz::ir
