// Copyright 2026 The LZ Authors
//
// Licensed under the Apache License v2.0 with LLVM Exceptions.
// See https://llvm.org/LICENSE.txt for license information.
// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception

#include "lz/Lowering.h"
#include "lz/Rewrite.h"

namespace lz::lower {

using namespace lz::ir;

namespace {

class RgnLowering {
public:
  explicit RgnLowering(Func &f) : f_(f) {}

  void run() {
    for (Block &b : f_.body.blocks)
      b = lowerBlock(std::move(b), kNoValue);
  }

private:
  ValueId fresh(Type t) { return f_.addValue(std::move(t), DefKind::OpResult); }

  /// `target` is the region value jumps in this block resolve to.
  Block lowerBlock(Block in, ValueId target) {
    Block out;
    out.params = std::move(in.params);
    for (Op &op : in.ops)
      lowerOp(std::move(op), target, out);
    return out;
  }

  Region wrap(Region r, ValueId target) {
    Region out;
    for (Block &b : r.blocks)
      out.blocks.push_back(lowerBlock(std::move(b), target));
    return out;
  }

  void lowerOp(Op op, ValueId target, Block &out) {
    if (op.name == "lp.switch")
      return lowerSwitch(std::move(op), target, out);
    if (op.name == "lp.joinpoint")
      return lowerJoinpoint(std::move(op), target, out);
    if (op.name == "lp.jump") {
      Op run;
      run.name = "rgn.run";
      run.operands.push_back(target);
      for (ValueId v : op.operands)
        run.operands.push_back(v);
      out.ops.push_back(std::move(run));
      return;
    }
    for (Region &r : op.regions)
      r = wrap(std::move(r), target);
    out.ops.push_back(std::move(op));
  }

  void lowerSwitch(Op op, ValueId target, Block &out) {
    ValueId scrutinee = op.operands[0];
    std::vector<BigInt> cases = *op.intListAttr("cases");
    Type armType = Type::rgnVal({});

    std::vector<ValueId> arms;
    for (Region &r : op.regions) {
      Op val;
      val.name = "rgn.val";
      val.regions.push_back(wrap(std::move(r), target));
      ValueId v = fresh(armType);
      val.results.push_back(v);
      out.ops.push_back(std::move(val));
      arms.push_back(v);
    }

    ValueId chosen;
    if (arms.size() == 1) {
      chosen = arms[0];
    } else if (arms.size() == 2) {
      Op lit;
      lit.name = "lp.int";
      lit.attrs.emplace("value", IntAttr{cases[0]});
      ValueId c = fresh(f_.typeOf(scrutinee));
      lit.results.push_back(c);
      out.ops.push_back(std::move(lit));

      Op cmp;
      cmp.name = "cmp.eq";
      cmp.operands = {scrutinee, c};
      ValueId eq = fresh(Type::i(1));
      cmp.results.push_back(eq);
      out.ops.push_back(std::move(cmp));

      Op sel;
      sel.name = "select";
      sel.operands = {eq, arms[0], arms[1]};
      chosen = fresh(armType);
      sel.results.push_back(chosen);
      out.ops.push_back(std::move(sel));
    } else {
      Op sw;
      sw.name = "switch";
      sw.operands.push_back(scrutinee);
      for (ValueId a : arms)
        sw.operands.push_back(a);
      sw.attrs.emplace("cases", IntListAttr{cases});
      chosen = fresh(armType);
      sw.results.push_back(chosen);
      out.ops.push_back(std::move(sw));
    }

    Op run;
    run.name = "rgn.run";
    run.operands.push_back(chosen);
    out.ops.push_back(std::move(run));
  }

  void lowerJoinpoint(Op op, ValueId target, Block &out) {
    Region &body = op.regions[0];
    std::vector<Type> params;
    for (ValueId p : body.entry().params)
      params.push_back(f_.typeOf(p));

    // Jumps inside the body still refer to the enclosing joinpoint.
    Op val;
    val.name = "rgn.val";
    val.regions.push_back(wrap(std::move(body), target));
    ValueId jp = fresh(Type::rgnVal(params));
    val.results.push_back(jp);
    out.ops.push_back(std::move(val));

    for (Op &inner : op.regions[1].entry().ops)
      lowerOp(std::move(inner), jp, out);
  }

  Func &f_;
};

} // namespace

Module lowerLpToRgn(const Module &m) {
  Module out = m;
  for (Func &f : out.funcs) {
    RgnLowering(f).run();
    pruneValues(f);
  }
  return out;
}

} // namespace lz::lower
