// Copyright 2026 The LZ Authors
//
// Licensed under the Apache License v2.0 with LLVM Exceptions.
// See https://llvm.org/LICENSE.txt for license information.
// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception

#include "lz/Lowering.h"
#include "lz/Rewrite.h"

#include <deque>
#include <unordered_map>

namespace lz::lower {

using namespace lz::ir;

namespace {

struct LoweringError {
  std::string message;
};

class CfgLowering {
public:
  explicit CfgLowering(const Func &src) : src_(src) {}

  Func run() {
    out_.name = src_.name;
    out_.paramTypes = src_.paramTypes;
    out_.resultType = src_.resultType;
    out_.values = src_.values;
    if (src_.body.blocks.size() != 1) {
      // Already flat.
      out_.body = src_.body;
      return std::move(out_);
    }

    out_.body.blocks.emplace_back();
    out_.body.blocks[0].params = src_.body.entry().params;
    work_.push_back({&src_.body.entry(), 0});
    while (!work_.empty()) {
      auto [block, index] = work_.front();
      work_.pop_front();
      emitBlock(*block, index);
    }
    pruneValues(out_);
    return std::move(out_);
  }

private:
  uint32_t newBlock(std::vector<ValueId> params) {
    out_.body.blocks.emplace_back();
    out_.body.blocks.back().params = std::move(params);
    return static_cast<uint32_t>(out_.body.blocks.size() - 1);
  }

  uint32_t materialize(const Region &r) {
    auto it = materialized_.find(&r);
    if (it != materialized_.end())
      return it->second;
    uint32_t b = newBlock(r.entry().params);
    materialized_.emplace(&r, b);
    work_.push_back({&r.entry(), b});
    return b;
  }

  const Op &chooser(ValueId v) {
    auto it = choosers_.find(v);
    if (it == choosers_.end())
      throw LoweringError{"@" + src_.name +
                          ": region value does not resolve to rgn.val, "
                          "select or switch"};
    return *it->second;
  }

  /// Returns a successor dispatching region value `v` with `args`. Nested
  /// choosers get an intermediate block holding the inner branch.
  Successor edge(ValueId v, const std::vector<ValueId> &args) {
    const Op &op = chooser(v);
    if (op.name == "rgn.val")
      return Successor{materialize(op.regions[0]), args};
    uint32_t mid = newBlock({});
    Op term = dispatch(op, args);
    out_.body.blocks[mid].ops.push_back(std::move(term));
    return Successor{mid, {}};
  }

  Op dispatch(const Op &op, const std::vector<ValueId> &args) {
    Op term;
    if (op.name == "rgn.val") {
      term.name = "br";
      term.successors.push_back(Successor{materialize(op.regions[0]), args});
    } else if (op.name == "select") {
      term.name = "cond_br";
      term.operands.push_back(op.operands[0]);
      term.successors.push_back(edge(op.operands[1], args));
      term.successors.push_back(edge(op.operands[2], args));
    } else {
      term.name = "switch_br";
      term.operands.push_back(op.operands[0]);
      term.attrs = op.attrs;
      for (std::size_t i = 1; i < op.operands.size(); ++i)
        term.successors.push_back(edge(op.operands[i], args));
    }
    return term;
  }

  void emitBlock(const Block &src, uint32_t index) {
    std::vector<Op> ops;
    for (const Op &op : src.ops) {
      if (op.name == "lp.switch" || op.name == "lp.joinpoint" ||
          op.name == "lp.jump")
        throw LoweringError{"@" + src_.name + ": '" + op.name +
                            "' must be lowered to rgn first"};
      bool regionTyped = !op.results.empty() &&
                         src_.typeOf(op.result()).isRgnVal();
      if (op.name == "rgn.val" ||
          (regionTyped && (op.name == "select" || op.name == "switch"))) {
        choosers_[op.result()] = &op;
        continue;
      }
      if (op.name == "rgn.run") {
        std::vector<ValueId> args(op.operands.begin() + 1, op.operands.end());
        ops.push_back(dispatch(chooser(op.operands[0]), args));
        continue;
      }
      Op copy = op;
      if (copy.name == "lp.return")
        copy.name = "ret";
      if (!copy.regions.empty())
        throw LoweringError{"@" + src_.name + ": unexpected nested region in '" +
                            op.name + "'"};
      ops.push_back(std::move(copy));
    }
    // `dispatch` may have appended blocks; index stays valid.
    out_.body.blocks[index].ops = std::move(ops);
  }

  const Func &src_;
  Func out_;
  std::deque<std::pair<const Block *, uint32_t>> work_;
  std::unordered_map<const Region *, uint32_t> materialized_;
  std::unordered_map<ValueId, const Op *> choosers_;
};

} // namespace

Expected<Module, std::string> lowerRgnToCfg(const Module &m) {
  using R = Expected<Module, std::string>;
  Module out;
  out.globals = m.globals;
  try {
    for (const Func &f : m.funcs)
      out.funcs.push_back(CfgLowering(f).run());
  } catch (LoweringError &e) {
    return R::failure(e.message);
  }
  return out;
}

} // namespace lz::lower
