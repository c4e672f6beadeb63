// Copyright 2026 The LZ Authors
//
// Licensed under the Apache License v2.0 with LLVM Exceptions.
// See https://llvm.org/LICENSE.txt for license information.
// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception

#include "lz/Passes.h"
#include "lz/Dialects.h"
#include "lz/Interp.h"
#include "lz/Rewrite.h"

#include <map>
#include <optional>
#include <unordered_map>

namespace lz::passes {

using namespace lz::ir;

namespace {

bool isPure(const Op &op) {
  const dialect::OpSignature *sig = dialect::lookupOp(op.name);
  return sig && sig->pure && !sig->isTerminator;
}

/// Resolves chains a -> b -> c in a replacement map.
ValueId resolve(const std::unordered_map<ValueId, ValueId> &map, ValueId v) {
  auto it = map.find(v);
  while (it != map.end()) {
    v = it->second;
    it = map.find(v);
  }
  return v;
}

void applyReplacements(Func &f, std::unordered_map<ValueId, ValueId> map) {
  if (map.empty())
    return;
  for (auto &[from, to] : map)
    to = resolve(map, to);
  substitute(f.body, map);
}

/// Rewrites `op` in place into `lp.int value`, keeping its result.
void becomeConstant(Op &op, const BigInt &value) {
  op.name = "lp.int";
  op.operands.clear();
  op.attrs.clear();
  op.attrs.emplace("value", IntAttr{value});
}

/// Defining op of every op result, by value id. Pointers are only valid
/// until the next structural change.
std::unordered_map<ValueId, const Op *> definingOps(const Func &f) {
  std::unordered_map<ValueId, const Op *> defs;
  walk(f.body, [&](const Op &op, const OpPath &) {
    for (ValueId r : op.results)
      defs[r] = &op;
  });
  return defs;
}

std::optional<BigInt> constantOf(const std::unordered_map<ValueId, const Op *> &defs,
                                 ValueId v) {
  auto it = defs.find(v);
  if (it == defs.end() || it->second->name != "lp.int")
    return std::nullopt;
  return it->second->intAttr("value");
}

/// Removes ops flagged in `dead` from every block, recursively.
void eraseFlagged(Func &f, Region &r,
                  const std::unordered_map<const Op *, bool> &dead) {
  for (Block &b : r.blocks) {
    std::vector<Op> kept;
    kept.reserve(b.ops.size());
    for (Op &op : b.ops) {
      if (dead.count(&op)) {
        markErased(f, op);
        continue;
      }
      for (Region &inner : op.regions)
        eraseFlagged(f, inner, dead);
      kept.push_back(std::move(op));
    }
    b.ops = std::move(kept);
  }
}

//===----------------------------------------------------------------------===//
// DCE
//===----------------------------------------------------------------------===//

class DeadCode {
public:
  explicit DeadCode(Func &f) : f_(f), uses_(countUses(f)) {}

  bool run() {
    bool changed = false;
    for (Block &b : f_.body.blocks)
      changed |= sweep(b);
    return changed;
  }

private:
  void dropUses(const Op &op) {
    for (ValueId v : op.operands)
      --uses_[v];
    for (const Successor &s : op.successors)
      for (ValueId v : s.args)
        --uses_[v];
    for (const Region &r : op.regions)
      walk(r, [&](const Op &inner, const OpPath &) {
        for (ValueId v : inner.operands)
          --uses_[v];
      });
  }

  // Reverse order so a dead chain a <- b <- c goes in one sweep: c drops
  // its use of b before b is looked at.
  bool sweep(Block &b) {
    bool changed = false;
    std::vector<char> remove(b.ops.size(), 0);
    for (std::size_t i = b.ops.size(); i-- > 0;) {
      Op &op = b.ops[i];
      bool unused = !op.results.empty();
      for (ValueId r : op.results)
        unused &= uses_[r] == 0;
      if (unused && isPure(op)) {
        dropUses(op);
        markErased(f_, op);
        remove[i] = 1;
        changed = true;
        continue;
      }
      for (Region &r : op.regions)
        for (Block &inner : r.blocks)
          changed |= sweep(inner);
    }
    if (changed) {
      std::vector<Op> kept;
      for (std::size_t i = 0; i < b.ops.size(); ++i)
        if (!remove[i])
          kept.push_back(std::move(b.ops[i]));
      b.ops = std::move(kept);
    }
    return changed;
  }

  Func &f_;
  std::vector<uint32_t> uses_;
};

//===----------------------------------------------------------------------===//
// Select / switch folding
//===----------------------------------------------------------------------===//

bool foldOnce(Func &f) {
  auto defs = definingOps(f);
  std::unordered_map<ValueId, ValueId> replace;
  std::unordered_map<const Op *, bool> dead;
  std::vector<std::pair<Op *, BigInt>> constants;

  walk(f.body, [&](Op &op, const OpPath &) {
    if (op.name == "select") {
      ValueId a = op.operands[1], b = op.operands[2];
      std::optional<ValueId> to;
      if (a == b)
        to = a;
      else if (auto c = constantOf(defs, op.operands[0]))
        to = *c != 0 ? a : b;
      if (to) {
        replace[op.result()] = *to;
        dead[&op] = true;
      }
    } else if (op.name == "switch") {
      const auto &cases = *op.intListAttr("cases");
      std::optional<ValueId> to;
      bool allSame = true;
      for (std::size_t i = 2; i < op.operands.size(); ++i)
        allSame &= op.operands[i] == op.operands[1];
      if (allSame && op.operands.size() > 1) {
        to = op.operands[1];
      } else if (auto k = constantOf(defs, op.operands[0])) {
        std::size_t arm = cases.size();
        for (std::size_t i = 0; i < cases.size(); ++i)
          if (cases[i] == *k) {
            arm = i;
            break;
          }
        to = op.operands[1 + arm];
      }
      if (to) {
        replace[op.result()] = *to;
        dead[&op] = true;
      }
    } else if (op.name == "cmp.eq") {
      auto a = constantOf(defs, op.operands[0]);
      auto b = constantOf(defs, op.operands[1]);
      if (a && b)
        constants.emplace_back(&op, BigInt(*a == *b ? 1 : 0));
    }
  });

  for (auto &[op, value] : constants)
    becomeConstant(*op, value);
  applyReplacements(f, replace);
  eraseFlagged(f, f.body, dead);
  return !replace.empty() || !constants.empty();
}

//===----------------------------------------------------------------------===//
// Run of a known region
//===----------------------------------------------------------------------===//

struct Location2 {
  Block *block;
  std::size_t index;
};

/// Finds every op position in the function, keyed by the op's address.
void collectPositions(Region &r, std::unordered_map<const Op *, Location2> &pos) {
  for (Block &b : r.blocks)
    for (std::size_t i = 0; i < b.ops.size(); ++i) {
      pos[&b.ops[i]] = Location2{&b, i};
      for (Region &inner : b.ops[i].regions)
        collectPositions(inner, pos);
    }
}

bool runKnownOnce(Func &f) {
  std::vector<uint32_t> uses = countUses(f);
  std::unordered_map<ValueId, const Op *> defs = definingOps(f);
  std::unordered_map<const Op *, Location2> pos;
  collectPositions(f.body, pos);

  // First candidate in walk order.
  Op *runOp = nullptr;
  walk(f.body, [&](Op &op, const OpPath &) {
    if (runOp || op.name != "rgn.run")
      return;
    ValueId r = op.operands[0];
    auto it = defs.find(r);
    if (it != defs.end() && it->second->name == "rgn.val" && uses[r] == 1)
      runOp = &op;
  });
  if (!runOp)
    return false;

  const Op *valOp = defs[runOp->operands[0]];
  Location2 runAt = pos[runOp];
  Location2 valAt = pos[valOp];

  // Take the region body out before touching either block.
  Op &val = valAt.block->ops[valAt.index];
  Block body = std::move(val.regions[0].blocks[0]);
  std::unordered_map<ValueId, ValueId> params;
  for (std::size_t i = 0; i < body.params.size(); ++i) {
    params[body.params[i]] = runOp->operands[i + 1];
    f.values[body.params[i]].def = DefKind::Erased;
  }
  for (Op &op : body.ops)
    substitute(op, params);
  f.values[val.result()].def = DefKind::Erased;

  // Splice the body in place of the run, then drop the rgn.val. The run is
  // a terminator, so it is the last op of its block and the rgn.val sits
  // before it whenever both share a block.
  Block &runBlock = *runAt.block;
  runBlock.ops.pop_back();
  for (Op &op : body.ops)
    runBlock.ops.push_back(std::move(op));
  valAt.block->ops.erase(valAt.block->ops.begin() + valAt.index);
  return true;
}

//===----------------------------------------------------------------------===//
// Scalar CSE
//===----------------------------------------------------------------------===//

bool cseCandidate(const Op &op) {
  return op.name == "lp.int" || op.name == "lp.getlabel" ||
         op.name == "lp.project" || op.name == "cmp.eq" ||
         op.name == "select" || op.name == "switch";
}

class ScopedCse {
public:
  explicit ScopedCse(Func &f) : f_(f) {}

  bool run() {
    for (Block &b : f_.body.blocks) {
      scopes_.clear();
      visit(b);
    }
    applyReplacements(f_, replace_);
    eraseFlagged(f_, f_.body, dead_);
    return !dead_.empty();
  }

private:
  std::string key(const Op &op) const {
    std::string k = op.name;
    for (const auto &[name, value] : op.attrs)
      k += "|" + name + "=" + toString(value);
    k += "|:" + toString(f_.typeOf(op.result()));
    for (ValueId v : op.operands)
      k += "|" + std::to_string(resolve(replace_, v));
    return k;
  }

  const ValueId *lookup(const std::string &k) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      auto found = it->find(k);
      if (found != it->end())
        return &found->second;
    }
    return nullptr;
  }

  void visit(Block &b) {
    scopes_.emplace_back();
    for (Op &op : b.ops) {
      if (op.results.size() == 1 && cseCandidate(op)) {
        std::string k = key(op);
        if (const ValueId *prior = lookup(k)) {
          replace_[op.result()] = *prior;
          dead_[&op] = true;
          continue;
        }
        scopes_.back().emplace(std::move(k), op.result());
      }
      for (Region &r : op.regions)
        for (Block &inner : r.blocks)
          visit(inner);
    }
    scopes_.pop_back();
  }

  Func &f_;
  std::vector<std::unordered_map<std::string, ValueId>> scopes_;
  std::unordered_map<ValueId, ValueId> replace_;
  std::unordered_map<const Op *, bool> dead_;
};

//===----------------------------------------------------------------------===//
// Constant folding of runtime calls
//===----------------------------------------------------------------------===//

std::optional<BigInt> literalOf(const std::unordered_map<ValueId, const Op *> &defs,
                                ValueId v) {
  auto it = defs.find(v);
  if (it == defs.end())
    return std::nullopt;
  const Op &op = *it->second;
  if (op.name == "lp.int" || op.name == "lp.bigint")
    return op.intAttr("value");
  return std::nullopt;
}

bool constFoldOnce(Func &f) {
  auto defs = definingOps(f);
  std::vector<std::pair<Op *, BigInt>> rewrites;
  walk(f.body, [&](Op &op, const OpPath &) {
    if (op.name != "call" || op.operands.size() != 2)
      return;
    const std::string *fn = op.symbolAttr("fn");
    if (!fn || (*fn != "nat_dec_eq" && *fn != "nat_add"))
      return;
    auto a = literalOf(defs, op.operands[0]);
    auto b = literalOf(defs, op.operands[1]);
    if (!a || !b)
      return;
    BigInt v = *fn == "nat_add" ? *a + *b : BigInt(*a == *b ? 1 : 0);
    rewrites.emplace_back(&op, std::move(v));
  });
  for (auto &[op, v] : rewrites) {
    bool small = op->symbolAttr("fn") && *op->symbolAttr("fn") == "nat_dec_eq";
    if (small || interp::fitsSmall(v)) {
      becomeConstant(*op, v);
    } else {
      becomeConstant(*op, v);
      op->name = "lp.bigint";
    }
  }
  return !rewrites.empty();
}

template <typename Step>
bool fixpoint(Func &f, Step step) {
  bool any = false;
  while (step(f))
    any = true;
  return any;
}

} // namespace

bool dce(Func &f) {
  return fixpoint(f, [](Func &g) { return DeadCode(g).run(); });
}

bool foldSelectSwitch(Func &f) { return fixpoint(f, foldOnce); }

bool simplifyRunKnown(Func &f) { return fixpoint(f, runKnownOnce); }

bool scalarCse(Func &f) {
  return fixpoint(f, [](Func &g) { return ScopedCse(g).run(); });
}

bool constantFold(Func &f) { return fixpoint(f, constFoldOnce); }

//===----------------------------------------------------------------------===//
// Region CSE
//===----------------------------------------------------------------------===//

namespace {

class RegionCse {
public:
  RegionCse(Func &f, const RegionHasher &hasher) : f_(f), hasher_(hasher) {}

  bool run() {
    for (Block &b : f_.body.blocks)
      visit(b);
    applyReplacements(f_, replace_);
    eraseFlagged(f_, f_.body, dead_);
    return !dead_.empty();
  }

private:
  void visit(Block &b) {
    std::multimap<ValueNumber, const Op *> seen;
    for (Op &op : b.ops) {
      if (op.name == "rgn.val") {
        auto num = hasher_(f_, op.regions[0], ctx_);
        if (num.ok()) {
          bool merged = false;
          auto range = seen.equal_range(*num);
          for (auto it = range.first; it != range.second; ++it) {
            const Op &prior = *it->second;
            if (f_.typeOf(prior.result()) == f_.typeOf(op.result()) &&
                alphaEquivalent(f_, prior.regions[0], op.regions[0])) {
              replace_[op.result()] = prior.result();
              dead_[&op] = true;
              merged = true;
              break;
            }
          }
          if (merged)
            continue;
          seen.emplace(*num, &op);
        }
      }
      for (Region &r : op.regions)
        for (Block &inner : r.blocks)
          visit(inner);
    }
  }

  Func &f_;
  const RegionHasher &hasher_;
  NumberingCtx ctx_;
  std::unordered_map<ValueId, ValueId> replace_;
  std::unordered_map<const Op *, bool> dead_;
};

} // namespace

bool regionCse(Func &f, const RegionHasher &hasher) {
  return fixpoint(f, [&](Func &g) { return RegionCse(g, hasher).run(); });
}

//===----------------------------------------------------------------------===//
// Pipelines
//===----------------------------------------------------------------------===//

const std::vector<std::string> &passNames() {
  static const std::vector<std::string> names = {
      "dce", "fold", "run-known", "region-cse", "cse", "constfold"};
  return names;
}

namespace {

using Step = bool (*)(Func &);

std::optional<Step> stepFor(const std::string &n) {
  if (n == "dce")
    return dce;
  if (n == "fold")
    return foldSelectSwitch;
  if (n == "run-known")
    return simplifyRunKnown;
  if (n == "region-cse")
    return [](Func &f) { return regionCse(f); };
  if (n == "cse")
    return scalarCse;
  if (n == "constfold")
    return constantFold;
  return std::nullopt;
}

} // namespace

Status runPipeline(Module &m, const std::vector<std::string> &names) {
  std::vector<Step> steps;
  for (const std::string &n : names) {
    std::optional<Step> s = stepFor(n);
    if (!s)
      return Status::failure("unknown pass '" + n + "'");
    steps.push_back(*s);
  }
  for (Step step : steps)
    for (Func &f : m.funcs)
      step(f);
  return Status::success();
}

const std::vector<std::string> &optimizationPipeline() {
  static const std::vector<std::string> names = {
      "constfold", "cse", "region-cse", "fold", "run-known", "dce"};
  return names;
}

unsigned optimize(Module &m, unsigned maxRounds) {
  unsigned rounds = 0;
  for (; rounds < maxRounds; ++rounds) {
    bool changed = false;
    for (const std::string &n : optimizationPipeline())
      for (Func &f : m.funcs)
        changed |= (*stepFor(n))(f);
    if (!changed)
      break;
  }
  return rounds;
}

} // namespace lz::passes
