// Copyright 2026 The LZ Authors
//
// Licensed under the Apache License v2.0 with LLVM Exceptions.
// See https://llvm.org/LICENSE.txt for license information.
// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception

#include "lz/Verifier.h"
#include "lz/Dialects.h"

#include <algorithm>
#include <set>

namespace lz::ir {

std::vector<uint32_t> computeIdoms(const Func &f) {
  const auto &blocks = f.body.blocks;
  const uint32_t n = static_cast<uint32_t>(blocks.size());
  constexpr uint32_t kUndef = UINT32_MAX;
  if (n == 0)
    return {};

  // Reverse postorder from the entry.
  std::vector<uint32_t> order, rpoIndex(n, kUndef);
  std::vector<char> seen(n, 0);
  std::vector<std::pair<uint32_t, std::size_t>> stack{{0, 0}};
  seen[0] = 1;
  while (!stack.empty()) {
    auto &[b, next] = stack.back();
    const std::vector<Successor> *succs =
        blocks[b].empty() ? nullptr : &blocks[b].terminator().successors;
    if (succs && next < succs->size()) {
      uint32_t s = (*succs)[next++].block;
      if (s < n && !seen[s]) {
        seen[s] = 1;
        stack.push_back({s, 0});
      }
      continue;
    }
    order.push_back(b);
    stack.pop_back();
  }
  std::reverse(order.begin(), order.end());
  for (uint32_t i = 0; i < order.size(); ++i)
    rpoIndex[order[i]] = i;

  std::vector<std::vector<uint32_t>> preds(n);
  for (uint32_t b : order)
    if (!blocks[b].empty())
      for (const Successor &s : blocks[b].terminator().successors)
        if (s.block < n)
          preds[s.block].push_back(b);

  std::vector<uint32_t> idom(n, kUndef);
  idom[0] = 0;
  auto intersect = [&](uint32_t a, uint32_t b) {
    while (a != b) {
      while (rpoIndex[a] > rpoIndex[b])
        a = idom[a];
      while (rpoIndex[b] > rpoIndex[a])
        b = idom[b];
    }
    return a;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (uint32_t b : order) {
      if (b == 0)
        continue;
      uint32_t newIdom = kUndef;
      for (uint32_t p : preds[b]) {
        if (idom[p] == kUndef)
          continue;
        newIdom = newIdom == kUndef ? p : intersect(p, newIdom);
      }
      if (newIdom != idom[b]) {
        idom[b] = newIdom;
        changed = true;
      }
    }
  }
  return idom;
}

namespace {

class FuncVerifier {
public:
  FuncVerifier(const Module *m, const Func &f, std::vector<Diagnostic> &diags,
               bool full)
      : m_(m), f_(f), diags_(diags), full_(full),
        visible_(f.numValues(), 0), defCount_(f.numValues(), 0) {}

  void run() {
    countDefs();
    if (f_.body.blocks.empty()) {
      error({}, "function has no body");
      return;
    }
    if (full_)
      checkSignature();

    const auto &blocks = f_.body.blocks;
    if (blocks.size() == 1) {
      std::vector<ValueId> defined;
      visitBlock(blocks[0], {0}, /*topLevel=*/true, defined);
      return;
    }

    std::vector<uint32_t> idom = computeIdoms(f_);
    std::vector<std::vector<uint32_t>> children(blocks.size());
    for (uint32_t b = 1; b < blocks.size(); ++b) {
      if (idom[b] == UINT32_MAX)
        error({b, 0}, "block ^bb" + std::to_string(b) + " is unreachable");
      else
        children[idom[b]].push_back(b);
    }
    visitDomTree(0, children);
  }

private:
  void error(OpPath path, std::string message) {
    diags_.push_back(Diagnostic{Diagnostic::Severity::Error, std::move(message),
                                Location{f_.name, std::move(path)}});
  }

  void countDefs() {
    auto def = [&](ValueId v) {
      if (v < defCount_.size())
        ++defCount_[v];
    };
    auto defBlock = [&](const Block &b) {
      for (ValueId p : b.params)
        def(p);
    };
    for (const Block &b : f_.body.blocks)
      defBlock(b);
    walk(f_.body, [&](const Op &op, const OpPath &) {
      for (ValueId r : op.results)
        def(r);
      for (const Region &r : op.regions)
        for (const Block &b : r.blocks)
          defBlock(b);
    });
  }

  void checkSignature() {
    if (!isValidSymbol(f_.name))
      error({}, "malformed function name '@" + f_.name + "'");
    for (const Type &t : f_.paramTypes)
      if (!isWellFormed(t))
        error({}, "malformed parameter type " + toString(t));
    if (!isWellFormed(f_.resultType))
      error({}, "malformed result type " + toString(f_.resultType));
    const Block &entry = f_.body.entry();
    bool match = entry.params.size() == f_.paramTypes.size();
    for (std::size_t i = 0; match && i < entry.params.size(); ++i)
      match = f_.hasValue(entry.params[i]) &&
              f_.typeOf(entry.params[i]) == f_.paramTypes[i];
    if (!match)
      error({}, "entry block parameters do not match function signature");
  }

  void visitDomTree(uint32_t b,
                    const std::vector<std::vector<uint32_t>> &children) {
    std::vector<ValueId> defined;
    visitBlock(f_.body.blocks[b], {b}, /*topLevel=*/true, defined);
    for (uint32_t c : children[b])
      visitDomTree(c, children);
    for (ValueId v : defined)
      visible_[v] = 0;
  }

  void define(ValueId v, const OpPath &path, std::vector<ValueId> &defined) {
    if (v >= f_.numValues() || f_.values[v].def == DefKind::Erased) {
      error(path, "definition of unknown value id " + std::to_string(v));
      return;
    }
    if (defCount_[v] > 1 && !reportedDup_.count(v)) {
      reportedDup_.insert(v);
      error(path, "value %" + std::to_string(v) + " defined more than once");
    }
    if (full_ && !isWellFormed(f_.typeOf(v)))
      error(path, "malformed type " + toString(f_.typeOf(v)));
    visible_[v] = 1;
    defined.push_back(v);
  }

  void use(ValueId v, const OpPath &path) {
    if (v >= f_.numValues() || f_.values[v].def == DefKind::Erased ||
        defCount_[v] == 0)
      error(path, "use of undefined value");
    else if (!visible_[v])
      error(path, "operand does not dominate its use");
  }

  // `blockPath` is the op path prefix identifying the block: [b] at top level
  // or [..., r, b] when nested.
  void visitBlock(const Block &block, OpPath blockPath, bool topLevel,
                  std::vector<ValueId> &defined) {
    OpPath blockLoc = blockPath;
    blockLoc.push_back(0);
    for (ValueId p : block.params)
      define(p, blockLoc, defined);

    if (block.ops.empty()) {
      error(blockLoc, "block has no terminator");
      return;
    }
    for (uint32_t i = 0; i < block.ops.size(); ++i) {
      const Op &op = block.ops[i];
      OpPath path = blockPath;
      path.push_back(i);

      for (ValueId v : op.operands)
        use(v, path);
      for (const Successor &s : op.successors)
        for (ValueId v : s.args)
          use(v, path);
      if (!op.successors.empty() && !topLevel)
        error(path, "branch inside a nested region");

      const dialect::OpSignature *sig = dialect::lookupOp(op.name);
      if (full_)
        dialect::verifySignature(*m_, f_, op, path, diags_);
      bool terminator = sig && sig->isTerminator;
      if (terminator && i + 1 != block.ops.size())
        error(path, "terminator not last");
      if (!terminator && i + 1 == block.ops.size())
        error(path, "block does not end in a terminator");

      for (uint32_t r = 0; r < op.regions.size(); ++r) {
        const Region &region = op.regions[r];
        OpPath regionPath = path;
        regionPath.push_back(r);
        if (region.blocks.size() != 1) {
          error(path, region.blocks.empty()
                          ? "empty region"
                          : "nested region must have exactly one block");
          if (region.blocks.empty())
            continue;
        }
        std::vector<ValueId> inner;
        OpPath innerBlock = regionPath;
        innerBlock.push_back(0);
        visitBlock(region.blocks[0], innerBlock, /*topLevel=*/false, inner);
        for (ValueId v : inner)
          visible_[v] = 0;
      }

      for (ValueId res : op.results)
        define(res, path, defined);
    }
  }

  const Module *m_;
  const Func &f_;
  std::vector<Diagnostic> &diags_;
  bool full_;
  std::vector<char> visible_;
  std::vector<uint32_t> defCount_;
  std::set<ValueId> reportedDup_;
};

void sortDiagnostics(const Module &m, std::vector<Diagnostic> &diags) {
  auto funcIndex = [&](const std::string &name) {
    for (std::size_t i = 0; i < m.funcs.size(); ++i)
      if (m.funcs[i].name == name)
        return i;
    return m.funcs.size();
  };
  std::stable_sort(diags.begin(), diags.end(),
                   [&](const Diagnostic &a, const Diagnostic &b) {
                     std::size_t fa = funcIndex(a.loc.func);
                     std::size_t fb = funcIndex(b.loc.func);
                     if (fa != fb)
                       return fa < fb;
                     return a.loc.path < b.loc.path;
                   });
}

} // namespace

std::vector<Diagnostic> verifyStructure(const Module &m) {
  std::vector<Diagnostic> diags;
  std::set<std::string> names;
  for (const Func &f : m.funcs)
    if (!names.insert(f.name).second)
      diags.push_back(Diagnostic{Diagnostic::Severity::Error,
                                 "duplicate symbol '@" + f.name + "'",
                                 Location{f.name, {}}});
  for (const Global &g : m.globals) {
    if (!isValidSymbol(g.name) || !names.insert(g.name).second)
      diags.push_back(Diagnostic{Diagnostic::Severity::Error,
                                 "duplicate or malformed global '@" + g.name +
                                     "'",
                                 Location{}});
    const Func *init = m.lookupFunc(g.initializer);
    if (!init || !init->paramTypes.empty() || !init->resultType.isObj())
      diags.push_back(Diagnostic{
          Diagnostic::Severity::Error,
          "global '@" + g.name +
              "' initializer must be a zero-argument function returning !lp.t",
          Location{}});
  }
  for (const Func &f : m.funcs)
    FuncVerifier(&m, f, diags, /*full=*/true).run();
  sortDiagnostics(m, diags);
  return diags;
}

std::vector<Diagnostic> verifyModule(const Module &m) {
  std::vector<Diagnostic> diags = verifyStructure(m);
  if (!diags.empty())
    return diags;
  for (auto &d : dialect::verifyLp(m))
    diags.push_back(std::move(d));
  for (auto &d : dialect::verifyRgn(m))
    diags.push_back(std::move(d));
  sortDiagnostics(m, diags);
  return diags;
}

std::vector<Diagnostic> verifyDominance(const Func &f) {
  std::vector<Diagnostic> diags;
  FuncVerifier(nullptr, f, diags, /*full=*/false).run();
  return diags;
}

} // namespace lz::ir
