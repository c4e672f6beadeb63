// Copyright 2026 The LZ Authors
//
// Licensed under the Apache License v2.0 with LLVM Exceptions.
// See https://llvm.org/LICENSE.txt for license information.
// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception

#include "lz/Dialects.h"

#include <set>
#include <unordered_map>

namespace lz::dialect {

using namespace lz::ir;

bool satisfies(const Type &type, TypeConstraint c) {
  switch (c) {
  case TypeConstraint::Obj:
    return type.isObj();
  case TypeConstraint::AnyInt:
    return type.isInt();
  case TypeConstraint::I1:
    return type.isInt(1);
  case TypeConstraint::I8:
    return type.isInt(8);
  case TypeConstraint::I64:
    return type.isInt(64);
  case TypeConstraint::IntOrObj:
    return type.isInt() || type.isObj();
  case TypeConstraint::RgnVal:
    return type.isRgnVal();
  case TypeConstraint::Any:
    return true;
  }
  return false;
}

std::string toString(TypeConstraint c) {
  switch (c) {
  case TypeConstraint::Obj:
    return "!lp.t";
  case TypeConstraint::AnyInt:
    return "integer";
  case TypeConstraint::I1:
    return "i1";
  case TypeConstraint::I8:
    return "i8";
  case TypeConstraint::I64:
    return "i64";
  case TypeConstraint::IntOrObj:
    return "integer or !lp.t";
  case TypeConstraint::RgnVal:
    return "!rgn.val";
  case TypeConstraint::Any:
    return "any type";
  }
  return "?";
}

//===----------------------------------------------------------------------===//
// Tables
//===----------------------------------------------------------------------===//

namespace {

using TC = TypeConstraint;
using AK = AttrSpec::Kind;

OpSignature sig(std::string name) {
  OpSignature s;
  s.name = std::move(name);
  return s;
}

std::vector<OpSignature> buildLpTable() {
  std::vector<OpSignature> t;

  OpSignature intOp = sig("lp.int");
  intOp.results = {TC::IntOrObj};
  intOp.attrs = {{"value", AK::Int, true}};
  intOp.pure = true;
  t.push_back(intOp);

  OpSignature bigint = sig("lp.bigint");
  bigint.results = {TC::Obj};
  bigint.attrs = {{"value", AK::Int, true}};
  bigint.pure = true;
  t.push_back(bigint);

  OpSignature sw = sig("lp.switch");
  sw.operands = {TC::AnyInt};
  sw.attrs = {{"cases", AK::IntList, true}};
  sw.regionCount = RegionCount::CasesPlusOne;
  sw.regions = {RegionParams::None};
  sw.isTerminator = true;
  t.push_back(sw);

  OpSignature construct = sig("lp.construct");
  construct.variadic = TC::Obj;
  construct.results = {TC::Obj};
  construct.attrs = {{"tag", AK::Int, true}};
  construct.pure = true;
  t.push_back(construct);

  OpSignature getlabel = sig("lp.getlabel");
  getlabel.operands = {TC::Obj};
  getlabel.results = {TC::I64};
  getlabel.pure = true;
  t.push_back(getlabel);

  OpSignature project = sig("lp.project");
  project.operands = {TC::Obj};
  project.results = {TC::Obj};
  project.attrs = {{"index", AK::Int, true}};
  project.pure = true;
  t.push_back(project);

  OpSignature pap = sig("lp.pap");
  pap.variadic = TC::Obj;
  pap.results = {TC::Obj};
  pap.attrs = {{"fn", AK::Symbol, true}};
  pap.pure = true;
  t.push_back(pap);

  OpSignature papextend = sig("lp.papextend");
  papextend.operands = {TC::Obj};
  papextend.variadic = TC::Obj;
  papextend.results = {TC::Obj};
  t.push_back(papextend);

  OpSignature joinpoint = sig("lp.joinpoint");
  joinpoint.regions = {RegionParams::Any, RegionParams::None};
  joinpoint.isTerminator = true;
  t.push_back(joinpoint);

  OpSignature jump = sig("lp.jump");
  jump.variadic = TC::Any;
  jump.isTerminator = true;
  t.push_back(jump);

  OpSignature inc = sig("lp.inc");
  inc.operands = {TC::Obj};
  t.push_back(inc);

  OpSignature dec = sig("lp.dec");
  dec.operands = {TC::Obj};
  t.push_back(dec);

  OpSignature ret = sig("lp.return");
  ret.operands = {TC::Any};
  ret.isTerminator = true;
  t.push_back(ret);

  OpSignature call = sig("call");
  call.variadic = TC::Any;
  call.results = {TC::Any};
  call.attrs = {{"fn", AK::Symbol, true}, {"musttail", AK::Flag, false}};
  t.push_back(call);

  return t;
}

std::vector<OpSignature> buildRgnTable() {
  std::vector<OpSignature> t;

  OpSignature val = sig("rgn.val");
  val.results = {TC::RgnVal};
  val.regions = {RegionParams::Any};
  val.pure = true;
  t.push_back(val);

  OpSignature run = sig("rgn.run");
  run.operands = {TC::RgnVal};
  run.variadic = TC::Any;
  run.isTerminator = true;
  t.push_back(run);

  OpSignature select = sig("select");
  select.operands = {TC::I1, TC::Any, TC::Any};
  select.results = {TC::Any};
  select.pure = true;
  t.push_back(select);

  OpSignature sw = sig("switch");
  sw.operands = {TC::AnyInt};
  sw.variadic = TC::Any;
  sw.results = {TC::Any};
  sw.attrs = {{"cases", AK::IntList, true}};
  sw.pure = true;
  t.push_back(sw);

  return t;
}

std::vector<OpSignature> buildBuiltinTable() {
  std::vector<OpSignature> t;

  OpSignature cmp = sig("cmp.eq");
  cmp.operands = {TC::AnyInt, TC::AnyInt};
  cmp.results = {TC::I1};
  cmp.pure = true;
  t.push_back(cmp);

  OpSignature load = sig("global.load");
  load.results = {TC::Obj};
  load.attrs = {{"slot", AK::Symbol, true}};
  load.pure = true;
  t.push_back(load);

  OpSignature br = sig("br");
  br.successors = 1;
  br.isTerminator = true;
  t.push_back(br);

  OpSignature condBr = sig("cond_br");
  condBr.operands = {TC::I1};
  condBr.successors = 2;
  condBr.isTerminator = true;
  t.push_back(condBr);

  OpSignature switchBr = sig("switch_br");
  switchBr.operands = {TC::AnyInt};
  switchBr.attrs = {{"cases", AK::IntList, true}};
  switchBr.successors = -1;
  switchBr.isTerminator = true;
  t.push_back(switchBr);

  OpSignature ret = sig("ret");
  ret.operands = {TC::Any};
  ret.isTerminator = true;
  t.push_back(ret);

  return t;
}

} // namespace

const std::vector<OpSignature> &lpOpTable() {
  static const std::vector<OpSignature> table = buildLpTable();
  return table;
}

const std::vector<OpSignature> &rgnOpTable() {
  static const std::vector<OpSignature> table = buildRgnTable();
  return table;
}

const std::vector<OpSignature> &builtinOpTable() {
  static const std::vector<OpSignature> table = buildBuiltinTable();
  return table;
}

const OpSignature *lookupOp(std::string_view name) {
  static const std::unordered_map<std::string_view, const OpSignature *>
      index = [] {
        std::unordered_map<std::string_view, const OpSignature *> map;
        for (const auto *table :
             {&lpOpTable(), &rgnOpTable(), &builtinOpTable()})
          for (const OpSignature &s : *table)
            map.emplace(s.name, &s);
        return map;
      }();
  auto it = index.find(name);
  return it == index.end() ? nullptr : it->second;
}

const std::vector<RuntimeFn> &runtimeFnTable() {
  static const std::vector<RuntimeFn> table = {
      {"nat_dec_eq", {Type::obj(), Type::obj()}, Type::i(8)},
      {"nat_add", {Type::obj(), Type::obj()}, Type::obj()},
  };
  return table;
}

const RuntimeFn *lookupRuntimeFn(std::string_view name) {
  for (const RuntimeFn &fn : runtimeFnTable())
    if (fn.name == name)
      return &fn;
  return nullptr;
}

std::optional<CalleeInfo> resolveCallee(const Module &m,
                                        std::string_view name) {
  if (const Func *f = m.lookupFunc(name))
    return CalleeInfo{f->paramTypes, f->resultType, false};
  if (const RuntimeFn *fn = lookupRuntimeFn(name))
    return CalleeInfo{fn->params, fn->result, true};
  return std::nullopt;
}

//===----------------------------------------------------------------------===//
// Signature verification
//===----------------------------------------------------------------------===//

namespace {
const BigInt kSmallLimit = BigInt(1) << 62;
} // namespace

bool fitsType(const BigInt &v, const Type &type) {
  if (type.isObj())
    return v >= -kSmallLimit && v < kSmallLimit;
  if (!type.isInt())
    return false;
  if (type.width == 1)
    return v == 0 || v == 1;
  BigInt limit = BigInt(1) << (type.width - 1);
  return v >= -limit && v < limit;
}

namespace {

struct Emitter {
  const Func &f;
  const OpPath &path;
  std::vector<Diagnostic> &diags;

  void operator()(std::string message) const {
    diags.push_back(Diagnostic{Diagnostic::Severity::Error, std::move(message),
                               Location{f.name, path}});
  }
};

std::string quote(const Op &op) { return "'" + op.name + "'"; }

} // namespace

void verifySignature(const Module &m, const Func &f, const Op &op,
                     const OpPath &path, std::vector<Diagnostic> &diags) {
  Emitter error{f, path, diags};
  const OpSignature *s = lookupOp(op.name);
  if (!s) {
    error("unknown operation '" + op.name + "'");
    return;
  }

  // Operands.
  std::size_t fixed = s->operands.size();
  if (op.operands.size() < fixed ||
      (!s->variadic && op.operands.size() != fixed)) {
    error(quote(op) + " expects " + std::to_string(fixed) +
          (s->variadic ? " or more" : "") + " operands, got " +
          std::to_string(op.operands.size()));
    return;
  }
  for (std::size_t i = 0; i < op.operands.size(); ++i) {
    ValueId v = op.operands[i];
    if (!f.hasValue(v))
      continue; // reported by the structural verifier
    TypeConstraint c = i < fixed ? s->operands[i] : *s->variadic;
    if (!satisfies(f.typeOf(v), c))
      error(quote(op) + " operand #" + std::to_string(i) + " must be " +
            toString(c) + ", got " + ir::toString(f.typeOf(v)));
  }

  // Results.
  if (op.results.size() != s->results.size()) {
    error(quote(op) + " expects " + std::to_string(s->results.size()) +
          " results, got " + std::to_string(op.results.size()));
    return;
  }
  for (ValueId r : op.results) {
    if (!f.hasValue(r)) {
      error(quote(op) + " defines an unknown value id");
      return;
    }
  }
  for (std::size_t i = 0; i < op.results.size(); ++i) {
    const Type &t = f.typeOf(op.results[i]);
    if (!isWellFormed(t))
      error(quote(op) + " result has malformed type " + ir::toString(t));
    else if (!satisfies(t, s->results[i]))
      error(quote(op) + " result must be " + toString(s->results[i]) +
            ", got " + ir::toString(t));
  }

  // Attributes.
  for (const AttrSpec &spec : s->attrs) {
    const Attr *a = op.attr(spec.name);
    if (!a) {
      if (spec.required)
        error(quote(op) + " requires attribute '" + spec.name + "'");
      continue;
    }
    bool kindOk = false;
    switch (spec.kind) {
    case AK::Int:
      kindOk = std::holds_alternative<IntAttr>(*a);
      break;
    case AK::Symbol:
      kindOk = std::holds_alternative<SymbolAttr>(*a);
      break;
    case AK::IntList:
      kindOk = std::holds_alternative<IntListAttr>(*a);
      break;
    case AK::Flag:
      kindOk = std::holds_alternative<FlagAttr>(*a);
      break;
    }
    if (!kindOk)
      error(quote(op) + " attribute '" + spec.name + "' has the wrong kind");
  }
  for (const auto &[key, value] : op.attrs) {
    bool known = false;
    for (const AttrSpec &spec : s->attrs)
      known |= spec.name == key;
    if (!known)
      error(quote(op) + " has unexpected attribute '" + key + "'");
    if (const auto *sym = std::get_if<SymbolAttr>(&value)) {
      if (!isValidSymbol(sym->name))
        error("malformed symbol '@" + sym->name + "'");
      else if (!m.lookupFunc(sym->name) && !m.lookupGlobal(sym->name) &&
               !lookupRuntimeFn(sym->name))
        error("unresolved symbol '@" + sym->name + "'");
    }
  }

  const std::vector<BigInt> *cases = op.intListAttr("cases");

  // Regions.
  std::size_t wantRegions = s->regions.size();
  if (s->regionCount == RegionCount::CasesPlusOne)
    wantRegions = cases ? cases->size() + 1 : op.regions.size();
  if (op.regions.size() != wantRegions) {
    error(quote(op) + " expects " + std::to_string(wantRegions) +
          " regions, got " + std::to_string(op.regions.size()));
  } else {
    for (std::size_t r = 0; r < op.regions.size(); ++r) {
      RegionParams rule = s->regionCount == RegionCount::CasesPlusOne
                              ? s->regions.front()
                              : s->regions[r];
      const Region &region = op.regions[r];
      if (region.blocks.empty())
        continue; // reported structurally
      if (rule == RegionParams::None && !region.entry().params.empty())
        error(quote(op) + " region #" + std::to_string(r) +
              " must not have parameters");
    }
  }

  // Successors.
  if (s->successors == 0 && !op.successors.empty()) {
    error(quote(op) + " does not take successors");
  } else if (s->successors != 0) {
    std::size_t want = s->successors > 0
                           ? static_cast<std::size_t>(s->successors)
                           : (cases ? cases->size() + 1 : 0);
    if (op.successors.size() != want)
      error(quote(op) + " expects " + std::to_string(want) +
            " successors, got " + std::to_string(op.successors.size()));
    for (const Successor &succ : op.successors) {
      if (succ.block >= f.body.blocks.size()) {
        error(quote(op) + " branches to missing block ^bb" +
              std::to_string(succ.block));
        continue;
      }
      const Block &target = f.body.blocks[succ.block];
      if (succ.block == 0)
        error(quote(op) + " may not branch to the entry block");
      bool match = target.params.size() == succ.args.size();
      for (std::size_t i = 0; match && i < succ.args.size(); ++i)
        match = f.hasValue(succ.args[i]) &&
                f.typeOf(succ.args[i]) == f.typeOf(target.params[i]);
      if (!match)
        error(quote(op) + " successor arguments do not match ^bb" +
              std::to_string(succ.block) + " parameters");
    }
  }

  // Relational constraints.
  auto typeOf = [&](std::size_t i) -> const Type * {
    return i < op.operands.size() && f.hasValue(op.operands[i])
               ? &f.typeOf(op.operands[i])
               : nullptr;
  };
  auto checkCases = [&](const Type *scrutinee) {
    if (!cases || !scrutinee)
      return;
    for (const BigInt &c : *cases)
      if (!fitsType(c, *scrutinee))
        error(quote(op) + " case value " + c.str() + " does not fit " +
              ir::toString(*scrutinee));
  };

  if (op.name == "lp.int") {
    if (auto v = op.intAttr("value"); v && !op.results.empty() &&
                                      !fitsType(*v, f.typeOf(op.result())))
      error("integer literal " + v->str() + " does not fit " +
            ir::toString(f.typeOf(op.result())));
  } else if (op.name == "lp.switch" || op.name == "switch_br") {
    checkCases(typeOf(0));
  } else if (op.name == "switch") {
    checkCases(typeOf(0));
    if (cases && op.operands.size() != cases->size() + 2)
      error("'switch' expects one value per case plus a default");
    for (std::size_t i = 1; i < op.operands.size(); ++i)
      if (const Type *t = typeOf(i);
          t && !op.results.empty() && *t != f.typeOf(op.result()))
        error("'switch' values must match the result type");
  } else if (op.name == "select") {
    const Type *a = typeOf(1), *b = typeOf(2);
    if (a && b && (*a != *b || *a != f.typeOf(op.result())))
      error("'select' operands and result must have the same type");
  } else if (op.name == "cmp.eq") {
    const Type *a = typeOf(0), *b = typeOf(1);
    if (a && b && *a != *b)
      error("'cmp.eq' operands must have the same type");
  } else if (op.name == "rgn.val") {
    if (!op.regions.empty() && !op.regions[0].blocks.empty() &&
        !op.results.empty()) {
      const Type &t = f.typeOf(op.result());
      std::vector<Type> params;
      for (ValueId p : op.regions[0].entry().params)
        if (f.hasValue(p))
          params.push_back(f.typeOf(p));
      if (t.isRgnVal() && t.params != params)
        error("'rgn.val' result type " + ir::toString(t) +
              " does not match its region parameters");
    }
  } else if (op.name == "rgn.run") {
    const Type *r = typeOf(0);
    if (r && r->isRgnVal()) {
      bool match = r->params.size() + 1 == op.operands.size();
      for (std::size_t i = 1; match && i < op.operands.size(); ++i)
        match = typeOf(i) && *typeOf(i) == r->params[i - 1];
      if (!match)
        error("'rgn.run' arguments do not match region parameters " +
              ir::toString(*r));
    }
  } else if (op.name == "lp.return" || op.name == "ret") {
    if (const Type *t = typeOf(0); t && *t != f.resultType)
      error(quote(op) + " operand type " + ir::toString(*t) +
            " does not match function result type " +
            ir::toString(f.resultType));
  }
}

//===----------------------------------------------------------------------===//
// lp verifier
//===----------------------------------------------------------------------===//

std::optional<OpPath> jumpTarget(const OpPath &jumpPath, const Func &f) {
  // Ancestors sit at prefixes of length 2, 5, 8, ... followed by the index
  // of the region that leads towards the jump.
  for (std::size_t len = jumpPath.size(); len >= 5; len -= 3) {
    OpPath ancestor(jumpPath.begin(), jumpPath.begin() + (len - 3));
    uint32_t regionIndex = jumpPath[len - 3];
    const Op *op = opAt(f, ancestor);
    if (op && op->name == "lp.joinpoint" && regionIndex == 1)
      return ancestor;
  }
  return std::nullopt;
}

namespace {

bool isLpRegionTerminator(const std::string &name) {
  return name == "lp.return" || name == "lp.jump" || name == "lp.switch" ||
         name == "lp.joinpoint" || name == "rgn.run";
}

} // namespace

std::vector<Diagnostic> verifyLp(const Module &m) {
  std::vector<Diagnostic> diags;
  for (const Func &f : m.funcs) {
    walk(f.body, [&](const Op &op, const OpPath &path) {
      Emitter error{f, path, diags};

      if (op.name == "lp.switch" || op.name == "lp.joinpoint") {
        if (op.name == "lp.switch") {
          const std::vector<BigInt> *cases = op.intListAttr("cases");
          if (cases && cases->size() + 1 != op.regions.size())
            error("switch case count does not match region count");
          if (cases) {
            std::set<BigInt> seen;
            for (const BigInt &c : *cases)
              if (!seen.insert(c).second)
                error("duplicate case value " + c.str() + " in lp.switch");
          }
        }
        for (const Region &r : op.regions)
          if (!r.blocks.empty() && !r.entry().empty() &&
              !isLpRegionTerminator(r.entry().terminator().name))
            error("'" + op.name +
                  "' region must end in lp.return or lp.jump, found '" +
                  r.entry().terminator().name + "'");
      } else if (op.name == "lp.jump") {
        std::optional<OpPath> target = jumpTarget(path, f);
        if (!target) {
          error("jump without enclosing joinpoint");
          return;
        }
        const Op *jp = opAt(f, *target);
        const Block &body = jp->regions[0].entry();
        bool match = body.params.size() == op.operands.size();
        for (std::size_t i = 0; match && i < op.operands.size(); ++i)
          match = f.typeOf(op.operands[i]) == f.typeOf(body.params[i]);
        if (!match)
          error("jump operands do not match joinpoint parameters");
      } else if (op.name == "lp.project") {
        if (auto idx = op.intAttr("index"); idx && *idx < 0)
          error("negative projection index");
      } else if (op.name == "lp.construct") {
        if (auto tag = op.intAttr("tag"); tag && *tag < 0)
          error("negative constructor tag");
      } else if (op.name == "call") {
        const std::string *fn = op.symbolAttr("fn");
        std::optional<CalleeInfo> callee =
            fn ? resolveCallee(m, *fn) : std::nullopt;
        if (!callee) {
          error("call to unknown function" + (fn ? " @" + *fn : ""));
          return;
        }
        if (callee->params.size() != op.operands.size()) {
          error("call arity mismatch: @" + *fn + " expects " +
                std::to_string(callee->params.size()) + " arguments, got " +
                std::to_string(op.operands.size()));
          return;
        }
        for (std::size_t i = 0; i < op.operands.size(); ++i)
          if (f.typeOf(op.operands[i]) != callee->params[i])
            error("call argument #" + std::to_string(i) +
                  " type mismatch for @" + *fn);
        if (f.typeOf(op.result()) != callee->result)
          error("call result type mismatch for @" + *fn);
        if (op.hasFlag("musttail")) {
          if (callee->result != f.resultType)
            error("musttail result type mismatch");
          // The call must be immediately followed by a return of its result.
          OpPath next = path;
          next.back() += 1;
          const Op *after = opAt(f, next);
          if (!after || (after->name != "lp.return" && after->name != "ret") ||
              after->operands.size() != 1 ||
              after->operands[0] != op.result())
            error("musttail not in tail position");
        }
      } else if (op.name == "lp.pap") {
        const std::string *fn = op.symbolAttr("fn");
        std::optional<CalleeInfo> callee =
            fn ? resolveCallee(m, *fn) : std::nullopt;
        if (!callee) {
          error("pap of unknown function" + (fn ? " @" + *fn : ""));
          return;
        }
        if (op.operands.size() >= callee->params.size())
          error("pap must be strictly partial: @" + *fn + " has arity " +
                std::to_string(callee->params.size()) + ", got " +
                std::to_string(op.operands.size()) + " arguments");
        bool boxed = callee->result.isObj();
        for (const Type &t : callee->params)
          boxed &= t.isObj();
        if (!boxed)
          error("closure target @" + *fn + " must take and return !lp.t");
      }
    });
  }
  return diags;
}

//===----------------------------------------------------------------------===//
// rgn verifier
//===----------------------------------------------------------------------===//

std::vector<Diagnostic> verifyRgn(const Module &m) {
  std::vector<Diagnostic> diags;
  for (const Func &f : m.funcs) {
    bool boundary = f.resultType.isRgnVal();
    for (const Type &t : f.paramTypes)
      boundary |= t.isRgnVal();
    if (boundary)
      diags.push_back(Diagnostic{Diagnostic::Severity::Error,
                                 "region value crosses function boundary",
                                 Location{f.name, {}}});

    auto checkParams = [&](const Block &block, const OpPath &path) {
      for (ValueId p : block.params)
        if (f.hasValue(p) && f.typeOf(p).isRgnVal())
          diags.push_back(Diagnostic{Diagnostic::Severity::Error,
                                     "region value as block parameter",
                                     Location{f.name, path}});
    };
    for (std::size_t b = 1; b < f.body.blocks.size(); ++b)
      checkParams(f.body.blocks[b], {static_cast<uint32_t>(b), 0});

    walk(f.body, [&](const Op &op, const OpPath &path) {
      Emitter error{f, path, diags};
      for (const Region &r : op.regions)
        for (const Block &b : r.blocks)
          checkParams(b, path);

      for (std::size_t i = 0; i < op.operands.size(); ++i) {
        if (!f.typeOf(op.operands[i]).isRgnVal())
          continue;
        bool allowed = (op.name == "select" && i >= 1) ||
                       (op.name == "switch" && i >= 1) ||
                       (op.name == "rgn.run" && i == 0);
        if (allowed)
          continue;
        if (op.name == "call")
          error("region value escapes via call");
        else if (op.name == "lp.return" || op.name == "ret")
          error("region value returned");
        else if (op.name == "lp.construct")
          error("region value stored in constructor");
        else
          error("invalid use of region value by '" + op.name + "'");
      }
      for (const Successor &s : op.successors)
        for (ValueId v : s.args)
          if (f.typeOf(v).isRgnVal())
            error("region value passed to a block");

      if (op.name == "rgn.val" && !op.regions.empty() &&
          !op.regions[0].blocks.empty() && !op.regions[0].entry().empty()) {
        const std::string &term = op.regions[0].entry().terminator().name;
        if (term != "lp.return" && term != "lp.jump" && term != "rgn.run")
          error("'rgn.val' region must end in lp.return, lp.jump or "
                "rgn.run, found '" +
                term + "'");
      }
    });
  }
  return diags;
}

} // namespace lz::dialect
