// Copyright 2026 The LZ Authors
//
// Licensed under the Apache License v2.0 with LLVM Exceptions.
// See https://llvm.org/LICENSE.txt for license information.
// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception

#include "Gen.h"

#include <functional>
#include <map>

namespace lz::test::gen {

using surface::Expr;
using surface::FnDef;
using surface::MatchRow;
using surface::Pattern;

namespace {

Expr intLit(int64_t v) {
  Expr e;
  e.kind = Expr::Kind::IntLit;
  e.value = v;
  return e;
}

Expr varRef(const std::string &name) {
  Expr e;
  e.kind = Expr::Kind::Var;
  e.name = name;
  return e;
}

Expr node(Expr::Kind kind, std::string name, std::vector<Expr> args) {
  Expr e;
  e.kind = kind;
  e.name = std::move(name);
  e.args = std::move(args);
  return e;
}

Expr ctorOf(int64_t tag, std::vector<Expr> args) {
  Expr e = node(Expr::Kind::Ctor, "", std::move(args));
  e.tag = tag;
  return e;
}

Pattern wild(std::string binder) {
  Pattern p;
  if (!binder.empty())
    p.binders.push_back(std::move(binder));
  return p;
}

Pattern intPat(int64_t v) {
  Pattern p;
  p.kind = Pattern::Kind::Int;
  p.value = v;
  return p;
}

Pattern ctorPat(int64_t tag, std::vector<std::string> binders) {
  Pattern p;
  p.kind = Pattern::Kind::Ctor;
  p.tag = tag;
  p.binders = std::move(binders);
  return p;
}

//===----------------------------------------------------------------------===//
// Typed surface generator
//===----------------------------------------------------------------------===//

enum class Ty : uint8_t { Nat, Data, Fn1, Fn2, Fn3 };

bool isFn(Ty t) { return t >= Ty::Fn1; }
unsigned fnArity(Ty t) { return static_cast<unsigned>(t) - 1; }
Ty fnTy(unsigned k) { return static_cast<Ty>(k + 1); }

/// Field types of each constructor tag.
const std::vector<Ty> &layout(int64_t tag) {
  static const std::vector<std::vector<Ty>> l = {
      {}, {Ty::Nat}, {Ty::Nat, Ty::Data}, {Ty::Data, Ty::Nat}};
  return l[static_cast<std::size_t>(tag)];
}

struct Sig {
  std::string name;
  std::vector<Ty> params;
  Ty ret;
};

struct Var {
  std::string name;
  Ty ty;
};
using Scope = std::vector<Var>;

class ProgramGen {
public:
  explicit ProgramGen(Rng &rng) : rng_(rng) {}

  SurfaceProgram run() {
    SurfaceProgram p;
    int helpers = static_cast<int>(rng_.range(1, 4));
    for (int i = 0; i < helpers; ++i) {
      Sig s;
      s.name = "f" + std::to_string(i);
      int arity = static_cast<int>(rng_.range(0, 3));
      for (int j = 0; j < arity; ++j)
        s.params.push_back(paramTy());
      s.ret = rng_.chance(0.7) ? Ty::Nat : Ty::Data;
      p.defs.push_back(define(s));
      sigs_.push_back(s);
    }
    Sig m{"main", {}, rng_.chance(0.6) ? Ty::Nat : Ty::Data};
    int arity = static_cast<int>(rng_.range(0, 2));
    for (int j = 0; j < arity; ++j)
      m.params.push_back(rng_.chance(0.5) ? Ty::Nat : Ty::Data);
    p.defs.push_back(define(m));

    for (const FnDef &d : p.defs)
      p.text += surface::toString(d) + "\n";
    for (int i = 0; i < 4; ++i) {
      std::string args;
      for (std::size_t j = 0; j < m.params.size(); ++j) {
        if (j)
          args += ",";
        args += m.params[j] == Ty::Nat ? std::to_string(rng_.range(0, 5))
                                       : dataArg(2);
      }
      p.argSets.push_back(args);
    }
    return p;
  }

private:
  Ty paramTy() {
    switch (rng_.range(0, 9)) {
    case 0:
    case 1:
    case 2:
    case 3:
      return Ty::Nat;
    case 4:
    case 5:
    case 6:
      return Ty::Data;
    case 7:
      return Ty::Fn1;
    case 8:
      return Ty::Fn2;
    default:
      return Ty::Fn3;
    }
  }

  std::string dataArg(int depth) {
    int64_t tag = rng_.range(0, depth > 0 ? 3 : 1);
    std::string s = "C" + std::to_string(tag) + "(";
    const auto &fs = layout(tag);
    for (std::size_t i = 0; i < fs.size(); ++i) {
      if (i)
        s += ",";
      s += fs[i] == Ty::Nat ? std::to_string(rng_.range(0, 5)) : dataArg(depth - 1);
    }
    return s + ")";
  }

  FnDef define(const Sig &s) {
    next_ = 0;
    FnDef d;
    d.name = s.name;
    Scope scope;
    for (Ty t : s.params) {
      d.params.push_back(fresh("p"));
      scope.push_back({d.params.back(), t});
    }
    d.body = tail(s.ret, scope, 3);
    return d;
  }

  std::string fresh(const char *prefix) {
    return prefix + std::to_string(next_++);
  }

  std::vector<const Var *> varsOf(const Scope &s, Ty t) {
    std::vector<const Var *> out;
    for (const Var &v : s)
      if (v.ty == t)
        out.push_back(&v);
    return out;
  }

  /// Functions usable as `pap f ...` to build a closure over `k` numbers.
  std::vector<const Sig *> papTargets(unsigned k) {
    std::vector<const Sig *> out;
    for (const Sig &s : sigs_) {
      if (s.ret != Ty::Nat || s.params.size() < k || s.params.empty())
        continue;
      bool ok = true;
      for (std::size_t i = s.params.size() - k; i < s.params.size(); ++i)
        ok &= s.params[i] == Ty::Nat;
      if (ok)
        out.push_back(&s);
    }
    return out;
  }

  bool feasible(Ty t, const Scope &s) {
    if (!isFn(t))
      return true;
    unsigned k = fnArity(t);
    if (k <= 2 || !varsOf(s, t).empty() || !papTargets(k).empty())
      return true;
    for (unsigned j = k + 1; j <= 3; ++j)
      if (!varsOf(s, fnTy(j)).empty())
        return true;
    return false;
  }

  std::vector<Expr> argsFor(const std::vector<Ty> &types, Scope &s, int depth) {
    std::vector<Expr> out;
    for (Ty t : types)
      out.push_back(value(t, s, depth));
    return out;
  }

  bool callable(const Sig &g, const Scope &s) {
    for (Ty t : g.params)
      if (!feasible(t, s))
        return false;
    return true;
  }

  Expr value(Ty t, Scope &s, int depth) {
    // Candidate lists outlive the option closures that refer to them.
    std::vector<std::function<Expr()>> options;
    std::vector<const Var *> vars = varsOf(s, t), closures, wider;
    std::vector<const Sig *> callees, targets;
    for (const Sig &g : sigs_)
      if (g.ret == t && callable(g, s))
        callees.push_back(&g);
    for (const Var &v : s)
      if (isFn(v.ty))
        closures.push_back(&v);

    if (!vars.empty())
      options.push_back([&] { return varRef(rng_.pick(vars)->name); });

    switch (t) {
    case Ty::Nat:
      options.push_back([&] {
        if (!rng_.chance(0.03))
          return intLit(rng_.range(0, 9));
        // Just past the unboxed range, so arithmetic crosses into bigints.
        Expr e = intLit(0);
        e.value = (BigInt(1) << 62) + rng_.range(0, 9);
        e.big = true;
        return e;
      });
      if (depth > 0) {
        options.push_back([&] {
          return node(Expr::Kind::App, "nat_add",
                      {value(Ty::Nat, s, depth - 1), value(Ty::Nat, s, depth - 1)});
        });
        if (!callees.empty())
          options.push_back([&] { return call(*rng_.pick(callees), s, depth); });
        if (!closures.empty())
          options.push_back([&] {
            const Var *c = rng_.pick(closures);
            std::vector<Ty> nats(fnArity(c->ty), Ty::Nat);
            return node(Expr::Kind::App, c->name, argsFor(nats, s, depth - 1));
          });
      }
      break;
    case Ty::Data:
      options.push_back([&] {
        int64_t tag = rng_.range(0, depth > 0 ? 3 : 1);
        return ctorOf(tag, argsFor(layout(tag), s, depth > 0 ? depth - 1 : 0));
      });
      if (depth > 0 && !callees.empty())
        options.push_back([&] { return call(*rng_.pick(callees), s, depth); });
      break;
    default: {
      unsigned k = fnArity(t);
      targets = papTargets(k);
      std::vector<const Sig *> usable;
      for (const Sig *g : targets)
        if (callable(*g, s))
          usable.push_back(g);
      targets = std::move(usable);
      if (!targets.empty())
        options.push_back([&, k] {
          const Sig *g = rng_.pick(targets);
          std::vector<Ty> prefix(g->params.begin(), g->params.end() - k);
          if (prefix.empty() && rng_.chance(0.5))
            return varRef(g->name); // read through the global slot
          return node(Expr::Kind::PApp, g->name, argsFor(prefix, s, 0));
        });
      if (k <= 2)
        options.push_back([&, k] {
          std::vector<Ty> prefix(2 - k, Ty::Nat);
          return node(Expr::Kind::PApp, "nat_add", argsFor(prefix, s, 0));
        });
      for (unsigned j = k + 1; j <= 3; ++j)
        for (const Var *v : varsOf(s, fnTy(j)))
          wider.push_back(v);
      if (!wider.empty())
        options.push_back([&, k] {
          const Var *c = rng_.pick(wider);
          std::vector<Ty> nats(fnArity(c->ty) - k, Ty::Nat);
          return node(Expr::Kind::App, c->name, argsFor(nats, s, 0));
        });
      break;
    }
    }
    return rng_.pick(options)();
  }

  Expr call(const Sig &g, Scope &s, int depth) {
    if (g.params.empty())
      return varRef(g.name);
    std::vector<Expr> args;
    for (Ty t : g.params)
      args.push_back(value(t, s, depth - 1));
    return node(Expr::Kind::App, g.name, std::move(args));
  }

  Expr tail(Ty t, Scope s, int depth) {
    double roll = rng_.range(0, 99) / 100.0;
    if (depth > 0 && roll < 0.25) {
      Ty bt = paramTy();
      if (!feasible(bt, s))
        bt = Ty::Nat;
      Expr rhs = value(bt, s, 2);
      std::string name = fresh("v");
      s.push_back({name, bt});
      Expr body = tail(t, s, depth - 1);
      Expr e = node(Expr::Kind::Let, name, {std::move(rhs), std::move(body)});
      return e;
    }
    if (depth > 0 && roll < 0.65)
      return match(t, s, depth);
    return value(t, s, 2);
  }

  Expr match(Ty t, const Scope &s, int depth) {
    Scope scope = s;
    Expr m;
    m.kind = Expr::Kind::Match;
    std::vector<Ty> cols;
    int ncols = static_cast<int>(rng_.range(1, 3));
    for (int i = 0; i < ncols; ++i) {
      Ty ct = rng_.chance(0.5) ? Ty::Nat : Ty::Data;
      cols.push_back(ct);
      auto vars = varsOf(scope, ct);
      if (!vars.empty() && rng_.chance(0.7))
        m.args.push_back(varRef(rng_.pick(vars)->name));
      else
        m.args.push_back(value(ct, scope, 1));
    }
    int rows = static_cast<int>(rng_.range(0, 4));
    for (int r = 0; r <= rows; ++r) {
      bool last = r == rows;
      MatchRow row;
      Scope inner = s;
      for (Ty ct : cols) {
        if (!last && rng_.chance(0.65)) {
          if (ct == Ty::Nat) {
            row.patterns.push_back(intPat(rng_.range(0, 4)));
          } else {
            int64_t tag = rng_.range(0, 3);
            std::vector<std::string> binders;
            for (Ty ft : layout(tag)) {
              if (rng_.chance(0.6)) {
                binders.push_back(fresh("b"));
                inner.push_back({binders.back(), ft});
              } else {
                binders.emplace_back();
              }
            }
            row.patterns.push_back(ctorPat(tag, std::move(binders)));
          }
          continue;
        }
        std::string binder;
        if (rng_.chance(0.4)) {
          binder = fresh("b");
          inner.push_back({binder, ct});
        }
        row.patterns.push_back(wild(binder));
      }
      row.rhs = std::make_shared<Expr>(tail(t, inner, depth - 1));
      m.rows.push_back(std::move(row));
    }
    return m;
  }

  Rng &rng_;
  std::vector<Sig> sigs_;
  int next_ = 0;
};

//===----------------------------------------------------------------------===//
// Match tables
//===----------------------------------------------------------------------===//

Expr tableRhs(Rng &rng, const std::vector<std::pair<std::string, bool>> &binders) {
  std::vector<std::string> nats;
  for (const auto &[n, isNat] : binders)
    if (isNat)
      nats.push_back(n);
  auto natTerm = [&]() {
    return !nats.empty() && rng.chance(0.6) ? varRef(rng.pick(nats))
                                            : intLit(rng.range(0, 9));
  };
  switch (rng.range(0, 3)) {
  case 0:
    return intLit(rng.range(0, 99));
  case 1:
    if (!binders.empty())
      return varRef(rng.pick(binders).first);
    return intLit(rng.range(0, 99));
  case 2: {
    std::vector<Expr> args;
    int n = static_cast<int>(rng.range(0, 2));
    for (int i = 0; i < n; ++i)
      args.push_back(!binders.empty() && rng.chance(0.5)
                         ? varRef(rng.pick(binders).first)
                         : intLit(rng.range(0, 9)));
    return ctorOf(rng.range(4, 5), std::move(args));
  }
  default:
    return node(Expr::Kind::App, "nat_add", {natTerm(), natTerm()});
  }
}

std::optional<Value> evalRhs(const Expr &e, const std::map<std::string, Value> &env) {
  switch (e.kind) {
  case Expr::Kind::IntLit:
    return Value{false, static_cast<int64_t>(e.value), 0, {}};
  case Expr::Kind::Var: {
    auto it = env.find(e.name);
    if (it == env.end())
      return std::nullopt;
    return it->second;
  }
  case Expr::Kind::Ctor: {
    Value v{true, 0, e.tag, {}};
    for (const Expr &a : e.args) {
      auto f = evalRhs(a, env);
      if (!f)
        return std::nullopt;
      v.fields.push_back(*f);
    }
    return v;
  }
  case Expr::Kind::App: {
    if (e.name != "nat_add" || e.args.size() != 2)
      return std::nullopt;
    auto a = evalRhs(e.args[0], env);
    auto b = evalRhs(e.args[1], env);
    if (!a || !b || a->isCtor || b->isCtor)
      return std::nullopt;
    return Value{false, a->n + b->n, 0, {}};
  }
  default:
    return std::nullopt;
  }
}

//===----------------------------------------------------------------------===//
// Regions
//===----------------------------------------------------------------------===//

enum class VTy : uint8_t { Obj, Word, Bit };

VTy resultTy(RegionInst::Kind k) {
  switch (k) {
  case RegionInst::Kind::Word:
  case RegionInst::Kind::Label:
    return VTy::Word;
  case RegionInst::Kind::Eq:
    return VTy::Bit;
  default:
    return VTy::Obj;
  }
}

std::vector<int> refsOf(const RegionRecipe &r, std::size_t upto, VTy t,
                        unsigned externals) {
  std::vector<int> out;
  for (std::size_t i = 0; i < upto; ++i)
    if (resultTy(r.insts[i].kind) == t)
      out.push_back(static_cast<int>(i));
  if (t == VTy::Obj) {
    for (unsigned j = 0; j < r.params; ++j)
      out.push_back(-1 - static_cast<int>(j));
    for (unsigned j = 0; j < externals; ++j)
      out.push_back(kExternal + static_cast<int>(j));
  }
  return out;
}

/// Operand types of an instruction kind.
std::vector<VTy> operandTys(const RegionInst &inst) {
  switch (inst.kind) {
  case RegionInst::Kind::Int:
  case RegionInst::Kind::Word:
    return {};
  case RegionInst::Kind::Construct:
    return std::vector<VTy>(inst.operands.size(), VTy::Obj);
  case RegionInst::Kind::Project:
  case RegionInst::Kind::Label:
    return {VTy::Obj};
  case RegionInst::Kind::Eq:
    return {VTy::Word, VTy::Word};
  case RegionInst::Kind::Select:
    return {VTy::Bit, VTy::Obj, VTy::Obj};
  case RegionInst::Kind::Add:
    return {VTy::Obj, VTy::Obj};
  }
  return {};
}

RegionInst randomInst(Rng &rng, const RegionRecipe &r, unsigned externals) {
  using K = RegionInst::Kind;
  bool haveWord = !refsOf(r, r.insts.size(), VTy::Word, externals).empty();
  bool haveBit = !refsOf(r, r.insts.size(), VTy::Bit, externals).empty();
  std::vector<K> kinds = {K::Int, K::Word, K::Construct, K::Project, K::Label, K::Add};
  if (haveWord)
    kinds.push_back(K::Eq);
  if (haveBit)
    kinds.push_back(K::Select);
  RegionInst inst;
  inst.kind = rng.pick(kinds);
  switch (inst.kind) {
  case K::Int:
  case K::Word:
  case K::Construct:
    inst.imm = rng.range(0, 3);
    break;
  case K::Project:
    inst.imm = rng.range(0, 1);
    break;
  default:
    break;
  }
  std::size_t n = inst.kind == K::Construct ? static_cast<std::size_t>(rng.range(0, 2))
                                            : 0;
  inst.operands.assign(n, 0);
  std::vector<VTy> tys = operandTys(inst);
  inst.operands.resize(tys.size());
  for (std::size_t i = 0; i < tys.size(); ++i)
    inst.operands[i] = rng.pick(refsOf(r, r.insts.size(), tys[i], externals));
  return inst;
}

std::string refName(int ref, std::size_t region) {
  std::string p = "%r" + std::to_string(region);
  if (ref >= kExternal)
    return "%e" + std::to_string(ref - kExternal);
  if (ref < 0)
    return p + "p" + std::to_string(-1 - ref);
  return p + "v" + std::to_string(ref);
}

std::string joinRefs(const std::vector<int> &refs, std::size_t region) {
  std::string s;
  for (std::size_t i = 0; i < refs.size(); ++i)
    s += (i ? ", " : "") + refName(refs[i], region);
  return s;
}

} // namespace

SurfaceProgram randomSurfaceProgram(Rng &rng) { return ProgramGen(rng).run(); }

MatchTable randomMatchTable(Rng &rng) {
  MatchTable t;
  int ncols = static_cast<int>(rng.range(1, 3));
  for (int i = 0; i < ncols; ++i)
    t.columns.push_back(rng.chance(0.5) ? Column::Int : Column::Ctor);
  int rows = static_cast<int>(rng.range(0, 5));
  int next = 0;
  for (int r = 0; r <= rows; ++r) {
    bool last = r == rows;
    MatchRow row;
    std::vector<std::pair<std::string, bool>> binders;
    for (Column c : t.columns) {
      if (!last && rng.chance(0.7)) {
        if (c == Column::Int) {
          row.patterns.push_back(intPat(rng.range(0, 4)));
        } else {
          int64_t tag = rng.range(0, 3);
          std::vector<std::string> names;
          for (int64_t f = 0; f < tag % 3; ++f) {
            if (rng.chance(0.6)) {
              names.push_back("x" + std::to_string(next++));
              binders.emplace_back(names.back(), true);
            } else {
              names.emplace_back();
            }
          }
          row.patterns.push_back(ctorPat(tag, std::move(names)));
        }
        continue;
      }
      std::string b;
      if (rng.chance(0.4)) {
        b = "x" + std::to_string(next++);
        binders.emplace_back(b, c == Column::Int);
      }
      row.patterns.push_back(wild(b));
    }
    row.rhs = std::make_shared<Expr>(tableRhs(rng, binders));
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::vector<Value> columnDomain(Column c) {
  std::vector<Value> out;
  if (c == Column::Int) {
    for (int64_t i = 0; i <= 4; ++i)
      out.push_back(Value{false, i, 0, {}});
    return out;
  }
  for (int64_t tag = 0; tag <= 3; ++tag) {
    Value v{true, 0, tag, {}};
    for (int64_t f = 0; f < tag % 3; ++f)
      v.fields.push_back(Value{false, 10 * tag + f + 1, 0, {}});
    out.push_back(v);
  }
  return out;
}

std::string render(const Value &v) {
  if (!v.isCtor)
    return std::to_string(v.n);
  std::string s = "C" + std::to_string(v.tag) + "(";
  for (std::size_t i = 0; i < v.fields.size(); ++i)
    s += (i ? ", " : "") + render(v.fields[i]);
  return s + ")";
}

std::string argText(const std::vector<Value> &args) {
  std::string s;
  for (std::size_t i = 0; i < args.size(); ++i)
    s += (i ? "," : "") + render(args[i]);
  return s;
}

std::optional<Value> decisionTable(const MatchTable &t,
                                   const std::vector<Value> &args) {
  for (const MatchRow &row : t.rows) {
    std::map<std::string, Value> env;
    bool matches = true;
    for (std::size_t c = 0; c < row.patterns.size() && matches; ++c) {
      const Pattern &p = row.patterns[c];
      const Value &v = args[c];
      switch (p.kind) {
      case Pattern::Kind::Int:
        matches = !v.isCtor && BigInt(v.n) == p.value;
        break;
      case Pattern::Kind::Ctor:
        matches = v.isCtor && v.tag == p.tag;
        for (std::size_t i = 0; matches && i < p.binders.size(); ++i)
          if (!p.binders[i].empty())
            env[p.binders[i]] = v.fields.at(i);
        break;
      case Pattern::Kind::Wild:
        if (!p.binders.empty())
          env[p.binders[0]] = v;
        break;
      }
    }
    if (matches)
      return evalRhs(*row.rhs, env);
  }
  return std::nullopt;
}

RegionRecipe randomRecipe(Rng &rng, unsigned externals) {
  RegionRecipe r;
  r.params = static_cast<unsigned>(rng.range(0, 2));
  int n = static_cast<int>(rng.range(1, 6));
  for (int i = 0; i < n; ++i)
    r.insts.push_back(randomInst(rng, r, externals));
  r.result = rng.pick(refsOf(r, r.insts.size(), VTy::Obj, externals));
  return r;
}

RegionRecipe mutate(Rng &rng, const RegionRecipe &r, unsigned externals) {
  using K = RegionInst::Kind;
  RegionRecipe m = r;
  switch (rng.range(0, 5)) {
  case 0: {
    std::vector<std::size_t> withImm;
    for (std::size_t i = 0; i < m.insts.size(); ++i)
      if (m.insts[i].kind == K::Int || m.insts[i].kind == K::Word ||
          m.insts[i].kind == K::Construct || m.insts[i].kind == K::Project)
        withImm.push_back(i);
    if (!withImm.empty()) {
      RegionInst &inst = m.insts[rng.pick(withImm)];
      inst.imm = inst.kind == K::Project ? 1 - inst.imm : (inst.imm + 1) % 4;
      return m;
    }
    break;
  }
  case 1: {
    std::vector<std::size_t> withOps;
    for (std::size_t i = 0; i < m.insts.size(); ++i)
      if (!m.insts[i].operands.empty())
        withOps.push_back(i);
    if (!withOps.empty()) {
      std::size_t i = rng.pick(withOps);
      RegionInst &inst = m.insts[i];
      std::vector<VTy> tys = operandTys(inst);
      std::size_t k = static_cast<std::size_t>(
          rng.range(0, static_cast<int64_t>(inst.operands.size()) - 1));
      inst.operands[k] = rng.pick(refsOf(m, i, tys[k], externals));
      return m;
    }
    break;
  }
  case 2: {
    std::vector<std::size_t> adds;
    for (std::size_t i = 0; i < m.insts.size(); ++i)
      if (m.insts[i].kind == K::Add)
        adds.push_back(i);
    if (!adds.empty()) {
      auto &ops = m.insts[rng.pick(adds)].operands;
      std::swap(ops[0], ops[1]);
      return m;
    }
    break;
  }
  case 3:
    m.result = rng.pick(refsOf(m, m.insts.size(), VTy::Obj, externals));
    return m;
  case 4: {
    // Same op and attributes, different result type: only types tell the
    // two regions apart. Restricted to unused literals to stay well typed.
    std::vector<bool> used(m.insts.size(), false);
    for (const RegionInst &inst : m.insts)
      for (int ref : inst.operands)
        if (ref >= 0 && ref < kExternal)
          used[static_cast<std::size_t>(ref)] = true;
    if (m.result >= 0 && m.result < kExternal)
      used[static_cast<std::size_t>(m.result)] = true;
    std::vector<std::size_t> literals;
    for (std::size_t i = 0; i < m.insts.size(); ++i)
      if (!used[i] && (m.insts[i].kind == K::Int || m.insts[i].kind == K::Word))
        literals.push_back(i);
    if (!literals.empty()) {
      RegionInst &inst = m.insts[rng.pick(literals)];
      inst.kind = inst.kind == K::Int ? K::Word : K::Int;
      return m;
    }
    break;
  }
  default:
    break;
  }
  RegionInst extra;
  extra.kind = K::Int;
  extra.imm = rng.range(0, 3);
  m.insts.push_back(extra);
  return m;
}

std::string regionModule(const std::vector<RegionRecipe> &recipes,
                         unsigned externals) {
  unsigned params = recipes.empty() ? 0 : recipes[0].params;
  std::string rty = "!rgn.val<";
  for (unsigned j = 0; j < params; ++j)
    rty += (j ? ", " : "") + std::string("!lp.t");
  rty += ">";

  std::string s = "module {\n  func @f(";
  for (unsigned j = 0; j < externals; ++j)
    s += (j ? ", " : "") + std::string("%e") + std::to_string(j) + ": !lp.t";
  for (std::size_t j = 0; j + 1 < recipes.size(); ++j)
    s += ", %c" + std::to_string(j) + ": i1";
  s += ") -> !lp.t {\n";

  for (std::size_t k = 0; k < recipes.size(); ++k) {
    const RegionRecipe &r = recipes[k];
    std::string p = "%r" + std::to_string(k);
    s += "    " + p + " = rgn.val {\n";
    if (r.params) {
      s += "    ^(";
      for (unsigned j = 0; j < r.params; ++j)
        s += (j ? ", " : "") + refName(-1 - static_cast<int>(j), k) + ": !lp.t";
      s += "):\n";
    }
    for (std::size_t i = 0; i < r.insts.size(); ++i) {
      const RegionInst &inst = r.insts[i];
      std::string def = "      " + refName(static_cast<int>(i), k) + " = ";
      std::string ops = joinRefs(inst.operands, k);
      using K = RegionInst::Kind;
      switch (inst.kind) {
      case K::Int:
        s += def + "lp.int " + std::to_string(inst.imm) + " : !lp.t\n";
        break;
      case K::Word:
        s += def + "lp.int " + std::to_string(inst.imm) + " : i64\n";
        break;
      case K::Construct:
        s += def + "lp.construct " + (ops.empty() ? "" : ops + " ") + "{tag = " +
             std::to_string(inst.imm) + "} : !lp.t\n";
        break;
      case K::Project:
        s += def + "lp.project " + ops + " {index = " + std::to_string(inst.imm) +
             "} : !lp.t\n";
        break;
      case K::Label:
        s += def + "lp.getlabel " + ops + " : i64\n";
        break;
      case K::Eq:
        s += def + "cmp.eq " + ops + " : i1\n";
        break;
      case K::Select:
        s += def + "select " + ops + " : !lp.t\n";
        break;
      case K::Add:
        s += def + "call " + ops + " {fn = @nat_add} : !lp.t\n";
        break;
      }
    }
    s += "      lp.return " + refName(r.result, k) + "\n";
    s += "    } : " + rty + "\n";
  }

  std::string cur = "%r0";
  for (std::size_t j = 1; j < recipes.size(); ++j) {
    std::string next = "%s" + std::to_string(j);
    s += "    " + next + " = select %c" + std::to_string(j - 1) + ", " + cur +
         ", %r" + std::to_string(j) + " : " + rty + "\n";
    cur = next;
  }
  s += "    rgn.run " + cur + "(";
  for (unsigned j = 0; j < params; ++j)
    s += (j ? ", " : "") + std::string("%e") + std::to_string(j % externals);
  s += ")\n  }\n}\n";
  return s;
}

} // namespace lz::test::gen
