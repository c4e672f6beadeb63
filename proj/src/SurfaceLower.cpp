// Copyright 2026 The LZ Authors
//
// Licensed under the Apache License v2.0 with LLVM Exceptions.
// See https://llvm.org/LICENSE.txt for license information.
// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception

#include "lz/Interp.h"
#include "lz/Surface.h"
#include "lz/Verifier.h"

#include <map>
#include <set>

namespace lz::surface {

using namespace lz::ir;

namespace {

struct Failure {
  ParseError error;
};

[[noreturn]] void fail(const std::string &msg, const SourceSpan &span) {
  throw Failure{ParseError{msg, span, {}}};
}

struct Callee {
  std::string symbol;
  std::size_t arity = 0;
  bool user = false;
};

using Env = std::map<std::string, ValueId>;

class ModuleLowering;

//===----------------------------------------------------------------------===//
// Function bodies
//===----------------------------------------------------------------------===//

class FnLowering {
public:
  FnLowering(ModuleLowering &mod, Func &f) : mod_(mod), f_(f) {}

  void lowerBody(const Expr &body, Env env) {
    compileTail(body, env, f_.body.entry());
  }

  ValueId emit(Block &out, Op op, Type type) {
    ValueId v = f_.addValue(std::move(type), DefKind::OpResult);
    op.results.push_back(v);
    out.ops.push_back(std::move(op));
    return v;
  }

  ValueId boxedInt(Block &out, const BigInt &value, bool big = false) {
    Op op;
    op.name = big || !interp::fitsSmall(value) ? "lp.bigint" : "lp.int";
    op.attrs.emplace("value", IntAttr{value});
    return emit(out, std::move(op), Type::obj());
  }

  ValueId machineInt(Block &out, const BigInt &value, unsigned width) {
    Op op;
    op.name = "lp.int";
    op.attrs.emplace("value", IntAttr{value});
    return emit(out, std::move(op), Type::i(width));
  }

  void emitReturn(Block &out, ValueId v) {
    Op ret;
    ret.name = "lp.return";
    ret.operands.push_back(v);
    out.ops.push_back(std::move(ret));
  }

  Func &func() { return f_; }

  ValueId compileValue(const Expr &e, Env &env, Block &out);
  void compileTail(const Expr &e, Env &env, Block &out);

private:
  ValueId call(Block &out, const Callee &c, std::vector<ValueId> args,
               bool musttail) {
    Op op;
    op.name = "call";
    op.operands = std::move(args);
    op.attrs.emplace("fn", SymbolAttr{c.symbol});
    if (musttail)
      op.attrs.emplace("musttail", FlagAttr{});
    return emit(out, std::move(op), Type::obj());
  }

  std::vector<ValueId> values(const std::vector<Expr> &args, Env &env,
                              Block &out) {
    std::vector<ValueId> vs;
    for (const Expr &a : args)
      vs.push_back(compileValue(a, env, out));
    return vs;
  }

  Callee callee(const Expr &e);
  void compileMatch(const Expr &e, Env &env, Block &out);

  ModuleLowering &mod_;
  Func &f_;
};

//===----------------------------------------------------------------------===//
// Module
//===----------------------------------------------------------------------===//

class ModuleLowering {
public:
  std::optional<Callee> lookup(const std::string &name) const {
    auto it = callees_.find(name);
    if (it == callees_.end())
      return std::nullopt;
    return it->second;
  }

  /// Global slot holding the closure of `name`, created on first use.
  std::string slotFor(const Callee &c) {
    auto it = slots_.find(c.symbol);
    if (it != slots_.end())
      return it->second;
    std::string slot = fresh(c.symbol + "_slot");
    std::string init = fresh("init_" + c.symbol);
    slots_.emplace(c.symbol, slot);
    m_.globals.push_back(Global{slot, init});

    Func f = Func::create(init, {}, Type::obj());
    Op pap;
    pap.name = "lp.pap";
    pap.attrs.emplace("fn", SymbolAttr{c.symbol});
    ValueId v = f.addValue(Type::obj(), DefKind::OpResult);
    pap.results.push_back(v);
    f.body.entry().ops.push_back(std::move(pap));
    Op ret;
    ret.name = "lp.return";
    ret.operands.push_back(v);
    f.body.entry().ops.push_back(std::move(ret));
    inits_.push_back(std::move(f));
    return slot;
  }

  LowerResult run(const std::vector<FnDef> &defs) {
    std::vector<ParseError> errors;
    callees_["nat_add"] = Callee{"nat_add", 2, false};
    used_ = {"nat_add", "nat_dec_eq"};
    std::map<std::string, const FnDef *> seen;
    for (const FnDef &d : defs) {
      if (d.name == "nat_add" || d.name == "nat_dec_eq")
        errors.push_back({"redefinition of builtin '" + d.name + "'", d.span, {}});
      else if (seen.count(d.name))
        errors.push_back({"redefinition of '" + d.name + "'", d.span, {}});
      else if (!isValidSymbol(d.name))
        errors.push_back({"invalid function name '" + d.name + "'", d.span, {}});
      seen.emplace(d.name, &d);
      callees_[d.name] = Callee{d.name, d.params.size(), true};
      used_.insert(d.name);
    }
    if (!errors.empty())
      return LowerResult::failure(std::move(errors));

    for (const FnDef &d : defs) {
      try {
        m_.funcs.push_back(lowerDef(d));
      } catch (Failure &f) {
        errors.push_back(std::move(f.error));
      }
    }
    if (!errors.empty())
      return LowerResult::failure(std::move(errors));
    for (Func &f : inits_)
      m_.funcs.push_back(std::move(f));

    for (const Diagnostic &d : verifyModule(m_)) {
      auto it = seen.find(d.loc.func);
      SourceSpan span = it != seen.end() ? it->second->span : SourceSpan{};
      errors.push_back({"internal error: " + d.message, span, {}});
    }
    if (!errors.empty())
      return LowerResult::failure(std::move(errors));
    return std::move(m_);
  }

private:
  std::string fresh(const std::string &base) {
    std::string name = base;
    for (int i = 1; used_.count(name); ++i)
      name = base + "_" + std::to_string(i);
    used_.insert(name);
    return name;
  }

  Func lowerDef(const FnDef &d) {
    std::set<std::string> params;
    for (const std::string &p : d.params)
      if (!params.insert(p).second)
        fail("duplicate parameter '" + p + "'", d.span);
    Func f = Func::create(d.name, std::vector<Type>(d.params.size(), Type::obj()),
                          Type::obj());
    Env env;
    for (std::size_t i = 0; i < d.params.size(); ++i)
      env[d.params[i]] = f.body.entry().params[i];
    FnLowering(*this, f).lowerBody(d.body, std::move(env));
    return f;
  }

  Module m_;
  std::map<std::string, Callee> callees_;
  std::map<std::string, std::string> slots_;
  std::set<std::string> used_;
  std::vector<Func> inits_;
};

//===----------------------------------------------------------------------===//
// Match compilation
//===----------------------------------------------------------------------===//

/// Decision tree over the rows, built column by column from the left. The
/// same tree is walked twice: once to count how often each row is reached,
/// once to emit code.
class MatchCompiler {
public:
  MatchCompiler(FnLowering &fn, const std::vector<MatchRow> &rows,
                std::vector<ValueId> scrut, const Env &env)
      : fn_(fn), rows_(rows), scrut_(std::move(scrut)), env_(env) {}

  void run(Block &out) {
    checkColumns();
    std::vector<std::size_t> all;
    for (std::size_t i = 0; i < rows_.size(); ++i)
      all.push_back(i);
    reached_.assign(rows_.size(), 0);
    count(all, 0);

    for (std::size_t r = 0; r < rows_.size(); ++r)
      if (reached_[r] > 1) {
        shared_.emplace(r, shared_.size());
        slots_ = std::max(slots_, binderNames(r).size());
      }

    if (shared_.empty()) {
      emitNode(all, 0, {}, out);
      return;
    }

    Op jp;
    jp.name = "lp.joinpoint";
    jp.regions.resize(2);
    Block &body = jp.regions[0].blocks.emplace_back();
    Block &scope = jp.regions[1].blocks.emplace_back();
    emitJoinBody(body);
    emitNode(all, 0, {}, scope);
    out.ops.push_back(std::move(jp));
  }

private:
  struct Step {
    enum class Kind : uint8_t { Leaf, Skip, IntTest, CtorSwitch } kind;
    std::size_t row = 0;
    BigInt value;
    std::vector<int64_t> tags;
  };

  using Rows = std::vector<std::size_t>;
  using Projections = std::map<std::pair<std::size_t, std::size_t>, ValueId>;

  const Pattern &pat(std::size_t row, std::size_t col) const {
    return rows_[row].patterns[col];
  }

  void checkColumns() const {
    for (std::size_t c = 0; c < scrut_.size(); ++c) {
      const Pattern *ints = nullptr, *ctors = nullptr;
      for (const MatchRow &row : rows_) {
        const Pattern &p = row.patterns.at(c);
        if (p.kind == Pattern::Kind::Int)
          ints = &p;
        else if (p.kind == Pattern::Kind::Ctor)
          ctors = &p;
      }
      if (ints && ctors)
        fail("integer and constructor patterns mixed in one column",
             ctors->span);
    }
  }

  Step decide(const Rows &rows, std::size_t col) const {
    std::size_t first = rows.front();
    bool irrefutable = true;
    for (std::size_t c = col; c < scrut_.size(); ++c)
      irrefutable &= pat(first, c).isWild();
    if (irrefutable)
      return Step{Step::Kind::Leaf, first, {}, {}};

    Step s{Step::Kind::Skip, 0, {}, {}};
    for (std::size_t r : rows) {
      const Pattern &p = pat(r, col);
      if (p.kind == Pattern::Kind::Int) {
        return Step{Step::Kind::IntTest, 0, p.value, {}};
      } else if (p.kind == Pattern::Kind::Ctor) {
        s.kind = Step::Kind::CtorSwitch;
        if (std::find(s.tags.begin(), s.tags.end(), p.tag) == s.tags.end())
          s.tags.push_back(p.tag);
      }
    }
    return s;
  }

  Rows filter(const Rows &rows, std::size_t col,
              const std::function<bool(const Pattern &)> &keep) const {
    Rows out;
    for (std::size_t r : rows)
      if (pat(r, col).isWild() || keep(pat(r, col)))
        out.push_back(r);
    return out;
  }

  Rows intMatches(const Rows &rows, std::size_t col, const BigInt &v) const {
    return filter(rows, col, [&](const Pattern &p) { return p.value == v; });
  }
  Rows intMisses(const Rows &rows, std::size_t col, const BigInt &v) const {
    return filter(rows, col, [&](const Pattern &p) { return p.value != v; });
  }
  Rows tagMatches(const Rows &rows, std::size_t col, int64_t tag) const {
    return filter(rows, col, [&](const Pattern &p) { return p.tag == tag; });
  }
  Rows wildOnly(const Rows &rows, std::size_t col) const {
    return filter(rows, col, [](const Pattern &) { return false; });
  }

  void count(const Rows &rows, std::size_t col) {
    Step s = decide(rows, col);
    switch (s.kind) {
    case Step::Kind::Leaf:
      ++reached_[s.row];
      return;
    case Step::Kind::Skip:
      return count(rows, col + 1);
    case Step::Kind::IntTest:
      count(intMatches(rows, col, s.value), col + 1);
      return count(intMisses(rows, col, s.value), col);
    case Step::Kind::CtorSwitch:
      for (int64_t t : s.tags)
        count(tagMatches(rows, col, t), col + 1);
      return count(wildOnly(rows, col), col + 1);
    }
  }

  /// Names bound by a row, in column order.
  std::vector<std::string> binderNames(std::size_t row) const {
    std::vector<std::string> names;
    for (const Pattern &p : rows_[row].patterns)
      for (const std::string &b : p.binders)
        if (!b.empty())
          names.push_back(b);
    return names;
  }

  std::vector<ValueId> binderValues(std::size_t row,
                                    const Projections &proj) const {
    std::vector<ValueId> vs;
    for (std::size_t c = 0; c < scrut_.size(); ++c) {
      const Pattern &p = pat(row, c);
      for (std::size_t i = 0; i < p.binders.size(); ++i) {
        if (p.binders[i].empty())
          continue;
        vs.push_back(p.isWild() ? scrut_[c] : proj.at({c, i}));
      }
    }
    return vs;
  }

  void emitRhs(std::size_t row, const std::vector<ValueId> &vals, Block &out) {
    Env env = env_;
    std::vector<std::string> names = binderNames(row);
    for (std::size_t i = 0; i < names.size(); ++i)
      env[names[i]] = vals[i];
    fn_.compileTail(*rows_[row].rhs, env, out);
  }

  void emitJoinBody(Block &body) {
    auto param = [&](Type t) {
      ValueId v = fn_.func().addValue(std::move(t), DefKind::BlockParam);
      body.params.push_back(v);
      return v;
    };
    ValueId selector = kNoValue;
    if (shared_.size() > 1)
      selector = param(Type::i(64));
    std::vector<ValueId> slots;
    for (std::size_t i = 0; i < slots_; ++i)
      slots.push_back(param(Type::obj()));

    if (shared_.size() == 1) {
      emitRhs(shared_.begin()->first, slots, body);
      return;
    }
    Op sw;
    sw.name = "lp.switch";
    sw.operands.push_back(selector);
    std::vector<BigInt> cases;
    std::vector<std::size_t> order(shared_.size());
    for (auto [row, index] : shared_)
      order[index] = row;
    for (std::size_t i = 0; i + 1 < order.size(); ++i)
      cases.push_back(BigInt(i));
    sw.attrs.emplace("cases", IntListAttr{cases});
    for (std::size_t row : order)
      emitRhs(row, slots, sw.regions.emplace_back().blocks.emplace_back());
    body.ops.push_back(std::move(sw));
  }

  void emitLeaf(std::size_t row, const Projections &proj, Block &out) {
    std::vector<ValueId> vals = binderValues(row, proj);
    auto it = shared_.find(row);
    if (it == shared_.end())
      return emitRhs(row, vals, out);
    Op jump;
    jump.name = "lp.jump";
    if (shared_.size() > 1)
      jump.operands.push_back(fn_.machineInt(out, BigInt(it->second), 64));
    for (ValueId v : vals)
      jump.operands.push_back(v);
    // Slots this row does not bind still need a value of the right type.
    while (jump.operands.size() < slots_ + (shared_.size() > 1 ? 1 : 0))
      jump.operands.push_back(scrut_[0]);
    out.ops.push_back(std::move(jump));
  }

  void emitNode(const Rows &rows, std::size_t col, Projections proj,
                Block &out) {
    Step s = decide(rows, col);
    switch (s.kind) {
    case Step::Kind::Leaf:
      return emitLeaf(s.row, proj, out);
    case Step::Kind::Skip:
      return emitNode(rows, col + 1, std::move(proj), out);
    case Step::Kind::IntTest: {
      ValueId k = fn_.boxedInt(out, s.value);
      Op eq;
      eq.name = "call";
      eq.operands = {scrut_[col], k};
      eq.attrs.emplace("fn", SymbolAttr{"nat_dec_eq"});
      ValueId e = fn_.emit(out, std::move(eq), Type::i(8));
      Op sw;
      sw.name = "lp.switch";
      sw.operands.push_back(e);
      sw.attrs.emplace("cases", IntListAttr{{BigInt(1)}});
      sw.regions.resize(2);
      emitNode(intMatches(rows, col, s.value), col + 1, proj,
               sw.regions[0].blocks.emplace_back());
      emitNode(intMisses(rows, col, s.value), col, proj,
               sw.regions[1].blocks.emplace_back());
      out.ops.push_back(std::move(sw));
      return;
    }
    case Step::Kind::CtorSwitch: {
      Op label;
      label.name = "lp.getlabel";
      label.operands.push_back(scrut_[col]);
      ValueId l = fn_.emit(out, std::move(label), Type::i(64));
      Op sw;
      sw.name = "lp.switch";
      sw.operands.push_back(l);
      std::vector<BigInt> cases;
      for (int64_t t : s.tags)
        cases.push_back(BigInt(t));
      sw.attrs.emplace("cases", IntListAttr{cases});
      sw.regions.resize(s.tags.size() + 1);
      for (std::size_t a = 0; a < s.tags.size(); ++a) {
        Block &arm = sw.regions[a].blocks.emplace_back();
        Rows armRows = tagMatches(rows, col, s.tags[a]);
        Projections inner = proj;
        for (std::size_t r : armRows) {
          const Pattern &p = pat(r, col);
          if (p.isWild())
            continue;
          for (std::size_t i = 0; i < p.binders.size(); ++i) {
            if (p.binders[i].empty() || inner.count({col, i}))
              continue;
            Op project;
            project.name = "lp.project";
            project.operands.push_back(scrut_[col]);
            project.attrs.emplace("index", IntAttr{BigInt(i)});
            inner[{col, i}] = fn_.emit(arm, std::move(project), Type::obj());
          }
        }
        emitNode(armRows, col + 1, std::move(inner), arm);
      }
      emitNode(wildOnly(rows, col), col + 1, proj,
               sw.regions.back().blocks.emplace_back());
      out.ops.push_back(std::move(sw));
      return;
    }
    }
  }

  FnLowering &fn_;
  const std::vector<MatchRow> &rows_;
  std::vector<ValueId> scrut_;
  const Env &env_;
  std::vector<std::size_t> reached_;
  /// Shared row -> selector value.
  std::map<std::size_t, std::size_t> shared_;
  std::size_t slots_ = 0;
};

//===----------------------------------------------------------------------===//
// Expressions
//===----------------------------------------------------------------------===//

Callee FnLowering::callee(const Expr &e) {
  std::optional<Callee> c = mod_.lookup(e.name);
  if (!c)
    fail("unresolved symbol '" + e.name + "'", e.span);
  return *c;
}

ValueId FnLowering::compileValue(const Expr &e, Env &env, Block &out) {
  switch (e.kind) {
  case Expr::Kind::IntLit:
    return boxedInt(out, e.value, e.big);
  case Expr::Kind::Var: {
    auto it = env.find(e.name);
    if (it != env.end())
      return it->second;
    Callee c = callee(e);
    if (c.arity == 0)
      return call(out, c, {}, false);
    Op load;
    load.name = "global.load";
    load.attrs.emplace("slot", SymbolAttr{mod_.slotFor(c)});
    return emit(out, std::move(load), Type::obj());
  }
  case Expr::Kind::Let: {
    Env inner = env;
    inner[e.name] = compileValue(e.args[0], env, out);
    return compileValue(e.args[1], inner, out);
  }
  case Expr::Kind::Ctor: {
    Op op;
    op.name = "lp.construct";
    op.operands = values(e.args, env, out);
    op.attrs.emplace("tag", IntAttr{BigInt(e.tag)});
    return emit(out, std::move(op), Type::obj());
  }
  case Expr::Kind::App: {
    auto local = env.find(e.name);
    if (local != env.end()) {
      Op op;
      op.name = "lp.papextend";
      op.operands.push_back(local->second);
      for (ValueId v : values(e.args, env, out))
        op.operands.push_back(v);
      return emit(out, std::move(op), Type::obj());
    }
    Callee c = callee(e);
    if (e.args.size() != c.arity)
      fail("'" + e.name + "' expects " + std::to_string(c.arity) +
               " arguments, got " + std::to_string(e.args.size()),
           e.span);
    return call(out, c, values(e.args, env, out), false);
  }
  case Expr::Kind::PApp: {
    if (env.count(e.name))
      fail("pap needs a top-level function, '" + e.name + "' is local",
           e.span);
    Callee c = callee(e);
    if (e.args.size() >= c.arity)
      fail("pap of '" + e.name + "' must be strictly partial: arity " +
               std::to_string(c.arity) + ", got " +
               std::to_string(e.args.size()) + " arguments",
           e.span);
    Op op;
    op.name = "lp.pap";
    op.operands = values(e.args, env, out);
    op.attrs.emplace("fn", SymbolAttr{c.symbol});
    return emit(out, std::move(op), Type::obj());
  }
  case Expr::Kind::Match:
    fail("match must be in tail position", e.span);
  }
  fail("unsupported expression", e.span);
}

void FnLowering::compileTail(const Expr &e, Env &env, Block &out) {
  if (e.kind == Expr::Kind::Let) {
    Env inner = env;
    inner[e.name] = compileValue(e.args[0], env, out);
    return compileTail(e.args[1], inner, out);
  }
  if (e.kind == Expr::Kind::Match)
    return compileMatch(e, env, out);
  if (e.kind == Expr::Kind::App && !env.count(e.name)) {
    Callee c = callee(e);
    if (c.user && e.args.size() == c.arity) {
      std::vector<ValueId> args = values(e.args, env, out);
      return emitReturn(out, call(out, c, std::move(args), true));
    }
  }
  emitReturn(out, compileValue(e, env, out));
}

void FnLowering::compileMatch(const Expr &e, Env &env, Block &out) {
  std::vector<ValueId> scrut = values(e.args, env, out);
  for (const MatchRow &row : e.rows)
    if (row.patterns.size() != scrut.size())
      fail("arity mismatch: row has " + std::to_string(row.patterns.size()) +
               " patterns, match has " + std::to_string(scrut.size()) +
               " scrutinees",
           e.span);
  if (e.rows.empty())
    fail("match without rows", e.span);
  for (const Pattern &p : e.rows.back().patterns)
    if (!p.isWild())
      fail("match must end in wildcard row", e.span);
  MatchCompiler(*this, e.rows, std::move(scrut), env).run(out);
}

} // namespace

LowerResult lowerSurface(const std::vector<FnDef> &defs) {
  return ModuleLowering().run(defs);
}

LowerResult compileSurface(std::string_view text) {
  SurfaceResult defs = parseSurface(text);
  if (!defs.ok())
    return LowerResult::failure(defs.error());
  return lowerSurface(*defs);
}

Expected<Func, std::string> compileMatchFunc(const std::string &name,
                                             std::size_t numScrutinees,
                                             const std::vector<MatchRow> &rows) {
  using R = Expected<Func, std::string>;
  FnDef def;
  def.name = name;
  Expr match;
  match.kind = Expr::Kind::Match;
  match.rows = rows;
  for (std::size_t i = 0; i < numScrutinees; ++i) {
    // `$` cannot appear in surface names, so binders never clash.
    def.params.push_back("$" + std::to_string(i));
    Expr v;
    v.kind = Expr::Kind::Var;
    v.name = def.params.back();
    match.args.push_back(std::move(v));
  }
  def.body = std::move(match);
  LowerResult m = lowerSurface({def});
  if (!m.ok())
    return R::failure(text::toString(m.error().front()));
  return std::move(m->funcs.front());
}

} // namespace lz::surface
