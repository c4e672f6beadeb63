// Copyright 2026 The LZ Authors
//
// Licensed under the Apache License v2.0 with LLVM Exceptions.
// See https://llvm.org/LICENSE.txt for license information.
// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception

#include "lz/Interp.h"
#include "lz/Dialects.h"

#include <algorithm>
#include <unordered_map>

namespace lz::interp {

using namespace lz::ir;

namespace {

const BigInt &smallLimit() {
  static const BigInt limit = BigInt(1) << 62;
  return limit;
}

} // namespace

bool fitsSmall(const BigInt &v) {
  return v >= -smallLimit() && v < smallLimit();
}

std::string toString(TrapKind kind) {
  switch (kind) {
  case TrapKind::RcUnderflow:
    return "rc underflow";
  case TrapKind::UseAfterFree:
    return "use after free";
  case TrapKind::ProjectOutOfBounds:
    return "project index out of bounds";
  case TrapKind::NotACtor:
    return "not a constructor";
  case TrapKind::NotAClosure:
    return "not a closure";
  case TrapKind::BadRuntimeArg:
    return "bad runtime argument";
  case TrapKind::UnknownSymbol:
    return "unknown symbol";
  case TrapKind::StepLimit:
    return "step limit exceeded";
  case TrapKind::Internal:
    return "internal error";
  }
  return "trap";
}

//===----------------------------------------------------------------------===//
// Argument parsing
//===----------------------------------------------------------------------===//

namespace {

class ArgParser {
public:
  explicit ArgParser(std::string_view s) : s_(s) {}

  Expected<std::vector<ArgValue>, std::string> run() {
    using R = Expected<std::vector<ArgValue>, std::string>;
    std::vector<ArgValue> out;
    skipSpace();
    if (pos_ == s_.size())
      return out;
    while (true) {
      auto v = value();
      if (!v)
        return R::failure(err_);
      out.push_back(std::move(*v));
      skipSpace();
      if (pos_ == s_.size())
        return out;
      if (s_[pos_] != ',')
        return R::failure("expected ',' at offset " + std::to_string(pos_));
      ++pos_;
    }
  }

private:
  void skipSpace() {
    while (pos_ < s_.size() && s_[pos_] == ' ')
      ++pos_;
  }

  std::optional<ArgValue> value() {
    skipSpace();
    if (pos_ < s_.size() && s_[pos_] == 'C') {
      ++pos_;
      if (s_.substr(pos_, 3) == "tor")
        pos_ += 3;
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
        ++pos_;
      if (start == pos_ || pos_ - start > 18) {
        err_ = "expected constructor tag at offset " + std::to_string(start);
        return std::nullopt;
      }
      uint64_t tag = std::stoull(std::string(s_.substr(start, pos_ - start)));
      std::vector<ArgValue> fields;
      if (pos_ < s_.size() && s_[pos_] == '(') {
        ++pos_;
        skipSpace();
        if (pos_ < s_.size() && s_[pos_] == ')') {
          ++pos_;
        } else {
          while (true) {
            auto f = value();
            if (!f)
              return std::nullopt;
            fields.push_back(std::move(*f));
            skipSpace();
            if (pos_ < s_.size() && s_[pos_] == ',') {
              ++pos_;
              continue;
            }
            if (pos_ < s_.size() && s_[pos_] == ')') {
              ++pos_;
              break;
            }
            err_ = "expected ',' or ')' at offset " + std::to_string(pos_);
            return std::nullopt;
          }
        }
      }
      return ArgValue::ctor(tag, std::move(fields));
    }
    std::size_t start = pos_;
    if (pos_ < s_.size() && s_[pos_] == '-')
      ++pos_;
    std::size_t digits = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
    if (digits == pos_) {
      err_ = "expected integer or constructor at offset " + std::to_string(start);
      return std::nullopt;
    }
    return ArgValue::integer(BigInt(std::string(s_.substr(start, pos_ - start))));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::string err_;
};

} // namespace

Expected<std::vector<ArgValue>, std::string> parseArgs(std::string_view text) {
  return ArgParser(text).run();
}

//===----------------------------------------------------------------------===//
// Machine
//===----------------------------------------------------------------------===//

namespace {

struct RtValue {
  enum class Kind : uint8_t { Small, Ref, Region };
  Kind kind = Kind::Small;
  int64_t small = 0;
  uint32_t ref = 0;
  const Region *region = nullptr;

  static RtValue ofSmall(int64_t v) { return RtValue{Kind::Small, v, 0, nullptr}; }
  static RtValue ofRef(uint32_t r) { return RtValue{Kind::Ref, 0, r, nullptr}; }
  static RtValue ofRegion(const Region *r) {
    return RtValue{Kind::Region, 0, 0, r};
  }
  bool isRef() const { return kind == Kind::Ref; }
};

struct RuntimeFnDesc {
  enum class Id : uint8_t { NatDecEq, NatAdd } id;
  uint32_t arity;
};

struct Cell {
  enum class Kind : uint8_t { Ctor, Big, Closure };
  Kind kind;
  bool alive = true;
  uint64_t rc = 1;
  uint64_t tag = 0;
  std::vector<RtValue> fields; // ctor fields or closure held args
  BigInt big;
  const Func *fn = nullptr;          // closure over a module function
  const RuntimeFnDesc *rt = nullptr; // closure over a runtime function
  uint32_t arity = 0;
};

enum class Opcode : uint8_t {
  Int,
  BigIntLit,
  Switch,
  Construct,
  GetLabel,
  Project,
  Pap,
  PapExtend,
  Joinpoint,
  Jump,
  Inc,
  Dec,
  Return,
  Call,
  RgnVal,
  RgnRun,
  Select,
  ValueSwitch,
  CmpEq,
  GlobalLoad,
  Br,
  CondBr,
  SwitchBr,
  Ret,
};

std::optional<Opcode> opcodeOf(std::string_view name) {
  static const std::unordered_map<std::string_view, Opcode> table = {
      {"lp.int", Opcode::Int},
      {"lp.bigint", Opcode::BigIntLit},
      {"lp.switch", Opcode::Switch},
      {"lp.construct", Opcode::Construct},
      {"lp.getlabel", Opcode::GetLabel},
      {"lp.project", Opcode::Project},
      {"lp.pap", Opcode::Pap},
      {"lp.papextend", Opcode::PapExtend},
      {"lp.joinpoint", Opcode::Joinpoint},
      {"lp.jump", Opcode::Jump},
      {"lp.inc", Opcode::Inc},
      {"lp.dec", Opcode::Dec},
      {"lp.return", Opcode::Return},
      {"call", Opcode::Call},
      {"rgn.val", Opcode::RgnVal},
      {"rgn.run", Opcode::RgnRun},
      {"select", Opcode::Select},
      {"switch", Opcode::ValueSwitch},
      {"cmp.eq", Opcode::CmpEq},
      {"global.load", Opcode::GlobalLoad},
      {"br", Opcode::Br},
      {"cond_br", Opcode::CondBr},
      {"switch_br", Opcode::SwitchBr},
      {"ret", Opcode::Ret},
  };
  auto it = table.find(name);
  if (it == table.end())
    return std::nullopt;
  return it->second;
}

struct TrapError {
  Trap trap;
};

[[noreturn]] void trap(TrapKind kind, std::string message) {
  throw TrapError{Trap{kind, std::move(message)}};
}

const RuntimeFnDesc *runtimeDesc(std::string_view name) {
  static const RuntimeFnDesc decEq{RuntimeFnDesc::Id::NatDecEq, 2};
  static const RuntimeFnDesc add{RuntimeFnDesc::Id::NatAdd, 2};
  if (name == "nat_dec_eq")
    return &decEq;
  if (name == "nat_add")
    return &add;
  return nullptr;
}

struct Decoded {
  Opcode code;
  const Op *jumpTarget = nullptr; // lp.jump: its joinpoint
  const Func *callee = nullptr;   // call / pap
  const RuntimeFnDesc *rt = nullptr;
  std::vector<int64_t> cases;     // switch family
  int64_t literal = 0;            // lp.int, project index, construct tag
  std::size_t global = 0;         // global.load
};

struct Frame {
  const Func *fn;
  std::vector<RtValue> slots;
  const Block *block;
  std::size_t idx = 0;
  /// Arguments left over from an over-saturated papextend; applied to the
  /// value this frame returns.
  std::vector<RtValue> overflow;
};

class Machine {
public:
  Machine(const Module &m, const EvalOptions &opts) : m_(m), opts_(opts) {
    for (std::size_t i = 0; i < m.globals.size(); ++i)
      globalIndex_.emplace(m.globals[i].name, i);
    for (const Func &f : m.funcs)
      decodeFunc(f);
  }

  ProgramResult run(const Func &entry, const std::vector<ArgValue> &args) {
    ProgramResult result;
    try {
      globals_.assign(m_.globals.size(), RtValue::ofSmall(0));
      for (std::size_t i = 0; i < m_.globals.size(); ++i) {
        const Func *init = m_.lookupFunc(m_.globals[i].initializer);
        if (!init)
          trap(TrapKind::UnknownSymbol, "@" + m_.globals[i].initializer);
        globals_[i] = runToCompletion(*init, {});
      }
      std::vector<RtValue> argv;
      for (std::size_t i = 0; i < args.size(); ++i)
        argv.push_back(materialize(args[i], entry.paramTypes[i]));
      RtValue v = runToCompletion(entry, std::move(argv));
      result.value = render(v);
      if (opts_.mode == RcMode::Strict) {
        release(v);
        for (RtValue &g : globals_)
          release(g);
      }
    } catch (TrapError &t) {
      if (t.trap.kind == TrapKind::RcUnderflow)
        result.heap.rcUnderflows = 1;
      if (t.trap.kind == TrapKind::UseAfterFree)
        result.heap.useAfterFree = 1;
      result.trap = std::move(t.trap);
    }
    for (const Cell &c : heap_)
      result.heap.liveAtExit += c.alive ? 1 : 0;
    result.steps = steps_;
    result.peakFrames = peak_;
    return result;
  }

private:
  //===--------------------------------------------------------------------===//
  // Decoding
  //===--------------------------------------------------------------------===//

  void decodeFunc(const Func &f) {
    walk(f.body, [&](const Op &op, const OpPath &path) {
      Decoded d;
      auto code = opcodeOf(op.name);
      d.code = code ? *code : Opcode::Ret;
      if (!code)
        unknownOps_.insert({&op, op.name});
      if (const std::string *sym = op.symbolAttr("fn")) {
        d.callee = m_.lookupFunc(*sym);
        d.rt = runtimeDesc(*sym);
      }
      if (const std::string *slot = op.symbolAttr("slot")) {
        auto it = globalIndex_.find(*slot);
        d.global = it == globalIndex_.end() ? SIZE_MAX : it->second;
      }
      if (const auto *cases = op.intListAttr("cases"))
        for (const BigInt &c : *cases)
          d.cases.push_back(static_cast<int64_t>(c));
      for (const char *key : {"value", "tag", "index"})
        if (auto v = op.intAttr(key); v && fitsSmall(*v))
          d.literal = static_cast<int64_t>(*v);
      if (d.code == Opcode::Jump) {
        auto target = dialect::jumpTarget(path, f);
        d.jumpTarget = target ? opAt(f, *target) : nullptr;
      }
      decoded_.emplace(&op, std::move(d));
    });
  }

  //===--------------------------------------------------------------------===//
  // Heap
  //===--------------------------------------------------------------------===//

  uint32_t alloc(Cell c) {
    heap_.push_back(std::move(c));
    return static_cast<uint32_t>(heap_.size() - 1);
  }

  Cell &live(const RtValue &v, const char *what) {
    Cell &c = heap_[v.ref];
    if (!c.alive)
      trap(TrapKind::UseAfterFree,
           std::string(what) + " of freed cell #" + std::to_string(v.ref));
    return c;
  }

  void checkAlive(const RtValue &v, const char *what) {
    if (v.isRef())
      live(v, what);
  }

  RtValue boxInt(const BigInt &v) {
    if (fitsSmall(v))
      return RtValue::ofSmall(static_cast<int64_t>(v));
    Cell c;
    c.kind = Cell::Kind::Big;
    c.big = v;
    return RtValue::ofRef(alloc(std::move(c)));
  }

  void inc(const RtValue &v) {
    if (!v.isRef())
      return;
    Cell &c = live(v, "inc");
    if (opts_.mode == RcMode::Strict)
      ++c.rc;
  }

  void dec(const RtValue &v) {
    if (!v.isRef() || opts_.mode != RcMode::Strict)
      return;
    if (!heap_[v.ref].alive)
      trap(TrapKind::RcUnderflow, "dec of freed cell #" + std::to_string(v.ref));
    std::vector<uint32_t> work;
    if (--heap_[v.ref].rc == 0)
      work.push_back(v.ref);
    while (!work.empty()) {
      uint32_t id = work.back();
      work.pop_back();
      Cell &c = heap_[id];
      c.alive = false;
      std::vector<RtValue> children = std::move(c.fields);
      c.fields.clear();
      for (const RtValue &child : children) {
        if (!child.isRef())
          continue;
        Cell &cc = heap_[child.ref];
        if (!cc.alive)
          trap(TrapKind::RcUnderflow,
               "dec of freed cell #" + std::to_string(child.ref));
        if (--cc.rc == 0)
          work.push_back(child.ref);
      }
    }
  }

  void release(const RtValue &v) {
    if (v.isRef() && heap_[v.ref].alive)
      dec(v);
  }

  RtValue materialize(const ArgValue &a, const Type &type) {
    if (!a.isCtor) {
      if (type.isInt())
        return RtValue::ofSmall(static_cast<int64_t>(a.value));
      return boxInt(a.value);
    }
    Cell c;
    c.kind = Cell::Kind::Ctor;
    c.tag = a.tag;
    for (const ArgValue &f : a.fields)
      c.fields.push_back(materialize(f, Type::obj()));
    return RtValue::ofRef(alloc(std::move(c)));
  }

  std::string render(const RtValue &root) {
    // Iterative so that long constructor chains cannot exhaust the host
    // stack. Work items are either a value or a literal suffix.
    std::string out;
    std::vector<std::variant<RtValue, std::string>> work{root};
    while (!work.empty()) {
      auto item = std::move(work.back());
      work.pop_back();
      if (auto *s = std::get_if<std::string>(&item)) {
        out += *s;
        continue;
      }
      const RtValue &v = std::get<RtValue>(item);
      if (v.kind == RtValue::Kind::Small) {
        out += std::to_string(v.small);
        continue;
      }
      if (v.kind == RtValue::Kind::Region) {
        out += "<region>";
        continue;
      }
      const Cell &c = live(v, "render");
      if (c.kind == Cell::Kind::Big) {
        out += c.big.str();
        continue;
      }
      std::vector<std::variant<RtValue, std::string>> parts;
      if (c.kind == Cell::Kind::Ctor) {
        out += "C" + std::to_string(c.tag) + "(";
      } else {
        out += "<closure @" + (c.fn ? c.fn->name : rtName(c.rt)) + "/" +
               std::to_string(c.arity) + " [";
      }
      for (std::size_t i = 0; i < c.fields.size(); ++i) {
        if (i)
          parts.push_back(std::string(", "));
        parts.push_back(c.fields[i]);
      }
      parts.push_back(std::string(c.kind == Cell::Kind::Ctor ? ")" : "]>"));
      for (auto it = parts.rbegin(); it != parts.rend(); ++it)
        work.push_back(std::move(*it));
    }
    return out;
  }

  static std::string rtName(const RuntimeFnDesc *rt) {
    return rt && rt->id == RuntimeFnDesc::Id::NatAdd ? "nat_add" : "nat_dec_eq";
  }

  //===--------------------------------------------------------------------===//
  // Runtime functions (borrow their arguments)
  //===--------------------------------------------------------------------===//

  BigInt numeric(const RtValue &v) {
    if (v.kind == RtValue::Kind::Small)
      return BigInt(v.small);
    if (!v.isRef())
      trap(TrapKind::BadRuntimeArg, "runtime call on a region value");
    const Cell &c = live(v, "runtime call");
    if (c.kind != Cell::Kind::Big)
      trap(TrapKind::BadRuntimeArg, "runtime call on a non-integer object");
    return c.big;
  }

  RtValue callRuntime(const RuntimeFnDesc &rt, const std::vector<RtValue> &args) {
    BigInt a = numeric(args[0]), b = numeric(args[1]);
    switch (rt.id) {
    case RuntimeFnDesc::Id::NatDecEq:
      return RtValue::ofSmall(a == b ? 1 : 0);
    case RuntimeFnDesc::Id::NatAdd:
      return boxInt(a + b);
    }
      trap(TrapKind::Internal, "unknown runtime function");
  }

  //===--------------------------------------------------------------------===//
  // Frames and control
  //===--------------------------------------------------------------------===//

  void pushFrame(const Func &f, std::vector<RtValue> args,
                 std::vector<RtValue> overflow) {
    Frame fr{&f, std::vector<RtValue>(f.numValues()), &f.body.entry(), 0,
             std::move(overflow)};
    const Block &entry = f.body.entry();
    for (std::size_t i = 0; i < entry.params.size() && i < args.size(); ++i)
      fr.slots[entry.params[i]] = args[i];
    stack_.push_back(std::move(fr));
    peak_ = std::max<uint64_t>(peak_, stack_.size());
  }

  RtValue runToCompletion(const Func &f, std::vector<RtValue> args) {
    std::size_t base = stack_.size();
    pushFrame(f, std::move(args), {});
    finished_.reset();
    while (!finished_ || stack_.size() > base)
      step(base);
    RtValue v = *finished_;
    finished_.reset();
    return v;
  }

  /// Delivers a value to the op the top frame is executing and advances.
  void complete(const RtValue &v) {
    Frame &fr = stack_.back();
    const Op &op = fr.block->ops[fr.idx];
    if (!op.results.empty())
      fr.slots[op.result()] = v;
    ++fr.idx;
  }

  void doReturn(const RtValue &v, std::size_t base) {
    Frame done = std::move(stack_.back());
    stack_.pop_back();
    if (!done.overflow.empty()) {
      if (auto r = apply(v, std::move(done.overflow)))
        complete(*r);
      return;
    }
    if (stack_.size() == base) {
      finished_ = v;
      return;
    }
    complete(v);
  }

  /// Applies closure `c` to owned `extra` arguments. Returns the result when
  /// it is available immediately; otherwise a frame has been pushed whose
  /// return completes the current op.
  std::optional<RtValue> apply(RtValue c, std::vector<RtValue> extra) {
    while (true) {
      if (!c.isRef())
        trap(TrapKind::NotAClosure, "papextend on a non-object");
      Cell &cell = live(c, "papextend");
      if (cell.kind != Cell::Kind::Closure)
        trap(TrapKind::NotAClosure, "papextend on a non-closure");
      const Func *fn = cell.fn;
      const RuntimeFnDesc *rt = cell.rt;
      uint32_t arity = cell.arity;
      std::vector<RtValue> all;
      if (opts_.mode == RcMode::Strict && cell.rc == 1) {
        // Unique: steal the held arguments and free the closure cell.
        all = std::move(cell.fields);
        cell.fields.clear();
        cell.alive = false;
      } else {
        all = cell.fields;
        for (const RtValue &h : all)
          inc(h);
        dec(c);
      }
      for (RtValue &e : extra)
        all.push_back(e);
      if (all.size() < arity) {
        Cell nc;
        nc.kind = Cell::Kind::Closure;
        nc.fn = fn;
        nc.rt = rt;
        nc.arity = arity;
        nc.fields = std::move(all);
        return RtValue::ofRef(alloc(std::move(nc)));
      }
      std::vector<RtValue> rest(all.begin() + arity, all.end());
      all.resize(arity);
      if (fn) {
        pushFrame(*fn, std::move(all), std::move(rest));
        return std::nullopt;
      }
      RtValue v = callRuntime(*rt, all);
      for (const RtValue &a : all)
        dec(a);
      if (rest.empty())
        return v;
      c = v;
      extra = std::move(rest);
    }
  }

  void enterRegion(Frame &fr, const Region &r, const std::vector<RtValue> &args) {
    const Block &b = r.entry();
    for (std::size_t i = 0; i < b.params.size() && i < args.size(); ++i)
      fr.slots[b.params[i]] = args[i];
    fr.block = &b;
    fr.idx = 0;
  }

  void branch(Frame &fr, const Successor &s) {
    std::vector<RtValue> args;
    for (ValueId v : s.args)
      args.push_back(fr.slots[v]);
    const Block &b = fr.fn->body.blocks[s.block];
    for (std::size_t i = 0; i < b.params.size() && i < args.size(); ++i)
      fr.slots[b.params[i]] = args[i];
    fr.block = &b;
    fr.idx = 0;
  }

  std::size_t pickCase(const std::vector<int64_t> &cases, int64_t v) {
    for (std::size_t i = 0; i < cases.size(); ++i)
      if (cases[i] == v)
        return i;
    return cases.size();
  }

  std::vector<RtValue> gather(const Frame &fr, const Op &op, std::size_t from) {
    std::vector<RtValue> out;
    for (std::size_t i = from; i < op.operands.size(); ++i)
      out.push_back(fr.slots[op.operands[i]]);
    return out;
  }

  void step(std::size_t base) {
    if (++steps_ > opts_.stepLimit)
      trap(TrapKind::StepLimit, "more than " + std::to_string(opts_.stepLimit) +
                                    " steps");
    Frame &fr = stack_.back();
    if (fr.idx >= fr.block->ops.size())
      trap(TrapKind::Internal, "fell off the end of a block");
    const Op &op = fr.block->ops[fr.idx];
    auto it = decoded_.find(&op);
    if (it == decoded_.end() || unknownOps_.count(&op))
      trap(TrapKind::Internal, "cannot execute '" + op.name + "'");
    const Decoded &d = it->second;
    auto operand = [&](std::size_t i) -> const RtValue & {
      return fr.slots[op.operands[i]];
    };
    auto setResult = [&](const RtValue &v) {
      fr.slots[op.result()] = v;
      ++fr.idx;
    };

    switch (d.code) {
    case Opcode::Int:
      setResult(RtValue::ofSmall(d.literal));
      return;
    case Opcode::BigIntLit: {
      Cell c;
      c.kind = Cell::Kind::Big;
      c.big = *op.intAttr("value");
      setResult(RtValue::ofRef(alloc(std::move(c))));
      return;
    }
    case Opcode::Construct: {
      Cell c;
      c.kind = Cell::Kind::Ctor;
      c.tag = static_cast<uint64_t>(d.literal);
      c.fields = gather(fr, op, 0);
      for (const RtValue &f : c.fields)
        checkAlive(f, "construct");
      setResult(RtValue::ofRef(alloc(std::move(c))));
      return;
    }
    case Opcode::GetLabel: {
      const RtValue &v = operand(0);
      if (!v.isRef() || live(v, "getlabel").kind != Cell::Kind::Ctor)
        trap(TrapKind::NotACtor, "getlabel on a non-constructor");
      setResult(RtValue::ofSmall(static_cast<int64_t>(heap_[v.ref].tag)));
      return;
    }
    case Opcode::Project: {
      const RtValue &v = operand(0);
      if (!v.isRef() || live(v, "project").kind != Cell::Kind::Ctor)
        trap(TrapKind::NotACtor, "project on a non-constructor");
      const Cell &c = heap_[v.ref];
      if (d.literal < 0 || static_cast<std::size_t>(d.literal) >= c.fields.size())
        trap(TrapKind::ProjectOutOfBounds,
             "project index " + std::to_string(d.literal) + " of C" +
                 std::to_string(c.tag) + " with " +
                 std::to_string(c.fields.size()) + " fields");
      setResult(c.fields[static_cast<std::size_t>(d.literal)]);
      return;
    }
    case Opcode::Pap: {
      Cell c;
      c.kind = Cell::Kind::Closure;
      c.fn = d.callee;
      c.rt = d.callee ? nullptr : d.rt;
      if (!c.fn && !c.rt)
        trap(TrapKind::UnknownSymbol, "@" + *op.symbolAttr("fn"));
      c.arity = c.fn ? static_cast<uint32_t>(c.fn->paramTypes.size())
                     : c.rt->arity;
      c.fields = gather(fr, op, 0);
      for (const RtValue &f : c.fields)
        checkAlive(f, "pap");
      setResult(RtValue::ofRef(alloc(std::move(c))));
      return;
    }
    case Opcode::PapExtend: {
      std::vector<RtValue> extra = gather(fr, op, 1);
      for (const RtValue &e : extra)
        checkAlive(e, "papextend");
      if (auto r = apply(operand(0), std::move(extra)))
        complete(*r);
      return;
    }
    case Opcode::Inc:
      inc(operand(0));
      ++fr.idx;
      return;
    case Opcode::Dec:
      dec(operand(0));
      ++fr.idx;
      return;
    case Opcode::Call: {
      std::vector<RtValue> args = gather(fr, op, 0);
      for (const RtValue &a : args)
        checkAlive(a, "call");
      if (d.callee) {
        if (op.hasFlag("musttail")) {
          std::vector<RtValue> overflow = std::move(fr.overflow);
          stack_.pop_back();
          pushFrame(*d.callee, std::move(args), std::move(overflow));
        } else {
          pushFrame(*d.callee, std::move(args), {});
        }
        return;
      }
      if (!d.rt)
        trap(TrapKind::UnknownSymbol, "@" + *op.symbolAttr("fn"));
      RtValue v = callRuntime(*d.rt, args);
      if (op.hasFlag("musttail")) {
        doReturn(v, base);
        return;
      }
      setResult(v);
      return;
    }
    case Opcode::Return:
    case Opcode::Ret:
      doReturn(operand(0), base);
      return;
    case Opcode::Switch: {
      std::size_t arm = pickCase(d.cases, operand(0).small);
      enterRegion(fr, op.regions[arm], {});
      return;
    }
    case Opcode::Joinpoint:
      enterRegion(fr, op.regions[1], {});
      return;
    case Opcode::Jump: {
      if (!d.jumpTarget)
        trap(TrapKind::Internal, "jump without enclosing joinpoint");
      enterRegion(fr, d.jumpTarget->regions[0], gather(fr, op, 0));
      return;
    }
    case Opcode::RgnVal:
      setResult(RtValue::ofRegion(&op.regions[0]));
      return;
    case Opcode::RgnRun: {
      const RtValue &r = operand(0);
      if (r.kind != RtValue::Kind::Region)
        trap(TrapKind::Internal, "rgn.run of a non-region value");
      enterRegion(fr, *r.region, gather(fr, op, 1));
      return;
    }
    case Opcode::Select:
      setResult(operand(0).small ? operand(1) : operand(2));
      return;
    case Opcode::ValueSwitch: {
      std::size_t arm = pickCase(d.cases, operand(0).small);
      setResult(operand(1 + arm));
      return;
    }
    case Opcode::CmpEq:
      setResult(RtValue::ofSmall(operand(0).small == operand(1).small ? 1 : 0));
      return;
    case Opcode::GlobalLoad: {
      if (d.global >= globals_.size())
        trap(TrapKind::UnknownSymbol, "global @" + *op.symbolAttr("slot"));
      RtValue v = globals_[d.global];
      inc(v);
      setResult(v);
      return;
    }
    case Opcode::Br:
      branch(fr, op.successors[0]);
      return;
    case Opcode::CondBr:
      branch(fr, op.successors[operand(0).small ? 0 : 1]);
      return;
    case Opcode::SwitchBr:
      branch(fr, op.successors[pickCase(d.cases, operand(0).small)]);
      return;
    }
  }

  const Module &m_;
  EvalOptions opts_;
  std::unordered_map<std::string, std::size_t> globalIndex_;
  std::unordered_map<const Op *, Decoded> decoded_;
  std::unordered_map<const Op *, std::string> unknownOps_;
  std::vector<Cell> heap_;
  std::vector<RtValue> globals_;
  std::vector<Frame> stack_;
  std::optional<RtValue> finished_;
  uint64_t steps_ = 0;
  uint64_t peak_ = 0;
};

} // namespace

Expected<ProgramResult, std::string> eval(const Module &m, std::string_view entry,
                                          const std::vector<ArgValue> &args,
                                          const EvalOptions &opts) {
  using R = Expected<ProgramResult, std::string>;
  const Func *f = m.lookupFunc(entry);
  if (!f)
    return R::failure("unknown entry function @" + std::string(entry));
  if (args.size() != f->paramTypes.size())
    return R::failure("@" + std::string(entry) + " expects " +
                      std::to_string(f->paramTypes.size()) + " arguments, got " +
                      std::to_string(args.size()));
  for (std::size_t i = 0; i < args.size(); ++i) {
    const Type &t = f->paramTypes[i];
    if (t.isRgnVal())
      return R::failure("entry parameters may not be region values");
    if (t.isInt() && (args[i].isCtor || !dialect::fitsType(args[i].value, t)))
      return R::failure("argument " + std::to_string(i) + " does not fit " +
                        toString(t));
  }
  return Machine(m, opts).run(*f, args);
}

bool sameOutcome(const ProgramResult &a, const ProgramResult &b, RcMode mode) {
  if (a.trapped() != b.trapped())
    return false;
  if (a.trapped())
    return a.trap->kind == b.trap->kind;
  if (a.value != b.value)
    return false;
  return mode != RcMode::Strict || a.heap == b.heap;
}

std::string metricsLine(const ProgramResult &r) {
  return "steps=" + std::to_string(r.steps) +
         " frames=" + std::to_string(r.peakFrames) +
         " live=" + std::to_string(r.heap.liveAtExit);
}

} // namespace lz::interp
