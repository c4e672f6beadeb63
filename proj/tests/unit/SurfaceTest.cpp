// Copyright 2026 The LZ Authors
//
// Licensed under the Apache License v2.0 with LLVM Exceptions.
// See https://llvm.org/LICENSE.txt for license information.
// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception

#include "TestUtil.h"
#include "lz/Lowering.h"
#include "lz/Surface.h"
#include "lz/Text.h"

#include <gtest/gtest.h>

using namespace lz;
using namespace lz::ir;
using namespace lz::surface;
using lz::test::run;

namespace {

Module compileOk(std::string_view src) {
  LowerResult m = compileSurface(src);
  if (!m.ok()) {
    std::string all;
    for (const ParseError &e : m.error())
      all += text::toString(e) + "\n";
    ADD_FAILURE() << all;
    return {};
  }
  return std::move(m).value();
}

std::string firstError(std::string_view src) {
  LowerResult m = compileSurface(src);
  if (m.ok())
    return "<no error>";
  return m.error().front().message;
}

std::size_t countNamed(const Func &f, std::string_view name) {
  std::size_t n = 0;
  walk(f.body, [&](const Op &op, const OpPath &) { n += op.name == name; });
  return n;
}

std::size_t countLiteral(const Func &f, int64_t v) {
  std::size_t n = 0;
  walk(f.body, [&](const Op &op, const OpPath &) {
    n += op.name == "lp.int" && op.intAttr("value") == BigInt(v);
  });
  return n;
}

} // namespace

TEST(SurfaceParse, IntegerMatch) {
  auto defs = parseSurface("def f x := match x with | 42 => 43 | _ => 99999999");
  ASSERT_TRUE(defs.ok());
  ASSERT_EQ(defs->size(), 1u);
  const Expr &body = (*defs)[0].body;
  ASSERT_EQ(body.kind, Expr::Kind::Match);
  ASSERT_EQ(body.rows.size(), 2u);
  EXPECT_EQ(body.rows[0].patterns[0].kind, Pattern::Kind::Int);
  EXPECT_EQ(body.rows[0].patterns[0].value, 42);
  EXPECT_TRUE(body.rows[1].patterns[0].isWild());
}

TEST(SurfaceParse, NestedConstructors) {
  auto defs = parseSurface("def one := Ctor1(Ctor0())");
  ASSERT_TRUE(defs.ok());
  const Expr &body = (*defs)[0].body;
  ASSERT_EQ(body.kind, Expr::Kind::Ctor);
  EXPECT_EQ(body.tag, 1);
  ASSERT_EQ(body.args.size(), 1u);
  EXPECT_EQ(body.args[0].kind, Expr::Kind::Ctor);
  EXPECT_EQ(body.args[0].tag, 0);
}

TEST(SurfaceParse, MissingDefaultRow) {
  auto defs = parseSurface("def bad := match x with | 1 => 2");
  ASSERT_FALSE(defs.ok());
  EXPECT_EQ(defs.error().front().message, "match must end in wildcard row");
  EXPECT_EQ(defs.error().front().span.line, 1u);
  EXPECT_EQ(defs.error().front().span.column, 12u);
}

TEST(SurfaceParse, RowArity) {
  auto defs = parseSurface("def f x y := match x, y with | 1 => 2 | _, _ => 3");
  ASSERT_FALSE(defs.ok());
  EXPECT_EQ(defs.error().front().message,
            "arity mismatch: row has 1 patterns, match has 2 scrutinees");
}

TEST(SurfaceParse, CommentsAndErrors) {
  auto ok = parseSurface("-- nothing\ndef f := 1 -- trailing\n");
  ASSERT_TRUE(ok.ok());
  auto bad = parseSurface("def f := \n  ;");
  ASSERT_FALSE(bad.ok());
  EXPECT_EQ(bad.error().front().span.line, 2u);
  EXPECT_EQ(bad.error().front().message, "unexpected character ';'");
}

TEST(SurfaceParse, PrintsBack) {
  const char *src = "def f x y := match x, y with | C1(a, _), 3 => (let z := "
                    "nat_add a y in C2(z, pap g 1)) | _, q => big 7\n";
  auto defs = parseSurface(src);
  ASSERT_TRUE(defs.ok());
  std::string printed = toString((*defs)[0]);
  auto again = parseSurface(printed);
  ASSERT_TRUE(again.ok()) << printed;
  EXPECT_EQ(toString((*again)[0]), printed);
}

TEST(SurfaceLower, Identity) {
  Module m = compileOk("def id x := x");
  ASSERT_EQ(m.funcs.size(), 1u);
  const Block &b = m.funcs[0].body.entry();
  ASSERT_EQ(b.ops.size(), 1u);
  EXPECT_EQ(b.ops[0].name, "lp.return");
  EXPECT_EQ(b.ops[0].operands[0], b.params[0]);
}

TEST(SurfaceLower, IntegerMatchStagesThroughDecEq) {
  Module m = compileOk("def f x := match x with | 42 => 43 | _ => 99999999");
  const Func &f = m.funcs[0];
  EXPECT_EQ(countNamed(f, "call"), 1u);
  EXPECT_EQ(countNamed(f, "lp.switch"), 1u);
  EXPECT_EQ(countNamed(f, "lp.joinpoint"), 0u);
  walk(f.body, [&](const Op &op, const OpPath &) {
    if (op.name == "lp.switch") {
      EXPECT_EQ(*op.intListAttr("cases"), std::vector<BigInt>{1});
      EXPECT_EQ(toString(f.typeOf(op.operands[0])), "i8");
    }
    if (op.name == "call")
      EXPECT_EQ(*op.symbolAttr("fn"), "nat_dec_eq");
  });
  EXPECT_EQ(run(m, "f", "42").value, "43");
  EXPECT_EQ(run(m, "f", "41").value, "99999999");
}

TEST(SurfaceLower, JoinpointDeduplicatesDefault) {
  Module m = compileOk(R"(
def f x y := match x, y with
  | 0, 2 => 1
  | 0, 3 => 2
  | _, _ => 60
)");
  const Func &f = m.funcs[0];
  EXPECT_EQ(countLiteral(f, 60), 1u);
  EXPECT_EQ(countNamed(f, "lp.joinpoint"), 1u);
  EXPECT_EQ(countNamed(f, "lp.jump"), 2u);
  for (auto [args, want] : std::vector<std::pair<const char *, const char *>>{
           {"0,2", "1"}, {"0,3", "2"}, {"0,4", "60"}, {"1,2", "60"}})
    EXPECT_EQ(run(m, "f", args).value, want) << args;

  // The default block is reached from two places once lowered to a CFG.
  auto cfg = lower::lowerRgnToCfg(lower::lowerLpToRgn(m));
  ASSERT_TRUE(cfg.ok());
  const Func &g = cfg->funcs[0];
  std::vector<int> preds(g.body.blocks.size(), 0);
  for (const Block &b : g.body.blocks)
    for (const Op &op : b.ops)
      for (const Successor &s : op.successors)
        ++preds[s.block];
  std::size_t sixty = g.body.blocks.size();
  for (std::size_t i = 0; i < g.body.blocks.size(); ++i)
    for (const Op &op : g.body.blocks[i].ops)
      if (op.name == "lp.int" && op.intAttr("value") == BigInt(60))
        sixty = i;
  ASSERT_LT(sixty, g.body.blocks.size());
  EXPECT_EQ(preds[sixty], 2);
}

TEST(SurfaceLower, SeveralSharedRowsUseSelector) {
  Module m = compileOk(R"(
def f x y := match x, y with
  | 0, 2 => 1
  | a, 3 => C4(a)
  | _, n => C5(n, 10)
)");
  const Func &f = m.funcs[0];
  EXPECT_EQ(countNamed(f, "lp.joinpoint"), 1u);
  EXPECT_EQ(countNamed(f, "lp.jump"), 4u);
  EXPECT_EQ(countNamed(f, "lp.construct"), 2u);
  EXPECT_EQ(countLiteral(f, 10), 1u);
  EXPECT_EQ(run(m, "f", "0,2").value, "1");
  EXPECT_EQ(run(m, "f", "0,3").value, "C4(0)");
  EXPECT_EQ(run(m, "f", "1,3").value, "C4(1)");
  EXPECT_EQ(run(m, "f", "0,7").value, "C5(7, 10)");
  EXPECT_EQ(run(m, "f", "1,2").value, "C5(2, 10)");
}

TEST(SurfaceLower, SingleWildcardRow) {
  Module m = compileOk("def f x := match x with | y => C3(y)");
  const Func &f = m.funcs[0];
  EXPECT_EQ(countNamed(f, "lp.switch"), 0u);
  EXPECT_EQ(countNamed(f, "lp.joinpoint"), 0u);
  EXPECT_EQ(run(m, "f", "4").value, "C3(4)");
}

TEST(SurfaceLower, ListLength) {
  Module m = compileOk(R"(
-- Nil is tag 0, Cons tag 1.
def length l := match l with
  | C1(h, t) => nat_add 1 (length t)
  | _ => 0
def main n := length C1(n, C1(n, C1(n, C0())))
)");
  EXPECT_EQ(run(m, "main", "9").value, "3");
  EXPECT_EQ(run(m, "length", "C0()").value, "0");
}

TEST(SurfaceLower, Closures) {
  Module m = compileOk(R"(
def k x y := nat_add x y
def k10 := pap k 10
def ap42 f := f 42
def main := ap42 k10
def viaslot := ap42 (let c := k in pap add3 c)
def add3 c x := c 3 x
)");
  const Func &k10 = *m.lookupFunc("k10");
  EXPECT_EQ(countNamed(k10, "lp.pap"), 1u);
  EXPECT_EQ(countNamed(*m.lookupFunc("ap42"), "lp.papextend"), 1u);
  EXPECT_EQ(run(m, "main", "").value, "52");
  EXPECT_EQ(run(m, "viaslot", "").value, "45");
  ASSERT_EQ(m.globals.size(), 1u);
  EXPECT_EQ(m.globals[0].name, "k_slot");
  EXPECT_EQ(m.globals[0].initializer, "init_k");
}

TEST(SurfaceLower, SlotNamesAvoidUserNames) {
  Module m = compileOk(R"(
def k x := x
def k_slot := 1
def main := let c := k in c 5
)");
  ASSERT_EQ(m.globals.size(), 1u);
  EXPECT_EQ(m.globals[0].name, "k_slot_1");
  EXPECT_EQ(run(m, "main", "").value, "5");
}

TEST(SurfaceLower, TailCallsAreMusttail) {
  Module m = compileOk(R"(
def count n := match n with
  | 0 => 0
  | _ => count (nat_add n -1)
)");
  std::size_t flagged = 0;
  walk(m.funcs[0].body, [&](const Op &op, const OpPath &) {
    flagged += op.name == "call" && op.hasFlag("musttail");
  });
  EXPECT_EQ(flagged, 1u);
  interp::ProgramResult r = run(m, "count", "100000");
  EXPECT_EQ(r.value, "0");
  EXPECT_LE(r.peakFrames, 2u);
}

TEST(SurfaceLower, BigLiterals) {
  Module m = compileOk(
      "def f := nat_add 4611686018427387904 (big 1)\n"
      "def g x := match x with | 4611686018427387905 => 1 | _ => 0\n"
      "def main := g f");
  EXPECT_EQ(run(m, "f", "").value, "4611686018427387905");
  EXPECT_EQ(run(m, "main", "").value, "1");
}

TEST(SurfaceLower, Errors) {
  EXPECT_EQ(firstError("def f := g 1"), "unresolved symbol 'g'");
  EXPECT_EQ(firstError("def f x y := x\ndef g := f 1"),
            "'f' expects 2 arguments, got 1");
  EXPECT_EQ(firstError("def f x := x\ndef g := pap f 1"),
            "pap of 'f' must be strictly partial: arity 1, got 1 arguments");
  EXPECT_EQ(firstError("def f x := C1(match x with | _ => 1)"),
            "match must be in tail position");
  EXPECT_EQ(firstError("def f := 1\ndef f := 2"), "redefinition of 'f'");
  EXPECT_EQ(firstError("def f x := match x with | 1 => 1 | C1() => 2 | _ => 3"),
            "integer and constructor patterns mixed in one column");
}

TEST(SurfaceLower, MatchFunc) {
  MatchRow r0, r1;
  Pattern p;
  p.kind = Pattern::Kind::Ctor;
  p.tag = 2;
  p.binders = {"", "v"};
  r0.patterns = {p};
  r0.rhs = std::make_shared<Expr>();
  r0.rhs->kind = Expr::Kind::Var;
  r0.rhs->name = "v";
  r1.patterns = {Pattern{}};
  r1.rhs = std::make_shared<Expr>();
  r1.rhs->value = 8;
  auto f = compileMatchFunc("m", 1, {r0, r1});
  ASSERT_TRUE(f.ok()) << f.error();
  Module m;
  m.funcs.push_back(*f);
  EXPECT_EQ(run(m, "m", "C2(1,2)").value, "2");
  EXPECT_EQ(run(m, "m", "C1(1,2)").value, "8");
}

TEST(SurfaceLower, Deterministic) {
  const char *src = R"(
def f x y := match x, y with
  | 0, 2 => 1
  | 0, 3 => 2
  | _, _ => 60
)";
  EXPECT_EQ(text::printModule(compileOk(src)), text::printModule(compileOk(src)));
}
