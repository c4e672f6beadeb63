// Copyright 2026 The LZ Authors
//
// Licensed under the Apache License v2.0 with LLVM Exceptions.
// See https://llvm.org/LICENSE.txt for license information.
// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception

#include "Properties.h"

#include "StructEq.h"
#include "lz/Interp.h"
#include "lz/Lowering.h"
#include "lz/Passes.h"
#include "lz/Surface.h"
#include "lz/Text.h"
#include "lz/Verifier.h"

#include <set>

namespace lz::test {

using ir::Func;
using ir::Module;

namespace {

struct Variant {
  std::string label;
  Module module;
};

std::string diagSummary(const std::vector<ir::Diagnostic> &diags) {
  return diags.empty() ? "" : ir::toString(diags.front());
}

std::optional<interp::ProgramResult> evalText(const Module &m,
                                              const std::string &entry,
                                              const std::string &args,
                                              std::string &error) {
  auto parsed = interp::parseArgs(args);
  if (!parsed.ok()) {
    error = "bad arguments '" + args + "': " + parsed.error();
    return std::nullopt;
  }
  auto r = interp::eval(m, entry, *parsed);
  if (!r.ok()) {
    error = r.error();
    return std::nullopt;
  }
  return std::move(r).value();
}

std::string describe(const interp::ProgramResult &r) {
  if (r.trap)
    return "trap " + interp::toString(r.trap->kind) + ": " + r.trap->message;
  return r.value;
}

} // namespace

void checkDifferential(const gen::SurfaceProgram &p, Tally &t) {
  ++t.cases;
  auto compiled = surface::compileSurface(p.text);
  if (!compiled.ok()) {
    t.fail("compile: " + text::toString(compiled.error().front()) + "\n" + p.text);
    return;
  }
  const Module &lp = *compiled;
  // The printed program must mean the same as the generated syntax tree.
  auto direct = surface::lowerSurface(p.defs);
  if (!direct.ok() || structuralDiff(*direct, lp)) {
    t.fail("surface print/parse changed the program\n" + p.text);
    return;
  }

  std::vector<Variant> variants;
  Module rgn = lower::lowerLpToRgn(lp);
  auto addCfg = [&](const std::string &label, const Module &m) {
    auto cfg = lower::lowerRgnToCfg(m);
    if (!cfg.ok()) {
      t.fail(label + " -> cfg: " + cfg.error() + "\n" + p.text);
      return;
    }
    variants.push_back({label + " -> cfg", std::move(cfg).value()});
  };
  variants.push_back({"rgn", rgn});
  addCfg("rgn", rgn);
  for (const std::string &pass : passes::passNames()) {
    Module a = lp;
    (void)passes::runPipeline(a, {pass});
    variants.push_back({"lp + " + pass, std::move(a)});
    Module b = rgn;
    (void)passes::runPipeline(b, {pass});
    addCfg("rgn + " + pass, b);
    variants.push_back({"rgn + " + pass, std::move(b)});
  }
  Module opt = rgn;
  passes::optimize(opt);
  addCfg("rgn + optimize", opt);
  variants.push_back({"rgn + optimize", std::move(opt)});

  for (const Variant &v : variants) {
    auto diags = ir::verifyModule(v.module);
    if (!diags.empty())
      t.fail(v.label + " does not verify: " + diagSummary(diags) + "\n" + p.text);
  }

  for (const std::string &args : p.argSets) {
    std::string err;
    auto ref = evalText(lp, p.entry, args, err);
    if (!ref) {
      t.fail("lp eval(" + args + "): " + err + "\n" + p.text);
      continue;
    }
    if (ref->trap) {
      t.fail("lp trapped on (" + args + "): " + describe(*ref) + "\n" + p.text);
      continue;
    }
    for (const Variant &v : variants) {
      ++t.comparisons;
      auto r = evalText(v.module, p.entry, args, err);
      if (!r) {
        t.fail(v.label + " eval(" + args + "): " + err + "\n" + p.text);
        continue;
      }
      if (!interp::sameOutcome(*ref, *r, interp::RcMode::Unchecked))
        t.fail(v.label + " on (" + args + "): " + describe(*r) + ", lp gave " +
               describe(*ref) + "\n" + p.text);
    }
  }
}

void checkMatchOracle(const gen::MatchTable &table, Tally &t) {
  ++t.cases;
  std::string shown;
  for (const auto &row : table.rows) {
    shown += "  |";
    for (std::size_t i = 0; i < row.patterns.size(); ++i) {
      const auto &pat = row.patterns[i];
      shown += i ? ", " : " ";
      if (pat.kind == surface::Pattern::Kind::Int) {
        shown += pat.value.str();
      } else if (pat.kind == surface::Pattern::Kind::Ctor) {
        shown += "C" + std::to_string(pat.tag) + "(";
        for (std::size_t b = 0; b < pat.binders.size(); ++b)
          shown += (b ? ", " : "") + (pat.binders[b].empty() ? "_" : pat.binders[b]);
        shown += ")";
      } else {
        shown += pat.binders.empty() ? "_" : pat.binders[0];
      }
    }
    shown += " => " + surface::toString(*row.rhs) + "\n";
  }

  auto f = surface::compileMatchFunc("m", table.columns.size(), table.rows);
  if (!f.ok()) {
    t.fail("compile: " + f.error() + "\n" + shown);
    return;
  }
  Module lp;
  lp.funcs.push_back(std::move(f).value());
  if (auto diags = ir::verifyModule(lp); !diags.empty()) {
    t.fail("does not verify: " + diagSummary(diags) + "\n" + shown);
    return;
  }
  auto cfg = lower::lowerRgnToCfg(lower::lowerLpToRgn(lp));
  if (!cfg.ok()) {
    t.fail("cfg: " + cfg.error() + "\n" + shown);
    return;
  }

  std::vector<std::vector<gen::Value>> domains;
  for (gen::Column c : table.columns)
    domains.push_back(gen::columnDomain(c));
  std::vector<std::size_t> idx(domains.size(), 0);
  while (true) {
    std::vector<gen::Value> args;
    for (std::size_t i = 0; i < idx.size(); ++i)
      args.push_back(domains[i][idx[i]]);
    std::string argText = gen::argText(args);
    auto expected = gen::decisionTable(table, args);
    if (!expected) {
      t.fail("oracle has no answer for (" + argText + ")\n" + shown);
    } else {
      for (const Module *m : {&lp, &*cfg}) {
        ++t.comparisons;
        std::string err;
        auto r = evalText(*m, "m", argText, err);
        std::string level = m == &lp ? "lp" : "cfg";
        if (!r)
          t.fail(level + " eval(" + argText + "): " + err + "\n" + shown);
        else if (r->trap || r->value != gen::render(*expected))
          t.fail(level + " on (" + argText + "): " + describe(*r) +
                 ", table gives " + gen::render(*expected) + "\n" + shown);
      }
    }
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == domains[k].size())
      idx[k++] = 0;
    if (k == idx.size())
      break;
  }
}

void checkRegionPair(gen::Rng &rng, Tally &t) {
  ++t.cases;
  unsigned externals = static_cast<unsigned>(rng.range(1, 2));
  gen::RegionRecipe a = gen::randomRecipe(rng, externals);
  gen::RegionRecipe b = rng.chance(0.5) ? a : gen::mutate(rng, a, externals);
  std::string src = gen::regionModule({a, b}, externals);
  auto parsed = text::parseModule(src);
  if (!parsed.ok()) {
    t.fail("parse: " + text::toString(parsed.error().front()) + "\n" + src);
    return;
  }
  const Func &f = parsed->funcs[0];
  const ir::Region &ra = f.body.entry().ops[0].regions[0];
  const ir::Region &rb = f.body.entry().ops[1].regions[0];
  passes::NumberingCtx ctx;
  auto na = passes::regionValueNumber(f, ra, ctx);
  auto nb = passes::regionValueNumber(f, rb, ctx);
  if (!na.ok() || !nb.ok()) {
    t.fail("numbering failed: " + (na.ok() ? nb.error() : na.error()) + "\n" + src);
    return;
  }
  ++t.comparisons;
  bool truth = a == b;
  bool alpha = passes::alphaEquivalent(f, ra, rb);
  if (alpha != truth)
    t.fail(std::string("alphaEquivalent says ") + (alpha ? "equal" : "distinct") +
           " for " + (truth ? "equal" : "distinct") + " regions\n" + src);
  if (truth && *na != *nb)
    t.fail("alpha-equivalent regions got different numbers\n" + src);
  if (*na != *nb && truth)
    t.fail("unequal numbers for structurally equal regions\n" + src);
}

void checkCollidingHash(gen::Rng &rng, Tally &t) {
  ++t.cases;
  const unsigned externals = 2;
  gen::RegionRecipe base = gen::randomRecipe(rng, externals);
  std::vector<gen::RegionRecipe> recipes;
  int n = static_cast<int>(rng.range(2, 4));
  for (int i = 0; i < n; ++i)
    recipes.push_back(rng.chance(0.5) ? base : gen::mutate(rng, base, externals));
  std::set<std::size_t> distinct;
  for (std::size_t i = 0; i < recipes.size(); ++i) {
    bool seen = false;
    for (std::size_t j = 0; j < i; ++j)
      seen |= recipes[j] == recipes[i];
    if (!seen)
      distinct.insert(i);
  }

  std::string src = gen::regionModule(recipes, externals);
  auto parsed = text::parseModule(src);
  if (!parsed.ok()) {
    t.fail("parse: " + text::toString(parsed.error().front()) + "\n" + src);
    return;
  }
  Module before = *parsed;
  Module after = *parsed;
  passes::RegionHasher collide = [](const Func &, const ir::Region &,
                                    passes::NumberingCtx &) {
    return Expected<passes::ValueNumber, std::string>(passes::ValueNumber{7});
  };
  passes::regionCse(after.funcs[0], collide);
  if (auto diags = ir::verifyModule(after); !diags.empty()) {
    t.fail("does not verify after region-cse: " + diagSummary(diags) + "\n" + src);
    return;
  }
  std::size_t vals = 0;
  for (const ir::Op &op : after.funcs[0].body.entry().ops)
    vals += op.name == "rgn.val";
  if (vals != distinct.size())
    t.fail(std::to_string(vals) + " regions left, expected " +
           std::to_string(distinct.size()) + "\n" + src);

  static const std::vector<std::string> objects = {"3", "C0()", "C1(2)",
                                                   "C2(1,C0())"};
  for (const std::string &e0 : objects)
    for (const std::string &e1 : objects)
      for (unsigned bits = 0; bits < (1u << (recipes.size() - 1)); ++bits) {
        std::string args = e0 + "," + e1;
        for (std::size_t j = 0; j + 1 < recipes.size(); ++j)
          args += (bits >> j) & 1 ? ",1" : ",0";
        std::string err;
        auto x = evalText(before, "f", args, err);
        auto y = evalText(after, "f", args, err);
        ++t.comparisons;
        if (!x || !y) {
          t.fail("eval(" + args + "): " + err + "\n" + src);
          return;
        }
        if (!interp::sameOutcome(*x, *y, interp::RcMode::Unchecked)) {
          t.fail("miscompile on (" + args + "): " + describe(*y) + " vs " +
                 describe(*x) + "\n" + src);
          return;
        }
      }
}

void checkRoundTrip(const Module &m, Tally &t) {
  ++t.cases;
  std::string once = text::printModule(m);
  auto parsed = text::parseModule(once);
  if (!parsed.ok()) {
    t.fail("reparse: " + text::toString(parsed.error().front()) + "\n" + once);
    return;
  }
  if (auto diff = structuralDiff(m, *parsed))
    t.fail("parse(print(m)) differs: " + *diff + "\n" + once);
  if (text::printModule(*parsed) != once)
    t.fail("printing is not a fixpoint\n" + once);
}

std::vector<Module> roundTripCorpus(gen::Rng &rng) {
  std::vector<Module> out;
  gen::SurfaceProgram p = gen::randomSurfaceProgram(rng);
  auto lp = surface::compileSurface(p.text);
  if (lp.ok()) {
    Module rgn = lower::lowerLpToRgn(*lp);
    Module opt = rgn;
    passes::optimize(opt);
    auto cfg = lower::lowerRgnToCfg(opt);
    out.push_back(*lp);
    out.push_back(rgn);
    if (cfg.ok())
      out.push_back(std::move(cfg).value());
  }
  unsigned externals = static_cast<unsigned>(rng.range(1, 2));
  gen::RegionRecipe base = gen::randomRecipe(rng, externals);
  std::vector<gen::RegionRecipe> recipes{base};
  for (int i = static_cast<int>(rng.range(0, 2)); i > 0; --i)
    recipes.push_back(gen::mutate(rng, base, externals));
  auto parsed = text::parseModule(gen::regionModule(recipes, externals));
  if (parsed.ok())
    out.push_back(std::move(parsed).value());
  return out;
}

} // namespace lz::test
