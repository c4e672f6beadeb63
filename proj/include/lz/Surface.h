// Copyright 2026 The LZ Authors
//
// Licensed under the Apache License v2.0 with LLVM Exceptions.
// See https://llvm.org/LICENSE.txt for license information.
// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception
//
// A small functional surface language lowered to lp:
//
//   -- list length
//   def length l := match l with
//     | C0() => 0
//     | C1(h, t) => nat_add 1 (length t)
//     | _ => 0
//
// Every value is a boxed object (!lp.t). Application is saturated;
// `pap f a` builds a closure and applying a local closure extends it.

#ifndef LZ_SURFACE_H
#define LZ_SURFACE_H

#include "lz/IR.h"
#include "lz/Text.h"

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace lz::surface {

using text::ParseError;
using text::SourceSpan;

struct Pattern {
  enum class Kind : uint8_t { Int, Ctor, Wild };

  Kind kind = Kind::Wild;
  BigInt value;   // Int
  int64_t tag = 0; // Ctor
  /// Field binders for Ctor ("" for `_`); at most one for Wild.
  std::vector<std::string> binders;
  SourceSpan span;

  bool isWild() const { return kind == Kind::Wild; }
};

struct Expr;

struct MatchRow {
  std::vector<Pattern> patterns;
  std::shared_ptr<Expr> rhs;
};

struct Expr {
  enum class Kind : uint8_t { IntLit, Var, Let, Ctor, App, PApp, Match };

  Kind kind = Kind::IntLit;
  BigInt value;
  /// `big` marker on IntLit.
  bool big = false;
  /// Var, Let binder, App/PApp callee.
  std::string name;
  int64_t tag = 0;
  /// Let: {rhs, body}. Ctor/App/PApp: arguments. Match: scrutinees.
  std::vector<Expr> args;
  std::vector<MatchRow> rows;
  SourceSpan span;
};

struct FnDef {
  std::string name;
  std::vector<std::string> params;
  Expr body;
  SourceSpan span;
};

using SurfaceResult = Expected<std::vector<FnDef>, std::vector<ParseError>>;
using LowerResult = Expected<ir::Module, std::vector<ParseError>>;

/// Parses `.lzf` text. Syntax errors stop at the first one.
SurfaceResult parseSurface(std::string_view text);

/// Lowers definitions to a verified lp module.
LowerResult lowerSurface(const std::vector<FnDef> &defs);

/// parseSurface followed by lowerSurface.
LowerResult compileSurface(std::string_view text);

/// Builds `@name(%s0, ..., %sN-1)` whose body is the compiled match over its
/// parameters. Rows must not reference names other than their own binders.
Expected<ir::Func, std::string> compileMatchFunc(const std::string &name,
                                                 std::size_t numScrutinees,
                                                 const std::vector<MatchRow> &rows);

/// Surface text that parses back to an equivalent definition.
std::string toString(const Expr &e);
std::string toString(const FnDef &def);

} // namespace lz::surface

#endif // LZ_SURFACE_H
