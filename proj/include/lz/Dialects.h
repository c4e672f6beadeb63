// Copyright 2026 The LZ Authors
//
// Licensed under the Apache License v2.0 with LLVM Exceptions.
// See https://llvm.org/LICENSE.txt for license information.
// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception
//
// Op registry for the `lp` dialect (functional constructs), the `rgn` dialect
// (regions as values) and the handful of dialect-neutral ops the lowerings
// produce (`cmp.eq`, `global.load` and the flat-CFG terminators).

#ifndef LZ_DIALECTS_H
#define LZ_DIALECTS_H

#include "lz/IR.h"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lz::dialect {

enum class TypeConstraint : uint8_t {
  Obj,
  AnyInt,
  I1,
  I8,
  I64,
  IntOrObj, // boxed small integer or machine integer
  RgnVal,
  Any,
};

bool satisfies(const ir::Type &type, TypeConstraint c);
std::string toString(TypeConstraint c);

struct AttrSpec {
  enum class Kind : uint8_t { Int, Symbol, IntList, Flag };
  std::string name;
  Kind kind;
  bool required;
};

enum class RegionCount : uint8_t { Fixed, CasesPlusOne };
enum class RegionParams : uint8_t { None, Any };

struct OpSignature {
  std::string name;
  std::vector<TypeConstraint> operands;
  /// Trailing variadic operand group, if any.
  std::optional<TypeConstraint> variadic;
  std::vector<TypeConstraint> results;
  std::vector<AttrSpec> attrs;
  RegionCount regionCount = RegionCount::Fixed;
  /// Fixed: one rule per region. CasesPlusOne: a single rule for all regions.
  std::vector<RegionParams> regions;
  /// Number of CFG successors; -1 means len(cases) + 1.
  int successors = 0;
  bool isTerminator = false;
  /// Pure ops may be deleted when unused and merged when identical.
  bool pure = false;
};

const std::vector<OpSignature> &lpOpTable();
const std::vector<OpSignature> &rgnOpTable();
/// `cmp.eq`, `global.load`, `br`, `cond_br`, `switch_br`, `ret`.
const std::vector<OpSignature> &builtinOpTable();

/// Looks an op up across all three tables.
const OpSignature *lookupOp(std::string_view name);

//===----------------------------------------------------------------------===//
// Runtime calls
//===----------------------------------------------------------------------===//

/// Closed set of functions provided by the runtime rather than the module.
struct RuntimeFn {
  std::string name;
  std::vector<ir::Type> params;
  ir::Type result;
};

const std::vector<RuntimeFn> &runtimeFnTable();
const RuntimeFn *lookupRuntimeFn(std::string_view name);

struct CalleeInfo {
  std::vector<ir::Type> params;
  ir::Type result;
  bool runtime = false;
};

/// Resolves a call/pap target to a module function or a runtime function.
std::optional<CalleeInfo> resolveCallee(const ir::Module &m,
                                        std::string_view name);

/// Whether a literal fits a type: i1 takes 0/1, other widths are signed,
/// and !lp.t takes the unboxed small-integer range.
bool fitsType(const BigInt &v, const ir::Type &type);

//===----------------------------------------------------------------------===//
// Verification hooks
//===----------------------------------------------------------------------===//

/// Checks one op against its registered signature: operand/result counts and
/// types, attributes, region shape, successor count and the relational
/// constraints (`select` arms agree, `switch` arity matches `cases`, ...).
void verifySignature(const ir::Module &m, const ir::Func &f, const ir::Op &op,
                     const ir::OpPath &path,
                     std::vector<ir::Diagnostic> &diags);

/// lp rules: switch shape, region terminators, jump binding, call arity,
/// musttail placement, pap arity. Assumes structural verification passed.
std::vector<ir::Diagnostic> verifyLp(const ir::Module &m);

/// rgn rules: region values never escape and rgn.val bodies end in a
/// transfer. Assumes structural verification passed.
std::vector<ir::Diagnostic> verifyRgn(const ir::Module &m);

/// Path of the joinpoint an lp.jump at `jumpPath` targets: the nearest
/// enclosing lp.joinpoint whose scope region (region 1) contains the jump.
std::optional<ir::OpPath> jumpTarget(const ir::OpPath &jumpPath,
                                     const ir::Func &f);

} // namespace lz::dialect

#endif // LZ_DIALECTS_H
