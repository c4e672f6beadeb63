// Copyright 2026 The LZ Authors
//
// Licensed under the Apache License v2.0 with LLVM Exceptions.
// See https://llvm.org/LICENSE.txt for license information.
// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception
//
// Function-level optimizations. Each pass mutates the function in place,
// runs to its own fixpoint and reports whether anything changed.

#ifndef LZ_PASSES_H
#define LZ_PASSES_H

#include "lz/IR.h"

#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

namespace lz::passes {

/// Removes pure ops whose results are unused, including whole rgn.vals.
bool dce(ir::Func &f);

/// select/switch over constant selectors or identical operands, plus
/// cmp.eq of two constants.
bool foldSelectSwitch(ir::Func &f);

/// Inlines a single-use rgn.val at the rgn.run that runs it.
bool simplifyRunKnown(ir::Func &f);

/// Scoped CSE over pure scalar ops (lp.int, lp.getlabel, lp.project, cmp.eq,
/// select, switch).
bool scalarCse(ir::Func &f);

/// Folds runtime calls over literal operands.
bool constantFold(ir::Func &f);

//===----------------------------------------------------------------------===//
// Region numbering
//===----------------------------------------------------------------------===//

using ValueNumber = uint64_t;

/// Numbers of values defined outside the region being numbered. Shared
/// across regions of one function so that the same external value gets the
/// same number everywhere.
struct NumberingCtx {
  std::unordered_map<ir::ValueId, ValueNumber> table;
  uint64_t nextExternal = 0;
};

/// Rolling hash of a straight-line region. Fails for regions with more than
/// one block or with ops that own regions.
Expected<ValueNumber, std::string> regionValueNumber(const ir::Func &f,
                                                     const ir::Region &r,
                                                     NumberingCtx &ctx);

/// Same parameters, same op sequence and attributes, operands matching
/// positionally inside the regions and by identity outside them.
bool alphaEquivalent(const ir::Func &f, const ir::Region &a,
                     const ir::Region &b);

using RegionHasher = std::function<Expected<ValueNumber, std::string>(
    const ir::Func &, const ir::Region &, NumberingCtx &)>;

/// Merges alpha-equivalent straight-line rgn.vals within a block. The hash
/// only proposes candidates; alphaEquivalent decides.
bool regionCse(ir::Func &f, const RegionHasher &hasher = regionValueNumber);

//===----------------------------------------------------------------------===//
// Pipelines
//===----------------------------------------------------------------------===//

/// dce, fold, run-known, region-cse, cse, constfold.
const std::vector<std::string> &passNames();

/// Applies the named passes in order to every function.
Status runPipeline(ir::Module &m, const std::vector<std::string> &names);

/// constfold, cse, region-cse, fold, run-known, dce.
const std::vector<std::string> &optimizationPipeline();

/// Repeats optimizationPipeline until no pass changes the module (at most
/// `maxRounds` rounds). Returns the number of rounds that made changes.
unsigned optimize(ir::Module &m, unsigned maxRounds = 16);

} // namespace lz::passes

#endif // LZ_PASSES_H
