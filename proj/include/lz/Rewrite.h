// Copyright 2026 The LZ Authors
//
// Licensed under the Apache License v2.0 with LLVM Exceptions.
// See https://llvm.org/LICENSE.txt for license information.
// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception

#ifndef LZ_REWRITE_H
#define LZ_REWRITE_H

#include "lz/IR.h"

#include <unordered_map>

namespace lz::ir {

/// Rewrites every use of `from` into `to`. Fails without modifying `f` when
/// the types differ or `to` does not dominate all uses of `from`.
Status replaceAllUses(Func &f, ValueId from, ValueId to);

/// Removes the op at `path`. Fails when one of its results is still used or
/// when the op is a block terminator.
Status eraseOp(Func &f, const OpPath &path);

/// Substitutes operands and successor arguments throughout a region
/// according to `mapping`. No checks.
void substitute(Region &region,
                const std::unordered_map<ValueId, ValueId> &mapping);
void substitute(Op &op, const std::unordered_map<ValueId, ValueId> &mapping);

/// Marks the results of `op` and every value defined inside its regions as
/// erased in the function's value table.
void markErased(Func &f, const Op &op);

/// Marks every value id that no longer has a definition in the body as
/// erased. Used after transforms that drop ops wholesale.
void pruneValues(Func &f);

} // namespace lz::ir

#endif // LZ_REWRITE_H
