// Copyright 2026 The LZ Authors
//
// Licensed under the Apache License v2.0 with LLVM Exceptions.
// See https://llvm.org/LICENSE.txt for license information.
// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception

#ifndef LZ_VERIFIER_H
#define LZ_VERIFIER_H

#include "lz/IR.h"

#include <vector>

namespace lz::ir {

/// SSA discipline, block shape, dominance, op signatures and symbol
/// resolution. Does not run the dialect-specific rules.
std::vector<Diagnostic> verifyStructure(const Module &m);

/// Structural checks followed, when those are clean, by the lp and rgn
/// dialect rules. Diagnostics are ordered by location. Pure and idempotent.
std::vector<Diagnostic> verifyModule(const Module &m);

/// Only the def-before-use / dominance part of verification, for a single
/// function. Used to validate in-place rewrites.
std::vector<Diagnostic> verifyDominance(const Func &f);

/// Immediate dominators of the function body's blocks (entry maps to
/// itself; unreachable blocks map to UINT32_MAX).
std::vector<uint32_t> computeIdoms(const Func &f);

} // namespace lz::ir

#endif // LZ_VERIFIER_H
