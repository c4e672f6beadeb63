// Copyright 2026 The LZ Authors
//
// Licensed under the Apache License v2.0 with LLVM Exceptions.
// See https://llvm.org/LICENSE.txt for license information.
// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception

#ifndef LZ_LOWERING_H
#define LZ_LOWERING_H

#include "lz/IR.h"

#include <string>

namespace lz::lower {

/// Replaces lp.switch, lp.joinpoint and lp.jump by region values:
///  - a one-case switch becomes cmp.eq + select + rgn.run,
///  - larger switches become a value switch + rgn.run,
///  - a joinpoint body becomes a rgn.val run by every jump to it.
/// Arm bodies are moved, never copied.
ir::Module lowerLpToRgn(const ir::Module &m);

/// Flattens region values into a multi-block CFG. Each rgn.val reached by a
/// run becomes one block (shared by all run sites); runs of select/switch
/// become cond_br/switch_br. Fails if lp control-flow ops remain or a run
/// target cannot be traced to rgn.val/select/switch.
Expected<ir::Module, std::string> lowerRgnToCfg(const ir::Module &m);

} // namespace lz::lower

#endif // LZ_LOWERING_H
