// Copyright 2026 The LZ Authors
//
// Licensed under the Apache License v2.0 with LLVM Exceptions.
// See https://llvm.org/LICENSE.txt for license information.
// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception
//
// Textual form of the IR:
//
//   module {
//     global @k = @init_k
//     func @f(%0: !lp.t, %1: i1) -> !lp.t {
//       lp.switch %1 {cases = [1]} {
//         lp.return %0
//       } @default {
//         %2 = lp.construct %0 {tag = 1} : !lp.t
//         lp.return %2
//       }
//     }
//   }

#ifndef LZ_TEXT_H
#define LZ_TEXT_H

#include "lz/IR.h"

#include <string>
#include <string_view>
#include <vector>

namespace lz::text {

struct SourceSpan {
  uint32_t line = 1;
  uint32_t column = 1;
  uint32_t endLine = 1;
  uint32_t endColumn = 1;
  std::size_t begin = 0;
  std::size_t end = 0;
};

struct ParseError {
  std::string message;
  SourceSpan span;
  /// Token classes that would have been accepted, when known.
  std::vector<std::string> expected;
};

/// `line:col: error: message`.
std::string toString(const ParseError &error);

using ParseResult = Expected<ir::Module, std::vector<ParseError>>;

/// Parses and verifies a module. Verifier diagnostics are reported as
/// ParseErrors located at the offending op.
ParseResult parseModule(std::string_view text);

/// Canonical text. Values are renamed %0, %1, ... per function in textual
/// definition order.
std::string printModule(const ir::Module &m);
std::string printFunc(const ir::Func &f);

} // namespace lz::text

#endif // LZ_TEXT_H
