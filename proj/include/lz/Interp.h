// Copyright 2026 The LZ Authors
//
// Licensed under the Apache License v2.0 with LLVM Exceptions.
// See https://llvm.org/LICENSE.txt for license information.
// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception
//
// Reference-counting interpreter. Runs lp, rgn and flat CFG functions with
// an explicit frame stack, so deep non-tail recursion never touches the host
// stack.

#ifndef LZ_INTERP_H
#define LZ_INTERP_H

#include "lz/IR.h"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lz::interp {

enum class RcMode : uint8_t { Strict, Unchecked };

/// Entry argument as written on the command line: an integer or a
/// constructor literal `C<tag>(...)`.
struct ArgValue {
  bool isCtor = false;
  BigInt value;
  uint64_t tag = 0;
  std::vector<ArgValue> fields;

  static ArgValue integer(BigInt v) {
    ArgValue a;
    a.value = std::move(v);
    return a;
  }
  static ArgValue ctor(uint64_t tag, std::vector<ArgValue> fields) {
    ArgValue a;
    a.isCtor = true;
    a.tag = tag;
    a.fields = std::move(fields);
    return a;
  }
};

/// Parses a comma-separated argument list such as `42,C1(3,C0())`.
Expected<std::vector<ArgValue>, std::string> parseArgs(std::string_view text);

enum class TrapKind : uint8_t {
  RcUnderflow,
  UseAfterFree,
  ProjectOutOfBounds,
  NotACtor,
  NotAClosure,
  BadRuntimeArg,
  UnknownSymbol,
  StepLimit,
  Internal,
};

std::string toString(TrapKind kind);

struct Trap {
  TrapKind kind;
  std::string message;
};

struct HeapReport {
  uint64_t liveAtExit = 0;
  uint64_t rcUnderflows = 0;
  uint64_t useAfterFree = 0;

  friend bool operator==(const HeapReport &, const HeapReport &) = default;
};

struct ProgramResult {
  /// Integer, constructor tree (`C1(2, C0())`), or closure rendering.
  std::string value;
  uint64_t steps = 0;
  uint64_t peakFrames = 0;
  HeapReport heap;
  std::optional<Trap> trap;

  bool trapped() const { return trap.has_value(); }
};

struct EvalOptions {
  RcMode mode = RcMode::Unchecked;
  uint64_t stepLimit = 200'000'000;
};

/// Runs the global initializers and then `entry`. Errors are reported for
/// a missing entry or ill-typed arguments; runtime failures are traps in
/// the result.
Expected<ProgramResult, std::string> eval(const ir::Module &m,
                                          std::string_view entry,
                                          const std::vector<ArgValue> &args,
                                          const EvalOptions &opts = {});

/// Equality used by differential testing: same value and trap kind, plus
/// the same heap report in strict mode.
bool sameOutcome(const ProgramResult &a, const ProgramResult &b, RcMode mode);

/// `steps=N frames=N live=N`.
std::string metricsLine(const ProgramResult &r);

/// Values fitting in 62 signed bits stay unboxed.
bool fitsSmall(const BigInt &v);

} // namespace lz::interp

#endif // LZ_INTERP_H
