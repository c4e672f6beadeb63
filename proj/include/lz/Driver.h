// Copyright 2026 The LZ Authors
//
// Licensed under the Apache License v2.0 with LLVM Exceptions.
// See https://llvm.org/LICENSE.txt for license information.
// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception
//
// Batch driver behind `lzc`: compile one file, run golden tests over a
// directory, or compare step counts with and without optimization.

#ifndef LZ_DRIVER_H
#define LZ_DRIVER_H

#include "lz/Interp.h"

#include <optional>
#include <string>
#include <vector>

namespace lz::driver {

enum class EmitLevel : uint8_t { Lp, Rgn, Cfg };

struct RunRequest {
  std::string entry;
  std::string args;
  interp::RcMode mode = interp::RcMode::Unchecked;
};

struct DriverConfig {
  std::string inputPath;
  EmitLevel emit = EmitLevel::Lp;
  std::vector<std::string> passes;
  std::optional<RunRequest> run;
  /// Directory for golden tests (`--check`) or benchmarks (`--bench`).
  std::optional<std::string> checkDir;
  std::optional<std::string> benchDir;
  unsigned benchRuns = 1;
  bool color = false;
};

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDiagnostics = 1;
inline constexpr int kExitTrap = 2;

struct Output {
  int exitCode = kExitOk;
  std::string out;
  std::string err;
};

/// Parses `lzc` flags (without the program name). On failure the error is
/// the usage message.
Expected<DriverConfig, std::string> parseFlags(const std::vector<std::string> &args);

/// parse -> verify -> lower/passes -> verify -> print or eval.
Output drive(const DriverConfig &cfg);

/// Dispatches to drive, runGolden or bench depending on the config.
Output runTool(const DriverConfig &cfg);

struct TestOutcome {
  std::string path;
  bool pass = true;
  /// 1-based line of the first failing directive and its pattern.
  std::optional<std::pair<std::size_t, std::string>> firstFailedCheck;
  std::string detail;
};

/// Runs every `.lz.mlir` and `.lzf` file in `dir` in path order.
std::vector<TestOutcome> runGolden(const std::string &dir, bool color = false);

/// One line per outcome plus the `P/T passed` summary.
std::string formatGolden(const std::vector<TestOutcome> &outcomes);

struct BenchEntry {
  std::string name;
  uint64_t baseSteps = 0;
  uint64_t optSteps = 0;
  double ratio() const {
    return optSteps == 0 ? 1.0
                         : static_cast<double>(baseSteps) /
                               static_cast<double>(optSteps);
  }
};

struct BenchReport {
  std::vector<BenchEntry> entries;
  double geomean = 1.0;
  /// Set when a program trapped or failed to compile.
  std::optional<std::string> failure;
};

/// Step counts per program under no optimization and the full rgn pipeline.
BenchReport bench(const std::string &dir, unsigned runs);
std::string formatBench(const BenchReport &report);

} // namespace lz::driver

#endif // LZ_DRIVER_H
