// Copyright 2026 The LZ Authors
//
// Licensed under the Apache License v2.0 with LLVM Exceptions.
// See https://llvm.org/LICENSE.txt for license information.
// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception

#include "lz/Driver.h"

#include <cstdlib>
#include <cstring>
#include <iostream>

int main(int argc, char **argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  bool help = false;
  for (const std::string &a : args)
    help |= a == "-h" || a == "--help";

  auto cfg = lz::driver::parseFlags(args);
  if (!cfg.ok()) {
    (help ? std::cout : std::cerr) << cfg.error();
    return help ? lz::driver::kExitOk : lz::driver::kExitDiagnostics;
  }
  const char *color = std::getenv("LZ_COLOR");
  cfg->color = color && std::strcmp(color, "1") == 0;

  lz::driver::Output o = lz::driver::runTool(*cfg);
  std::cout << o.out << std::flush;
  std::cerr << o.err << std::flush;
  return o.exitCode;
}
