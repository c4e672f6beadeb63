// Copyright 2026 The LZ Authors
//
// Licensed under the Apache License v2.0 with LLVM Exceptions.
// See https://llvm.org/LICENSE.txt for license information.
// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception

#include "lz/Driver.h"
#include "lz/Lowering.h"
#include "lz/Passes.h"
#include "lz/Surface.h"
#include "lz/Text.h"
#include "lz/Verifier.h"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace lz::driver {

using namespace lz::ir;
namespace fs = std::filesystem;

namespace {

bool endsWith(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.substr(s.size() - suffix.size()) == suffix;
}

bool isSource(const std::string &path) {
  return endsWith(path, ".lz.mlir") || endsWith(path, ".lzf");
}

std::optional<std::string> readFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string errorWord(bool color) {
  return color ? "\033[1;31merror:\033[0m" : "error:";
}

std::string formatParseError(const std::string &path,
                             const text::ParseError &e, bool color) {
  return path + ":" + std::to_string(e.span.line) + ":" +
         std::to_string(e.span.column) + ": " + errorWord(color) + " " +
         e.message + "\n";
}

std::string formatDiagnostics(const std::string &path,
                              const std::vector<Diagnostic> &diags,
                              bool color) {
  std::string s;
  for (const Diagnostic &d : diags)
    s += path + ": @" + d.loc.func + ": " + errorWord(color) + " " +
         d.message + "\n";
  return s;
}

/// Passes that only find work once lp control flow is region-valued.
bool needsRgn(const std::string &pass) {
  return pass == "fold" || pass == "run-known" || pass == "region-cse";
}

std::vector<std::string> splitList(const std::string &s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty())
        out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  if (!cur.empty())
    out.push_back(cur);
  return out;
}

std::vector<std::string> sourcesIn(const std::string &dir) {
  std::vector<std::string> files;
  std::error_code ec;
  for (const auto &entry : fs::directory_iterator(dir, ec))
    if (entry.is_regular_file() && isSource(entry.path().string()))
      files.push_back(entry.path().string());
  std::sort(files.begin(), files.end());
  return files;
}

/// Compiles `path` down to `emit`, applying `passes`. With `optimizeFully`
/// the fixpoint optimizer runs after them. Diagnostics go to `err`.
std::optional<Module> compile(const std::string &path, EmitLevel emit,
                              const std::vector<std::string> &passes,
                              bool color, std::string &err,
                              bool optimizeFully = false) {
  std::optional<std::string> src = readFile(path);
  if (!src) {
    err += path + ": " + errorWord(color) + " cannot read file\n";
    return std::nullopt;
  }

  Module m;
  if (endsWith(path, ".lzf")) {
    surface::LowerResult r = surface::compileSurface(*src);
    if (!r.ok()) {
      for (const text::ParseError &e : r.error())
        err += formatParseError(path, e, color);
      return std::nullopt;
    }
    m = std::move(r).value();
  } else {
    text::ParseResult r = text::parseModule(*src);
    if (!r.ok()) {
      for (const text::ParseError &e : r.error())
        err += formatParseError(path, e, color);
      return std::nullopt;
    }
    m = std::move(r).value();
  }

  for (const std::string &p : passes) {
    const auto &known = passes::passNames();
    if (std::find(known.begin(), known.end(), p) == known.end()) {
      err += errorWord(color) + " unknown pass '" + p + "'\n";
      return std::nullopt;
    }
    if (emit == EmitLevel::Lp && needsRgn(p)) {
      err += errorWord(color) + " pass '" + p +
             "' runs on rgn; use --emit=rgn or --emit=cfg\n";
      return std::nullopt;
    }
  }

  if (emit != EmitLevel::Lp)
    m = lower::lowerLpToRgn(m);
  if (Status s = passes::runPipeline(m, passes); !s.ok()) {
    err += errorWord(color) + " " + s.message() + "\n";
    return std::nullopt;
  }
  if (optimizeFully)
    passes::optimize(m);
  if (auto diags = verifyModule(m); !diags.empty()) {
    err += formatDiagnostics(path, diags, color);
    return std::nullopt;
  }
  if (emit == EmitLevel::Cfg) {
    auto cfg = lower::lowerRgnToCfg(m);
    if (!cfg.ok()) {
      err += path + ": " + errorWord(color) + " " + cfg.error() + "\n";
      return std::nullopt;
    }
    m = std::move(cfg).value();
    if (auto diags = verifyModule(m); !diags.empty()) {
      err += formatDiagnostics(path, diags, color);
      return std::nullopt;
    }
  }
  return m;
}

} // namespace

//===----------------------------------------------------------------------===//
// Flags
//===----------------------------------------------------------------------===//

Expected<DriverConfig, std::string> parseFlags(const std::vector<std::string> &args) {
  using R = Expected<DriverConfig, std::string>;
  DriverConfig cfg;
  CLI::App app{"lz compiler driver", "lzc"};
  std::string emit, passes, run, runArgs, rc = "unchecked", check, benchDir;
  unsigned nruns = 1;
  app.add_option("input", cfg.inputPath, "Input file (.lz.mlir or .lzf)");
  auto *emitOpt = app.add_option("--emit", emit, "Output level")
                      ->check(CLI::IsMember({"lp", "rgn", "cfg"}));
  app.add_option("--passes", passes, "Comma-separated pass names");
  auto *runOpt = app.add_option("--run", run, "Entry symbol to evaluate");
  auto *argsOpt = app.add_option("--args", runArgs, "Entry arguments");
  auto *rcOpt = app.add_option("--rc", rc, "Refcount checking")
                    ->check(CLI::IsMember({"strict", "unchecked"}));
  auto *checkOpt = app.add_option("--check", check, "Golden test directory");
  auto *benchOpt = app.add_option("--bench", benchDir, "Benchmark directory");
  auto *nrunsOpt = app.add_option("--nruns", nruns, "Benchmark repetitions")
                       ->check(CLI::PositiveNumber);
  argsOpt->needs(runOpt);
  rcOpt->needs(runOpt);
  nrunsOpt->needs(benchOpt);
  checkOpt->excludes(benchOpt);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp &) {
    return R::failure(app.help());
  } catch (const CLI::ParseError &e) {
    return R::failure(std::string(e.what()) + "\n" + app.help());
  }

  if (*emitOpt)
    cfg.emit = emit == "lp" ? EmitLevel::Lp
               : emit == "rgn" ? EmitLevel::Rgn
                               : EmitLevel::Cfg;
  cfg.passes = splitList(passes);
  if (*runOpt) {
    RunRequest r;
    r.entry = !run.empty() && run[0] == '@' ? run.substr(1) : run;
    r.args = runArgs;
    r.mode = rc == "strict" ? interp::RcMode::Strict : interp::RcMode::Unchecked;
    cfg.run = r;
  }
  if (*checkOpt)
    cfg.checkDir = check;
  if (*benchOpt)
    cfg.benchDir = benchDir;
  cfg.benchRuns = nruns;

  bool haveInput = !cfg.inputPath.empty();
  if (cfg.checkDir || cfg.benchDir) {
    if (haveInput || cfg.run)
      return R::failure("--check and --bench take a directory, not an input "
                        "file\n" + app.help());
  } else if (!haveInput) {
    return R::failure("missing input file\n" + app.help());
  }
  return cfg;
}

//===----------------------------------------------------------------------===//
// Single file
//===----------------------------------------------------------------------===//

Output drive(const DriverConfig &cfg) {
  Output o;
  std::optional<Module> m =
      compile(cfg.inputPath, cfg.emit, cfg.passes, cfg.color, o.err);
  if (!m) {
    o.exitCode = kExitDiagnostics;
    return o;
  }
  if (!cfg.run) {
    o.out = text::printModule(*m);
    return o;
  }

  auto args = interp::parseArgs(cfg.run->args);
  if (!args.ok()) {
    o.err = errorWord(cfg.color) + " " + args.error() + "\n";
    o.exitCode = kExitDiagnostics;
    return o;
  }
  interp::EvalOptions opts;
  opts.mode = cfg.run->mode;
  auto r = interp::eval(*m, cfg.run->entry, *args, opts);
  if (!r.ok()) {
    o.err = errorWord(cfg.color) + " " + r.error() + "\n";
    o.exitCode = kExitDiagnostics;
    return o;
  }
  if (r->trap) {
    o.err = "trap: " + interp::toString(r->trap->kind) + ": " +
            r->trap->message + "\n";
    o.out = interp::metricsLine(*r) + "\n";
    o.exitCode = kExitTrap;
    return o;
  }
  o.out = r->value + "\n" + interp::metricsLine(*r) + "\n";
  if (cfg.run->mode == interp::RcMode::Strict) {
    const interp::HeapReport &h = r->heap;
    o.out += "rc: underflows=" + std::to_string(h.rcUnderflows) +
             " use-after-free=" + std::to_string(h.useAfterFree) +
             " live=" + std::to_string(h.liveAtExit) + "\n";
  }
  return o;
}

//===----------------------------------------------------------------------===//
// Golden tests
//===----------------------------------------------------------------------===//

namespace {

struct Directive {
  enum class Kind : uint8_t { Run, Check, CheckNot, CheckCount, Exit } kind;
  std::size_t line;
  std::string text;
  std::size_t count = 0;
};

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
    ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
    --e;
  return std::string(s.substr(b, e - b));
}

/// Directives live in `//` or `--` comments: `RUN:`, `CHECK:`,
/// `CHECK-NOT:`, `CHECK-COUNT-<n>:` and `EXIT:`.
std::vector<Directive> directives(const std::string &src,
                                  std::string &error) {
  std::vector<Directive> out;
  std::istringstream in(src);
  std::string line;
  for (std::size_t n = 1; std::getline(in, line); ++n) {
    std::string t = trim(line);
    if (t.rfind("//", 0) != 0 && t.rfind("--", 0) != 0)
      continue;
    t = trim(t.substr(2));
    auto take = [&](std::string_view key) -> std::optional<std::string> {
      if (t.rfind(key, 0) != 0)
        return std::nullopt;
      return trim(t.substr(key.size()));
    };
    if (auto v = take("RUN:")) {
      out.push_back({Directive::Kind::Run, n, *v});
    } else if (auto v = take("CHECK:")) {
      out.push_back({Directive::Kind::Check, n, *v});
    } else if (auto v = take("CHECK-NOT:")) {
      out.push_back({Directive::Kind::CheckNot, n, *v});
    } else if (auto v = take("EXIT:")) {
      out.push_back({Directive::Kind::Exit, n, *v});
    } else if (t.rfind("CHECK-COUNT-", 0) == 0) {
      std::size_t colon = t.find(':');
      std::string num = t.substr(12, colon == std::string::npos ? 0 : colon - 12);
      if (colon == std::string::npos || num.empty() ||
          !std::all_of(num.begin(), num.end(), ::isdigit)) {
        error = "line " + std::to_string(n) + ": malformed CHECK-COUNT";
        return {};
      }
      out.push_back({Directive::Kind::CheckCount, n, trim(t.substr(colon + 1)),
                     static_cast<std::size_t>(std::stoul(num))});
    }
  }
  return out;
}

std::vector<std::string> splitWords(const std::string &s) {
  std::istringstream in(s);
  std::vector<std::string> words;
  std::string w;
  while (in >> w)
    words.push_back(w);
  return words;
}

std::vector<std::string> splitLines(const std::string &s) {
  std::vector<std::string> lines;
  std::istringstream in(s);
  std::string l;
  while (std::getline(in, l))
    lines.push_back(l);
  return lines;
}

TestOutcome runOne(const std::string &path, bool color) {
  TestOutcome t;
  t.path = path;
  auto failAt = [&](std::size_t line, const std::string &pattern,
                    const std::string &detail) {
    t.pass = false;
    t.firstFailedCheck = std::make_pair(line, pattern);
    t.detail = detail;
    return t;
  };

  std::optional<std::string> src = readFile(path);
  if (!src)
    return failAt(0, "", "cannot read file");
  std::string parseError;
  std::vector<Directive> ds = directives(*src, parseError);
  if (!parseError.empty())
    return failAt(0, "", parseError);

  int expectedExit = kExitOk;
  for (const Directive &d : ds)
    if (d.kind == Directive::Kind::Exit)
      expectedExit = std::atoi(d.text.c_str());

  std::string output;
  bool anyRun = false;
  for (const Directive &d : ds) {
    if (d.kind != Directive::Kind::Run)
      continue;
    anyRun = true;
    std::vector<std::string> words = splitWords(d.text);
    if (!words.empty() && words[0] == "lzc")
      words.erase(words.begin());
    for (std::string &w : words)
      if (w == "%s")
        w = path;
    auto cfg = parseFlags(words);
    if (!cfg.ok())
      return failAt(d.line, d.text, "bad RUN line: " + cfg.error());
    cfg->color = color;
    Output o = drive(*cfg);
    if (o.exitCode != expectedExit)
      return failAt(d.line, d.text,
                    "exit code " + std::to_string(o.exitCode) + ", expected " +
                        std::to_string(expectedExit) + "\n" + o.err);
    output += o.out + o.err;
  }
  if (!anyRun)
    return failAt(0, "", "no RUN line");

  std::vector<std::string> lines = splitLines(output);
  auto contains = [](const std::string &line, const std::string &pat) {
    return line.find(pat) != std::string::npos;
  };

  // Ordered substring matching; CHECK-NOT applies between its neighbours.
  std::size_t cursor = 0;
  std::vector<const Directive *> pendingNot;
  auto flushNot = [&](std::size_t end) -> const Directive * {
    for (const Directive *n : pendingNot)
      for (std::size_t i = cursor; i < end; ++i)
        if (contains(lines[i], n->text))
          return n;
    pendingNot.clear();
    return nullptr;
  };
  for (const Directive &d : ds) {
    if (d.kind == Directive::Kind::CheckNot) {
      pendingNot.push_back(&d);
    } else if (d.kind == Directive::Kind::Check) {
      std::size_t i = cursor;
      while (i < lines.size() && !contains(lines[i], d.text))
        ++i;
      if (i == lines.size())
        return failAt(d.line, d.text, "CHECK: '" + d.text + "' not found");
      if (const Directive *n = flushNot(i))
        return failAt(n->line, n->text,
                      "CHECK-NOT: '" + n->text + "' found");
      cursor = i + 1;
    } else if (d.kind == Directive::Kind::CheckCount) {
      std::size_t n = std::count_if(lines.begin(), lines.end(),
                                    [&](const std::string &l) {
                                      return contains(l, d.text);
                                    });
      if (n != d.count)
        return failAt(d.line, d.text,
                      "CHECK-COUNT-" + std::to_string(d.count) + ": '" +
                          d.text + "' found " + std::to_string(n) + " times");
    }
  }
  if (const Directive *n = flushNot(lines.size()))
    return failAt(n->line, n->text, "CHECK-NOT: '" + n->text + "' found");
  return t;
}

} // namespace

std::vector<TestOutcome> runGolden(const std::string &dir, bool color) {
  std::vector<TestOutcome> out;
  for (const std::string &path : sourcesIn(dir))
    out.push_back(runOne(path, color));
  return out;
}

std::string formatGolden(const std::vector<TestOutcome> &outcomes) {
  std::string s;
  std::size_t passed = 0;
  for (const TestOutcome &t : outcomes) {
    if (t.pass) {
      ++passed;
      s += "PASS " + t.path + "\n";
    } else {
      s += "FAIL " + t.path + ":" +
           std::to_string(t.firstFailedCheck ? t.firstFailedCheck->first : 0) +
           ": " + t.detail + "\n";
    }
  }
  s += std::to_string(passed) + "/" + std::to_string(outcomes.size()) +
       " passed\n";
  return s;
}

//===----------------------------------------------------------------------===//
// Benchmarks
//===----------------------------------------------------------------------===//

BenchReport bench(const std::string &dir, unsigned runs) {
  BenchReport report;
  double logSum = 0;
  for (const std::string &path : sourcesIn(dir)) {
    std::string name = fs::path(path).filename().string();
    std::optional<std::string> src = readFile(path);
    std::string err;
    std::vector<std::pair<std::string, std::string>> entries;
    if (src) {
      std::string dummy;
      for (const std::string &line : splitLines(*src)) {
        std::string t = trim(line);
        if (t.rfind("//", 0) != 0 && t.rfind("--", 0) != 0)
          continue;
        t = trim(t.substr(2));
        if (t.rfind("BENCH:", 0) != 0)
          continue;
        std::vector<std::string> w = splitWords(t.substr(6));
        if (w.empty())
          continue;
        std::string entry = w[0][0] == '@' ? w[0].substr(1) : w[0];
        entries.emplace_back(entry, w.size() > 1 ? w[1] : "");
      }
    }
    if (entries.empty()) {
      report.failure = name + ": no BENCH line";
      return report;
    }

    auto base = compile(path, EmitLevel::Cfg, {}, false, err);
    auto opt = compile(path, EmitLevel::Cfg, {}, false, err, true);
    if (!base || !opt) {
      report.failure = name + ": " + err;
      return report;
    }
    for (const auto &[entry, argText] : entries) {
      std::string label = name + " @" + entry + "(" + argText + ")";
      auto args = interp::parseArgs(argText);
      if (!args.ok()) {
        report.failure = label + ": " + args.error();
        return report;
      }
      BenchEntry e;
      e.name = label;
      for (unsigned i = 0; i < runs; ++i) {
        auto a = interp::eval(*base, entry, *args);
        auto b = interp::eval(*opt, entry, *args);
        if (!a.ok() || !b.ok()) {
          report.failure = label + ": " + (a.ok() ? b.error() : a.error());
          return report;
        }
        if (a->trap || b->trap) {
          const auto &t = a->trap ? *a->trap : *b->trap;
          report.failure = label + ": trap: " + interp::toString(t.kind);
          return report;
        }
        if (a->value != b->value) {
          report.failure = label + ": optimized result " + b->value +
                           " differs from " + a->value;
          return report;
        }
        if (i > 0 && (a->steps != e.baseSteps || b->steps != e.optSteps)) {
          report.failure = label + ": step counts vary between runs";
          return report;
        }
        e.baseSteps = a->steps;
        e.optSteps = b->steps;
      }
      logSum += std::log(e.ratio());
      report.entries.push_back(std::move(e));
    }
  }
  if (!report.entries.empty())
    report.geomean = std::exp(logSum / static_cast<double>(report.entries.size()));
  return report;
}

std::string formatBench(const BenchReport &report) {
  std::string s;
  char buf[64];
  for (const BenchEntry &e : report.entries) {
    std::snprintf(buf, sizeof buf, "%.2f", e.ratio());
    s += e.name + " base=" + std::to_string(e.baseSteps) +
         " opt=" + std::to_string(e.optSteps) + " ratio=" + buf + "\n";
  }
  if (report.failure) {
    s += "bench failed: " + *report.failure + "\n";
    return s;
  }
  std::snprintf(buf, sizeof buf, "%.2f", report.geomean);
  s += "geomean ratio=" + std::string(buf) + " over " +
       std::to_string(report.entries.size()) + " programs\n";
  return s;
}

//===----------------------------------------------------------------------===//
// Tool entry
//===----------------------------------------------------------------------===//

Output runTool(const DriverConfig &cfg) {
  Output o;
  if (cfg.checkDir) {
    std::error_code ec;
    if (!fs::is_directory(*cfg.checkDir, ec)) {
      o.err = errorWord(cfg.color) + " not a directory: " + *cfg.checkDir + "\n";
      o.exitCode = kExitDiagnostics;
      return o;
    }
    auto outcomes = runGolden(*cfg.checkDir, cfg.color);
    o.out = formatGolden(outcomes);
    bool ok = std::all_of(outcomes.begin(), outcomes.end(),
                          [](const TestOutcome &t) { return t.pass; });
    o.exitCode = ok ? kExitOk : kExitDiagnostics;
    return o;
  }
  if (cfg.benchDir) {
    std::error_code ec;
    if (!fs::is_directory(*cfg.benchDir, ec)) {
      o.err = errorWord(cfg.color) + " not a directory: " + *cfg.benchDir + "\n";
      o.exitCode = kExitDiagnostics;
      return o;
    }
    BenchReport r = bench(*cfg.benchDir, cfg.benchRuns);
    o.out = formatBench(r);
    o.exitCode = r.failure ? kExitTrap : kExitOk;
    return o;
  }
  return drive(cfg);
}

} // namespace lz::driver
