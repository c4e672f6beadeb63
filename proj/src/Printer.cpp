// Copyright 2026 The LZ Authors
//
// Licensed under the Apache License v2.0 with LLVM Exceptions.
// See https://llvm.org/LICENSE.txt for license information.
// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception

#include "lz/Text.h"

#include <unordered_map>

namespace lz::text {

using namespace lz::ir;

namespace {

class FuncPrinter {
public:
  FuncPrinter(const Func &f, std::string &out) : f_(f), out_(out) {}

  void print(int indent) {
    nameValues();
    pad(indent);
    out_ += "func @" + f_.name + "(";
    const Block &entry = f_.body.entry();
    for (std::size_t i = 0; i < entry.params.size(); ++i) {
      if (i)
        out_ += ", ";
      out_ += name(entry.params[i]) + ": " + toString(f_.typeOf(entry.params[i]));
    }
    out_ += ") -> " + toString(f_.resultType) + " {\n";
    const auto &blocks = f_.body.blocks;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      if (blocks.size() > 1) {
        pad(indent);
        out_ += "^bb" + std::to_string(b);
        if (b != 0 && !blocks[b].params.empty())
          printParams(blocks[b].params);
        out_ += ":\n";
      }
      for (const Op &op : blocks[b].ops)
        printOp(op, indent + 2);
    }
    pad(indent);
    out_ += "}\n";
  }

private:
  // Names follow textual order so forward references between blocks still
  // get stable names.
  void nameValues() {
    for (const Block &b : f_.body.blocks) {
      for (ValueId p : b.params)
        assign(p);
      for (const Op &op : b.ops)
        nameOp(op);
    }
  }
  void nameOp(const Op &op) {
    for (ValueId r : op.results)
      assign(r);
    for (const Region &r : op.regions)
      for (const Block &b : r.blocks) {
        for (ValueId p : b.params)
          assign(p);
        for (const Op &inner : b.ops)
          nameOp(inner);
      }
  }
  void assign(ValueId v) { names_.emplace(v, names_.size()); }

  std::string name(ValueId v) const {
    auto it = names_.find(v);
    return it == names_.end() ? "%<undef" + std::to_string(v) + ">"
                              : "%" + std::to_string(it->second);
  }

  void pad(int indent) { out_.append(static_cast<std::size_t>(indent), ' '); }

  void printParams(const std::vector<ValueId> &params) {
    out_ += "(";
    for (std::size_t i = 0; i < params.size(); ++i) {
      if (i)
        out_ += ", ";
      out_ += name(params[i]) + ": " + toString(f_.typeOf(params[i]));
    }
    out_ += ")";
  }

  void printValueList(const std::vector<ValueId> &values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i)
        out_ += ",";
      out_ += " " + name(values[i]);
    }
  }

  void printOp(const Op &op, int indent) {
    pad(indent);
    if (!op.results.empty())
      out_ += name(op.result()) + " = ";
    out_ += op.name;

    bool literal = op.name == "lp.int" || op.name == "lp.bigint";
    if (literal)
      if (auto v = op.intAttr("value"))
        out_ += " " + v->str();

    if (op.name == "rgn.run" && !op.operands.empty()) {
      out_ += " " + name(op.operands[0]) + "(";
      for (std::size_t i = 1; i < op.operands.size(); ++i) {
        if (i > 1)
          out_ += ", ";
        out_ += name(op.operands[i]);
      }
      out_ += ")";
    } else {
      printValueList(op.operands);
    }

    bool first = true;
    for (const auto &[key, value] : op.attrs) {
      if (literal && key == "value")
        continue;
      out_ += first ? " {" : ", ";
      first = false;
      out_ += key;
      if (!std::holds_alternative<FlagAttr>(value))
        out_ += " = " + toString(value);
    }
    if (!first)
      out_ += "}";

    for (std::size_t i = 0; i < op.successors.size(); ++i) {
      const Successor &s = op.successors[i];
      out_ += i ? ", " : " ";
      out_ += "^bb" + std::to_string(s.block);
      if (!s.args.empty()) {
        out_ += "(";
        for (std::size_t j = 0; j < s.args.size(); ++j) {
          if (j)
            out_ += ", ";
          out_ += name(s.args[j]);
        }
        out_ += ")";
      }
    }

    for (std::size_t r = 0; r < op.regions.size(); ++r) {
      if (op.name == "lp.switch" && r + 1 == op.regions.size())
        out_ += " @default";
      out_ += " {\n";
      for (const Block &b : op.regions[r].blocks) {
        if (!b.params.empty()) {
          pad(indent + 2);
          out_ += "^";
          printParams(b.params);
          out_ += ":\n";
        }
        for (const Op &inner : b.ops)
          printOp(inner, indent + 2);
      }
      pad(indent);
      out_ += "}";
    }

    if (!op.results.empty())
      out_ += " : " + toString(f_.typeOf(op.result()));
    out_ += "\n";
  }

  const Func &f_;
  std::string &out_;
  std::unordered_map<ValueId, std::size_t> names_;
};

} // namespace

std::string printFunc(const Func &f) {
  std::string out;
  FuncPrinter(f, out).print(0);
  return out;
}

std::string printModule(const Module &m) {
  std::string out = "module {\n";
  for (const Global &g : m.globals)
    out += "  global @" + g.name + " = @" + g.initializer + "\n";
  for (const Func &f : m.funcs)
    FuncPrinter(f, out).print(2);
  out += "}\n";
  return out;
}

} // namespace lz::text
