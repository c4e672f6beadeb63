// Copyright 2026 The LZ Authors
//
// Licensed under the Apache License v2.0 with LLVM Exceptions.
// See https://llvm.org/LICENSE.txt for license information.
// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception

#include "lz/Dialects.h"
#include "lz/Text.h"
#include "lz/Verifier.h"

#include <map>
#include <unordered_map>

namespace lz::text {

using namespace lz::ir;

std::string toString(const ParseError &error) {
  return std::to_string(error.span.line) + ":" +
         std::to_string(error.span.column) + ": error: " + error.message;
}

namespace {

//===----------------------------------------------------------------------===//
// Lexer
//===----------------------------------------------------------------------===//

enum class Tok : uint8_t {
  Ident,  // module, func, lp.int, i64, ...
  Value,  // %name
  Label,  // ^name, or a bare ^ before region parameters
  Symbol, // @name
  Bang,   // !lp.t, !rgn.val
  Int,
  Punct, // one of {}()[],:=<>
  Arrow,
  Eof,
};

struct Token {
  Tok kind;
  std::string text; // sigils stripped; the character itself for Punct
  SourceSpan span;
};

struct ParseFailure {
  ParseError error;
};

bool isIdentStart(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool isIdentChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
}

std::string tokenClass(Tok k) {
  switch (k) {
  case Tok::Ident:
    return "identifier";
  case Tok::Value:
    return "value";
  case Tok::Label:
    return "block label";
  case Tok::Symbol:
    return "symbol";
  case Tok::Bang:
    return "type";
  case Tok::Int:
    return "integer literal";
  case Tok::Punct:
    return "punctuation";
  case Tok::Arrow:
    return "'->'";
  case Tok::Eof:
    return "end of input";
  }
  return "token";
}

class Lexer {
public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skipTrivia();
      SourceSpan start = here();
      if (pos_ >= text_.size()) {
        out.push_back({Tok::Eof, "", finish(start)});
        return out;
      }
      char c = text_[pos_];
      if (c == '%' || c == '^' || c == '@' || c == '!') {
        advance();
        std::string name = readIdent();
        Tok kind = c == '%'   ? Tok::Value
                   : c == '^' ? Tok::Label
                   : c == '@' ? Tok::Symbol
                              : Tok::Bang;
        if (name.empty() && kind != Tok::Label)
          fail(start, std::string("expected name after '") + c + "'");
        out.push_back({kind, std::move(name), finish(start)});
      } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                 (c == '-' && pos_ + 1 < text_.size() &&
                  std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
        std::string digits(1, c);
        advance();
        while (pos_ < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          digits += text_[pos_];
          advance();
        }
        if (pos_ < text_.size() && isIdentChar(text_[pos_]))
          fail(start, "malformed integer literal");
        out.push_back({Tok::Int, std::move(digits), finish(start)});
      } else if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
        advance();
        advance();
        out.push_back({Tok::Arrow, "->", finish(start)});
      } else if (isIdentStart(c)) {
        std::string name = readIdent();
        out.push_back({Tok::Ident, std::move(name), finish(start)});
      } else if (std::string_view("{}()[],:=<>").find(c) !=
                 std::string_view::npos) {
        advance();
        out.push_back({Tok::Punct, std::string(1, c), finish(start)});
      } else {
        advance();
        fail(finish(start), std::string("unexpected character '") + c + "'");
      }
    }
  }

private:
  SourceSpan here() const {
    return SourceSpan{line_, col_, line_, col_, pos_, pos_};
  }
  SourceSpan finish(SourceSpan s) const {
    s.endLine = line_;
    s.endColumn = col_;
    s.end = pos_;
    return s;
  }
  [[noreturn]] void fail(SourceSpan span, std::string message) {
    span.end = std::max(span.end, span.begin);
    throw ParseFailure{ParseError{std::move(message), span, {}}};
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skipTrivia() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        advance();
      } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
        while (pos_ < text_.size() && text_[pos_] != '\n')
          advance();
      } else {
        return;
      }
    }
  }

  std::string readIdent() {
    std::string s;
    while (pos_ < text_.size() && isIdentChar(text_[pos_])) {
      s += text_[pos_];
      advance();
    }
    return s;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  uint32_t line_ = 1, col_ = 1;
};

//===----------------------------------------------------------------------===//
// Parser
//===----------------------------------------------------------------------===//

struct FuncSpans {
  SourceSpan header;
  std::map<OpPath, SourceSpan> ops;
};

class Parser {
public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Module parseModule() {
    expectIdent("module");
    expectPunct('{');
    while (!isPunct('}')) {
      if (isIdent("global"))
        parseGlobal();
      else if (isIdent("func"))
        parseFunc();
      else
        fail("expected 'func', 'global' or '}'", {"'func'", "'global'", "'}'"});
    }
    expectPunct('}');
    if (cur().kind != Tok::Eof)
      fail("expected end of input", {"end of input"});
    return std::move(m_);
  }

  const std::vector<FuncSpans> &spans() const { return spans_; }
  const std::vector<SourceSpan> &globalSpans() const { return globalSpans_; }

private:
  //===--------------------------------------------------------------------===//
  // Token helpers
  //===--------------------------------------------------------------------===//

  const Token &cur() const { return toks_[pos_]; }
  const Token &peek(std::size_t n = 1) const {
    return toks_[std::min(pos_ + n, toks_.size() - 1)];
  }
  const Token &take() {
    const Token &t = toks_[pos_];
    if (pos_ + 1 < toks_.size())
      ++pos_;
    return t;
  }
  bool isPunct(char c) const {
    return cur().kind == Tok::Punct && cur().text[0] == c;
  }
  bool isIdent(std::string_view s) const {
    return cur().kind == Tok::Ident && cur().text == s;
  }

  [[noreturn]] void fail(std::string message,
                         std::vector<std::string> expected = {}) {
    failAt(cur().span, std::move(message), std::move(expected));
  }
  [[noreturn]] void failAt(SourceSpan span, std::string message,
                           std::vector<std::string> expected = {}) {
    throw ParseFailure{
        ParseError{std::move(message), span, std::move(expected)}};
  }

  void expectPunct(char c) {
    if (!isPunct(c))
      fail(std::string("expected '") + c + "'", {std::string("'") + c + "'"});
    take();
  }
  void expectIdent(std::string_view s) {
    if (!isIdent(s))
      fail("expected '" + std::string(s) + "'", {"'" + std::string(s) + "'"});
    take();
  }
  const Token &expect(Tok kind, const char *what) {
    if (cur().kind != kind)
      fail(std::string("expected ") + what, {tokenClass(kind)});
    return take();
  }

  SourceSpan spanFrom(const SourceSpan &start) const {
    const Token &last = toks_[pos_ == 0 ? 0 : pos_ - 1];
    SourceSpan s = start;
    s.endLine = last.span.endLine;
    s.endColumn = last.span.endColumn;
    s.end = std::max(last.span.end, start.begin);
    return s;
  }

  //===--------------------------------------------------------------------===//
  // Types and attributes
  //===--------------------------------------------------------------------===//

  Type parseType() {
    const Token &t = cur();
    if (t.kind == Tok::Bang && t.text == "lp.t") {
      take();
      return Type::obj();
    }
    if (t.kind == Tok::Bang && t.text == "rgn.val") {
      take();
      expectPunct('<');
      std::vector<Type> params;
      if (!isPunct('>')) {
        params.push_back(parseType());
        while (isPunct(',')) {
          take();
          params.push_back(parseType());
        }
      }
      expectPunct('>');
      return Type::rgnVal(std::move(params));
    }
    if (t.kind == Tok::Ident && t.text.size() > 1 && t.text[0] == 'i' &&
        t.text.find_first_not_of("0123456789", 1) == std::string::npos) {
      std::string digits = t.text.substr(1);
      if (digits == "1" || digits == "8" || digits == "32" || digits == "64") {
        take();
        return Type::i(static_cast<unsigned>(std::stoul(digits)));
      }
      fail("unsupported integer width '" + t.text + "'", {"i1", "i8", "i32", "i64"});
    }
    fail("expected type", {"!lp.t", "iN", "!rgn.val<...>"});
  }

  BigInt parseInt() {
    const Token &t = expect(Tok::Int, "integer literal");
    return BigInt(t.text);
  }

  Attr parseAttrValue() {
    if (cur().kind == Tok::Int)
      return IntAttr{parseInt()};
    if (cur().kind == Tok::Symbol) {
      std::string name = take().text;
      return SymbolAttr{std::move(name)};
    }
    if (isPunct('[')) {
      take();
      IntListAttr list;
      if (!isPunct(']')) {
        list.values.push_back(parseInt());
        while (isPunct(',')) {
          take();
          list.values.push_back(parseInt());
        }
      }
      expectPunct(']');
      return list;
    }
    fail("expected attribute value", {"integer literal", "symbol", "'['"});
  }

  void parseAttrDict(AttrDict &attrs) {
    expectPunct('{');
    while (true) {
      const Token &key = expect(Tok::Ident, "attribute name");
      std::string name = key.text;
      SourceSpan keySpan = key.span;
      Attr value = FlagAttr{};
      if (isPunct('=')) {
        take();
        value = parseAttrValue();
      }
      if (!attrs.emplace(name, std::move(value)).second)
        failAt(keySpan, "duplicate attribute '" + name + "'");
      if (isPunct('}'))
        break;
      expectPunct(',');
    }
    expectPunct('}');
  }

  //===--------------------------------------------------------------------===//
  // Values and labels
  //===--------------------------------------------------------------------===//

  struct ValueState {
    ValueId id;
    bool defined;
    SourceSpan firstUse;
  };

  ValueId useValue() {
    const Token &t = expect(Tok::Value, "value");
    auto it = values_.find(t.text);
    if (it != values_.end())
      return it->second.id;
    // Forward reference across blocks; the definition fills in the type.
    ValueId id = f_->addValue(Type::obj(), DefKind::OpResult);
    values_.emplace(t.text, ValueState{id, false, t.span});
    return id;
  }

  ValueId defineValue(const Token &t, Type type, DefKind kind) {
    auto it = values_.find(t.text);
    if (it != values_.end()) {
      if (it->second.defined)
        failAt(t.span, "redefinition of value %" + t.text);
      it->second.defined = true;
      f_->values[it->second.id] = ValueInfo{std::move(type), kind};
      return it->second.id;
    }
    ValueId id = f_->addValue(std::move(type), kind);
    values_.emplace(t.text, ValueState{id, true, t.span});
    return id;
  }

  std::vector<ValueId> parseParamList() {
    std::vector<ValueId> params;
    expectPunct('(');
    if (!isPunct(')')) {
      while (true) {
        Token name = expect(Tok::Value, "parameter name");
        expectPunct(':');
        params.push_back(defineValue(name, parseType(), DefKind::BlockParam));
        if (!isPunct(','))
          break;
        take();
      }
    }
    expectPunct(')');
    return params;
  }

  std::vector<ValueId> parseValueTuple() {
    std::vector<ValueId> values;
    expectPunct('(');
    if (!isPunct(')')) {
      values.push_back(useValue());
      while (isPunct(',')) {
        take();
        values.push_back(useValue());
      }
    }
    expectPunct(')');
    return values;
  }

  uint32_t labelRef(const Token &t) {
    auto [it, inserted] = labels_.emplace(t.text, LabelState{});
    if (inserted) {
      it->second.tempIndex = static_cast<uint32_t>(labelOrder_.size());
      it->second.firstUse = t.span;
      labelOrder_.push_back(t.text);
    }
    return it->second.tempIndex;
  }

  //===--------------------------------------------------------------------===//
  // Structure
  //===--------------------------------------------------------------------===//

  void parseGlobal() {
    SourceSpan start = cur().span;
    take();
    std::string name = expect(Tok::Symbol, "global name").text;
    expectPunct('=');
    std::string init = expect(Tok::Symbol, "initializer symbol").text;
    m_.globals.push_back(Global{std::move(name), std::move(init)});
    globalSpans_.push_back(spanFrom(start));
  }

  void parseFunc() {
    SourceSpan start = cur().span;
    take();
    Func f;
    f.name = expect(Tok::Symbol, "function name").text;
    f_ = &f;
    values_.clear();
    labels_.clear();
    labelOrder_.clear();
    FuncSpans spans;

    f.body.blocks.emplace_back();
    f.body.blocks[0].params = parseParamList();
    for (ValueId p : f.body.blocks[0].params)
      f.paramTypes.push_back(f.typeOf(p));
    if (cur().kind != Tok::Arrow)
      fail("expected '->'", {"'->'"});
    take();
    f.resultType = parseType();
    spans.header = spanFrom(start);
    expectPunct('{');

    // Definition order of labels, as temp indices.
    std::vector<uint32_t> defOrder;
    if (cur().kind == Tok::Label) {
      bool entry = true;
      while (cur().kind == Tok::Label) {
        Token label = take();
        if (label.text.empty())
          failAt(label.span, "expected block label");
        uint32_t temp = labelRef(label);
        LabelState &ls = labels_[label.text];
        if (ls.defined)
          failAt(label.span, "redefinition of block ^" + label.text);
        ls.defined = true;
        defOrder.push_back(temp);
        uint32_t index = static_cast<uint32_t>(defOrder.size() - 1);
        if (!entry) {
          f.body.blocks.emplace_back();
          if (isPunct('('))
            f.body.blocks.back().params = parseParamList();
        } else if (isPunct('(')) {
          fail("entry block parameters come from the function signature");
        }
        expectPunct(':');
        entry = false;
        parseOps(f.body.blocks[index], {index}, spans.ops);
      }
    } else {
      parseOps(f.body.blocks[0], {0}, spans.ops);
    }
    expectPunct('}');

    for (const auto &[name, ls] : labels_)
      if (!ls.defined)
        failAt(ls.firstUse, "use of undefined block ^" + name);
    for (const auto &[name, vs] : values_)
      if (!vs.defined)
        failAt(vs.firstUse, "use of undefined value %" + name);

    // Successors were recorded with first-sight indices; renumber them to
    // definition order.
    if (!defOrder.empty()) {
      std::vector<uint32_t> remap(defOrder.size());
      for (uint32_t i = 0; i < defOrder.size(); ++i)
        remap[defOrder[i]] = i;
      for (Block &b : f.body.blocks)
        for (Op &op : b.ops)
          for (Successor &s : op.successors)
            s.block = remap[s.block];
    }

    f_ = nullptr;
    m_.funcs.push_back(std::move(f));
    spans_.push_back(std::move(spans));
  }

  void parseOps(Block &block, const OpPath &blockPath,
                std::map<OpPath, SourceSpan> &spans) {
    while (!isPunct('}') && cur().kind != Tok::Label) {
      if (cur().kind == Tok::Eof)
        fail("expected '}'", {"'}'"});
      OpPath path = blockPath;
      path.push_back(static_cast<uint32_t>(block.ops.size()));
      Op op = parseOp(path, spans);
      block.ops.push_back(std::move(op));
    }
  }

  Op parseOp(const OpPath &path, std::map<OpPath, SourceSpan> &spans) {
    SourceSpan start = cur().span;
    std::optional<Token> resultName;
    if (cur().kind == Tok::Value) {
      resultName = take();
      expectPunct('=');
    }
    if (cur().kind != Tok::Ident)
      fail("expected operation name", {"operation name"});
    const Token &nameTok = take();
    if (!dialect::lookupOp(nameTok.text))
      failAt(nameTok.span, "unknown operation '" + nameTok.text + "'");

    Op op;
    op.name = nameTok.text;
    // Allocate the result id up front so that it precedes nested values.
    ValueId result = kNoValue;
    if (resultName)
      result = defineValue(*resultName, Type::obj(), DefKind::OpResult);

    if (op.name == "lp.int" || op.name == "lp.bigint") {
      if (cur().kind != Tok::Int)
        fail("expected integer literal", {"integer literal"});
      op.attrs.emplace("value", IntAttr{parseInt()});
    }

    if (cur().kind == Tok::Value) {
      op.operands.push_back(useValue());
      if (isPunct('(')) {
        for (ValueId v : parseValueTuple())
          op.operands.push_back(v);
      } else {
        while (isPunct(',') && peek().kind == Tok::Value) {
          take();
          op.operands.push_back(useValue());
        }
      }
    }

    if (isPunct('{') && peek().kind == Tok::Ident &&
        !dialect::lookupOp(peek().text))
      parseAttrDict(op.attrs);

    // A label after an op without successors starts the next block.
    bool branches = dialect::lookupOp(op.name)->successors != 0;
    while (branches && cur().kind == Tok::Label && !cur().text.empty()) {
      Successor s;
      s.block = labelRef(take());
      if (isPunct('('))
        s.args = parseValueTuple();
      op.successors.push_back(std::move(s));
      if (!isPunct(',') || peek().kind != Tok::Label)
        break;
      take();
    }

    while (true) {
      bool isDefault = cur().kind == Tok::Symbol && cur().text == "default";
      if (isDefault) {
        take();
        if (!isPunct('{'))
          fail("expected region after @default", {"'{'"});
      } else if (!isPunct('{')) {
        break;
      }
      OpPath regionPath = path;
      regionPath.push_back(static_cast<uint32_t>(op.regions.size()));
      regionPath.push_back(0);
      op.regions.push_back(parseRegion(regionPath, spans));
    }

    if (isPunct(':')) {
      if (!resultName)
        fail("type annotation on an operation without a result");
      take();
      f_->values[result].type = parseType();
      op.results.push_back(result);
    } else if (resultName) {
      fail("expected ':' followed by the result type", {"':'"});
    }

    spans[path] = spanFrom(start);
    return op;
  }

  Region parseRegion(const OpPath &blockPath,
                     std::map<OpPath, SourceSpan> &spans) {
    expectPunct('{');
    Region region;
    region.blocks.emplace_back();
    if (cur().kind == Tok::Label && cur().text.empty()) {
      take();
      region.blocks[0].params = parseParamList();
      expectPunct(':');
    }
    parseOps(region.blocks[0], blockPath, spans);
    if (cur().kind == Tok::Label)
      fail("block labels are not allowed in nested regions");
    expectPunct('}');
    return region;
  }

  struct LabelState {
    uint32_t tempIndex = 0;
    bool defined = false;
    SourceSpan firstUse;
  };

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Module m_;
  Func *f_ = nullptr;
  std::unordered_map<std::string, ValueState> values_;
  std::map<std::string, LabelState> labels_;
  std::vector<std::string> labelOrder_;
  std::vector<FuncSpans> spans_;
  std::vector<SourceSpan> globalSpans_;
};

SourceSpan locate(const Module &m, const Parser &p, const Location &loc,
                  const SourceSpan &fallback) {
  for (std::size_t i = 0; i < m.funcs.size(); ++i) {
    if (m.funcs[i].name != loc.func)
      continue;
    const FuncSpans &fs = p.spans()[i];
    OpPath path = loc.path;
    // Walk up towards the enclosing op until a recorded span is found.
    while (!path.empty()) {
      auto it = fs.ops.find(path);
      if (it != fs.ops.end())
        return it->second;
      path.pop_back();
    }
    return fs.header;
  }
  return p.globalSpans().empty() ? fallback : p.globalSpans().front();
}

} // namespace

ParseResult parseModule(std::string_view text) {
  try {
    std::vector<Token> tokens = Lexer(text).run();
    SourceSpan first = tokens.front().span;
    Parser parser(std::move(tokens));
    Module m = parser.parseModule();
    std::vector<Diagnostic> diags = verifyModule(m);
    if (diags.empty())
      return m;
    std::vector<ParseError> errors;
    for (const Diagnostic &d : diags)
      errors.push_back(
          ParseError{d.message, locate(m, parser, d.loc, first), {}});
    return ParseResult::failure(std::move(errors));
  } catch (ParseFailure &failure) {
    return ParseResult::failure({std::move(failure.error)});
  }
}

} // namespace lz::text
