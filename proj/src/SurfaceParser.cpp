// Copyright 2026 The LZ Authors
//
// Licensed under the Apache License v2.0 with LLVM Exceptions.
// See https://llvm.org/LICENSE.txt for license information.
// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception

#include "lz/Surface.h"

#include <cctype>
#include <optional>

namespace lz::surface {

namespace {

enum class Tok : uint8_t { Ident, Ctor, Int, Punct, Keyword, Eof };

struct Token {
  Tok kind = Tok::Eof;
  std::string text;
  SourceSpan span;
};

struct Failure {
  ParseError error;
};

bool isKeyword(std::string_view s) {
  return s == "def" || s == "match" || s == "with" || s == "let" ||
         s == "in" || s == "pap" || s == "big";
}

/// `C3` or `Ctor3` -> 3.
std::optional<int64_t> ctorTag(std::string_view s) {
  std::size_t digits = 0;
  if (s.size() > 4 && s.substr(0, 4) == "Ctor")
    digits = 4;
  else if (s.size() > 1 && s[0] == 'C')
    digits = 1;
  else
    return std::nullopt;
  if (s.size() - digits > 9)
    return std::nullopt;
  int64_t tag = 0;
  for (std::size_t i = digits; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      return std::nullopt;
    tag = tag * 10 + (s[i] - '0');
  }
  return tag;
}

class Lexer {
public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skipSpace();
      Token t;
      t.span.line = line_;
      t.span.column = col_;
      t.span.begin = pos_;
      if (pos_ >= text_.size()) {
        t.kind = Tok::Eof;
        finish(t);
        out.push_back(std::move(t));
        return out;
      }
      char c = text_[pos_];
      bool negative = c == '-' && pos_ + 1 < text_.size() &&
                      std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]));
      if (std::isdigit(static_cast<unsigned char>(c)) || negative) {
        t.kind = Tok::Int;
        advance();
        while (pos_ < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[pos_])))
          advance();
      } else if (std::isalpha(static_cast<unsigned char>(c)) ||
                 (c == '_' && pos_ + 1 < text_.size() &&
                  isIdentChar(text_[pos_ + 1]))) {
        while (pos_ < text_.size() && isIdentChar(text_[pos_]))
          advance();
        std::string_view word = text_.substr(t.span.begin, pos_ - t.span.begin);
        t.kind = isKeyword(word)  ? Tok::Keyword
                 : ctorTag(word) ? Tok::Ctor
                                  : Tok::Ident;
      } else {
        t.kind = Tok::Punct;
        std::string_view rest = text_.substr(pos_);
        if (rest.substr(0, 2) == ":=" || rest.substr(0, 2) == "=>") {
          advance();
          advance();
        } else if (c == '|' || c == ',' || c == '(' || c == ')' || c == '_') {
          advance();
        } else {
          advance();
          finish(t);
          throw Failure{ParseError{
              "unexpected character '" + std::string(1, c) + "'", t.span, {}}};
        }
      }
      finish(t);
      out.push_back(std::move(t));
    }
  }

private:
  static bool isIdentChar(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
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

  void skipSpace() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '-') {
        while (pos_ < text_.size() && text_[pos_] != '\n')
          advance();
      } else {
        break;
      }
    }
  }

  void finish(Token &t) {
    t.span.end = pos_;
    t.span.endLine = line_;
    t.span.endColumn = col_;
    t.text = std::string(text_.substr(t.span.begin, pos_ - t.span.begin));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  uint32_t line_ = 1, col_ = 1;
};

class Parser {
public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  std::vector<FnDef> run() {
    std::vector<FnDef> defs;
    while (cur().kind != Tok::Eof)
      defs.push_back(parseDef());
    return defs;
  }

private:
  const Token &cur() const { return toks_[pos_]; }
  const Token &take() { return toks_[pos_ == toks_.size() - 1 ? pos_ : pos_++]; }
  bool is(Tok k, std::string_view text) const {
    return cur().kind == k && cur().text == text;
  }
  bool isPunct(std::string_view p) const { return is(Tok::Punct, p); }
  bool isKw(std::string_view k) const { return is(Tok::Keyword, k); }

  [[noreturn]] void fail(const std::string &msg, const SourceSpan &span) {
    throw Failure{ParseError{msg, span, {}}};
  }
  [[noreturn]] void failHere(const std::string &what) {
    std::string found = cur().kind == Tok::Eof ? "end of input"
                                               : "'" + cur().text + "'";
    throw Failure{ParseError{"expected " + what + ", found " + found,
                             cur().span,
                             {what}}};
  }

  void expectPunct(std::string_view p) {
    if (!isPunct(p))
      failHere("'" + std::string(p) + "'");
    take();
  }
  std::string expectIdent(const char *what) {
    if (cur().kind != Tok::Ident)
      failHere(what);
    return take().text;
  }

  SourceSpan from(const SourceSpan &start) const {
    SourceSpan s = start;
    const Token &last = toks_[pos_ == 0 ? 0 : pos_ - 1];
    s.end = last.span.end;
    s.endLine = last.span.endLine;
    s.endColumn = last.span.endColumn;
    return s;
  }

  FnDef parseDef() {
    SourceSpan start = cur().span;
    if (!isKw("def"))
      failHere("'def'");
    take();
    FnDef def;
    def.name = expectIdent("function name");
    while (cur().kind == Tok::Ident)
      def.params.push_back(take().text);
    expectPunct(":=");
    def.body = parseExpr();
    def.span = from(start);
    return def;
  }

  Expr parseExpr() {
    SourceSpan start = cur().span;
    if (isKw("match"))
      return parseMatch();
    if (isKw("let")) {
      take();
      Expr e;
      e.kind = Expr::Kind::Let;
      e.name = expectIdent("let binder");
      expectPunct(":=");
      e.args.push_back(parseExpr());
      if (!isKw("in"))
        failHere("'in'");
      take();
      e.args.push_back(parseExpr());
      e.span = from(start);
      return e;
    }
    if (isKw("pap")) {
      take();
      Expr e;
      e.kind = Expr::Kind::PApp;
      e.name = expectIdent("function name after 'pap'");
      while (startsAtom())
        e.args.push_back(parseAtom());
      e.span = from(start);
      return e;
    }
    if (cur().kind == Tok::Ident) {
      std::string name = take().text;
      if (!startsAtom()) {
        Expr v;
        v.kind = Expr::Kind::Var;
        v.name = std::move(name);
        v.span = from(start);
        return v;
      }
      Expr e;
      e.kind = Expr::Kind::App;
      e.name = std::move(name);
      while (startsAtom())
        e.args.push_back(parseAtom());
      e.span = from(start);
      return e;
    }
    return parseAtom();
  }

  bool startsAtom() const {
    return cur().kind == Tok::Int || cur().kind == Tok::Ident ||
           cur().kind == Tok::Ctor || isKw("big") || isPunct("(");
  }

  Expr parseAtom() {
    SourceSpan start = cur().span;
    Expr e;
    if (isKw("big")) {
      take();
      if (cur().kind != Tok::Int)
        failHere("integer literal after 'big'");
      e.kind = Expr::Kind::IntLit;
      e.value = BigInt(take().text);
      e.big = true;
    } else if (cur().kind == Tok::Int) {
      e.kind = Expr::Kind::IntLit;
      e.value = BigInt(take().text);
    } else if (cur().kind == Tok::Ident) {
      e.kind = Expr::Kind::Var;
      e.name = take().text;
    } else if (cur().kind == Tok::Ctor) {
      e.kind = Expr::Kind::Ctor;
      e.tag = *ctorTag(take().text);
      if (isPunct("(")) {
        take();
        if (!isPunct(")")) {
          e.args.push_back(parseExpr());
          while (isPunct(",")) {
            take();
            e.args.push_back(parseExpr());
          }
        }
        expectPunct(")");
      }
    } else if (isPunct("(")) {
      take();
      e = parseExpr();
      expectPunct(")");
      return e;
    } else {
      failHere("expression");
    }
    e.span = from(start);
    return e;
  }

  Expr parseMatch() {
    SourceSpan start = cur().span;
    take();
    Expr e;
    e.kind = Expr::Kind::Match;
    e.args.push_back(parseExpr());
    while (isPunct(",")) {
      take();
      e.args.push_back(parseExpr());
    }
    if (!isKw("with"))
      failHere("'with'");
    take();
    while (isPunct("|")) {
      take();
      MatchRow row;
      SourceSpan rowStart = cur().span;
      row.patterns.push_back(parsePattern());
      while (isPunct(",")) {
        take();
        row.patterns.push_back(parsePattern());
      }
      if (row.patterns.size() != e.args.size())
        fail("arity mismatch: row has " + std::to_string(row.patterns.size()) +
                 " patterns, match has " + std::to_string(e.args.size()) +
                 " scrutinees",
             from(rowStart));
      expectPunct("=>");
      row.rhs = std::make_shared<Expr>(parseExpr());
      e.rows.push_back(std::move(row));
    }
    e.span = from(start);
    if (e.rows.empty())
      failHere("'|' starting a match row");
    for (const Pattern &p : e.rows.back().patterns)
      if (!p.isWild())
        fail("match must end in wildcard row", e.span);
    return e;
  }

  std::string parseBinder() {
    if (isPunct("_")) {
      take();
      return "";
    }
    return expectIdent("binder");
  }

  Pattern parsePattern() {
    SourceSpan start = cur().span;
    Pattern p;
    if (cur().kind == Tok::Int) {
      p.kind = Pattern::Kind::Int;
      p.value = BigInt(take().text);
    } else if (cur().kind == Tok::Ctor) {
      p.kind = Pattern::Kind::Ctor;
      p.tag = *ctorTag(take().text);
      if (isPunct("(")) {
        take();
        if (!isPunct(")")) {
          p.binders.push_back(parseBinder());
          while (isPunct(",")) {
            take();
            p.binders.push_back(parseBinder());
          }
        }
        expectPunct(")");
      }
    } else if (isPunct("_")) {
      take();
    } else if (cur().kind == Tok::Ident) {
      p.binders.push_back(take().text);
    } else {
      failHere("pattern");
    }
    p.span = from(start);
    return p;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

//===----------------------------------------------------------------------===//
// Printing
//===----------------------------------------------------------------------===//

std::string binderText(const std::string &b) { return b.empty() ? "_" : b; }

std::string patternText(const Pattern &p) {
  switch (p.kind) {
  case Pattern::Kind::Int:
    return p.value.str();
  case Pattern::Kind::Wild:
    return p.binders.empty() ? "_" : binderText(p.binders[0]);
  case Pattern::Kind::Ctor: {
    std::string s = "C" + std::to_string(p.tag) + "(";
    for (std::size_t i = 0; i < p.binders.size(); ++i)
      s += (i ? ", " : "") + binderText(p.binders[i]);
    return s + ")";
  }
  }
  return "_";
}

bool isAtomic(const Expr &e) {
  return e.kind == Expr::Kind::IntLit || e.kind == Expr::Kind::Var ||
         e.kind == Expr::Kind::Ctor;
}

std::string atomText(const Expr &e) {
  std::string s = toString(e);
  return isAtomic(e) ? s : "(" + s + ")";
}

} // namespace

std::string toString(const Expr &e) {
  switch (e.kind) {
  case Expr::Kind::IntLit:
    return (e.big ? "big " : "") + e.value.str();
  case Expr::Kind::Var:
    return e.name;
  case Expr::Kind::Let:
    return "let " + e.name + " := " + toString(e.args[0]) + " in " +
           toString(e.args[1]);
  case Expr::Kind::Ctor: {
    std::string s = "C" + std::to_string(e.tag) + "(";
    for (std::size_t i = 0; i < e.args.size(); ++i)
      s += (i ? ", " : "") + toString(e.args[i]);
    return s + ")";
  }
  case Expr::Kind::App:
  case Expr::Kind::PApp: {
    std::string s = e.kind == Expr::Kind::PApp ? "pap " + e.name : e.name;
    for (const Expr &a : e.args)
      s += " " + atomText(a);
    return s;
  }
  case Expr::Kind::Match: {
    std::string s = "match ";
    for (std::size_t i = 0; i < e.args.size(); ++i)
      s += (i ? ", " : "") + toString(e.args[i]);
    s += " with";
    for (const MatchRow &row : e.rows) {
      s += " |";
      for (std::size_t i = 0; i < row.patterns.size(); ++i)
        s += (i ? ", " : " ") + patternText(row.patterns[i]);
      // A trailing match would swallow the following rows.
      bool wrap = row.rhs->kind == Expr::Kind::Match ||
                  row.rhs->kind == Expr::Kind::Let;
      s += " => " + (wrap ? "(" + toString(*row.rhs) + ")"
                          : toString(*row.rhs));
    }
    return s;
  }
  }
  return "";
}

std::string toString(const FnDef &def) {
  std::string s = "def " + def.name;
  for (const std::string &p : def.params)
    s += " " + p;
  return s + " := " + toString(def.body) + "\n";
}

SurfaceResult parseSurface(std::string_view text) {
  try {
    return Parser(Lexer(text).run()).run();
  } catch (Failure &f) {
    return SurfaceResult::failure({std::move(f.error)});
  }
}

} // namespace lz::surface
