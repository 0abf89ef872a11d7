#pragma once

#include <cctype>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rbfhs/ids.hpp"

namespace rbfhs::logic {

enum class Connective {
  truth,
  falsity,
  atom,
  negation,
  conjunction,
  disjunction,
  implication,
  biconditional,
};

// Immutable propositional formula with value semantics. Subtrees are shared.
class Formula {
 public:
  static Formula truth() { return Formula(Connective::truth, {}, {}, {}); }
  static Formula falsity() { return Formula(Connective::falsity, {}, {}, {}); }

  static Formula atom(std::string name) {
    if (!is_atom_name(name)) throw Error("invalid atom name '" + name + "'");
    return Formula(Connective::atom, std::move(name), {}, {});
  }

  static Formula negation(Formula f) {
    return Formula(Connective::negation, {}, std::move(f.node_), {});
  }

  static Formula binary(Connective op, Formula lhs, Formula rhs) {
    if (op != Connective::conjunction && op != Connective::disjunction &&
        op != Connective::implication && op != Connective::biconditional) {
      throw Error("not a binary connective");
    }
    return Formula(op, {}, std::move(lhs.node_), std::move(rhs.node_));
  }

  static Formula conjunction(Formula a, Formula b) {
    return binary(Connective::conjunction, std::move(a), std::move(b));
  }
  static Formula disjunction(Formula a, Formula b) {
    return binary(Connective::disjunction, std::move(a), std::move(b));
  }
  static Formula implication(Formula a, Formula b) {
    return binary(Connective::implication, std::move(a), std::move(b));
  }
  static Formula biconditional(Formula a, Formula b) {
    return binary(Connective::biconditional, std::move(a), std::move(b));
  }

  Connective kind() const noexcept { return node_->kind; }
  const std::string& name() const noexcept { return node_->name; }

  // Operand of a negation, left operand of a binary connective.
  Formula lhs() const { return Formula(node_->lhs); }
  Formula rhs() const { return Formula(node_->rhs); }
  Formula operand() const { return Formula(node_->lhs); }

  bool is_binary() const noexcept { return node_->lhs && node_->rhs; }

  friend bool operator==(const Formula& a, const Formula& b) { return equal(a.node_.get(), b.node_.get()); }

  static bool is_atom_name(std::string_view s) {
    if (s.empty()) return false;
    if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s) {
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    }
    return s != "true" && s != "false";
  }

 private:
  struct Node {
    Connective kind;
    std::string name;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
  };

  Formula(Connective kind, std::string name, std::shared_ptr<const Node> lhs,
          std::shared_ptr<const Node> rhs)
      : node_(std::make_shared<const Node>(Node{kind, std::move(name), std::move(lhs), std::move(rhs)})) {}

  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  static bool equal(const Node* a, const Node* b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    if (a->kind == Connective::atom) return a->name == b->name;
    return equal(a->lhs.get(), b->lhs.get()) && equal(a->rhs.get(), b->rhs.get());
  }

  std::shared_ptr<const Node> node_;
};

// Binding strength, tightest first: ! & | -> <->
inline int precedence(Connective c) {
  switch (c) {
    case Connective::truth:
    case Connective::falsity:
    case Connective::atom: return 6;
    case Connective::negation: return 5;
    case Connective::conjunction: return 4;
    case Connective::disjunction: return 3;
    case Connective::implication: return 2;
    case Connective::biconditional: return 1;
  }
  return 0;
}

inline const char* symbol(Connective c) {
  switch (c) {
    case Connective::conjunction: return "&";
    case Connective::disjunction: return "|";
    case Connective::implication: return "->";
    case Connective::biconditional: return "<->";
    case Connective::negation: return "!";
    default: return "";
  }
}

namespace detail {

inline void print(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case Connective::truth: out += "true"; return;
    case Connective::falsity: out += "false"; return;
    case Connective::atom: out += f.name(); return;
    case Connective::negation: {
      out += '!';
      Formula sub = f.operand();
      bool parens = precedence(sub.kind()) < precedence(Connective::negation);
      if (parens) out += '(';
      print(sub, out);
      if (parens) out += ')';
      return;
    }
    default: break;
  }
  const int p = precedence(f.kind());
  const bool right_assoc = f.kind() == Connective::implication;
  Formula l = f.lhs();
  Formula r = f.rhs();
  // Left-associative operators keep an equal-precedence left child bare;
  // implication keeps an equal-precedence right child bare.
  bool lp = precedence(l.kind()) < p || (right_assoc && precedence(l.kind()) == p);
  bool rp = precedence(r.kind()) < p || (!right_assoc && precedence(r.kind()) == p);
  if (lp) out += '(';
  print(l, out);
  if (lp) out += ')';
  out += ' ';
  out += symbol(f.kind());
  out += ' ';
  if (rp) out += '(';
  print(r, out);
  if (rp) out += ')';
}

}  // namespace detail

inline std::string to_string(const Formula& f) {
  std::string out;
  detail::print(f, out);
  return out;
}

class ParseError : public Error {
 public:
  ParseError(std::string message, int line, int column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        message_(std::move(message)),
        line_(line),
        column_(column) {}

  const std::string& message() const noexcept { return message_; }
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  std::string message_;
  int line_;
  int column_;
};

namespace detail {

enum class Tok { ident, kw_true, kw_false, bang, amp, bar, arrow, iff, lparen, rparen, end };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

class Lexer {
 public:
  Lexer(std::string_view text, int line, int column) : text_(text), line_(line), column_(column) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      if (pos_ >= text_.size()) {
        out.push_back({Tok::end, "", line_, column_});
        return out;
      }
      const int l = line_, c = column_;
      char ch = text_[pos_];
      if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
          advance();
        }
        std::string word(text_.substr(start, pos_ - start));
        Tok kind = word == "true" ? Tok::kw_true : word == "false" ? Tok::kw_false : Tok::ident;
        out.push_back({kind, std::move(word), l, c});
      } else if (ch == '!') {
        advance();
        out.push_back({Tok::bang, "!", l, c});
      } else if (ch == '&') {
        advance();
        out.push_back({Tok::amp, "&", l, c});
      } else if (ch == '|') {
        advance();
        out.push_back({Tok::bar, "|", l, c});
      } else if (ch == '(') {
        advance();
        out.push_back({Tok::lparen, "(", l, c});
      } else if (ch == ')') {
        advance();
        out.push_back({Tok::rparen, ")", l, c});
      } else if (text_.substr(pos_, 2) == "->") {
        advance();
        advance();
        out.push_back({Tok::arrow, "->", l, c});
      } else if (text_.substr(pos_, 3) == "<->") {
        advance();
        advance();
        advance();
        out.push_back({Tok::iff, "<->", l, c});
      } else {
        throw ParseError(std::string("unknown token '") + ch + "'", l, c);
      }
    }
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_;
  int column_;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Formula parse() {
    Formula f = parse_iff();
    if (peek().kind != Tok::end) fail("unexpected '" + peek().text + "'");
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, peek().line, peek().column);
  }

  Formula parse_iff() {
    Formula lhs = parse_implication();
    while (peek().kind == Tok::iff) {
      take();
      lhs = Formula::biconditional(lhs, parse_implication());
    }
    return lhs;
  }

  Formula parse_implication() {
    Formula lhs = parse_or();
    if (peek().kind == Tok::arrow) {
      take();
      return Formula::implication(lhs, parse_implication());
    }
    return lhs;
  }

  Formula parse_or() {
    Formula lhs = parse_and();
    while (peek().kind == Tok::bar) {
      take();
      lhs = Formula::disjunction(lhs, parse_and());
    }
    return lhs;
  }

  Formula parse_and() {
    Formula lhs = parse_unary();
    while (peek().kind == Tok::amp) {
      take();
      lhs = Formula::conjunction(lhs, parse_unary());
    }
    return lhs;
  }

  Formula parse_unary() {
    switch (peek().kind) {
      case Tok::bang: take(); return Formula::negation(parse_unary());
      case Tok::kw_true: take(); return Formula::truth();
      case Tok::kw_false: take(); return Formula::falsity();
      case Tok::ident: return Formula::atom(take().text);
      case Tok::lparen: {
        take();
        Formula inner = parse_iff();
        if (peek().kind != Tok::rparen) fail("expected ')'");
        take();
        return inner;
      }
      case Tok::end: fail("unexpected end of input");
      default: fail("unexpected '" + peek().text + "'");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace detail

// Grammar: atoms [A-Za-z_][A-Za-z0-9_]*, constants true/false, operators
// ! & | -> <-> (tightest first), parentheses. `->` is right-associative, the
// other binary operators associate to the left. `line`/`column` offset error
// locations when the text is embedded in a larger file.
inline Formula parse_formula(std::string_view text, int line = 1, int column = 1) {
  return detail::Parser(detail::Lexer(text, line, column).run()).parse();
}

}  // namespace rbfhs::logic
