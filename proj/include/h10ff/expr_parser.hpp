#pragma once

#include <cctype>
#include <stdexcept>
#include <string>
#include <utility>

namespace h10ff {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " at position " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

/// Recursive-descent parser for arithmetic expressions with + - * / ^,
/// parentheses, decimal integers and single-letter variables. The ring is
/// supplied by Builder, which must provide
///   Value number(long long), variable(char, size_t pos),
///   add, sub, mul, div(a, b, pos), neg(a), power(a, long long, pos).
template <class Builder>
class ExprParser {
 public:
  using Value = decltype(std::declval<Builder&>().number(0));

  ExprParser(const std::string& text, Builder& b) : s_(text), b_(b) {}

  Value parse() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("empty expression", pos_);
    Value v = expr();
    skip();
    if (pos_ != s_.size()) throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
    return v;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Value expr() {
    Value v = term();
    for (;;) {
      if (eat('+')) {
        v = b_.add(v, term());
      } else if (eat('-')) {
        v = b_.sub(v, term());
      } else {
        return v;
      }
    }
  }

  Value term() {
    Value v = unary();
    for (;;) {
      skip();
      std::size_t at = pos_;
      if (eat('*')) {
        v = b_.mul(v, unary());
      } else if (eat('/')) {
        v = b_.div(v, unary(), at);
      } else {
        return v;
      }
    }
  }

  Value unary() {
    if (eat('-')) return b_.neg(unary());
    if (eat('+')) return unary();
    return power();
  }

  Value power() {
    Value base = primary();
    skip();
    std::size_t at = pos_;
    if (eat('^')) {
      bool negative = false;
      bool paren = eat('(');
      if (eat('-')) negative = true;
      long long e = integer();
      if (paren && !eat(')')) throw ParseError("expected ')'", pos_);
      return b_.power(base, negative ? -e : e, at);
    }
    return base;
  }

  long long integer() {
    skip();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
      throw ParseError("expected integer", pos_);
    long long v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      if (v > (1LL << 55)) throw ParseError("integer too large", pos_);
      v = v * 10 + (s_[pos_] - '0');
      ++pos_;
    }
    return v;
  }

  Value primary() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of expression", pos_);
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Value v = expr();
      if (!eat(')')) throw ParseError("expected ')'", pos_);
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return b_.number(integer());
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t at = pos_++;
      if (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_])))
        throw ParseError("unknown identifier", at);
      return b_.variable(c, at);
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  const std::string& s_;
  Builder& b_;
  std::size_t pos_ = 0;
};

}  // namespace h10ff
