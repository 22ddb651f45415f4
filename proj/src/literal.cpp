// Recursive-descent parser for the scalar literal grammar.
#include <cctype>

#include "symparab/cyclotomic.hpp"
#include "symparab/errors.hpp"

namespace symparab {

namespace {

class LiteralParser {
public:
  LiteralParser(std::string_view text, const SymbolTable* symbols) : text_(text), symbols_(symbols) {}

  Cyclotomic run() {
    skip_space();
    if (pos_ == text_.size()) fail("empty literal");
    Cyclotomic v = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return v;
  }

private:
  [[noreturn]] void fail(const std::string& why) const { throw ParseError(pos_, why); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  Cyclotomic expr() {
    Cyclotomic v = term();
    for (;;) {
      if (accept('+'))
        v = v + term();
      else if (accept('-'))
        v = v - term();
      else
        return v;
    }
  }

  Cyclotomic term() {
    Cyclotomic v = unary();
    for (;;) {
      if (accept('*')) {
        v = v * unary();
      } else if (accept('/')) {
        std::size_t at = pos_;
        Cyclotomic d = unary();
        if (d.is_zero()) throw ParseError(at, "division by zero");
        v = v / d;
      } else {
        return v;
      }
    }
  }

  Cyclotomic unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Cyclotomic power() {
    Cyclotomic base = primary();
    if (!accept('^')) return base;
    skip_space();
    bool negative = false;
    if (accept('-'))
      negative = true;
    else
      accept('+');
    skip_space();
    std::int64_t e = integer_value();
    if (negative && base.is_zero()) fail("zero to a negative power");
    Cyclotomic result(1);
    Cyclotomic b = negative ? base.inverse() : base;
    while (e > 0) {
      if (e & 1) result = result * b;
      b = b * b;
      e >>= 1;
    }
    return result;
  }

  std::int64_t integer_value() {
    std::size_t start = pos_;
    std::int64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      if (v > 100000000) fail("integer too large here");
      v = v * 10 + (text_[pos_] - '0');
      ++pos_;
    }
    if (pos_ == start) fail("expected integer");
    return v;
  }

  Cyclotomic primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of literal");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Cyclotomic v = expr();
      expect(')');
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return Cyclotomic(Rational::parse(text_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string_view name = text_.substr(start, pos_ - start);
      if (name == "E") {
        expect('(');
        skip_space();
        std::size_t at = pos_;
        std::int64_t n = integer_value();
        if (n < 1) throw ParseError(at, "E(n) needs n >= 1");
        expect(')');
        return Cyclotomic::root_of_unity(n, 1);
      }
      if (symbols_) {
        if (auto it = symbols_->find(name); it != symbols_->end()) return it->second;
      }
      pos_ = start;
      fail("unknown identifier '" + std::string(name) + "'");
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  const SymbolTable* symbols_;
  std::size_t pos_ = 0;
};

} // namespace

Cyclotomic Cyclotomic::parse(std::string_view text, const SymbolTable* symbols) {
  return LiteralParser(text, symbols).run();
}

} // namespace symparab
