#pragma once

// Recursive-descent evaluator for the small polynomial expression language
// used by ring specs and element literals:
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor (['*'] factor)*
//   factor := atom ['^' integer]
//   atom   := integer | identifier | '(' expr ')'
// Whitespace is ignored. The algebra supplies constants and variables.

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>

#include "wittlab/error.hpp"

namespace wittlab::detail {

template <class Algebra>
class ExpressionParser {
 public:
  using Value = typename Algebra::Value;

  ExpressionParser(std::string_view text, const Algebra& alg) : alg_(alg) {
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) text_.push_back(c);
  }

  Value parse() {
    if (text_.empty()) fail("empty expression");
    Value v = expr();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::SyntaxError, msg + " in expression '" + text_ + "'");
  }

  bool peek(char c) const { return pos_ < text_.size() && text_[pos_] == c; }

  bool starts_atom() const {
    if (pos_ >= text_.size()) return false;
    char c = text_[pos_];
    return std::isdigit(static_cast<unsigned char>(c)) || std::isalpha(static_cast<unsigned char>(c)) ||
           c == '(';
  }

  Value expr() {
    bool negate = false;
    if (peek('+')) {
      ++pos_;
    } else if (peek('-')) {
      ++pos_;
      negate = true;
    }
    Value v = term();
    if (negate) v = alg_.neg(v);
    while (peek('+') || peek('-')) {
      char op = text_[pos_++];
      Value rhs = term();
      v = op == '+' ? alg_.add(v, rhs) : alg_.sub(v, rhs);
    }
    return v;
  }

  Value term() {
    Value v = factor();
    for (;;) {
      if (peek('*')) {
        ++pos_;
        v = alg_.mul(v, factor());
      } else if (starts_atom()) {
        v = alg_.mul(v, factor());
      } else {
        return v;
      }
    }
  }

  Value factor() {
    Value v = atom();
    if (peek('^')) {
      ++pos_;
      v = alg_.pow(v, integer());
    }
    return v;
  }

  std::uint64_t integer() {
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail("expected integer");
    std::uint64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      if (v > (UINT64_MAX - 9) / 10) fail("integer too large");
      v = v * 10 + static_cast<std::uint64_t>(text_[pos_++] - '0');
    }
    return v;
  }

  Value atom() {
    if (peek('(')) {
      ++pos_;
      Value v = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return v;
    }
    if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      return alg_.constant(integer());
    if (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
      std::string name(1, text_[pos_++]);
      return alg_.variable(name);
    }
    fail(pos_ < text_.size() ? "unexpected '" + std::string(1, text_[pos_]) + "'"
                             : "unexpected end");
  }

  std::string text_;
  std::size_t pos_ = 0;
  const Algebra& alg_;
};

template <class Algebra>
typename Algebra::Value evaluate_expression(std::string_view text, const Algebra& alg) {
  return ExpressionParser<Algebra>(text, alg).parse();
}

}  // namespace wittlab::detail
