#pragma once

// Tokenizer shared by the presentation grammars.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "solquo/errors.hpp"

namespace solquo::detail {

enum class Tok {
  ident,
  integer,
  lbrace,
  rbrace,
  lparen,
  rparen,
  lbracket,
  rbracket,
  bar,
  comma,
  caret,
  equals,
  define,  // "=:" or ":="
  star,
  minus,
  end,
};

struct Token {
  Tok kind = Tok::end;
  std::string text;
  std::int64_t value = 0;
  std::size_t pos = 0;
};

std::vector<Token> tokenize(std::string_view text);

class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = idx_ + ahead;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  bool at(Tok k) const { return peek().kind == k; }
  const Token& next() {
    const Token& t = peek();
    if (idx_ + 1 < toks_.size()) ++idx_;
    return t;
  }
  bool accept(Tok k) {
    if (!at(k)) return false;
    next();
    return true;
  }
  const Token& expect(Tok k, const char* what) {
    if (!at(k)) {
      throw ParseError(peek().pos, std::string("expected ") + what);
    }
    return next();
  }

 private:
  std::vector<Token> toks_;
  std::size_t idx_ = 0;
};

/// Splits an identifier into declared generator names, longest match first.
/// Returns false if no split exists.
bool split_identifier(std::string_view ident,
                      const std::vector<std::string>& names,
                      std::vector<std::size_t>& out);

}  // namespace solquo::detail
