#include "lexer.hpp"

#include <cctype>
#include <limits>

namespace solquo::detail {

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < n && text[i] != '\n') ++i;
      continue;
    }
    Token t;
    t.pos = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < n && (std::isalnum(static_cast<unsigned char>(text[j])) ||
                       text[j] == '_')) {
        ++j;
      }
      t.kind = Tok::ident;
      t.text = std::string(text.substr(i, j - i));
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      std::int64_t v = 0;
      while (j < n && std::isdigit(static_cast<unsigned char>(text[j]))) {
        if (v > (std::numeric_limits<std::int64_t>::max() - 9) / 10) {
          throw ParseError(i, "integer literal too large");
        }
        v = v * 10 + (text[j] - '0');
        ++j;
      }
      t.kind = Tok::integer;
      t.value = v;
      t.text = std::string(text.substr(i, j - i));
      i = j;
    } else {
      ++i;
      switch (c) {
        case '{': t.kind = Tok::lbrace; break;
        case '}': t.kind = Tok::rbrace; break;
        case '(': t.kind = Tok::lparen; break;
        case ')': t.kind = Tok::rparen; break;
        case '[': t.kind = Tok::lbracket; break;
        case ']': t.kind = Tok::rbracket; break;
        case '|': t.kind = Tok::bar; break;
        case ',': t.kind = Tok::comma; break;
        case '^': t.kind = Tok::caret; break;
        case '*': t.kind = Tok::star; break;
        case '-': t.kind = Tok::minus; break;
        case '=':
          if (i < n && text[i] == ':') {
            ++i;
            t.kind = Tok::define;
          } else {
            t.kind = Tok::equals;
          }
          break;
        case ':':
          if (i < n && text[i] == '=') {
            ++i;
            t.kind = Tok::define;
            break;
          }
          [[fallthrough]];
        default:
          throw ParseError(t.pos, std::string("unexpected character '") + c +
                                      "'");
      }
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.kind = Tok::end;
  end.pos = n;
  out.push_back(end);
  return out;
}

bool split_identifier(std::string_view ident,
                      const std::vector<std::string>& names,
                      std::vector<std::size_t>& out) {
  // Greedy longest match with backtracking; identifiers are short.
  if (ident.empty()) return true;
  std::size_t best = names.size();
  std::size_t best_len = 0;
  std::vector<std::size_t> candidates;
  for (std::size_t g = 0; g < names.size(); ++g) {
    if (!names[g].empty() && ident.substr(0, names[g].size()) == names[g]) {
      candidates.push_back(g);
    }
  }
  // Longest first.
  while (!candidates.empty()) {
    best = names.size();
    best_len = 0;
    std::size_t best_pos = 0;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      if (names[candidates[c]].size() > best_len) {
        best = candidates[c];
        best_len = names[best].size();
        best_pos = c;
      }
    }
    std::size_t mark = out.size();
    out.push_back(best);
    if (split_identifier(ident.substr(best_len), names, out)) return true;
    out.resize(mark);
    candidates.erase(candidates.begin() +
                     static_cast<std::ptrdiff_t>(best_pos));
  }
  return false;
}

}  // namespace solquo::detail
