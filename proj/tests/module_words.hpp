#pragma once

// Reads module words written as in print, e.g. "y1^{(1+b+b^2)} y3 y7^b".

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "solquo/collector.hpp"
#include "solquo/covering.hpp"

/// `renumber`, when given, maps the printed index (1-based) to a module
/// generator of ctx.
inline solquo::ModuleWord parse_module_word(const solquo::CoverContext& ctx,
                                            std::string_view text,
                                            const std::vector<std::size_t>* renumber = nullptr) {
  using namespace solquo;
  ModuleWord w = ctx.collector->zero_tail();
  const PcPresentation& q = ctx.head_quotient;
  auto add_term = [&](std::size_t gen, std::string term) {
    std::string word;
    for (char ch : term) {
      if (ch != '*' && ch != ' ') word += ch;
    }
    if (word == "1") word.clear();
    auto g = ctx.head_group->index_of(collect(q, parse_pc_word(q, word)));
    w.at(gen, g) = (w.at(gen, g) + 1) % ctx.p;
  };
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == ' ') {
      ++i;
      continue;
    }
    if (text[i] != 'y') throw std::invalid_argument("module generator expected");
    std::size_t j = ++i;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    std::size_t gen = std::stoul(std::string(text.substr(i, j - i))) - 1;
    if (renumber) gen = renumber->at(gen);
    i = j;
    if (i < text.size() && text[i] == '^') {
      ++i;
      std::string exp;
      if (text[i] == '{') {
        std::size_t close = text.find('}', i);
        exp = std::string(text.substr(i + 1, close - i - 1));
        i = close + 1;
      } else {
        while (i < text.size() && text[i] != ' ') exp += text[i++];
      }
      if (!exp.empty() && exp.front() == '(') exp = exp.substr(1, exp.size() - 2);
      std::size_t start = 0;
      while (true) {
        std::size_t plus = exp.find('+', start);
        add_term(gen, exp.substr(start, plus - start));
        if (plus == std::string::npos) break;
        start = plus + 1;
      }
    } else {
      add_term(gen, "1");
    }
  }
  return w;
}

// The printed T and U of the S4 example number the tagged relations in
// display order but leave b^3 untagged: y1 = b^a, y2 = c^a, y3 = c^2, ...,
// y7 = d^2. Index i maps to module generator skip_b3[i - 1] of a context
// whose tags include b^3 (module generator 1).
inline const std::vector<std::size_t> skip_b3 = {0, 2, 3, 4, 5, 6, 7};

inline const char* const printed_s4_T[] = {
    "y2", "y1^{(1+b+b^2)} y3 y5 y6 y7", "y3^{(a+1)}", "y3 y6 y7^{(a+1)}", "y3^b y7",
    "y3 y6 y7^{(1+b)}", "y2^{(a+1)}", "y2 y3 y4^{(a+1)} y6",
    "y1^{(1+a+b^2)} y2 y3^{(1+b^2)} y5^{(1+b+b^2)} y6^{(1+b^2)} y7", "y5^{(1+b)} y6 y7",
    "y5^{(b+b^2)} y6^b y7^b", "y4 y5 y6", "y6^{(1+a)}",
    "y2 y3 y4^{(1+b^2)} y5^{(a+b)} y6^{(1+b)} y7^b", "y6^{(1+b)}"};

inline const char* const printed_g2_U = "y1^b y3^{(bab)} y4^b y5^b y7^{(1+b)}";
