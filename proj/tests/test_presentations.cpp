#include "doctest.h"

#include <sstream>

#include "solquo/errors.hpp"
#include "solquo/presentations.hpp"
#include "test_support.hpp"

using namespace solquo;

TEST_CASE("s4 round trip") {
  PcPresentation s4 = parse_pc_presentation(read_corpus("s4.pc"));
  std::string text = format_pc_presentation(s4);
  PcPresentation again = parse_pc_presentation(text);
  CHECK(format_pc_presentation(again) == text);
}

TEST_CASE("corpus manifest") {
  std::istringstream in(read_corpus("MANIFEST"));
  std::string line;
  std::size_t entries = 0, stretch = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string file, series, order_text, tier;
    fields >> file >> series >> order_text >> tier;
    CAPTURE(line);
    REQUIRE((tier == "required" || tier == "stretch"));
    ++entries;
    stretch += tier == "stretch";
    if (series != "-") CHECK_NOTHROW(validate_lspec(parse_lspec(series)));
    std::string text = read_corpus(file);
    if (file.ends_with(".fp")) {
      FpPresentation fp = parse_fp_presentation(text);
      CHECK(parse_fp_presentation(format_fp_presentation(fp)).relators == fp.relators);
    } else {
      PcPresentation pc = parse_pc_presentation(text);
      CHECK_NOTHROW(validate(pc));
      CHECK(format_pc_presentation(parse_pc_presentation(format_pc_presentation(pc))) ==
            format_pc_presentation(pc));
    }
  }
  CHECK(entries == 19);
  CHECK(stretch == 5);
}

TEST_CASE("series strings") {
  CHECK(format_lspec(parse_lspec("[ (7,1), (127,1), (2,1) ]")) == "[(7,1),(127,1),(2,1)]");
  auto rejects = [](const char* text) {
    try {
      validate_lspec(parse_lspec(text));
    } catch (const Error&) {
      return true;
    }
    return false;
  };
  CHECK(rejects("[(4,1)]"));
  CHECK(rejects("[(2,0)]"));
  CHECK(rejects("[(2,1),(2,1)]"));
  CHECK(rejects("[(2,1)"));
  CHECK(rejects("(2,1)"));
}

TEST_CASE("malformed presentations") {
  auto kind_of = [](auto&& f) -> std::optional<ErrorKind> {
    try {
      f();
    } catch (const Error& e) {
      return e.kind();
    }
    return std::nullopt;
  };
  CHECK(kind_of([] { parse_fp_presentation("{ x, y | x^2 y^ }"); }) == ErrorKind::parse);
  CHECK(kind_of([] { parse_fp_presentation("{ x, x | x }"); }).has_value());
  CHECK(kind_of([] { parse_pc_presentation("{ a, b | a^2, b^a = b, b^4 }"); }).has_value());
  CHECK(kind_of([] { parse_pc_presentation("{ a, b | a^2, b^a = a, b^2 }"); }).has_value());
  CHECK(kind_of([] { parse_pc_presentation("{ a | a^2 = a }"); }).has_value());
  CHECK_FALSE(kind_of([] { parse_pc_presentation("{ | }"); }).has_value());
}
