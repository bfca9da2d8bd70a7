#include "doctest.h"

#include "solquo/collector.hpp"
#include "test_support.hpp"

using namespace solquo;

TEST_CASE("s4 basics") {
  PcPresentation s4 = parse_pc_presentation(read_corpus("s4.pc"));
  CHECK(s4.size() == 4);
  CHECK(consistency_check(s4).consistent());
  CHECK(order(s4) == 24);
  CHECK(collect(s4, parse_pc_word(s4, "ba")).exponents ==
        std::vector<std::uint32_t>{1, 2, 1, 0});
  CHECK(collect(s4, parse_pc_word(s4, "bba")).exponents ==
        std::vector<std::uint32_t>{1, 1, 0, 1});
}

TEST_CASE("s4 cover order") {
  PcPresentation h = parse_pc_presentation(read_corpus("s4_cover.pc"));
  CHECK(consistency_check(h).consistent());
  CHECK(order(h) == 1536);
}
