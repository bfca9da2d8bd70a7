#include "doctest.h"

#include "solquo/group_algebra.hpp"
#include "test_support.hpp"

using namespace solquo;

TEST_CASE("finite group of S4") {
  FiniteGroup g(parse_pc_presentation(read_corpus("s4.pc")));
  CHECK(g.order() == 24);
  for (std::uint32_t x = 0; x < 24; ++x) {
    CHECK(g.multiply(x, g.inverse(x)) == 0);
    for (std::uint32_t y = 0; y < 24; ++y) {
      for (std::uint32_t z = 0; z < 24; z += 5) {
        CHECK(g.multiply(g.multiply(x, y), z) == g.multiply(x, g.multiply(y, z)));
      }
    }
  }
}
