#include "doctest.h"

#include "solquo/module_solver.hpp"
#include "test_support.hpp"

using namespace solquo;

namespace {
PcPresentation s3() {
  return parse_pc_presentation("{ a, b | a^2, b^a = b^2, b^3 }");
}
}  // namespace

TEST_CASE("free module of rank one is the regular representation") {
  FiniteGroup q(s3());
  for (std::uint32_t p : {2u, 3u, 5u}) {
    ModuleBasis b = module_basis(q, p, 1, {});
    CHECK(b.dim == 6);
    CHECK(check_representation(b, s3()).ok());
  }
}

TEST_CASE("killing the generator") {
  FiniteGroup q(s3());
  ModuleWord y(2, 1, 6);
  y.at(0, 0) = 1;
  ModuleBasis b = module_basis(q, 2, 1, {y});
  CHECK(b.dim == 0);
}
