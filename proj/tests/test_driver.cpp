#include "doctest.h"

#include "solquo/collector.hpp"
#include "solquo/driver.hpp"
#include "solquo/report.hpp"
#include "json.hpp"
#include "module_words.hpp"
#include "test_support.hpp"

using namespace solquo;

TEST_CASE("lplus and lminus") {
  LSpec l = parse_lspec("[(2,1),(3,1)]");
  CHECK(format_lspec(lplus(l, 2)) == "[(2,1),(3,1),(2,1)]");
  CHECK(format_lspec(lplus(parse_lspec("[(2,1)]"), 2)) == "[(2,2)]");
  LSpec m = parse_lspec("[(2,1),(3,1),(2,1)]");
  CHECK(format_lspec(lminus(m, 2)) == "[(2,1),(3,1)]");
  CHECK(lminus(m, 3) == m);
}

TEST_CASE("S4 as a quotient") {
  FpPresentation g = parse_fp_presentation(read_corpus("g2.fp"));
  QuotientResult r = soluble_quotient(g, parse_lspec("[(2,1),(3,1),(2,1)]"));
  MESSAGE(format_pc_presentation(r.pc));
  CHECK(order(r.pc) == 24);
  CHECK(consistency_check(r.pc).consistent());
  REQUIRE(r.layer_log.size() == 3);
  CHECK(r.layer_log[0].dimension == 1);
  CHECK(r.layer_log[1].dimension == 1);
  CHECK(r.layer_log[2].dimension == 2);
}

TEST_CASE("basic step over S4") {
  FpPresentation g = parse_fp_presentation(read_corpus("g2.fp"));
  QuotientResult r = soluble_quotient(g, parse_lspec("[(2,1),(3,1),(2,2)]"));
  MESSAGE(format_pc_presentation(r.pc));
  CHECK(order(r.pc) == 192);
  CHECK(consistency_check(r.pc).consistent());
  REQUIRE(r.layer_log.size() == 4);
  CHECK(r.layer_log[3].dimension == 3);
}

TEST_CASE("trivial group closes immediately") {
  FpPresentation g = parse_fp_presentation("{ x | x }");
  QuotientResult r = soluble_quotient(g, parse_lspec("[(2,3)]"));
  CHECK(r.pc.size() == 0);
  CHECK(r.layer_log.empty());
  CHECK(format_lspec(r.achieved) == "[(2,0)]");
}

TEST_CASE("U generates the printed submodule") {
  FpPresentation g = parse_fp_presentation(read_corpus("g2.fp"));
  PcPresentation k = parse_pc_presentation(read_corpus("s4.pc"));
  k.definitions()[0] = Definition::by_image(0);
  k.definitions()[1] = Definition::by_image(1);
  Epimorphism theta{{NormalWord::unit(4, 0), NormalWord::unit(4, 1)}};
  CoverContext ctx = build_cover_context(k, 2, &g, &theta);
  CHECK(ctx.t == 0);
  const FiniteGroup& q = *ctx.head_group;

  std::vector<ModuleWord> T = compute_T(ctx);
  std::vector<ModuleWord> ours = T;
  for (auto& u : compute_U(ctx, g)) ours.push_back(u);
  // the printed U is taken modulo the printed T, which has b^3 = 1
  std::vector<ModuleWord> printed = T;
  ModuleWord b3 = ctx.collector->zero_tail();
  b3.at(1, 0) = 1;
  printed.push_back(b3);
  printed.push_back(parse_module_word(ctx, printed_g2_U, &skip_b3));

  ModuleBasis a = module_basis(q, 2, ctx.rank(), ours);
  ModuleBasis b = module_basis(q, 2, ctx.rank(), printed);
  CHECK(a.dim == 3);
  CHECK(b.dim == 3);
  for (const auto& w : printed) CHECK(module_image(q, a, w) == std::vector<std::uint32_t>(3, 0));
  for (const auto& w : ours) CHECK(module_image(q, b, w) == std::vector<std::uint32_t>(3, 0));
}

TEST_CASE("layer of the basic step") {
  FpPresentation g = parse_fp_presentation(read_corpus("g2.fp"));
  QuotientResult r = soluble_quotient(g, parse_lspec("[(2,1),(3,1),(2,2)]"));
  const PcPresentation& h = r.pc;
  REQUIRE(h.size() == 7);
  Collector c(h);
  for (std::size_t l = 4; l < 7; ++l) {
    CHECK(h.power(l).is_identity());
    // c and d act trivially, the layer is abelian
    for (std::size_t j = 2; j < l; ++j) CHECK(h.conjugate(j, l) == NormalWord::unit(7, l));
  }
  check_epimorphism(g, h, r.tau);
  CHECK(format_normal_word(h, r.tau.images[0]) == "a");
  CHECK(format_normal_word(h, r.tau.images[1]) == "b");
}

TEST_CASE("wrong images are not an epimorphism") {
  FpPresentation g = parse_fp_presentation(read_corpus("g2.fp"));
  QuotientResult r = soluble_quotient(g, parse_lspec("[(2,1),(3,1),(2,1)]"));
  Epimorphism swapped{{r.tau.images[1], r.tau.images[0]}};
  CHECK_THROWS_AS(check_epimorphism(g, r.pc, swapped), Error);
  Epimorphism short_list{{r.tau.images[0]}};
  CHECK_THROWS_AS(check_epimorphism(g, r.pc, short_list), Error);
}

TEST_CASE("text and structured reports agree") {
  FpPresentation g = parse_fp_presentation(read_corpus("p14.fp"));
  QuotientResult r = soluble_quotient(g, parse_lspec("[(2,2),(3,1),(5,1)]"));
  auto j = nlohmann::json::parse(result_to_json(g, r));
  std::string text = result_to_text(g, r);
  std::string head = "order " + j["order"].get<std::string>() + " = ";
  CHECK(text.rfind(head, 0) == 0);
  CHECK(BigInt(j["order"].get<std::string>()) == order(r.pc));
  std::map<std::uint32_t, std::size_t> fact;
  for (const auto& f : j["factorization"]) fact[f["prime"]] = f["exponent"];
  CHECK(text.find(head + format_factorization(fact) + "\n") == 0);
  CHECK(j["series"] == format_lspec(r.achieved));
  CHECK(text.find("series " + format_lspec(r.achieved) + "\n") != std::string::npos);
  CHECK(j["generators"].size() == r.pc.size());
  REQUIRE(j["layer_log"].size() == r.layer_log.size());
  for (std::size_t i = 0; i < r.layer_log.size(); ++i) {
    CHECK(j["layer_log"][i]["order"] == r.layer_log[i].order.str());
    CHECK(j["layer_log"][i]["dimension"] == r.layer_log[i].dimension);
  }
  CHECK(text.find(format_pc_presentation(r.pc)) != std::string::npos);
}
