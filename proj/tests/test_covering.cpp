#include "doctest.h"

#include <algorithm>
#include <array>

#include "solquo/collector.hpp"
#include "solquo/covering.hpp"
#include "module_words.hpp"
#include "test_support.hpp"

using namespace solquo;

namespace {

PcPresentation s4() { return parse_pc_presentation(read_corpus("s4.pc")); }

ModuleWord unit_word(const CoverContext& ctx, std::size_t gen, std::uint32_t g = 0) {
  ModuleWord w = ctx.collector->zero_tail();
  w.at(gen, g) = 1;
  return w;
}

std::uint32_t element(const CoverContext& ctx, const char* word) {
  return ctx.head_group->index_of(collect(ctx.head_quotient, parse_pc_word(ctx.head_quotient, word)));
}

// dim_F2 of R/[R,F_P]R^2 for F free on two generators mapping onto S4 and
// P the Klein four subgroup. R/R'R^2 is the kernel of the Fox map
// F2[S4]^2 -> F2[S4], (u, v) -> u(x - 1) + v(y - 1); conjugation acts on
// it by left multiplication, so the answer is the dimension of the
// coinvariants of that kernel under P.
std::size_t s4_multiplicator_oracle() {
  using Perm = std::array<int, 4>;
  auto mul = [](const Perm& f, const Perm& g) {  // f then g
    Perm h{};
    for (int i = 0; i < 4; ++i) h[i] = g[f[i]];
    return h;
  };
  const Perm x{1, 2, 3, 0}, y{1, 2, 0, 3};
  std::vector<Perm> G{{0, 1, 2, 3}};
  for (std::size_t i = 0; i < G.size(); ++i) {
    for (const Perm& g : {x, y}) {
      Perm h = mul(G[i], g);
      if (std::find(G.begin(), G.end(), h) == G.end()) G.push_back(h);
    }
  }
  const std::size_t n = G.size();
  auto idx = [&](const Perm& g) {
    return static_cast<std::size_t>(std::find(G.begin(), G.end(), g) - G.begin());
  };
  using Row = std::vector<std::uint8_t>;
  auto rank = [](std::vector<Row> rows) {
    std::size_t r = 0;
    const std::size_t cols = rows.empty() ? 0 : rows[0].size();
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
      std::size_t piv = r;
      while (piv < rows.size() && !rows[piv][c]) ++piv;
      if (piv == rows.size()) continue;
      std::swap(rows[r], rows[piv]);
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i != r && rows[i][c]) {
          for (std::size_t k = 0; k < cols; ++k) rows[i][k] ^= rows[r][k];
        }
      }
      ++r;
    }
    return r;
  };
  // kernel of the Fox map: rows of an identity block carried along
  std::vector<Row> aug;
  for (std::size_t i = 0; i < 2 * n; ++i) {
    Row row(n + 2 * n, 0);
    const Perm& g = G[i % n];
    const Perm& gen = i < n ? x : y;
    row[idx(mul(g, gen))] ^= 1;
    row[idx(g)] ^= 1;
    row[n + i] = 1;
    aug.push_back(row);
  }
  std::size_t r = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = r;
    while (piv < aug.size() && !aug[piv][c]) ++piv;
    if (piv == aug.size()) continue;
    std::swap(aug[r], aug[piv]);
    for (std::size_t i = 0; i < aug.size(); ++i) {
      if (i != r && aug[i][c]) {
        for (std::size_t k = 0; k < aug[i].size(); ++k) aug[i][k] ^= aug[r][k];
      }
    }
    ++r;
  }
  std::vector<Row> kernel;
  for (std::size_t i = r; i < aug.size(); ++i) kernel.emplace_back(aug[i].begin() + n, aug[i].end());
  std::vector<Row> span;
  for (const Perm& v : G) {
    bool klein = v != G[0];
    for (int i = 0; i < 4; ++i) klein = klein && v[v[i]] == i && v[i] != i;
    if (!klein) continue;
    for (const Row& k : kernel) {
      Row w(2 * n, 0);
      for (std::size_t j = 0; j < 2 * n; ++j) {
        if (!k[j]) continue;
        std::size_t block = j / n * n;
        w[block + idx(mul(v, G[j % n]))] ^= 1;  // left multiplication by v
        w[j] ^= 1;
      }
      span.push_back(w);
    }
  }
  return kernel.size() - rank(span);
}

}  // namespace

TEST_CASE("Fox calculus oracle") {
  CHECK(s4_multiplicator_oracle() == 8);
}

TEST_CASE("tagged presentation of the S4 cover") {
  CoverContext ctx = build_cover_context(s4(), 2);
  CHECK(ctx.s == 8);
  CHECK(ctx.r == 2);
  CHECK(ctx.t == 0);
  CHECK(ctx.head_group->order() == 6);
  REQUIRE(ctx.tagged_relations.size() == 8);
  CHECK(ctx.tagged_relations[0] == RelationId{0, 1});
  CHECK(ctx.tagged_relations[1] == RelationId{1, 1});
  CHECK(ctx.tagged_relations[7] == RelationId{3, 3});
  MESSAGE(format_tagged_presentation(ctx));
}

TEST_CASE("extended collection of b b a") {
  CoverContext ctx = build_cover_context(s4(), 2);
  const PcPresentation& K = *ctx.base;
  std::vector<ExtendedLetter> word;
  for (std::size_t g : parse_pc_word(K, "bba")) word.push_back(ExtendedLetter::base(g));
  ExtendedNormalWord x = collect_extended(*ctx.collector, word);
  CHECK(format_normal_word(K, x.head) == "a b d");
  CHECK(format_module_word(*ctx.head_group, x.tail, ctx.module_generator_names()) ==
        "y1^{(1 + b^2)} y2^{(b)} y4 y6 y7");
}

TEST_CASE("T for the S4 cover") {
  CoverContext ctx = build_cover_context(s4(), 2);
  std::vector<ModuleWord> T = compute_T(ctx);
  for (const auto& w : T) {
    MESSAGE(format_module_word(*ctx.head_group, w, ctx.module_generator_names()));
  }
  ModuleBasis basis = module_basis(*ctx.head_group, 2, ctx.rank(), T);
  CHECK(basis.dim == s4_multiplicator_oracle());
  CHECK(check_representation(basis, ctx.head_quotient).ok());
  ModuleWord y2 = unit_word(ctx, 1);
  ModuleWord y3a = unit_word(ctx, 2);
  y3a.at(2, element(ctx, "a")) = 1;
  auto zero = std::vector<std::uint32_t>(basis.dim, 0);
  // b^3 = 1 lifts to an element outside [R,F_P]R^2
  CHECK(module_image(*ctx.head_group, basis, y2) != zero);
  CHECK(module_image(*ctx.head_group, basis, y3a) == zero);
}

TEST_CASE("printed T of the S4 cover") {
  CoverContext ctx = build_cover_context(s4(), 2);
  const FiniteGroup& q = *ctx.head_group;
  std::vector<ModuleWord> T = compute_T(ctx);
  ModuleWord b3 = unit_word(ctx, 1);
  std::vector<ModuleWord> printed{b3};
  for (const char* t : printed_s4_T) printed.push_back(parse_module_word(ctx, t, &skip_b3));
  std::vector<ModuleWord> ours = T;
  ours.push_back(b3);
  ModuleBasis a = module_basis(q, 2, ctx.rank(), ours);
  ModuleBasis b = module_basis(q, 2, ctx.rank(), printed);
  CHECK(a.dim == 6);
  CHECK(b.dim == 6);
  for (const auto& w : printed) CHECK(module_image(q, a, w) == std::vector<std::uint32_t>(6, 0));
  for (const auto& w : ours) CHECK(module_image(q, b, w) == std::vector<std::uint32_t>(6, 0));

  // without b^3 = 1 the printed words y2 and y3^{(a+1)} still lie in <T>
  ModuleBasis full = module_basis(q, 2, ctx.rank(), T);
  std::vector<std::uint32_t> zero(full.dim, 0);
  CHECK(module_image(q, full, parse_module_word(ctx, "y2", &skip_b3)) == zero);
  CHECK(module_image(q, full, parse_module_word(ctx, "y3^{(a+1)}", &skip_b3)) == zero);
}

TEST_CASE("S4 covering group") {
  PcPresentation h = l_cover(s4(), 2);
  CHECK(h.size() == 4 + s4_multiplicator_oracle());
  CHECK(consistency_check(h).consistent());
  CHECK(order(h) == 24 * (1u << s4_multiplicator_oracle()));
}

TEST_CASE("cover of C2") {
  PcPresentation c2 = parse_pc_presentation("{ a | a^2 }");
  CoverContext ctx = build_cover_context(c2, 2);
  CHECK(ctx.s == 1);
  CHECK(compute_T(ctx).empty());
  PcPresentation h = l_cover(c2, 2);
  CHECK(order(h) == 4);
  CHECK(format_normal_word(h, h.power(0)) == "b");
}

TEST_CASE("cover of the trivial group") {
  PcPresentation triv = parse_pc_presentation("{ | }");
  PcPresentation h = l_cover(triv, 3);
  CHECK(h.size() == 0);
}
