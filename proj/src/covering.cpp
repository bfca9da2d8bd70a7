#include "solquo/covering.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <thread>

#include "echelon.hpp"
#include "solquo/collector.hpp"
#include "solquo/errors.hpp"

namespace solquo {

std::size_t head_count(const PcPresentation& pc, std::uint32_t p) {
  const std::size_t n = pc.size();
  if (n == 0 || pc.prime(n - 1) != p) return n;
  const std::size_t last_block = pc.weights().back().block;
  std::size_t r = 0;
  while (r < n && pc.weights()[r].block < last_block) ++r;
  return r;
}

std::vector<std::string> CoverContext::module_generator_names() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < s; ++i) out.push_back("y" + std::to_string(i + 1));
  for (std::size_t i = 0; i < t; ++i) out.push_back("z" + std::to_string(i + 1));
  return out;
}

namespace {

std::optional<std::size_t> defined_by_relation(const PcPresentation& pc, RelationId r) {
  for (std::size_t i = 0; i < pc.size(); ++i) {
    const Definition& d = pc.definitions()[i];
    if (d.kind == Definition::Kind::relation && d.relation == r) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> defined_by_image(const PcPresentation& pc, std::size_t g) {
  for (std::size_t i = 0; i < pc.size(); ++i) {
    const Definition& d = pc.definitions()[i];
    if (d.kind == Definition::Kind::image && d.image == g) return i;
  }
  return std::nullopt;
}

}  // namespace

CoverContext build_cover_context(const PcPresentation& pcK, std::uint32_t p,
                                 const FpPresentation* fp, const Epimorphism* theta,
                                 const CoverLimits& limits, HeadOverride head) {
  if (!is_prime(p)) throw Error(ErrorKind::argument, std::to_string(p) + " is not a prime");
  validate(pcK);
  const std::size_t n = pcK.size();
  CoverContext ctx;
  auto base = std::make_shared<PcPresentation>(pcK);
  ctx.base = base;
  ctx.p = p;
  ctx.r = head.r ? *head.r : head_count(pcK, p);
  if (ctx.r > n) throw Error(ErrorKind::argument, "head count exceeds the generator count");

  std::vector<std::optional<std::size_t>> tags(n * n);
  for (RelationId rel : relations_in_display_order(n)) {
    if (defined_by_relation(pcK, rel)) continue;
    tags[rel.conjugator * n + rel.target] = ctx.s++;
    ctx.tagged_relations.push_back(rel);
  }

  if (fp) {
    if (!theta || theta->images.size() != fp->generator_count()) {
      throw Error(ErrorKind::invalid_epimorphism,
                  "need one image per generator of the finitely presented group");
    }
    for (std::size_t i = 0; i < n; ++i) {
      const Definition& d = pcK.definitions()[i];
      if (d.kind == Definition::Kind::none) {
        throw Error(ErrorKind::invalid_presentation,
                    "generator " + pcK.names()[i] + " has no definition");
      }
      if (d.kind == Definition::Kind::image) {
        if (d.image >= fp->generator_count()) {
          throw Error(ErrorKind::invalid_epimorphism,
                      "definition of " + pcK.names()[i] + " names a missing generator");
        }
        const NormalWord& w = theta->images[d.image];
        if (w.size() != n || w.last() != i || w[i] != 1) {
          throw Error(ErrorKind::invalid_epimorphism,
                      "image of " + fp->generators[d.image] + " does not define " +
                          pcK.names()[i]);
        }
      }
    }
    for (std::size_t g = 0; g < fp->generator_count(); ++g) {
      if (theta->images[g].size() != n) {
        throw Error(ErrorKind::invalid_epimorphism,
                    "image of " + fp->generators[g] + " has the wrong length");
      }
      CoverContext::SigmaEntry e{theta->images[g], std::nullopt};
      if (!defined_by_image(pcK, g)) e.z = ctx.t++;
      ctx.sigma.push_back(std::move(e));
    }
    ctx.reserved_names = fp->generators;
  }

  ctx.head_quotient = quotient_by_tail(pcK, ctx.r);
  ctx.head_group = std::make_shared<FiniteGroup>(ctx.head_quotient, limits.max_head_order);
  ctx.collector = std::make_shared<ExtendedCollector>(*base, ctx.r, p, std::move(tags),
                                                      ctx.rank(), ctx.head_group);
  return ctx;
}

void prune_relators(std::vector<ModuleWord>& relators) {
  std::set<std::vector<std::uint32_t>> seen;
  std::vector<ModuleWord> out;
  for (auto& w : relators) {
    if (w.is_zero()) continue;
    if (seen.insert(w.coefficients()).second) out.push_back(std::move(w));
  }
  relators = std::move(out);
}

namespace {

struct TestWord {
  int family;
  std::size_t i, j, k;
};

std::vector<TestWord> test_words(std::size_t n) {
  std::vector<TestWord> out;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = 0; i < j; ++i) out.push_back({1, i, j, k});
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < k; ++j) out.push_back({2, 0, j, k});
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i) out.push_back({3, i, j, 0});
  for (std::size_t i = 0; i < n; ++i) out.push_back({4, i, 0, 0});
  return out;
}

ModuleWord test_word_difference(const ExtendedCollector& c, const TestWord& t) {
  const PcPresentation& pc = c.base();
  auto pow = [&](std::size_t g, std::uint32_t e) {
    ExtendedNormalWord x = c.identity();
    for (std::uint32_t r = 0; r < e; ++r) c.multiply_generator(x, g);
    return x;
  };
  ExtendedNormalWord left, right;
  switch (t.family) {
    case 1: {
      left = c.generator(t.k);
      c.multiply_generator(left, t.j);
      c.multiply_generator(left, t.i);
      ExtendedNormalWord ji = c.generator(t.j);
      c.multiply_generator(ji, t.i);
      right = c.multiply(c.generator(t.k), ji);
      break;
    }
    case 2: {
      left = pow(t.k, pc.prime(t.k));
      c.multiply_generator(left, t.j);
      ExtendedNormalWord kj = c.generator(t.k);
      c.multiply_generator(kj, t.j);
      right = c.multiply(pow(t.k, pc.prime(t.k) - 1), kj);
      break;
    }
    case 3: {
      left = c.generator(t.j);
      for (std::uint32_t r = 0; r < pc.prime(t.i); ++r) c.multiply_generator(left, t.i);
      right = c.multiply(c.generator(t.j), pow(t.i, pc.prime(t.i)));
      break;
    }
    default: {
      left = pow(t.i, pc.prime(t.i));
      c.multiply_generator(left, t.i);
      right = c.multiply(c.generator(t.i), pow(t.i, pc.prime(t.i)));
      break;
    }
  }
  if (left.head != right.head) {
    throw Error(ErrorKind::inconsistent,
                "test word heads disagree: the base presentation is inconsistent");
  }
  return left.tail - right.tail;
}

}  // namespace

std::vector<ModuleWord> compute_T(const CoverContext& ctx, unsigned threads) {
  const ExtendedCollector& c = *ctx.collector;
  std::vector<TestWord> words = test_words(ctx.base->size());
  std::vector<ModuleWord> results(words.size());
  std::vector<std::exception_ptr> errors(std::max(1u, threads));
  auto work = [&](std::size_t begin, std::size_t stride, std::size_t slot) {
    try {
      for (std::size_t w = begin; w < words.size(); w += stride) {
        results[w] = test_word_difference(c, words[w]);
      }
    } catch (...) {
      errors[slot] = std::current_exception();
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, 64));
  if (threads == 1 || words.size() < 32) {
    work(0, 1, 0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t, threads, t);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  prune_relators(results);
  return results;
}

std::vector<ModuleWord> compute_U(const CoverContext& ctx, const FpPresentation& fp) {
  const ExtendedCollector& c = *ctx.collector;
  if (ctx.sigma.size() != fp.generator_count()) {
    throw Error(ErrorKind::argument, "cover context has no images for this presentation");
  }
  std::vector<ExtendedNormalWord> images;
  for (const auto& e : ctx.sigma) {
    ExtendedNormalWord x{e.image, c.zero_tail()};
    if (e.z) x.tail.at(ctx.s + *e.z, 0) = 1;
    images.push_back(std::move(x));
  }
  std::vector<ModuleWord> out;
  for (std::size_t i = 0; i < fp.relators.size(); ++i) {
    ExtendedNormalWord v = c.evaluate(fp.relators[i], images);
    if (!v.head.is_identity()) {
      throw Error(ErrorKind::invalid_epimorphism,
                  "relator " + format_free_word(fp.relators[i], fp.generators) +
                      " maps to " + format_normal_word(*ctx.base, v.head) +
                      ", not the identity");
    }
    out.push_back(std::move(v.tail));
  }
  prune_relators(out);
  return out;
}

std::vector<std::string> fresh_names(const std::vector<std::string>& existing,
                                     std::size_t count) {
  std::set<std::string> used(existing.begin(), existing.end());
  std::vector<std::string> out;
  for (std::size_t i = 0; out.size() < count; ++i) {
    std::string name(1, static_cast<char>('a' + i % 26));
    if (i >= 26) name += std::to_string(i / 26);
    if (used.insert(name).second) out.push_back(name);
  }
  return out;
}

Extension assemble_pc(const CoverContext& ctx, const ModuleBasis& basis) {
  const PcPresentation& K = *ctx.base;
  const std::size_t n = K.size();
  const std::size_t m = basis.dim;
  if (basis.p != ctx.p || basis.gen_images.size() != ctx.rank() ||
      basis.action.size() != ctx.r) {
    throw Error(ErrorKind::argument, "module basis does not belong to this cover context");
  }

  std::vector<std::string> names = K.names();
  std::vector<std::string> taken = K.names();
  taken.insert(taken.end(), ctx.reserved_names.begin(), ctx.reserved_names.end());
  for (auto& nm : fresh_names(taken, m)) names.push_back(nm);
  std::vector<std::uint32_t> primes = K.primes();
  primes.resize(n + m, ctx.p);
  PcPresentation H(names, primes);

  auto extend = [&](const NormalWord& w, const std::vector<std::uint32_t>* layer) {
    NormalWord out(n + m);
    for (std::size_t i = 0; i < n; ++i) out[i] = w[i];
    if (layer) {
      for (std::size_t l = 0; l < m; ++l) out[n + l] = (*layer)[l];
    }
    return out;
  };

  std::vector<const std::vector<std::uint32_t>*> tag_image(n * n, nullptr);
  for (std::size_t t = 0; t < ctx.s; ++t) {
    RelationId rel = ctx.tagged_relations[t];
    tag_image[rel.conjugator * n + rel.target] = &basis.gen_images[t];
  }
  for (RelationId rel : relations_in_display_order(n)) {
    H.rhs(rel) = extend(K.rhs(rel), tag_image[rel.conjugator * n + rel.target]);
  }
  for (std::size_t l = 0; l < m; ++l) {
    const std::size_t b = n + l;
    for (std::size_t j = 0; j < n; ++j) {
      NormalWord w(n + m);
      if (j < ctx.r) {
        for (std::size_t k = 0; k < m; ++k) w[n + k] = basis.action[j](l, k);
      } else {
        w[b] = 1;
      }
      H.conjugate(j, b) = w;
    }
    for (std::size_t j = n; j < b; ++j) H.conjugate(j, b) = NormalWord::unit(n + m, b);
    H.power(b) = NormalWord(n + m);
  }

  for (std::size_t i = 0; i < n; ++i) {
    H.weights()[i] = K.weights()[i];
    H.definitions()[i] = K.definitions()[i];
  }
  Weight w{1, 1};
  if (n > 0) {
    w = K.weights().back();
    if (K.prime(n - 1) == ctx.p) {
      ++w.cls;
    } else {
      ++w.block;
      w.cls = 1;
    }
  }
  for (std::size_t l = 0; l < m; ++l) H.weights()[n + l] = w;

  Extension ext{std::move(H), {}, n};
  for (const auto& e : ctx.sigma) {
    ext.images.push_back(extend(e.image, e.z ? &basis.gen_images[ctx.s + *e.z] : nullptr));
  }
  return ext;
}

void relabel(PcPresentation& pc, std::vector<NormalWord>* images) {
  const std::size_t n = pc.size();
  if (n == 0) return;
  std::size_t n0 = n;
  while (n0 > 0 && pc.weights()[n0 - 1] == pc.weights().back()) --n0;
  const std::size_t m = n - n0;
  bool labelled = true;
  for (std::size_t l = n0; l < n; ++l) {
    labelled = labelled && pc.definitions()[l].kind != Definition::Kind::none;
  }
  if (labelled) return;

  const std::uint32_t p = pc.prime(n - 1);
  for (std::size_t l = n0; l < n; ++l) {
    if (pc.prime(l) != p) throw Error(ErrorKind::invalid_presentation, "mixed primes in layer");
    if (!pc.power(l).is_identity()) {
      throw Error(ErrorKind::invalid_presentation, "layer is not elementary abelian");
    }
    for (std::size_t k = n0; k < l; ++k) {
      if (pc.conjugate(k, l) != NormalWord::unit(n, l)) {
        throw Error(ErrorKind::invalid_presentation, "layer is not abelian");
      }
    }
  }
  auto layer_part = [&](const NormalWord& w) {
    return std::vector<std::uint32_t>(w.exponents.begin() + static_cast<std::ptrdiff_t>(n0),
                                      w.exponents.end());
  };
  std::vector<FpMatrix> action;
  for (std::size_t j = 0; j < n0; ++j) {
    FpMatrix a(p, m, m);
    for (std::size_t l = 0; l < m; ++l) {
      const NormalWord& w = pc.conjugate(j, n0 + l);
      for (std::size_t i = 0; i < n0; ++i) {
        if (w[i]) throw Error(ErrorKind::invalid_presentation, "layer is not normal");
      }
      for (std::size_t k = 0; k < m; ++k) a(l, k) = w[n0 + k];
    }
    action.push_back(std::move(a));
  }

  struct Choice {
    std::vector<std::uint32_t> vec;
    Definition def;
  };
  std::vector<Choice> chosen;
  detail::GfpEchelon span(p, m);
  auto offer = [&](std::vector<std::uint32_t> v, Definition d) {
    if (chosen.size() < m && span.insert_dense(v)) chosen.push_back({std::move(v), d});
  };
  std::size_t spun = 0;
  auto spin = [&] {
    for (; spun < chosen.size() && chosen.size() < m; ++spun) {
      for (std::size_t j = 0; j < n0; ++j) {
        offer(chosen[spun].vec * action[j],
              Definition::by_relation({j, n0 + spun}));
      }
    }
  };
  for (RelationId rel : relations_in_display_order(n0)) {
    offer(layer_part(pc.rhs(rel)), Definition::by_relation(rel));
  }
  spin();
  if (images) {
    for (std::size_t g = 0; g < images->size() && chosen.size() < m; ++g) {
      if (defined_by_image(pc, g) && *defined_by_image(pc, g) < n0) continue;
      offer(layer_part((*images)[g]), Definition::by_image(g));
      spin();
    }
  }
  if (chosen.size() < m) {
    throw Error(ErrorKind::internal, "layer is not spanned by relations and images");
  }

  FpMatrix c(p, m, m);
  for (std::size_t l = 0; l < m; ++l) {
    for (std::size_t k = 0; k < m; ++k) c(l, k) = chosen[l].vec[k];
  }
  const FpMatrix cinv = inverse(c);
  auto rewrite = [&](NormalWord& w) {
    auto v = layer_part(w) * cinv;
    for (std::size_t k = 0; k < m; ++k) w[n0 + k] = v[k];
  };
  for (RelationId rel : relations_in_display_order(n0)) rewrite(pc.rhs(rel));
  for (std::size_t j = 0; j < n0; ++j) {
    FpMatrix a = c * action[j] * cinv;
    for (std::size_t l = 0; l < m; ++l) {
      NormalWord w(n);
      for (std::size_t k = 0; k < m; ++k) w[n0 + k] = a(l, k);
      pc.conjugate(j, n0 + l) = w;
    }
  }
  if (images) {
    for (auto& w : *images) rewrite(w);
  }
  for (std::size_t l = 0; l < m; ++l) pc.definitions()[n0 + l] = chosen[l].def;
}

PcPresentation l_cover(const PcPresentation& pcK, std::uint32_t p, const CoverLimits& limits,
                       const ModuleSolverLimits& solver_limits) {
  CoverContext ctx = build_cover_context(pcK, p, nullptr, nullptr, limits);
  std::vector<ModuleWord> T = compute_T(ctx, limits.threads);
  ModuleBasis basis = module_basis(*ctx.head_group, p, ctx.rank(), T, solver_limits);
  Extension ext = assemble_pc(ctx, basis);
  relabel(ext.pc);
  return std::move(ext.pc);
}

std::string format_tagged_presentation(const CoverContext& ctx) {
  const PcPresentation& K = *ctx.base;
  const std::size_t n = K.size();
  const auto ynames = ctx.module_generator_names();
  std::ostringstream out;
  out << "{ ";
  for (std::size_t i = 0; i < n; ++i) out << (i ? ", " : "") << K.names()[i];
  for (std::size_t i = 0; i < ynames.size(); ++i) out << (n + i ? ", " : "") << ynames[i];
  out << " |";
  std::vector<std::optional<std::size_t>> tag(n * n);
  for (std::size_t t = 0; t < ctx.s; ++t) {
    RelationId r = ctx.tagged_relations[t];
    tag[r.conjugator * n + r.target] = t;
  }
  bool first = true;
  for (std::size_t k = 0; k < n; ++k) {
    out << "\n ";
    for (std::size_t j = 0; j <= k; ++j) {
      RelationId r = j == k ? RelationId{k, k} : RelationId{j, k};
      auto t = tag[r.conjugator * n + r.target];
      std::string rhs = format_normal_word(K, K.rhs(r));
      if (t) rhs = rhs == "1" ? ynames[*t] : rhs + " " + ynames[*t];
      out << (first ? " " : ", ") << relation_label(K, r) << (t ? " = " : " =: ") << rhs;
      first = false;
    }
  }
  for (std::size_t j = ctx.r; j < n; ++j) {
    out << ",\n  y^" << K.names()[j] << " = y for every module generator y";
  }
  out << ",\n  [y, w^g] = 1 and y^" << ctx.p
      << " = 1 for all module generators y, w and g in the head }\n";
  for (std::size_t g = 0; g < ctx.sigma.size(); ++g) {
    const auto& e = ctx.sigma[g];
    out << "sigma(" << g + 1 << ") = " << format_normal_word(K, e.image);
    if (e.z) out << " " << ynames[ctx.s + *e.z];
    out << "\n";
  }
  return out.str();
}

}  // namespace solquo
