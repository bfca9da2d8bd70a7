#include "solquo/driver.hpp"

#include "solquo/errors.hpp"

namespace solquo {

LSpec lplus(const LSpec& spec, std::uint32_t p) {
  LSpec out = spec;
  if (!out.pairs.empty() && out.pairs.back().prime == p) {
    ++out.pairs.back().cls;
  } else {
    out.pairs.push_back({p, 1});
  }
  return out;
}

LSpec lminus(const LSpec& spec, std::uint32_t p) {
  LSpec out = spec;
  if (!out.pairs.empty() && out.pairs.back().prime == p) out.pairs.pop_back();
  return out;
}

void check_epimorphism(const FpPresentation& fp, const PcPresentation& pc,
                       const Epimorphism& tau) {
  const std::size_t n = pc.size();
  if (tau.images.size() != fp.generator_count()) {
    throw Error(ErrorKind::invalid_epimorphism, "need one image per generator");
  }
  for (const auto& w : tau.images) {
    if (w.size() != n) throw Error(ErrorKind::invalid_epimorphism, "image has the wrong length");
  }
  Collector c(pc);
  for (const auto& rel : fp.relators) {
    NormalWord v = c.evaluate(rel, tau.images);
    if (!v.is_identity()) {
      throw Error(ErrorKind::invalid_epimorphism,
                  "relator " + format_free_word(rel, fp.generators) + " maps to " +
                      format_normal_word(pc, v));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Definition& d = pc.definitions()[i];
    if (d.kind == Definition::Kind::none) {
      throw Error(ErrorKind::invalid_epimorphism, "generator " + pc.names()[i] + " is undefined");
    }
    if (d.kind != Definition::Kind::image) continue;
    if (d.image >= tau.images.size()) {
      throw Error(ErrorKind::invalid_epimorphism,
                  "definition of " + pc.names()[i] + " names a missing generator");
    }
    const NormalWord& w = tau.images[d.image];
    if (w.last() != i || w[i] != 1) {
      throw Error(ErrorKind::invalid_epimorphism,
                  "image of " + fp.generators[d.image] + " does not define " + pc.names()[i]);
    }
  }
}

namespace {

BigInt product_of_primes(const PcPresentation& pc) {
  BigInt n = 1;
  for (auto p : pc.primes()) n *= p;
  return n;
}

}  // namespace

std::optional<BasicStepResult> basic_step(const FpPresentation& fp, const PcPresentation& pcK,
                                          const Epimorphism& theta, std::uint32_t p,
                                          std::size_t head, Weight weight,
                                          const DriverConfig& config) {
  CoverContext ctx = build_cover_context(pcK, p, &fp, &theta, config.cover, HeadOverride{head});
  std::vector<ModuleWord> rels = compute_T(ctx, config.cover.threads);
  for (auto& u : compute_U(ctx, fp)) rels.push_back(std::move(u));
  prune_relators(rels);
  ModuleBasis basis = module_basis(*ctx.head_group, p, ctx.rank(), rels, config.solver);
  if (config.inspect_module) config.inspect_module(basis, ctx.head_quotient);
  if (basis.dim == 0) return std::nullopt;

  BigInt target = product_of_primes(pcK);
  for (std::size_t i = 0; i < basis.dim; ++i) target *= p;
  if (target > config.max_order) {
    throw Error(ErrorKind::ceiling, "order " + target.str() + " exceeds the ceiling " +
                                        config.max_order.str());
  }

  Extension ext = assemble_pc(ctx, basis);
  for (std::size_t i = ext.base_size; i < ext.pc.size(); ++i) ext.pc.weights()[i] = weight;
  relabel(ext.pc, &ext.images);
  BasicStepResult out{std::move(ext.pc), Epimorphism{std::move(ext.images)}, basis.dim,
                      ctx.rank()};
  check_epimorphism(fp, out.pc, out.tau);
  return out;
}

std::optional<BasicStepResult> basic_step(const FpPresentation& fp, const PcPresentation& pcK,
                                          const Epimorphism& theta, std::uint32_t p,
                                          const DriverConfig& config) {
  const std::size_t n = pcK.size();
  Weight w{1, 1};
  if (n > 0) {
    w = pcK.weights().back();
    if (pcK.prime(n - 1) == p) {
      ++w.cls;
    } else {
      ++w.block;
      w.cls = 1;
    }
  }
  return basic_step(fp, pcK, theta, p, head_count(pcK, p), w, config);
}

QuotientResult soluble_quotient(const FpPresentation& fp, const LSpec& spec,
                                const DriverConfig& config) {
  validate_lspec(spec);
  QuotientResult res;
  res.tau.images.assign(fp.generator_count(), NormalWord());

  for (std::size_t i = 0; i < spec.pairs.size(); ++i) {
    const auto [p, c] = spec.pairs[i];
    const auto block = static_cast<std::uint32_t>(i + 1);
    res.achieved.pairs.push_back({p, 0});
    for (std::uint32_t j = 1; j <= c; ++j) {
      const auto start = std::chrono::steady_clock::now();
      // P is the part of K already in this pair's block.
      std::size_t head = 0;
      while (head < res.pc.size() && res.pc.weights()[head].block < block) ++head;
      std::optional<BasicStepResult> step;
      try {
        step = basic_step(fp, res.pc, res.tau, p, head, Weight{block, j}, config);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::ceiling) throw;
        res.ceiling = e.what();
        return res;
      }
      if (!step) break;
      res.pc = std::move(step->pc);
      res.tau = std::move(step->tau);
      res.achieved.pairs.back().cls = j;
      res.layer_log.push_back({p, step->dimension, product_of_primes(res.pc)});
      if (config.progress) {
        config.progress({p, i, j, step->module_rank, step->dimension, res.layer_log.back().order,
                         std::chrono::steady_clock::now() - start});
      }
    }
  }
  return res;
}

}  // namespace solquo
