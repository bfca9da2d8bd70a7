#pragma once

// Collection from the left, parameterized by a hook that observes each
// applied relation. The extended collector uses the hook to emit module tags
// at the position where the relation's right-hand side was inserted.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "solquo/errors.hpp"
#include "solquo/presentations.hpp"

namespace solquo::detail {

struct StepBudget {
  std::uint64_t steps = 0;
  std::uint64_t limit = 0;

  void tick() {
    if (++steps > limit) {
      throw Error(ErrorKind::internal,
                  "collection exceeded " + std::to_string(limit) +
                      " steps; the presentation is corrupted");
    }
  }
};

template <class Hook>
void collect_generator(const PcPresentation& pc, NormalWord& state,
                       std::size_t gen, StepBudget& budget, Hook& hook);

template <class Hook>
void collect_word(const PcPresentation& pc, NormalWord& state,
                  const NormalWord& word, StepBudget& budget, Hook& hook) {
  const std::size_t n = word.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::uint32_t e = word[i]; e > 0; --e) {
      collect_generator(pc, state, i, budget, hook);
    }
  }
}

// state := state * a_gen. The collected prefix a_1^e_1..a_gen^e_gen absorbs
// the new letter; the displaced suffix T is re-applied as T^{a_gen}, which is
// the product of the conjugates v_{gen,k}^{e_k}.
template <class Hook>
void collect_generator(const PcPresentation& pc, NormalWord& state,
                       std::size_t gen, StepBudget& budget, Hook& hook) {
  budget.tick();
  const std::size_t n = pc.size();
  std::size_t top = n;
  while (top > gen + 1 && state[top - 1] == 0) --top;
  if (top == gen + 1) {
    if (++state[gen] == pc.prime(gen)) {
      state[gen] = 0;
      collect_word(pc, state, pc.power(gen), budget, hook);
      hook(RelationId{gen, gen}, state);
    }
    return;
  }
  std::vector<std::uint32_t> suffix(state.exponents.begin() +
                                        static_cast<std::ptrdiff_t>(gen + 1),
                                    state.exponents.begin() +
                                        static_cast<std::ptrdiff_t>(top));
  std::fill(state.exponents.begin() + static_cast<std::ptrdiff_t>(gen + 1),
            state.exponents.begin() + static_cast<std::ptrdiff_t>(top), 0u);
  if (++state[gen] == pc.prime(gen)) {
    state[gen] = 0;
    collect_word(pc, state, pc.power(gen), budget, hook);
    hook(RelationId{gen, gen}, state);
  }
  for (std::size_t k = gen + 1; k < top; ++k) {
    const NormalWord& conj = pc.conjugate(gen, k);
    for (std::uint32_t e = suffix[k - gen - 1]; e > 0; --e) {
      collect_word(pc, state, conj, budget, hook);
      hook(RelationId{gen, k}, state);
    }
  }
}

struct NoHook {
  void operator()(RelationId, const NormalWord&) const {}
};

}  // namespace solquo::detail
