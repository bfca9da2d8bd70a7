#include "solquo/group_algebra.hpp"

#include <algorithm>
#include <unordered_map>

#include "collect_impl.hpp"
#include "solquo/errors.hpp"

namespace solquo {

// ---------------------------------------------------------------------------
// FiniteGroup

FiniteGroup::FiniteGroup(PcPresentation pc, std::uint64_t ceiling,
                         std::size_t table_ceiling)
    : pc_(std::move(pc)) {
  const std::size_t r = pc_.size();
  std::uint64_t q = 1;
  for (std::uint32_t p : pc_.primes()) {
    if (q > ceiling / p) {
      throw Error(ErrorKind::ceiling,
                  "quotient too large to enumerate (ceiling " +
                      std::to_string(ceiling) + ")");
    }
    q *= p;
  }
  order_ = static_cast<std::uint32_t>(q);
  stride_.assign(r, 1);
  for (std::size_t i = r; i-- > 1;) stride_[i - 1] = stride_[i] * pc_.prime(i);

  Collector c(pc_);
  gen_table_.assign(r, std::vector<std::uint32_t>(order_));
  for (std::uint32_t x = 0; x < order_; ++x) {
    NormalWord w = element(x);
    for (std::size_t g = 0; g < r; ++g) {
      NormalWord v = w;
      c.multiply_generator(v, g);
      gen_table_[g][x] = index_of(v);
    }
  }

  if (order_ <= table_ceiling) {
    // Row x of the Cayley table: y = y' a_j where a_j is the last generator
    // occurring in y, and y' has rank y - stride_j.
    const std::size_t qq = order_;
    cayley_.assign(qq * qq, 0);
    std::vector<std::size_t> last(qq, 0);
    for (std::uint32_t y = 1; y < order_; ++y) {
      std::size_t j = r;
      while (j-- > 0) {
        if ((y / stride_[j]) % pc_.prime(j) != 0) break;
      }
      last[y] = j;
    }
    for (std::uint32_t x = 0; x < order_; ++x) {
      std::uint32_t* row = &cayley_[x * qq];
      row[0] = x;
      for (std::uint32_t y = 1; y < order_; ++y) {
        std::size_t j = last[y];
        row[y] = gen_table_[j][row[y - stride_[j]]];
      }
    }
    inverse_.assign(order_, 0);
    for (std::uint32_t x = 0; x < order_; ++x) {
      const std::uint32_t* row = &cayley_[x * qq];
      for (std::uint32_t y = 0; y < order_; ++y) {
        if (row[y] == 0) {
          inverse_[x] = y;
          break;
        }
      }
    }
  } else {
    inverse_.resize(order_);
    for (std::uint32_t x = 0; x < order_; ++x) {
      inverse_[x] = index_of(c.invert(element(x)));
    }
  }
}

std::uint32_t FiniteGroup::index_of(const NormalWord& w) const {
  std::uint32_t x = 0;
  for (std::size_t i = 0; i < pc_.size(); ++i) x += w[i] * stride_[i];
  return x;
}

NormalWord FiniteGroup::element(std::uint32_t x) const {
  NormalWord w(pc_.size());
  for (std::size_t i = 0; i < pc_.size(); ++i) {
    w[i] = (x / stride_[i]) % pc_.prime(i);
  }
  return w;
}

std::uint32_t FiniteGroup::multiply(std::uint32_t x, std::uint32_t y) const {
  if (!cayley_.empty()) return cayley_[static_cast<std::size_t>(x) * order_ + y];
  for (std::size_t i = 0; i < pc_.size(); ++i) {
    for (std::uint32_t e = (y / stride_[i]) % pc_.prime(i); e > 0; --e) {
      x = gen_table_[i][x];
    }
  }
  return x;
}

// ---------------------------------------------------------------------------
// Algebra and module elements

namespace {

void check_same(std::uint32_t p1, std::uint32_t p2, std::size_t s1, std::size_t s2) {
  if (p1 != p2 || s1 != s2) {
    throw Error(ErrorKind::argument, "operands live in different modules");
  }
}

}  // namespace

bool AlgebraElement::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](auto c) { return c == 0; });
}

AlgebraElement add(const AlgebraElement& a, const AlgebraElement& b) {
  check_same(a.characteristic(), b.characteristic(), a.size(), b.size());
  AlgebraElement out = a;
  const std::uint32_t p = a.characteristic();
  for (std::uint32_t g = 0; g < a.size(); ++g) out[g] = (a[g] + b[g]) % p;
  return out;
}

AlgebraElement negate(const AlgebraElement& a) {
  AlgebraElement out = a;
  const std::uint32_t p = a.characteristic();
  for (std::uint32_t g = 0; g < a.size(); ++g) out[g] = (p - a[g]) % p;
  return out;
}

AlgebraElement act(const FiniteGroup& q, const AlgebraElement& a, std::uint32_t x) {
  if (a.size() != q.order()) throw Error(ErrorKind::argument, "algebra size mismatch");
  AlgebraElement out(a.characteristic(), a.size());
  for (std::uint32_t g = 0; g < a.size(); ++g) {
    if (a[g]) out[q.multiply(g, x)] = a[g];
  }
  return out;
}

AlgebraElement multiply(const FiniteGroup& q, const AlgebraElement& a,
                        const AlgebraElement& b) {
  check_same(a.characteristic(), b.characteristic(), a.size(), b.size());
  if (a.size() != q.order()) throw Error(ErrorKind::argument, "algebra size mismatch");
  const std::uint64_t p = a.characteristic();
  AlgebraElement out(a.characteristic(), a.size());
  for (std::uint32_t g = 0; g < a.size(); ++g) {
    if (!a[g]) continue;
    for (std::uint32_t h = 0; h < b.size(); ++h) {
      if (!b[h]) continue;
      std::uint32_t& c = out[q.multiply(g, h)];
      c = static_cast<std::uint32_t>((c + std::uint64_t{a[g]} * b[h]) % p);
    }
  }
  return out;
}

AlgebraElement ModuleWord::entry(std::size_t gen) const {
  AlgebraElement a(p_, q_);
  for (std::uint32_t g = 0; g < q_; ++g) a[g] = at(gen, g);
  return a;
}

void ModuleWord::set_entry(std::size_t gen, const AlgebraElement& a) {
  check_same(p_, a.characteristic(), q_, a.size());
  for (std::uint32_t g = 0; g < q_; ++g) at(gen, g) = a[g];
}

bool ModuleWord::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](auto c) { return c == 0; });
}

ModuleWord& ModuleWord::operator+=(const ModuleWord& rhs) {
  check_same(p_, rhs.p_, coeffs_.size(), rhs.coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    std::uint32_t s = coeffs_[i] + rhs.coeffs_[i];
    coeffs_[i] = s >= p_ ? s - p_ : s;
  }
  return *this;
}

ModuleWord& ModuleWord::operator-=(const ModuleWord& rhs) {
  check_same(p_, rhs.p_, coeffs_.size(), rhs.coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    std::uint32_t s = coeffs_[i] + p_ - rhs.coeffs_[i];
    coeffs_[i] = s >= p_ ? s - p_ : s;
  }
  return *this;
}

ModuleWord ModuleWord::operator-() const {
  ModuleWord out = *this;
  for (auto& c : out.coeffs_) c = c ? p_ - c : 0;
  return out;
}

ModuleWord act(const FiniteGroup& q, const ModuleWord& m, std::uint32_t x) {
  if (x == 0) return m;
  ModuleWord out(m.characteristic(), m.rank(), m.group_order());
  const std::uint32_t n = m.group_order();
  std::vector<std::uint32_t> target(n);
  for (std::uint32_t g = 0; g < n; ++g) target[g] = q.multiply(g, x);
  for (std::size_t i = 0; i < m.rank(); ++i) {
    for (std::uint32_t g = 0; g < n; ++g) {
      if (std::uint32_t c = m.at(i, g)) out.at(i, target[g]) = c;
    }
  }
  return out;
}

std::string format_algebra_element(const FiniteGroup& q, const AlgebraElement& a) {
  std::string out;
  for (std::uint32_t g = 0; g < a.size(); ++g) {
    if (!a[g]) continue;
    if (!out.empty()) out += " + ";
    std::string elem = g == 0 ? "1" : format_normal_word(q.presentation(), q.element(g));
    for (char& ch : elem) {
      if (ch == ' ') ch = '*';
    }
    if (a[g] != 1) out += std::to_string(a[g]) + (g == 0 ? "" : "*" + elem);
    else out += elem;
  }
  return out.empty() ? "0" : out;
}

std::string format_module_word(const FiniteGroup& q, const ModuleWord& m,
                               const std::vector<std::string>& gen_names) {
  std::string out;
  for (std::size_t i = 0; i < m.rank(); ++i) {
    AlgebraElement a = m.entry(i);
    if (a.is_zero()) continue;
    if (!out.empty()) out += " ";
    out += i < gen_names.size() ? gen_names[i] : "y" + std::to_string(i + 1);
    std::string f = format_algebra_element(q, a);
    if (f != "1") out += "^{(" + f + ")}";
  }
  return out.empty() ? "1" : out;
}

// ---------------------------------------------------------------------------
// Extended collection

ExtendedCollector::ExtendedCollector(const PcPresentation& base, std::size_t head_count,
                                     std::uint32_t p,
                                     std::vector<std::optional<std::size_t>> tags,
                                     std::size_t module_rank,
                                     std::shared_ptr<const FiniteGroup> head_group)
    : base_(&base),
      r_(head_count),
      p_(p),
      tags_(std::move(tags)),
      rank_(module_rank),
      head_(std::move(head_group)),
      plain_(base) {
  const std::size_t n = base.size();
  if (r_ > n || head_->generator_count() != r_ || tags_.size() != n * n) {
    throw Error(ErrorKind::argument, "extended collector: inconsistent setup");
  }
  for (const auto& t : tags_) {
    if (t && *t >= rank_) throw Error(ErrorKind::argument, "tag out of range");
  }
}

ExtendedNormalWord ExtendedCollector::identity() const {
  return {NormalWord(base_->size()), zero_tail()};
}

ExtendedNormalWord ExtendedCollector::generator(std::size_t g) const {
  return {NormalWord::unit(base_->size(), g), zero_tail()};
}

namespace {

// Tags emitted during one collection, each at the K/P image of the prefix
// that precedes it. Converted into module coordinates once the final head
// image is known.
class TagSink {
 public:
  TagSink(const ExtendedCollector& c) : c_(c) {}

  void operator()(RelationId r, const NormalWord& state) {
    if (auto t = c_.tag(r)) {
      emitted_.emplace_back(*t, c_.head_group().index_of(state));
    }
  }

  void flush(ModuleWord& tail, std::uint32_t final_image) const {
    const FiniteGroup& q = c_.head_group();
    const std::uint32_t p = c_.prime();
    std::unordered_map<std::uint32_t, std::uint32_t> shift;
    for (auto [t, key] : emitted_) {
      auto it = shift.find(key);
      if (it == shift.end()) {
        it = shift.emplace(key, q.multiply(q.inverse(key), final_image)).first;
      }
      std::uint32_t& c = tail.at(t, it->second);
      c = c + 1 == p ? 0 : c + 1;
    }
  }

 private:
  const ExtendedCollector& c_;
  std::vector<std::pair<std::size_t, std::uint32_t>> emitted_;
};

}  // namespace

template <class Run>
void ExtendedCollector::run_collection(ExtendedNormalWord& x, Run&& run) const {
  const std::uint32_t before = head_->index_of(x.head);
  TagSink sink(*this);
  run(sink);
  const std::uint32_t after = head_->index_of(x.head);
  if (before != after) {
    x.tail = act(*head_, x.tail, head_->multiply(head_->inverse(before), after));
  }
  sink.flush(x.tail, after);
}

void ExtendedCollector::multiply_generator(ExtendedNormalWord& x, std::size_t g) const {
  if (g >= base_->size()) throw Error(ErrorKind::argument, "generator out of range");
  run_collection(x, [&](TagSink& sink) {
    detail::StepBudget budget{0, plain_.step_limit(1)};
    detail::collect_generator(*base_, x.head, g, budget, sink);
  });
}

void ExtendedCollector::multiply_head(ExtendedNormalWord& x, const NormalWord& w) const {
  std::size_t len = 0;
  for (auto e : w.exponents) len += e;
  run_collection(x, [&](TagSink& sink) {
    detail::StepBudget budget{0, plain_.step_limit(len)};
    detail::collect_word(*base_, x.head, w, budget, sink);
  });
}

ExtendedNormalWord ExtendedCollector::multiply(const ExtendedNormalWord& a,
                                               const ExtendedNormalWord& b) const {
  ExtendedNormalWord out = a;
  multiply_head(out, b.head);
  out.tail += b.tail;
  return out;
}

ExtendedNormalWord ExtendedCollector::invert(const ExtendedNormalWord& a) const {
  // (h, 0)(u, 0) = (1, c) with u the inverse head; then
  // (h, m)^-1 = (u, -m.u - c).
  NormalWord u = plain_.invert(a.head);
  ExtendedNormalWord x{a.head, zero_tail()};
  multiply_head(x, u);
  if (!x.head.is_identity()) {
    throw Error(ErrorKind::internal, "extended inversion: head did not cancel");
  }
  ModuleWord tail = act(*head_, a.tail, head_->index_of(u));
  tail += x.tail;
  return {std::move(u), -tail};
}

ExtendedNormalWord ExtendedCollector::power(const ExtendedNormalWord& a,
                                            std::int64_t e) const {
  ExtendedNormalWord base = e < 0 ? invert(a) : a;
  std::uint64_t k = e < 0 ? static_cast<std::uint64_t>(-e) : static_cast<std::uint64_t>(e);
  ExtendedNormalWord result = identity();
  while (k) {
    if (k & 1) result = multiply(result, base);
    k >>= 1;
    if (k) base = multiply(base, base);
  }
  return result;
}

ExtendedNormalWord ExtendedCollector::collect(std::span<const ExtendedLetter> word) const {
  ExtendedNormalWord x = identity();
  for (const ExtendedLetter& l : word) {
    if (l.kind == ExtendedLetter::Kind::base) {
      multiply_generator(x, l.gen);
    } else {
      if (l.gen >= rank_) throw Error(ErrorKind::argument, "module generator out of range");
      AlgebraElement f = l.exponent;
      if (f.size() == 0) f = AlgebraElement::unit(p_, head_->order());
      x.tail.set_entry(l.gen, add(x.tail.entry(l.gen), f));
    }
  }
  return x;
}

ExtendedNormalWord ExtendedCollector::evaluate(
    const FreeWord& w, std::span<const ExtendedNormalWord> images) const {
  ExtendedNormalWord result = identity();
  for (const Letter& l : w.letters()) {
    if (l.gen >= images.size()) {
      throw Error(ErrorKind::argument,
                  "no image for free generator " + std::to_string(l.gen + 1));
    }
    result = multiply(result, power(images[l.gen], l.exp));
  }
  return result;
}

}  // namespace solquo
