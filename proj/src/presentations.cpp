#include "solquo/presentations.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>

#include "lexer.hpp"

namespace solquo {

using detail::Tok;
using detail::Token;
using detail::TokenStream;

// ---------------------------------------------------------------------------
// FreeWord

FreeWord FreeWord::generator(std::size_t gen, std::int64_t exp) {
  FreeWord w;
  w.push({gen, exp});
  return w;
}

FreeWord FreeWord::from_letters(const std::vector<Letter>& letters) {
  FreeWord w;
  for (const Letter& l : letters) w.push(l);
  return w;
}

void FreeWord::push(Letter l) {
  if (l.exp == 0) return;
  if (!letters_.empty() && letters_.back().gen == l.gen) {
    letters_.back().exp += l.exp;
    if (letters_.back().exp == 0) letters_.pop_back();
    return;
  }
  letters_.push_back(l);
}

std::size_t FreeWord::length() const {
  std::size_t len = 0;
  for (const Letter& l : letters_) len += static_cast<std::size_t>(std::llabs(l.exp));
  return len;
}

FreeWord FreeWord::inverse() const {
  FreeWord w;
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
    w.push({it->gen, -it->exp});
  }
  return w;
}

FreeWord FreeWord::power(std::int64_t e) const {
  FreeWord base = e < 0 ? inverse() : *this;
  std::int64_t n = e < 0 ? -e : e;
  FreeWord w;
  for (std::int64_t i = 0; i < n; ++i) w *= base;
  return w;
}

FreeWord& FreeWord::operator*=(const FreeWord& rhs) {
  for (const Letter& l : rhs.letters_) push(l);
  return *this;
}

FreeWord FreeWord::commutator(const FreeWord& u, const FreeWord& v) {
  return u.inverse() * v.inverse() * u * v;
}

FreeWord FreeWord::conjugate(const FreeWord& u, const FreeWord& v) {
  return v.inverse() * u * v;
}

bool FreeWord::is_reduced() const {
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (letters_[i].exp == 0) return false;
    if (i > 0 && letters_[i - 1].gen == letters_[i].gen) return false;
  }
  return true;
}

std::optional<std::size_t> FpPresentation::find(std::string_view name) const {
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (generators[i] == name) return i;
  }
  return std::nullopt;
}

std::string format_free_word(const FreeWord& w,
                             const std::vector<std::string>& names) {
  if (w.empty()) return "1";
  std::string out;
  for (const Letter& l : w.letters()) {
    if (!out.empty()) out += ' ';
    out += names.at(l.gen);
    if (l.exp != 1) out += "^" + std::to_string(l.exp);
  }
  return out;
}

std::string format_fp_presentation(const FpPresentation& fp) {
  std::string out = "{ ";
  for (std::size_t i = 0; i < fp.generators.size(); ++i) {
    if (i) out += ", ";
    out += fp.generators[i];
  }
  out += " | ";
  for (std::size_t i = 0; i < fp.relators.size(); ++i) {
    if (i) out += ", ";
    out += format_free_word(fp.relators[i], fp.generators);
  }
  out += " }";
  return out;
}

// ---------------------------------------------------------------------------
// Finite presentation grammar

namespace {

std::vector<std::string> parse_name_list(TokenStream& ts) {
  std::vector<std::string> names;
  if (ts.at(Tok::bar)) return names;
  for (;;) {
    const Token& t = ts.expect(Tok::ident, "generator name");
    if (std::find(names.begin(), names.end(), t.text) != names.end()) {
      throw ParseError(t.pos, "duplicate generator '" + t.text + "'");
    }
    names.push_back(t.text);
    if (!ts.accept(Tok::comma)) break;
  }
  return names;
}

class WordParser {
 public:
  WordParser(TokenStream& ts, const std::vector<std::string>& names)
      : ts_(ts), names_(names) {}

  // word := factor* with optional '*' separators
  FreeWord word() {
    FreeWord w;
    for (;;) {
      if (ts_.accept(Tok::star)) continue;
      if (!starts_factor()) break;
      w *= factor();
    }
    return w;
  }

 private:
  bool starts_factor() const {
    Tok k = ts_.peek().kind;
    return k == Tok::ident || k == Tok::lparen || k == Tok::lbracket ||
           (k == Tok::integer && ts_.peek().value == 1);
  }

  FreeWord factor() {
    FreeWord base = atom();
    while (ts_.accept(Tok::caret)) base = apply_exponent(base);
    return base;
  }

  FreeWord apply_exponent(const FreeWord& base) {
    const Token& t = ts_.peek();
    if (t.kind == Tok::minus || t.kind == Tok::integer) {
      return base.power(integer());
    }
    if (t.kind == Tok::lbrace) {
      ts_.next();
      if (ts_.at(Tok::minus) ||
          (ts_.at(Tok::integer) && ts_.peek(1).kind == Tok::rbrace)) {
        std::int64_t e = integer();
        ts_.expect(Tok::rbrace, "'}'");
        return base.power(e);
      }
      FreeWord by = word();
      ts_.expect(Tok::rbrace, "'}'");
      return FreeWord::conjugate(base, by);
    }
    if (t.kind == Tok::ident) {
      // Conjugation by a single generator; "a^bc" conjugates by b only.
      std::vector<std::size_t> parts = split(ts_.next());
      FreeWord w = base;
      w = FreeWord::conjugate(base, FreeWord::generator(parts.front()));
      for (std::size_t i = 1; i < parts.size(); ++i) {
        w *= FreeWord::generator(parts[i]);
      }
      return w;
    }
    if (t.kind == Tok::lparen) {
      ts_.next();
      FreeWord by = word();
      ts_.expect(Tok::rparen, "')'");
      return FreeWord::conjugate(base, by);
    }
    throw ParseError(t.pos, "expected exponent");
  }

  std::int64_t integer() {
    bool neg = ts_.accept(Tok::minus);
    const Token& t = ts_.expect(Tok::integer, "integer exponent");
    if (t.value == 0) throw ParseError(t.pos, "zero exponent");
    return neg ? -t.value : t.value;
  }

  std::vector<std::size_t> split(const Token& t) {
    std::vector<std::size_t> parts;
    if (!detail::split_identifier(t.text, names_, parts) || parts.empty()) {
      throw ParseError(t.pos, "undeclared generator '" + t.text + "'");
    }
    return parts;
  }

  FreeWord atom() {
    const Token& t = ts_.peek();
    switch (t.kind) {
      case Tok::integer:
        ts_.next();
        return {};
      case Tok::ident: {
        // A juxtaposed run like "abc" is a product; only its last letter
        // binds to a following exponent.
        std::vector<std::size_t> parts = split(ts_.next());
        FreeWord prefix;
        for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
          prefix *= FreeWord::generator(parts[i]);
        }
        FreeWord last = FreeWord::generator(parts.back());
        while (ts_.accept(Tok::caret)) last = apply_exponent(last);
        return prefix * last;
      }
      case Tok::lparen: {
        ts_.next();
        FreeWord w = word();
        ts_.expect(Tok::rparen, "')'");
        return w;
      }
      case Tok::lbracket: {
        ts_.next();
        FreeWord w = word();
        ts_.expect(Tok::comma, "',' in commutator");
        w = FreeWord::commutator(w, word());
        while (ts_.accept(Tok::comma)) w = FreeWord::commutator(w, word());
        ts_.expect(Tok::rbracket, "']'");
        return w;
      }
      default:
        throw ParseError(t.pos, "expected word");
    }
  }

  TokenStream& ts_;
  const std::vector<std::string>& names_;
};

}  // namespace

FpPresentation parse_fp_presentation(std::string_view text) {
  TokenStream ts(detail::tokenize(text));
  FpPresentation fp;
  ts.expect(Tok::lbrace, "'{'");
  fp.generators = parse_name_list(ts);
  if (fp.generators.empty()) {
    throw ParseError(ts.peek().pos, "a finite presentation needs a generator");
  }
  ts.expect(Tok::bar, "'|'");
  WordParser wp(ts, fp.generators);
  if (!ts.at(Tok::rbrace)) {
    for (;;) {
      std::size_t pos = ts.peek().pos;
      FreeWord lhs = wp.word();
      if (ts.accept(Tok::equals)) {
        FreeWord rhs = wp.word();
        lhs *= rhs.inverse();
      } else if (ts.at(Tok::define)) {
        throw ParseError(ts.peek().pos,
                         "definitions are not allowed in a finite presentation");
      } else if (lhs.empty() && !(ts.at(Tok::comma) || ts.at(Tok::rbrace))) {
        throw ParseError(pos, "expected relator");
      }
      fp.relators.push_back(std::move(lhs));
      if (!ts.accept(Tok::comma)) break;
    }
  }
  ts.expect(Tok::rbrace, "'}'");
  ts.expect(Tok::end, "end of input");
  return fp;
}

// ---------------------------------------------------------------------------
// LSpec

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

void validate_lspec(const LSpec& spec, bool allow_trailing_zero) {
  for (std::size_t i = 0; i < spec.pairs.size(); ++i) {
    const LPair& pr = spec.pairs[i];
    if (!is_prime(pr.prime)) {
      throw Error(ErrorKind::argument,
                  "series entry " + std::to_string(i + 1) + ": " +
                      std::to_string(pr.prime) + " is not prime");
    }
    if (i > 0 && spec.pairs[i - 1].prime == pr.prime) {
      throw Error(ErrorKind::argument,
                  "series entries " + std::to_string(i) + " and " +
                      std::to_string(i + 1) + " have equal primes");
    }
    bool last = i + 1 == spec.pairs.size();
    if (pr.cls < 1 && !(last && allow_trailing_zero)) {
      throw Error(ErrorKind::argument, "series entry " + std::to_string(i + 1) +
                                           ": class must be at least 1");
    }
  }
}

LSpec parse_lspec(std::string_view text) {
  TokenStream ts(detail::tokenize(text));
  LSpec spec;
  ts.expect(Tok::lbracket, "'['");
  if (!ts.at(Tok::rbracket)) {
    for (;;) {
      ts.expect(Tok::lparen, "'('");
      std::size_t pos = ts.peek().pos;
      std::int64_t p = ts.expect(Tok::integer, "prime").value;
      ts.expect(Tok::comma, "','");
      std::int64_t c = ts.expect(Tok::integer, "class").value;
      ts.expect(Tok::rparen, "')'");
      if (p > 0xffffffffLL || c > 0xffffffffLL) {
        throw ParseError(pos, "series entry out of range");
      }
      spec.pairs.push_back(
          {static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(c)});
      if (!ts.accept(Tok::comma)) break;
    }
  }
  ts.expect(Tok::rbracket, "']'");
  ts.expect(Tok::end, "end of input");
  validate_lspec(spec);
  return spec;
}

std::string format_lspec(const LSpec& spec) {
  std::string out = "[";
  for (std::size_t i = 0; i < spec.pairs.size(); ++i) {
    if (i) out += ",";
    out += "(" + std::to_string(spec.pairs[i].prime) + "," +
           std::to_string(spec.pairs[i].cls) + ")";
  }
  return out + "]";
}

// ---------------------------------------------------------------------------
// NormalWord / PcPresentation

bool NormalWord::is_identity() const {
  return std::all_of(exponents.begin(), exponents.end(),
                     [](std::uint32_t e) { return e == 0; });
}

std::optional<std::size_t> NormalWord::last() const {
  for (std::size_t i = exponents.size(); i-- > 0;) {
    if (exponents[i]) return i;
  }
  return std::nullopt;
}

std::vector<RelationId> relations_in_display_order(std::size_t n) {
  std::vector<RelationId> out;
  out.reserve(n * (n + 1) / 2);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < k; ++j) out.push_back({j, k});
    out.push_back({k, k});
  }
  return out;
}

PcPresentation::PcPresentation(std::vector<std::string> names,
                               std::vector<std::uint32_t> primes)
    : names_(std::move(names)), primes_(std::move(primes)) {
  const std::size_t n = names_.size();
  if (primes_.size() != n) {
    throw Error(ErrorKind::argument, "names and primes differ in length");
  }
  power_.assign(n, NormalWord(n));
  conj_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    conj_[k].assign(k, NormalWord::unit(n, k));
  }
  weights_.assign(n, Weight{});
  definitions_.assign(n, Definition{});
}

std::optional<std::size_t> PcPresentation::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

std::size_t PcPresentation::defined_count() const {
  return static_cast<std::size_t>(
      std::count_if(definitions_.begin(), definitions_.end(),
                    [](const Definition& d) {
                      return d.kind == Definition::Kind::relation;
                    }));
}

std::string relation_label(const PcPresentation& pc, RelationId r) {
  if (r.is_power()) {
    return pc.names()[r.target] + "^" + std::to_string(pc.prime(r.target));
  }
  return pc.names()[r.target] + "^" + pc.names()[r.conjugator];
}

std::string format_normal_word(const PcPresentation& pc, const NormalWord& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!w[i]) continue;
    if (!out.empty()) out += ' ';
    out += pc.names()[i];
    if (w[i] != 1) out += "^" + std::to_string(w[i]);
  }
  return out.empty() ? "1" : out;
}

void validate(const PcPresentation& pc) {
  const std::size_t n = pc.size();
  auto fail = [](const std::string& msg) {
    throw Error(ErrorKind::invalid_presentation, msg);
  };
  std::set<std::string> seen;
  for (std::size_t i = 0; i < n; ++i) {
    if (pc.names()[i].empty()) fail("generator " + std::to_string(i + 1) + " has no name");
    if (!seen.insert(pc.names()[i]).second) fail("duplicate generator " + pc.names()[i]);
    if (!is_prime(pc.prime(i))) {
      fail("generator " + pc.names()[i] + " has non-prime relative order " +
           std::to_string(pc.prime(i)));
    }
  }
  if (pc.weights().size() != n || pc.definitions().size() != n) {
    fail("weight or definition table has the wrong length");
  }
  for (RelationId r : relations_in_display_order(n)) {
    const NormalWord& w = pc.rhs(r);
    const std::string label = relation_label(pc, r);
    if (w.size() != n) fail(label + ": right-hand side has the wrong length");
    for (std::size_t i = 0; i < n; ++i) {
      if (w[i] >= pc.prime(i)) {
        fail(label + ": exponent of " + pc.names()[i] + " out of range");
      }
      if (w[i] && i <= r.conjugator) {
        fail(label + ": right-hand side involves " + pc.names()[i]);
      }
    }
  }
  for (std::size_t i = 1; i < n; ++i) {
    const Weight& a = pc.weights()[i - 1];
    const Weight& b = pc.weights()[i];
    if (b < a) fail("weights decrease at generator " + pc.names()[i]);
    if (a.block == b.block && pc.prime(i - 1) != pc.prime(i)) {
      fail("generators " + pc.names()[i - 1] + " and " + pc.names()[i] +
           " share a series block but not a prime");
    }
  }
  for (std::size_t l = 0; l < n; ++l) {
    const Definition& d = pc.definitions()[l];
    if (d.kind != Definition::Kind::relation) continue;
    RelationId r = d.relation;
    if (r.target >= n || r.conjugator > r.target) {
      fail("definition of " + pc.names()[l] + " names a missing relation");
    }
    const NormalWord& w = pc.rhs(r);
    auto last = w.last();
    if (!last || *last != l || w[l] != 1) {
      fail("definition " + relation_label(pc, r) + " of " + pc.names()[l] +
           " does not end in " + pc.names()[l] + " with exponent 1");
    }
    if (r.target >= l) {
      fail("definition " + relation_label(pc, r) + " of " + pc.names()[l] +
           " involves a later generator");
    }
  }
}

std::string format_pc_presentation(const PcPresentation& pc) {
  const std::size_t n = pc.size();
  if (n == 0) return "{ | }\n";
  std::ostringstream out;
  out << "{ ";
  for (std::size_t i = 0; i < n; ++i) out << (i ? ", " : "") << pc.names()[i];
  out << " |";
  std::vector<bool> is_def(n * n, false);
  for (std::size_t l = 0; l < n; ++l) {
    const Definition& d = pc.definitions()[l];
    if (d.kind == Definition::Kind::relation) {
      is_def[d.relation.conjugator * n + d.relation.target] = true;
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    out << "\n  ";
    for (std::size_t j = 0; j <= k; ++j) {
      RelationId r{j, k};
      const NormalWord& w = pc.rhs(r);
      out << relation_label(pc, r);
      bool def = is_def[j * n + k];
      if (def) {
        out << " =: " << format_normal_word(pc, w);
      } else if (!r.is_power() || !w.is_identity()) {
        out << " = " << format_normal_word(pc, w);
      }
      out << (j == k ? (k + 1 == n ? " }" : ",") : ", ");
    }
  }
  out << "\nweights [";
  for (std::size_t i = 0; i < n; ++i) {
    out << (i ? "," : "") << "(" << pc.weights()[i].block << ","
        << pc.weights()[i].cls << ")";
  }
  out << "]\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// pc grammar

namespace {

std::size_t single_generator(const Token& t,
                             const std::vector<std::string>& names) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == t.text) return i;
  }
  throw ParseError(t.pos, "undeclared generator '" + t.text + "'");
}

// Reads a semigroup word as (generator, exponent) pairs; stops before any
// token that cannot continue it.
std::vector<std::pair<std::size_t, std::uint64_t>> read_semigroup_word(
    TokenStream& ts, const std::vector<std::string>& names) {
  std::vector<std::pair<std::size_t, std::uint64_t>> out;
  if (ts.at(Tok::integer) && ts.peek().value == 1) {
    ts.next();
    return out;
  }
  while (ts.at(Tok::ident) || ts.at(Tok::star)) {
    if (ts.accept(Tok::star)) continue;
    const Token& t = ts.next();
    std::vector<std::size_t> parts;
    if (!detail::split_identifier(t.text, names, parts) || parts.empty()) {
      throw ParseError(t.pos, "undeclared generator '" + t.text + "'");
    }
    for (std::size_t g : parts) out.push_back({g, 1});
    if (ts.accept(Tok::caret)) {
      const Token& e = ts.expect(Tok::integer, "nonnegative exponent");
      out.back().second = static_cast<std::uint64_t>(e.value);
    }
  }
  return out;
}

}  // namespace

PcPresentation parse_pc_presentation(std::string_view text) {
  TokenStream ts(detail::tokenize(text));
  ts.expect(Tok::lbrace, "'{'");
  std::vector<std::string> names = parse_name_list(ts);
  ts.expect(Tok::bar, "'|'");
  const std::size_t n = names.size();

  struct Item {
    RelationId id;
    std::vector<std::pair<std::size_t, std::uint64_t>> rhs;
    bool definition = false;
    std::size_t pos = 0;
  };
  std::vector<Item> items;
  std::vector<std::uint32_t> primes(n, 0);

  if (!ts.at(Tok::rbrace)) {
    for (;;) {
      Item item;
      item.pos = ts.peek().pos;
      std::size_t target = single_generator(ts.expect(Tok::ident, "generator"), names);
      ts.expect(Tok::caret, "'^'");
      if (ts.at(Tok::integer)) {
        const Token& e = ts.next();
        if (!is_prime(static_cast<std::uint64_t>(e.value))) {
          throw ParseError(e.pos, "power relation exponent must be prime");
        }
        if (primes[target] != 0) {
          throw ParseError(item.pos, "duplicate power relation for " + names[target]);
        }
        primes[target] = static_cast<std::uint32_t>(e.value);
        item.id = {target, target};
      } else {
        const Token& c = ts.expect(Tok::ident, "conjugating generator");
        std::size_t by = single_generator(c, names);
        if (by >= target) {
          throw ParseError(c.pos, "conjugate relation " + names[target] + "^" +
                                      names[by] + " must conjugate by an earlier generator");
        }
        item.id = {by, target};
      }
      if (ts.accept(Tok::define)) {
        item.definition = true;
        item.rhs = read_semigroup_word(ts, names);
      } else if (ts.accept(Tok::equals)) {
        item.rhs = read_semigroup_word(ts, names);
      }
      items.push_back(std::move(item));
      if (!ts.accept(Tok::comma)) break;
    }
  }
  ts.expect(Tok::rbrace, "'}'");

  std::vector<Weight> weights;
  if (ts.at(Tok::ident) && ts.peek().text == "weights") {
    ts.next();
    ts.expect(Tok::lbracket, "'['");
    if (!ts.at(Tok::rbracket)) {
      for (;;) {
        ts.expect(Tok::lparen, "'('");
        auto b = ts.expect(Tok::integer, "block").value;
        ts.expect(Tok::comma, "','");
        auto c = ts.expect(Tok::integer, "class").value;
        ts.expect(Tok::rparen, "')'");
        weights.push_back({static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(c)});
        if (!ts.accept(Tok::comma)) break;
      }
    }
    ts.expect(Tok::rbracket, "']'");
    if (weights.size() != n) {
      throw Error(ErrorKind::invalid_presentation,
                  "weights list has " + std::to_string(weights.size()) +
                      " entries for " + std::to_string(n) + " generators");
    }
  }
  ts.expect(Tok::end, "end of input");

  for (std::size_t i = 0; i < n; ++i) {
    if (primes[i] == 0) {
      throw Error(ErrorKind::invalid_presentation,
                  "missing power relation for " + names[i]);
    }
  }
  PcPresentation pc(names, primes);
  std::vector<bool> present(n * n, false);
  for (const Item& item : items) {
    std::size_t slot = item.id.conjugator * n + item.id.target;
    const std::string label = relation_label(pc, item.id);
    if (present[slot]) {
      throw Error(ErrorKind::invalid_presentation, "duplicate relation " + label);
    }
    present[slot] = true;
    NormalWord w(n);
    std::size_t prev = 0;
    bool first = true;
    for (auto [g, e] : item.rhs) {
      if (!first && g <= prev) {
        throw Error(ErrorKind::invalid_presentation,
                    label + ": right-hand side is not a normal word");
      }
      if (e == 0 || e >= primes[g]) {
        throw Error(ErrorKind::invalid_presentation,
                    label + ": exponent of " + names[g] + " out of range");
      }
      w[g] = static_cast<std::uint32_t>(e);
      prev = g;
      first = false;
    }
    pc.rhs(item.id) = w;
    if (item.definition) {
      auto last = w.last();
      if (!last || w[*last] != 1) {
        throw Error(ErrorKind::invalid_presentation,
                    label + ": a definition must end in a generator with exponent 1");
      }
      if (pc.definitions()[*last].kind != Definition::Kind::none) {
        throw Error(ErrorKind::invalid_presentation,
                    "generator " + names[*last] + " has two definitions");
      }
      pc.definitions()[*last] = Definition::by_relation(item.id);
    }
  }
  for (RelationId r : relations_in_display_order(n)) {
    if (!present[r.conjugator * n + r.target]) {
      throw Error(ErrorKind::invalid_presentation,
                  "missing relation " + relation_label(pc, r));
    }
  }
  if (weights.empty()) {
    // Blocks are maximal runs of equal relative order.
    std::uint32_t block = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == 0 || primes[i] != primes[i - 1]) ++block;
      weights.push_back({block, 1});
    }
  }
  pc.weights() = weights;
  validate(pc);
  return pc;
}

std::vector<std::size_t> parse_pc_word(const PcPresentation& pc,
                                       std::string_view text) {
  TokenStream ts(detail::tokenize(text));
  auto word = read_semigroup_word(ts, pc.names());
  ts.expect(Tok::end, "end of word");
  std::vector<std::size_t> out;
  for (auto [g, e] : word) {
    for (std::uint64_t i = 0; i < e; ++i) out.push_back(g);
  }
  return out;
}

void infer_definitions(PcPresentation& pc) {
  const std::size_t n = pc.size();
  std::set<RelationId> used;
  for (const Definition& d : pc.definitions()) {
    if (d.kind == Definition::Kind::relation) used.insert(d.relation);
  }
  for (RelationId r : relations_in_display_order(n)) {
    if (used.count(r)) continue;
    const NormalWord& w = pc.rhs(r);
    auto last = w.last();
    if (!last || w[*last] != 1 || r.target >= *last) continue;
    Definition& d = pc.definitions()[*last];
    if (d.kind != Definition::Kind::none) continue;
    d = Definition::by_relation(r);
    used.insert(r);
  }
}

}  // namespace solquo
