#include "solquo/report.hpp"

#include <sstream>

#include "json.hpp"
#include "solquo/collector.hpp"

namespace solquo {

namespace {

using Json = nlohmann::ordered_json;

// Results are consistent by construction; no need to rerun the check.
BigInt product_of_primes(const PcPresentation& pc) {
  BigInt n = 1;
  for (auto p : pc.primes()) n *= p;
  return n;
}

Json factorization_json(const PcPresentation& pc) {
  Json f = Json::array();
  for (auto [p, e] : order_factorization(pc)) f.push_back({{"prime", p}, {"exponent", e}});
  return f;
}

std::string definition_text(const PcPresentation& pc, const Definition& d,
                            const std::vector<std::string>* fp_names) {
  switch (d.kind) {
    case Definition::Kind::relation:
      return relation_label(pc, d.relation);
    case Definition::Kind::image:
      return "image of " + (fp_names ? (*fp_names)[d.image] : std::to_string(d.image + 1));
    case Definition::Kind::none:
      break;
  }
  return "none";
}

Json pc_fields(const PcPresentation& pc, const std::vector<std::string>* fp_names) {
  const std::size_t n = pc.size();
  Json j;
  j["order"] = product_of_primes(pc).str();
  j["factorization"] = factorization_json(pc);
  j["generators"] = pc.names();
  j["primes"] = pc.primes();
  Json rels = Json::array();
  for (RelationId r : relations_in_display_order(n)) {
    rels.push_back({{"lhs", relation_label(pc, r)}, {"rhs", format_normal_word(pc, pc.rhs(r))}});
  }
  j["relations"] = rels;
  Json weights = Json::array();
  for (const Weight& w : pc.weights()) weights.push_back({w.block, w.cls});
  j["weights"] = weights;
  Json defs = Json::array();
  for (std::size_t i = 0; i < n; ++i) {
    const Definition& d = pc.definitions()[i];
    Json e{{"generator", pc.names()[i]}};
    switch (d.kind) {
      case Definition::Kind::relation:
        e["kind"] = "relation";
        e["relation"] = relation_label(pc, d.relation);
        break;
      case Definition::Kind::image:
        e["kind"] = "image";
        e["of"] = fp_names ? (*fp_names)[d.image] : std::to_string(d.image + 1);
        break;
      case Definition::Kind::none:
        e["kind"] = "none";
        break;
    }
    defs.push_back(e);
  }
  j["definitions"] = defs;
  return j;
}

}  // namespace

std::string pc_to_json(const PcPresentation& pc) { return pc_fields(pc, nullptr).dump(2) + "\n"; }

std::string result_to_json(const FpPresentation& fp, const QuotientResult& result) {
  Json j = pc_fields(result.pc, &fp.generators);
  Json images;
  for (std::size_t g = 0; g < fp.generator_count(); ++g) {
    images[fp.generators[g]] = format_normal_word(result.pc, result.tau.images[g]);
  }
  j["images"] = images.is_null() ? Json::object() : images;
  Json log = Json::array();
  for (const auto& l : result.layer_log) {
    log.push_back({{"prime", l.prime}, {"dimension", l.dimension}, {"order", l.order.str()}});
  }
  j["layer_log"] = log;
  j["series"] = format_lspec(result.achieved);
  j["ceiling"] = result.ceiling ? Json(*result.ceiling) : Json(nullptr);
  return j.dump(2) + "\n";
}

std::string result_to_text(const FpPresentation& fp, const QuotientResult& result) {
  const PcPresentation& pc = result.pc;
  std::ostringstream out;
  out << "order " << product_of_primes(pc) << " = " << format_factorization(order_factorization(pc)) << "\n";
  out << "series " << format_lspec(result.achieved) << "\n";
  if (result.ceiling) out << "stopped: " << *result.ceiling << "\n";
  out << format_pc_presentation(pc);
  out << "definitions\n";
  for (std::size_t i = 0; i < pc.size(); ++i) {
    out << "  " << pc.names()[i] << ": " << definition_text(pc, pc.definitions()[i], &fp.generators)
        << "\n";
  }
  out << "images\n";
  for (std::size_t g = 0; g < fp.generator_count(); ++g) {
    out << "  " << fp.generators[g] << " -> " << format_normal_word(pc, result.tau.images[g])
        << "\n";
  }
  out << "layers\n";
  for (const auto& l : result.layer_log) {
    out << "  p = " << l.prime << ", dimension " << l.dimension << ", order " << l.order << "\n";
  }
  return out.str();
}

}  // namespace solquo
