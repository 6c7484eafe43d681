#ifndef SKOLEM_JSON_IO_HPP
#define SKOLEM_JSON_IO_HPP

/// JSON form of a semiskolemian set:
///   {"dim": d, "disjuncts": [{"exceptional": [<formula>...],
///                             "rest": <formula>}, ...]}
/// Formula strings use the Presburger text syntax and read back through the
/// same reader, so emitted documents round-trip exactly.

#include <string>
#include <vector>

#include <json.hpp>

#include "skolem/skolemian.hpp"

namespace skolem {

inline nlohmann::json toJson(const SemiskolemianSet& s) {
  nlohmann::json disjuncts = nlohmann::json::array();
  for (const auto& d : s.disjuncts()) {
    nlohmann::json slots = nlohmann::json::array();
    for (const auto& e : d.exceptional()) slots.push_back(e.formula().render());
    disjuncts.push_back({{"exceptional", std::move(slots)},
                         {"rest", d.rest().formula().render()}});
  }
  return {{"dim", s.dim()}, {"disjuncts", std::move(disjuncts)}};
}

inline SemiskolemianSet semiskolemianFromJson(const nlohmann::json& j,
                                              const Limits& limits = {}) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("disjuncts"))
    throw SyntaxError("expected an object with 'dim' and 'disjuncts'", 1, 1);
  int dim = j.at("dim").get<int>();
  std::vector<SkolemianSet> disjuncts;
  for (const auto& d : j.at("disjuncts")) {
    std::vector<SemilinearSet> slots;
    for (const auto& e : d.at("exceptional"))
      slots.emplace_back(dim, PresFormula::read(e.get<std::string>()));
    SemilinearSet rest(dim, PresFormula::read(d.at("rest").get<std::string>()));
    disjuncts.push_back(makeDef(std::move(slots), std::move(rest)));
  }
  return SemiskolemianSet(dim, std::move(disjuncts), limits);
}

}  // namespace skolem

#endif  // SKOLEM_JSON_IO_HPP
