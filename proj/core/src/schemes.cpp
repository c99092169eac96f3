#include "ddp/schemes.hpp"

#include <algorithm>

namespace ddp {

std::string_view to_string(SchemeId id) {
  switch (id) {
    case SchemeId::HIT: return "HIT";
    case SchemeId::SU: return "SU";
    case SchemeId::SCI: return "SCI";
    case SchemeId::UNIFIED: return "UNIFIED";
  }
  return "UNIFIED";
}

std::optional<SchemeId> parse_scheme(std::string_view s) {
  if (s == "HIT") return SchemeId::HIT;
  if (s == "SU") return SchemeId::SU;
  if (s == "SCI") return SchemeId::SCI;
  if (s == "UNIFIED") return SchemeId::UNIFIED;
  return std::nullopt;
}

int published_cardinality(SchemeId id) {
  switch (id) {
    case SchemeId::HIT: return 22;
    case SchemeId::SU: return 18;
    case SchemeId::SCI: return 26;
    case SchemeId::UNIFIED: return 17;
  }
  return 0;
}

bool RelationScheme::contains(std::string_view label) const {
  return std::find(labels.begin(), labels.end(), label) != labels.end();
}

RelationScheme attested_scheme(SchemeId id) {
  switch (id) {
    case SchemeId::HIT:
      return {id, {"joint", "explanation", "progressive", "expression", "causality",
                   "temporal.synchronous", "temporal.asynchronous"}};
    case SchemeId::SU:
      return {id, {"joint", "explanation", "causality", "continuation", "goal",
                   "example illustration"}};
    case SchemeId::SCI:
      return {id, {"elaboration", "joint", "enablement", "bg-general", "evaluation"}};
    case SchemeId::UNIFIED:
      return {id, {"joint", "explanation", "causality", "continuation", "progressive", "goal"}};
  }
  return {id, {}};
}

bool RelationMapping::add(SchemeId scheme, std::string original, std::string unified) {
  return entries_.emplace(Key{scheme, std::move(original)}, std::move(unified)).second;
}

const std::string* RelationMapping::find(SchemeId scheme, std::string_view original) const {
  auto it = entries_.find(Key{scheme, std::string(original)});
  return it == entries_.end() ? nullptr : &it->second;
}

RelationMapping default_mapping() {
  RelationMapping m;
  for (const char* l : {"joint", "explanation", "causality", "continuation", "goal"}) {
    m.add(SchemeId::SU, l, l);
  }
  m.add(SchemeId::SU, "example illustration", "explanation");
  for (const char* l : {"joint", "explanation", "progressive", "causality"}) {
    m.add(SchemeId::HIT, l, l);
  }
  m.add(SchemeId::HIT, "temporal.synchronous", "temporal");
  m.add(SchemeId::HIT, "temporal.asynchronous", "temporal");
  m.add(SchemeId::SCI, "joint", "joint");
  return m;
}

}  // namespace ddp
