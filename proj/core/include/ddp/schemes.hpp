#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ddp {

enum class SchemeId { HIT, SU, SCI, UNIFIED };

std::string_view to_string(SchemeId id);
std::optional<SchemeId> parse_scheme(std::string_view s);

/// Size of each corpus's relation inventory as published.
int published_cardinality(SchemeId id);

/// A relation inventory. `labels` holds the labels known to the toolkit;
/// the published inventories are only partially enumerated, so `labels`
/// may be smaller than `published_cardinality(id)`.
struct RelationScheme {
  SchemeId id = SchemeId::UNIFIED;
  std::vector<std::string> labels;

  int cardinality() const { return static_cast<int>(labels.size()); }
  bool complete() const { return cardinality() == published_cardinality(id); }
  bool contains(std::string_view label) const;
};

/// Labels attested for each scheme (relation distribution tables and the
/// examples of fine-grained HIT senses). Not the full inventories.
RelationScheme attested_scheme(SchemeId id);

/// (scheme, original label) -> unified label.
class RelationMapping {
 public:
  using Key = std::pair<SchemeId, std::string>;

  /// Returns false if the key already exists (the mapping is unchanged).
  bool add(SchemeId scheme, std::string original, std::string unified);
  const std::string* find(SchemeId scheme, std::string_view original) const;

  const std::map<Key, std::string>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  friend bool operator==(const RelationMapping&, const RelationMapping&) = default;

 private:
  std::map<Key, std::string> entries_;
};

/// The attested mapping entries shipped as defaults, including
/// SU "example illustration" -> "explanation".
RelationMapping default_mapping();

}  // namespace ddp
