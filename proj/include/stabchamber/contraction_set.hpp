#pragma once

#include <compare>
#include <initializer_list>
#include <string>
#include <vector>

namespace stabchamber {

/// A subset S of the exceptional indices {1..N}, kept sorted and free of
/// duplicates. Validity against a configuration is checked separately
/// (see contractions.hpp); this type is only the index set.
class ContractionSet {
 public:
  ContractionSet() = default;
  ContractionSet(std::initializer_list<int> indices);
  explicit ContractionSet(std::vector<int> indices);

  const std::vector<int>& indices() const { return indices_; }
  bool contains(int i) const;
  bool empty() const { return indices_.empty(); }
  std::size_t size() const { return indices_.size(); }

  ContractionSet without(int i) const;
  ContractionSet with(int i) const;

  /// "{}" or "{1,2,3}".
  std::string to_string() const;

  auto begin() const { return indices_.begin(); }
  auto end() const { return indices_.end(); }

  friend bool operator==(const ContractionSet&, const ContractionSet&) = default;

  /// Graded lexicographic: smaller sets first, then lexicographic.
  friend std::strong_ordering operator<=>(const ContractionSet& a, const ContractionSet& b);

 private:
  std::vector<int> indices_;
};

}  // namespace stabchamber
