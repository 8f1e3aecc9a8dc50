#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

namespace majorant {

// Finite set of integer frequencies, kept sorted and deduplicated.
class FrequencySet {
 public:
  using Frequency = std::int64_t;

  FrequencySet() = default;
  explicit FrequencySet(std::vector<Frequency> elems);
  FrequencySet(std::initializer_list<Frequency> elems);

  bool contains(Frequency n) const;
  bool empty() const { return elems_.empty(); }
  std::size_t size() const { return elems_.size(); }
  const std::vector<Frequency>& elements() const { return elems_; }
  auto begin() const { return elems_.begin(); }
  auto end() const { return elems_.end(); }

  Frequency min() const;  // requires non-empty
  Frequency max() const;  // requires non-empty

  FrequencySet unite(const FrequencySet& other) const;
  FrequencySet negated() const;
  FrequencySet minkowski_sum(const FrequencySet& other) const;
  bool is_subset_of(const FrequencySet& other) const;

  friend bool operator==(const FrequencySet&, const FrequencySet&) = default;

 private:
  std::vector<Frequency> elems_;
};

}  // namespace majorant
