#include "majorant/frequency_set.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace majorant {

FrequencySet::FrequencySet(std::vector<Frequency> elems) : elems_(std::move(elems)) {
  std::sort(elems_.begin(), elems_.end());
  elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
}

FrequencySet::FrequencySet(std::initializer_list<Frequency> elems)
    : FrequencySet(std::vector<Frequency>(elems)) {}

bool FrequencySet::contains(Frequency n) const {
  return std::binary_search(elems_.begin(), elems_.end(), n);
}

FrequencySet::Frequency FrequencySet::min() const {
  if (elems_.empty()) throw std::logic_error("min() of empty frequency set");
  return elems_.front();
}

FrequencySet::Frequency FrequencySet::max() const {
  if (elems_.empty()) throw std::logic_error("max() of empty frequency set");
  return elems_.back();
}

FrequencySet FrequencySet::unite(const FrequencySet& other) const {
  std::vector<Frequency> out;
  out.reserve(elems_.size() + other.elems_.size());
  std::set_union(elems_.begin(), elems_.end(), other.elems_.begin(), other.elems_.end(),
                 std::back_inserter(out));
  FrequencySet r;
  r.elems_ = std::move(out);  // already sorted unique
  return r;
}

FrequencySet FrequencySet::negated() const {
  std::vector<Frequency> out(elems_.rbegin(), elems_.rend());
  for (auto& n : out) n = -n;
  FrequencySet r;
  r.elems_ = std::move(out);
  return r;
}

FrequencySet FrequencySet::minkowski_sum(const FrequencySet& other) const {
  if (elems_.empty() || other.elems_.empty()) return {};
  std::set<Frequency> acc;
  for (Frequency a : elems_)
    for (Frequency b : other.elems_) acc.insert(a + b);
  FrequencySet r;
  r.elems_.assign(acc.begin(), acc.end());
  return r;
}

bool FrequencySet::is_subset_of(const FrequencySet& other) const {
  return std::includes(other.elems_.begin(), other.elems_.end(), elems_.begin(), elems_.end());
}

}  // namespace majorant
