#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <utility>

#include "majorant/frequency_set.hpp"

namespace majorant {

// Finitely supported map from integer frequency to complex amplitude — the
// coefficient sequence of a trigonometric polynomial. Writes drop entries
// whose magnitude falls below kPruneThreshold, so stored entries are never
// effective zeros; querying an absent frequency yields exactly 0.
class CoefficientSequence {
 public:
  using Frequency = std::int64_t;
  using Value = std::complex<double>;
  using Map = std::map<Frequency, Value>;

  static constexpr double kPruneThreshold = 1e-14;

  CoefficientSequence() = default;
  CoefficientSequence(std::initializer_list<std::pair<const Frequency, Value>> entries);
  static CoefficientSequence from_map(const Map& m);

  Value at(Frequency n) const;
  void set(Frequency n, Value v);

  bool contains(Frequency n) const { return entries_.count(n) != 0; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  const Map& entries() const { return entries_; }

  FrequencySet support() const;
  Frequency min_frequency() const;  // requires non-empty
  Frequency max_frequency() const;  // requires non-empty
  double max_abs() const;           // 0 when empty
  bool is_real(double tol = 0.0) const;

  CoefficientSequence scaled(Value factor) const;
  CoefficientSequence plus(const CoefficientSequence& other) const;

  friend bool operator==(const CoefficientSequence&, const CoefficientSequence&) = default;

 private:
  Map entries_;
};

}  // namespace majorant
