#include "majorant/coefficient_sequence.hpp"

#include <cmath>
#include <stdexcept>

namespace majorant {

CoefficientSequence::CoefficientSequence(
    std::initializer_list<std::pair<const Frequency, Value>> entries) {
  for (const auto& [n, v] : entries) set(n, v);
}

CoefficientSequence CoefficientSequence::from_map(const Map& m) {
  CoefficientSequence s;
  for (const auto& [n, v] : m) s.set(n, v);
  return s;
}

CoefficientSequence::Value CoefficientSequence::at(Frequency n) const {
  auto it = entries_.find(n);
  return it == entries_.end() ? Value{0.0, 0.0} : it->second;
}

void CoefficientSequence::set(Frequency n, Value v) {
  if (std::abs(v) < kPruneThreshold) {
    entries_.erase(n);
  } else {
    entries_[n] = v;
  }
}

FrequencySet CoefficientSequence::support() const {
  std::vector<Frequency> freqs;
  freqs.reserve(entries_.size());
  for (const auto& [n, v] : entries_) freqs.push_back(n);
  return FrequencySet(std::move(freqs));
}

CoefficientSequence::Frequency CoefficientSequence::min_frequency() const {
  if (entries_.empty()) throw std::logic_error("min_frequency() of empty sequence");
  return entries_.begin()->first;
}

CoefficientSequence::Frequency CoefficientSequence::max_frequency() const {
  if (entries_.empty()) throw std::logic_error("max_frequency() of empty sequence");
  return entries_.rbegin()->first;
}

double CoefficientSequence::max_abs() const {
  double m = 0.0;
  for (const auto& [n, v] : entries_) m = std::max(m, std::abs(v));
  return m;
}

bool CoefficientSequence::is_real(double tol) const {
  for (const auto& [n, v] : entries_)
    if (std::abs(v.imag()) > tol) return false;
  return true;
}

CoefficientSequence CoefficientSequence::scaled(Value factor) const {
  CoefficientSequence out;
  for (const auto& [n, v] : entries_) out.set(n, v * factor);
  return out;
}

CoefficientSequence CoefficientSequence::plus(const CoefficientSequence& other) const {
  CoefficientSequence out = *this;
  for (const auto& [n, v] : other.entries_) out.set(n, out.at(n) + v);
  return out;
}

}  // namespace majorant
