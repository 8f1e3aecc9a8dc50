#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "majorant/frequency_set.hpp"

namespace majorant {

// j-fold sumset S + S + ... + S (j copies). Throws for j < 1.
FrequencySet sumset(const FrequencySet& s, int j);

// Frequency window of the power product built over support S:
// jS + (j-1)(-S). Every coefficient of conj(g)^(j-1) g^j with supp(g) in S
// lives here. Throws for j < 1.
FrequencySet majorant_window(const FrequencySet& s, int j);

// Two distinct j-element multisets from S sharing the same sum.
struct BjWitness {
  std::int64_t target = 0;
  std::map<std::int64_t, int> rep_a;  // element -> multiplicity, multiplicities sum to j
  std::map<std::int64_t, int> rep_b;

  // Renders e.g. "0+2 = 1+1".
  std::string format() const;
};

struct BjResult {
  bool is_bj = false;
  std::optional<BjWitness> witness;  // engaged iff !is_bj
};

// Whether every j-element multiset from S has a distinct sum (order-j Sidon
// property). Enumerates all C(|S|+j-1, j) multisets; throws
// EnumerationBudgetExceeded when that count exceeds `budget`.
BjResult is_bj_set(const FrequencySet& s, int j, std::uint64_t budget = 1000000);

struct SjGrowthEntry {
  int j = 0;
  std::size_t size = 0;          // |majorant_window(S, j)| for this j
  bool growth_defect = false;    // window grew by < 2 from the previous row while |S| >= 2
};

// Sizes of the power-product windows majorant_window(S, j) for j = 1..j_max,
// flagging any step where the size fails to grow by at least 2 (impossible
// for |S| >= 2: the window's span widens by max(S)-min(S) > 0 on both ends).
// These are index-set sizes — the support of an actual power product can be
// smaller when coefficients cancel; the counting statement is about the
// window, where it holds for generic nonnegative coefficients.
std::vector<SjGrowthEntry> sj_growth_report(const FrequencySet& s, int j_max);

}  // namespace majorant
