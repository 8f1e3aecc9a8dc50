#include "majorant/sumset_sidon.hpp"

#include <map>
#include <stdexcept>

#include "majorant/errors.hpp"

namespace majorant {

FrequencySet sumset(const FrequencySet& s, int j) {
  if (j < 1) throw std::invalid_argument("sumset requires j >= 1");
  FrequencySet acc = s;
  for (int i = 1; i < j; ++i) acc = acc.minkowski_sum(s);
  return acc;
}

FrequencySet majorant_window(const FrequencySet& s, int j) {
  if (j < 1) throw std::invalid_argument("majorant_window requires j >= 1");
  if (j == 1 || s.empty()) return s;
  return sumset(s, j).minkowski_sum(sumset(s.negated(), j - 1));
}

std::string BjWitness::format() const {
  auto side = [](const std::map<std::int64_t, int>& rep) {
    std::string out;
    for (const auto& [value, count] : rep)
      for (int i = 0; i < count; ++i) {
        if (!out.empty()) out += "+";
        out += std::to_string(value);
      }
    return out;
  };
  return side(rep_a) + " = " + side(rep_b);
}

namespace {

// C(n+j-1, j) without overflow; anything past `cap` saturates to cap+1.
std::uint64_t multiset_count(std::uint64_t n, int j, std::uint64_t cap) {
  if (n == 0) return 0;
  unsigned __int128 num = 1;
  for (int i = 1; i <= j; ++i) {
    num = num * (n + j - i) / i;  // exact: prefix products of C are integers
    if (num > cap) return cap + 1;
  }
  return static_cast<std::uint64_t>(num);
}

std::map<std::int64_t, int> tuple_counts(const std::vector<std::int64_t>& elems,
                                         const std::vector<std::size_t>& idx) {
  std::map<std::int64_t, int> counts;
  for (std::size_t i : idx) ++counts[elems[i]];
  return counts;
}

}  // namespace

BjResult is_bj_set(const FrequencySet& s, int j, std::uint64_t budget) {
  if (j < 1) throw std::invalid_argument("is_bj_set requires j >= 1");
  const auto& elems = s.elements();
  const std::size_t m = elems.size();
  if (m <= 1) return {true, std::nullopt};

  const std::uint64_t count = multiset_count(m, j, budget);
  if (count > budget)
    throw EnumerationBudgetExceeded("multiset enumeration needs " + std::to_string(m) +
                                    "^(" + std::to_string(j) + ")-scale work exceeding budget " +
                                    std::to_string(budget));

  // Enumerate nondecreasing index tuples in lexicographic order; the first
  // repeated sum yields the witness.
  std::map<std::int64_t, std::vector<std::size_t>> first_rep;
  std::vector<std::size_t> idx(static_cast<std::size_t>(j), 0);
  while (true) {
    std::int64_t sum = 0;
    for (std::size_t i : idx) sum += elems[i];
    auto [it, inserted] = first_rep.try_emplace(sum, idx);
    if (!inserted) {
      BjWitness w;
      w.target = sum;
      w.rep_a = tuple_counts(elems, it->second);
      w.rep_b = tuple_counts(elems, idx);
      return {false, std::move(w)};
    }
    int pos = j - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == m - 1) --pos;
    if (pos < 0) break;
    const std::size_t next = idx[static_cast<std::size_t>(pos)] + 1;
    for (std::size_t k = static_cast<std::size_t>(pos); k < idx.size(); ++k) idx[k] = next;
  }
  return {true, std::nullopt};
}

std::vector<SjGrowthEntry> sj_growth_report(const FrequencySet& s, int j_max) {
  if (j_max < 1) throw std::invalid_argument("sj_growth_report requires j_max >= 1");
  std::vector<SjGrowthEntry> out;
  out.reserve(static_cast<std::size_t>(j_max));
  std::size_t prev = 0;
  const FrequencySet neg = s.negated();
  // window(1) = S; window(j+1) = window(j) + S + (-S), since
  // (j+1)S + j(-S) = (jS + (j-1)(-S)) + S + (-S).
  FrequencySet acc;
  for (int j = 1; j <= j_max; ++j) {
    acc = (j == 1) ? s : acc.minkowski_sum(s).minkowski_sum(neg);
    SjGrowthEntry e;
    e.j = j;
    e.size = acc.size();
    e.growth_defect = j > 1 && s.size() >= 2 && e.size < prev + 2;
    prev = e.size;
    out.push_back(e);
  }
  return out;
}

}  // namespace majorant
