#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "gwlp/design.hpp"
#include "gwlp/io.hpp"

namespace gwlp::testing {

inline std::string data_path(const std::string& name) { return std::string(GWLP_DATA_DIR) + "/" + name; }

inline Fraction fixture(const std::string& name) { return io::read_oa_file(data_path(name)); }

inline Fraction make_fraction(std::vector<int> levels, const std::vector<std::vector<int>>& rows) {
  std::vector<Run> runs;
  for (const auto& r : rows) runs.push_back(Run{r});
  return Fraction(DesignSpace(std::move(levels)), std::move(runs));
}

struct RandomFractionSpec {
  std::size_t max_factors = 5;
  std::vector<int> level_choices{2, 3, 4};
  std::size_t max_distinct = 16;
  int max_multiplicity = 2;
  std::size_t max_runs = 16;
};

/// Random multiset fraction; runs are shuffled so replicates are not adjacent.
inline Fraction random_fraction(std::mt19937_64& rng, const RandomFractionSpec& spec = {}) {
  std::uniform_int_distribution<std::size_t> m_dist(1, spec.max_factors);
  std::uniform_int_distribution<std::size_t> level_pick(0, spec.level_choices.size() - 1);
  const std::size_t m = m_dist(rng);
  std::vector<int> levels;
  for (std::size_t j = 0; j < m; ++j) levels.push_back(spec.level_choices[level_pick(rng)]);
  std::uniform_int_distribution<std::size_t> n_dist(1, spec.max_distinct);
  std::uniform_int_distribution<int> mult_dist(1, spec.max_multiplicity);
  const std::size_t distinct = n_dist(rng);
  std::vector<Run> runs;
  for (std::size_t i = 0; i < distinct && runs.size() < spec.max_runs; ++i) {
    Run r;
    for (int s : levels) r.codes.push_back(std::uniform_int_distribution<int>(0, s - 1)(rng));
    const int copies = mult_dist(rng);
    for (int c = 0; c < copies && runs.size() < spec.max_runs; ++c) runs.push_back(r);
  }
  std::shuffle(runs.begin(), runs.end(), rng);
  return Fraction(DesignSpace(levels), std::move(runs));
}

/// W_j(f, g) straight from the subset-sum definition: sum over all
/// j-subsets of factors of the product of S entries.
inline std::int64_t brute_force_w(const DesignSpace& space, const Run& f, const Run& g, std::size_t j) {
  const std::size_t m = space.factors();
  std::int64_t total = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) != j) continue;
    std::int64_t prod = 1;
    for (std::size_t i = 0; i < m; ++i) {
      if (mask >> i & 1) prod *= f.codes[i] == g.codes[i] ? space.levels(i) - 1 : -1;
    }
    total += prod;
  }
  return total;
}

inline std::int64_t binomial_small(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline std::vector<std::vector<std::size_t>> all_subsets(std::size_t n, std::size_t p) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> c(p);
  for (std::size_t i = 0; i < p; ++i) c[i] = i;
  while (true) {
    out.push_back(c);
    std::size_t i = p;
    while (i > 0 && c[i - 1] == n - p + i - 1) --i;
    if (i == 0) break;
    ++c[i - 1];
    for (std::size_t r = i; r < p; ++r) c[r] = c[r - 1] + 1;
  }
  return out;
}

}  // namespace gwlp::testing
