#include "gwlp/removal.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <map>
#include <thread>

#include "gwlp/checked.hpp"
#include "gwlp/error.hpp"

namespace gwlp {

namespace {

std::int64_t square(std::size_t k) {
  const auto v = static_cast<std::int64_t>(k);
  return checked::mul(v, v);
}

struct PartialGroup {
  std::uint64_t count = 0;
  std::vector<std::vector<std::size_t>> representatives;  // 0-based positions
};

using GroupMap = std::map<std::vector<std::int64_t>, PartialGroup>;

// Lexicographic unranking of p-subsets of {0..n-1}.
std::vector<std::size_t> unrank(std::uint64_t rank, std::size_t n, std::size_t p) {
  std::vector<std::size_t> combo(p);
  std::size_t candidate = 0;
  for (std::size_t i = 0; i < p; ++i) {
    while (true) {
      const std::uint64_t with_candidate = binomial(n - 1 - candidate, p - 1 - i);
      if (rank < with_candidate) break;
      rank -= with_candidate;
      ++candidate;
    }
    combo[i] = candidate++;
  }
  return combo;
}

bool next_combination(std::vector<std::size_t>& combo, std::size_t n) {
  const std::size_t p = combo.size();
  std::size_t i = p;
  while (i > 0 && combo[i - 1] == n - p + (i - 1)) --i;
  if (i == 0) return false;
  ++combo[i - 1];
  for (std::size_t r = i; r < p; ++r) combo[r] = combo[r - 1] + 1;
  return true;
}

GroupMap evaluate_range(const RemovalEvaluator& eval, std::size_t p, std::uint64_t begin, std::uint64_t end,
                        std::size_t keep) {
  const WStack& w = eval.stack();
  GroupMap groups;
  std::vector<std::size_t> combo = unrank(begin, w.size(), p);
  std::vector<std::int64_t> key(w.factors() + 1);
  for (std::uint64_t r = begin; r < end; ++r) {
    eval.numerators_after(combo, key);
    PartialGroup& g = groups[key];
    ++g.count;
    if (g.representatives.size() < keep) g.representatives.push_back(combo);
    if (!next_combination(combo, w.size())) break;
  }
  return groups;
}

void merge_into(GroupMap& into, GroupMap&& from, std::size_t keep) {
  for (auto& [key, part] : from) {
    PartialGroup& g = into[key];
    g.count += part.count;
    g.representatives.insert(g.representatives.end(), std::make_move_iterator(part.representatives.begin()),
                             std::make_move_iterator(part.representatives.end()));
    std::sort(g.representatives.begin(), g.representatives.end());
    if (g.representatives.size() > keep) g.representatives.resize(keep);
  }
}

RemovalSubset to_subset(const std::vector<std::size_t>& positions, std::size_t n) {
  std::vector<std::size_t> one_based;
  one_based.reserve(positions.size());
  for (std::size_t pos : positions) one_based.push_back(pos + 1);
  return RemovalSubset(std::move(one_based), n);
}

}  // namespace

RemovalSubset::RemovalSubset(std::vector<std::size_t> indices, std::size_t n) : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  if (indices_.empty()) throw StructuralError("empty removal subset");
  if (indices_.size() >= n) throw StructuralError("removal subset would leave no runs");
  if (indices_.front() < 1 || indices_.back() > n) throw StructuralError("run index out of range 1.." + std::to_string(n));
  if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end()) {
    throw StructuralError("run index listed twice in removal subset");
  }
}

RemovalEvaluator::RemovalEvaluator(const WStack& w) : w_(&w) {
  const std::size_t n = w.size();
  const std::size_t orders = w.factors() + 1;
  totals_.assign(orders, 0);
  row_sums_.assign(orders * n, 0);
  for (std::size_t j = 0; j < orders; ++j) {
    for (std::size_t f = 0; f < n; ++f) {
      std::int64_t sum = 0;
      for (std::int64_t v : w.row(j, f)) sum = checked::add(sum, v);
      row_sums_[j * n + f] = sum;
      totals_[j] = checked::add(totals_[j], sum);
    }
  }
}

void RemovalEvaluator::numerators_after(std::span<const std::size_t> positions, std::span<std::int64_t> out) const {
  const std::size_t n = w_->size();
  for (std::size_t j = 0; j < totals_.size(); ++j) {
    std::int64_t rows = 0;
    std::int64_t block = 0;
    for (std::size_t a = 0; a < positions.size(); ++a) {
      const std::size_t f = positions[a];
      rows += row_sums_[j * n + f];
      block += w_->at(j, f, f);
      for (std::size_t b = a + 1; b < positions.size(); ++b) block += 2 * w_->at(j, f, positions[b]);
    }
    out[j] = totals_[j] - 2 * rows + block;
  }
}

GwlpExact RemovalEvaluator::after_removal(const RemovalSubset& subset) const {
  const std::size_t n = w_->size();
  if (subset.p() >= n || subset.indices().back() > n) throw StructuralError("removal subset does not fit the W-stack");
  std::vector<std::size_t> positions;
  for (std::size_t idx : subset.indices()) positions.push_back(idx - 1);
  // overflow-checked path; the hot loop in exhaustive_search uses numerators_after
  std::vector<std::int64_t> numerators(totals_.size());
  for (std::size_t j = 0; j < totals_.size(); ++j) {
    std::int64_t value = totals_[j];
    for (std::size_t f : positions) value = checked::sub(value, checked::mul(2, row_sums_[j * n + f]));
    for (std::size_t f : positions) {
      for (std::size_t g : positions) value = checked::add(value, w_->at(j, f, g));
    }
    numerators[j] = value;
  }
  const std::size_t remaining = n - subset.p();
  return GwlpExact(std::move(numerators), square(remaining), static_cast<std::int64_t>(remaining));
}

GwlpExact gwlp_after_removal(const WStack& w, const RemovalSubset& subset) {
  return RemovalEvaluator(w).after_removal(subset);
}

std::vector<SingleRemoval> rank_single_removals(const WStack& w) {
  const std::size_t n = w.size();
  if (n < 2) throw StructuralError("ranking single removals needs at least two runs");
  const RemovalEvaluator eval(w);
  std::vector<SingleRemoval> out;
  out.reserve(n);
  for (std::size_t f = 1; f <= n; ++f) out.push_back({f, eval.after_removal(RemovalSubset({f}, n))});
  std::stable_sort(out.begin(), out.end(),
                   [](const SingleRemoval& a, const SingleRemoval& b) { return gma_less(a.gwlp, b.gwlp); });
  return out;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
    if (result > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(result);
}

RemovalReport exhaustive_search(const WStack& w, std::size_t p, const ExhaustiveOptions& options) {
  const std::size_t n = w.size();
  if (p < 1 || p >= n) {
    throw StructuralError("p must satisfy 1 <= p < n (p=" + std::to_string(p) + ", n=" + std::to_string(n) + ")");
  }
  const std::uint64_t total = binomial(n, p);
  if (total > options.max_subsets && !options.force) {
    throw CapacityError("C(" + std::to_string(n) + ", " + std::to_string(p) + ") = " + std::to_string(total) +
                        " subsets exceeds the limit of " + std::to_string(options.max_subsets) +
                        "; raise --max-subsets to force the enumeration");
  }
  // row sums and block sums stay below n^2 * max|W|, far inside int64 once
  // the totals themselves were computed with overflow checks
  const RemovalEvaluator eval(w);
  const std::size_t keep = options.representatives_per_group;
  const unsigned threads = std::max(1u, options.threads);

  const std::uint64_t chunks = std::min<std::uint64_t>(total, std::uint64_t{threads} * 8);
  std::vector<GroupMap> partial(chunks);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t c = next++; c < chunks; c = next++) {
      const std::uint64_t begin = total / chunks * c + std::min(c, total % chunks);
      const std::uint64_t end = begin + total / chunks + (c < total % chunks ? 1 : 0);
      partial[c] = evaluate_range(eval, p, begin, end, keep);
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  GroupMap merged;
  for (GroupMap& g : partial) merge_into(merged, std::move(g), keep);

  RemovalReport report;
  report.p = p;
  report.total_subsets = total;
  const std::size_t remaining = n - p;
  for (auto& [key, group] : merged) {
    RemovalGroup out{GwlpExact(key, square(remaining), static_cast<std::int64_t>(remaining)), group.count, {}};
    for (const auto& positions : group.representatives) out.representatives.push_back(to_subset(positions, n));
    report.groups.push_back(std::move(out));
  }
  // equal denominators: numerator order is GMA order, already ascending
  return report;
}

std::vector<GreedyStep> greedy_sequential(const WStack& w, std::size_t p, std::optional<std::size_t> first) {
  const std::size_t n = w.size();
  if (p < 1 || p >= n) throw StructuralError("p must satisfy 1 <= p < n");
  if (first && (*first < 1 || *first > n)) throw StructuralError("forced first run out of range");

  const std::size_t orders = w.factors() + 1;
  std::vector<std::int64_t> totals(orders, 0);
  std::vector<std::int64_t> row_sums(orders * n, 0);
  for (std::size_t j = 0; j < orders; ++j) {
    for (std::size_t f = 0; f < n; ++f) {
      for (std::int64_t v : w.row(j, f)) row_sums[j * n + f] = checked::add(row_sums[j * n + f], v);
      totals[j] = checked::add(totals[j], row_sums[j * n + f]);
    }
  }

  std::vector<bool> active(n, true);
  std::size_t remaining = n;
  std::vector<GreedyStep> steps;
  auto after = [&](std::size_t f) {
    std::vector<std::int64_t> num(orders);
    for (std::size_t j = 0; j < orders; ++j) {
      num[j] = checked::add(checked::sub(totals[j], checked::mul(2, row_sums[j * n + f])), w.at(j, f, f));
    }
    return GwlpExact(std::move(num), square(remaining - 1), static_cast<std::int64_t>(remaining - 1));
  };

  for (std::size_t step = 0; step < p; ++step) {
    std::optional<std::size_t> pick;
    std::optional<GwlpExact> best;
    if (step == 0 && first) {
      pick = *first - 1;
      best = after(*pick);
    } else {
      for (std::size_t f = 0; f < n; ++f) {
        if (!active[f]) continue;
        GwlpExact candidate = after(f);
        if (!best || gma_compare(candidate, *best) == GmaOrder::FirstBetter) {
          best = std::move(candidate);
          pick = f;
        }
      }
    }
    const std::size_t f = *pick;
    for (std::size_t j = 0; j < orders; ++j) {
      totals[j] = best->numerator(j);
      for (std::size_t g = 0; g < n; ++g) row_sums[j * n + g] -= w.at(j, g, f);
    }
    active[f] = false;
    --remaining;
    steps.push_back({f + 1, std::move(*best)});
  }
  return steps;
}

}  // namespace gwlp
