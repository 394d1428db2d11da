#pragma once

// GWLPs of sub-fractions obtained by deleting runs, evaluated from the
// W-stack of the full fraction. For a removed set T of size p:
//
//   (n-p)^2 A_j(F minus T) = N_j(F) - 2 sum_{f in T} r_j(f) + sum_{f,g in T} W_j(f,g)
//
// where r_j(f) is the row sum of W_j at f. Run indices in this header are
// 1-based (f_1..f_n) unless a parameter is named `positions`.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gwlp/design.hpp"
#include "gwlp/wstack.hpp"

namespace gwlp {

class RemovalSubset {
 public:
  /// Indices are 1-based, need not be sorted, must be distinct and leave at
  /// least one run.
  RemovalSubset(std::vector<std::size_t> indices, std::size_t n);

  std::span<const std::size_t> indices() const noexcept { return indices_; }
  std::size_t p() const noexcept { return indices_.size(); }

  friend bool operator==(const RemovalSubset&, const RemovalSubset&) = default;
  friend auto operator<=>(const RemovalSubset&, const RemovalSubset&) = default;

 private:
  std::vector<std::size_t> indices_;
};

/// Precomputed totals and row sums of one W-stack; cheap per-subset queries.
class RemovalEvaluator {
 public:
  explicit RemovalEvaluator(const WStack& w);

  const WStack& stack() const noexcept { return *w_; }

  /// Numerators (n-p)^2 A_j for the 0-based positions, written into `out`
  /// (length m + 1). Positions must be distinct; not checked here.
  void numerators_after(std::span<const std::size_t> positions, std::span<std::int64_t> out) const;

  GwlpExact after_removal(const RemovalSubset& subset) const;

 private:
  const WStack* w_;
  std::vector<std::int64_t> totals_;
  std::vector<std::int64_t> row_sums_;  // [order * n + f]
};

GwlpExact gwlp_after_removal(const WStack& w, const RemovalSubset& subset);

struct SingleRemoval {
  std::size_t index;  // 1-based
  GwlpExact gwlp;
};

/// Every single-run removal, GMA-best first, ties by ascending index.
std::vector<SingleRemoval> rank_single_removals(const WStack& w);

struct RemovalGroup {
  GwlpExact gwlp;
  std::uint64_t count = 0;
  /// Lexicographically smallest subsets realizing this GWLP.
  std::vector<RemovalSubset> representatives;
};

struct RemovalReport {
  std::size_t p = 0;
  std::uint64_t total_subsets = 0;
  /// GMA-ascending; groups.front() is the best.
  std::vector<RemovalGroup> groups;
};

struct ExhaustiveOptions {
  std::uint64_t max_subsets = 10'000'000;
  std::size_t representatives_per_group = 3;
  unsigned threads = 1;
  /// Enumerate even when C(n, p) exceeds max_subsets.
  bool force = false;
};

/// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// Evaluates all C(n, p) subsets and groups exactly equal GWLPs. The report
/// does not depend on options.threads.
RemovalReport exhaustive_search(const WStack& w, std::size_t p, const ExhaustiveOptions& options = {});

struct GreedyStep {
  std::size_t removed;  // 1-based index into the original fraction
  GwlpExact gwlp;       // GWLP after this step
};

/// Removes p runs one at a time, each time taking the GMA-best single
/// removal of the current sub-fraction (ties: lowest index). `first`
/// forces the first pick.
std::vector<GreedyStep> greedy_sequential(const WStack& w, std::size_t p, std::optional<std::size_t> first = {});

}  // namespace gwlp
