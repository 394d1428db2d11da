#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gwlp {

/// Full factorial grid: m factors with s_1..s_m levels each.
class DesignSpace {
 public:
  explicit DesignSpace(std::vector<int> levels);

  std::size_t factors() const noexcept { return levels_.size(); }
  int levels(std::size_t factor) const { return levels_.at(factor); }
  std::span<const int> levels() const noexcept { return levels_; }

  /// #D = s_1 * ... * s_m.
  std::int64_t full_size() const noexcept { return full_size_; }

  bool two_level() const noexcept;

  friend bool operator==(const DesignSpace&, const DesignSpace&) = default;

 private:
  std::vector<int> levels_;
  std::int64_t full_size_ = 1;
};

/// One design point. Code k of factor j stands for the k-th level of that factor.
struct Run {
  std::vector<int> codes;

  friend bool operator==(const Run&, const Run&) = default;
  friend auto operator<=>(const Run&, const Run&) = default;
};

bool valid_run(const DesignSpace& space, const Run& run) noexcept;

/// A multiset of runs. Runs keep their input order; a replicated point
/// occupies one position per copy, so positions are stable run labels.
class Fraction {
 public:
  Fraction(DesignSpace space, std::vector<Run> runs);

  const DesignSpace& space() const noexcept { return space_; }
  std::size_t size() const noexcept { return runs_.size(); }
  const Run& run(std::size_t position) const { return runs_.at(position); }
  std::span<const Run> runs() const noexcept { return runs_; }

  /// Distinct points with their multiplicities, in order of first appearance.
  std::vector<std::pair<Run, std::int64_t>> distinct() const;

  std::int64_t multiplicity(const Run& point) const;

  /// Sum over the grid of R(z)^2, where R is the counting function.
  std::int64_t sum_squared_multiplicities() const;

  /// Copy with the given 0-based positions removed (one copy each).
  Fraction without(std::span<const std::size_t> positions) const;

  /// Concatenation of fractions over one space, preserving part order.
  static Fraction concat(std::span<const Fraction> parts);

 private:
  DesignSpace space_;
  std::vector<Run> runs_;
};

/// Exact GWLP: A_j = numerators[j] / denominator, with denominator = n^2.
class GwlpExact {
 public:
  GwlpExact(std::vector<std::int64_t> numerators, std::int64_t denominator, std::int64_t size_n);

  std::span<const std::int64_t> numerators() const noexcept { return numerators_; }
  std::int64_t numerator(std::size_t j) const { return numerators_.at(j); }
  std::int64_t denominator() const noexcept { return denominator_; }
  std::int64_t size_n() const noexcept { return size_n_; }
  /// m + 1.
  std::size_t length() const noexcept { return numerators_.size(); }

  double value(std::size_t j) const { return static_cast<double>(numerator(j)) / static_cast<double>(denominator_); }
  std::vector<double> values() const;

  friend bool operator==(const GwlpExact&, const GwlpExact&) = default;

 private:
  std::vector<std::int64_t> numerators_;
  std::int64_t denominator_;
  std::int64_t size_n_;
};

enum class GmaOrder { FirstBetter, SecondBetter, Equal };

/// Generalized minimum aberration: lexicographic comparison of the exact
/// GWLPs, smaller first. Throws StructuralError on length mismatch.
GmaOrder gma_compare(const GwlpExact& first, const GwlpExact& second);

/// Strict weak ordering adaptor for sorting (best first).
inline bool gma_less(const GwlpExact& a, const GwlpExact& b) {
  return gma_compare(a, b) == GmaOrder::FirstBetter;
}

std::string to_string(GmaOrder order);

}  // namespace gwlp
