#include "gwlp/design.hpp"

#include <algorithm>
#include <map>

#include "gwlp/checked.hpp"
#include "gwlp/error.hpp"

namespace gwlp {

DesignSpace::DesignSpace(std::vector<int> levels) : levels_(std::move(levels)) {
  if (levels_.empty()) throw StructuralError("a design space needs at least one factor");
  for (int s : levels_) {
    if (s < 2) throw StructuralError("every factor needs at least 2 levels, got " + std::to_string(s));
    full_size_ = checked::mul(full_size_, s);
  }
}

bool DesignSpace::two_level() const noexcept {
  return std::all_of(levels_.begin(), levels_.end(), [](int s) { return s == 2; });
}

bool valid_run(const DesignSpace& space, const Run& run) noexcept {
  if (run.codes.size() != space.factors()) return false;
  for (std::size_t j = 0; j < run.codes.size(); ++j) {
    if (run.codes[j] < 0 || run.codes[j] >= space.levels(j)) return false;
  }
  return true;
}

Fraction::Fraction(DesignSpace space, std::vector<Run> runs) : space_(std::move(space)), runs_(std::move(runs)) {
  if (runs_.empty()) throw StructuralError("a fraction needs at least one run");
  for (std::size_t i = 0; i < runs_.size(); ++i) {
    if (!valid_run(space_, runs_[i])) {
      throw StructuralError("run " + std::to_string(i + 1) + " does not belong to the design space");
    }
  }
}

std::vector<std::pair<Run, std::int64_t>> Fraction::distinct() const {
  std::vector<std::pair<Run, std::int64_t>> out;
  std::map<Run, std::size_t> slot;
  for (const Run& r : runs_) {
    auto [it, inserted] = slot.try_emplace(r, out.size());
    if (inserted) {
      out.emplace_back(r, 1);
    } else {
      ++out[it->second].second;
    }
  }
  return out;
}

std::int64_t Fraction::multiplicity(const Run& point) const {
  return std::count(runs_.begin(), runs_.end(), point);
}

std::int64_t Fraction::sum_squared_multiplicities() const {
  std::int64_t total = 0;
  for (const auto& [point, count] : distinct()) total = checked::add(total, checked::mul(count, count));
  return total;
}

Fraction Fraction::without(std::span<const std::size_t> positions) const {
  std::vector<bool> drop(runs_.size(), false);
  for (std::size_t p : positions) {
    if (p >= runs_.size()) throw StructuralError("run position out of range");
    if (drop[p]) throw StructuralError("run position listed twice");
    drop[p] = true;
  }
  std::vector<Run> kept;
  kept.reserve(runs_.size() - positions.size());
  for (std::size_t i = 0; i < runs_.size(); ++i) {
    if (!drop[i]) kept.push_back(runs_[i]);
  }
  if (kept.empty()) throw StructuralError("removing every run leaves an empty fraction");
  return Fraction(space_, std::move(kept));
}

Fraction Fraction::concat(std::span<const Fraction> parts) {
  if (parts.empty()) throw StructuralError("union of zero fractions");
  std::vector<Run> all;
  for (const Fraction& part : parts) {
    if (!(part.space() == parts.front().space())) throw StructuralError("fractions live in different design spaces");
    all.insert(all.end(), part.runs_.begin(), part.runs_.end());
  }
  return Fraction(parts.front().space(), std::move(all));
}

GwlpExact::GwlpExact(std::vector<std::int64_t> numerators, std::int64_t denominator, std::int64_t size_n)
    : numerators_(std::move(numerators)), denominator_(denominator), size_n_(size_n) {
  if (numerators_.empty()) throw StructuralError("empty GWLP");
  if (denominator_ <= 0) throw StructuralError("GWLP denominator must be positive");
  if (numerators_.front() != denominator_) throw InternalError("GWLP with A_0 != 1");
  for (std::int64_t v : numerators_) {
    if (v < 0) throw InternalError("negative GWLP numerator");
  }
}

std::vector<double> GwlpExact::values() const {
  std::vector<double> out;
  out.reserve(numerators_.size());
  for (std::size_t j = 0; j < numerators_.size(); ++j) out.push_back(value(j));
  return out;
}

GmaOrder gma_compare(const GwlpExact& first, const GwlpExact& second) {
  if (first.length() != second.length()) {
    throw StructuralError("GWLPs of different lengths (" + std::to_string(first.length()) + " vs " +
                          std::to_string(second.length()) + ") cannot be compared");
  }
  const __int128 d1 = first.denominator();
  const __int128 d2 = second.denominator();
  for (std::size_t j = 0; j < first.length(); ++j) {
    const __int128 lhs = static_cast<__int128>(first.numerator(j)) * d2;
    const __int128 rhs = static_cast<__int128>(second.numerator(j)) * d1;
    if (lhs < rhs) return GmaOrder::FirstBetter;
    if (lhs > rhs) return GmaOrder::SecondBetter;
  }
  return GmaOrder::Equal;
}

std::string to_string(GmaOrder order) {
  switch (order) {
    case GmaOrder::FirstBetter:
      return "first-better";
    case GmaOrder::SecondBetter:
      return "second-better";
    case GmaOrder::Equal:
      return "equal";
  }
  return "?";
}

}  // namespace gwlp
