#include "gwlp/counting.hpp"

#include <cmath>
#include <numbers>

#include "gwlp/error.hpp"

namespace gwlp::counting {

namespace {

// roots[s][k] = exp(2*pi*i*k/s)
class RootTable {
 public:
  explicit RootTable(const DesignSpace& space) {
    for (int s : space.levels()) {
      if (static_cast<std::size_t>(s) >= roots_.size()) roots_.resize(s + 1);
      if (!roots_[s].empty()) continue;
      for (int k = 0; k < s; ++k) {
        const double angle = 2.0 * std::numbers::pi * k / s;
        roots_[s].emplace_back(std::cos(angle), std::sin(angle));
      }
    }
  }

  Complex operator()(int s, long long k) const {
    const long long r = ((k % s) + s) % s;
    return roots_[s][static_cast<std::size_t>(r)];
  }

 private:
  std::vector<std::vector<Complex>> roots_;
};

Complex coefficient_with(const RootTable& roots, const Fraction& fraction, const std::vector<int>& alpha) {
  const DesignSpace& space = fraction.space();
  Complex sum{0.0, 0.0};
  for (const Run& run : fraction.runs()) {
    Complex term{1.0, 0.0};
    for (std::size_t j = 0; j < space.factors(); ++j) {
      if (alpha[j] == 0) continue;
      term *= roots(space.levels(j), -static_cast<long long>(alpha[j]) * run.codes[j]);
    }
    sum += term;
  }
  return sum / static_cast<double>(space.full_size());
}

double zero_tolerance(const Fraction& fraction) {
  return 1e-10 * static_cast<double>(fraction.size()) / static_cast<double>(fraction.space().full_size());
}

}  // namespace

ExponentIndex::ExponentIndex(const DesignSpace& space, std::vector<int> alpha) : alpha_(std::move(alpha)) {
  if (alpha_.size() != space.factors()) throw StructuralError("exponent length does not match the factor count");
  for (std::size_t j = 0; j < alpha_.size(); ++j) {
    if (alpha_[j] < 0 || alpha_[j] >= space.levels(j)) throw StructuralError("exponent entry out of range");
    if (alpha_[j] != 0) ++order_;
  }
}

ExponentIndex ExponentIndex::negated(const DesignSpace& space) const {
  std::vector<int> out(alpha_.size());
  for (std::size_t j = 0; j < alpha_.size(); ++j) out[j] = (space.levels(j) - alpha_[j]) % space.levels(j);
  return ExponentIndex(space, std::move(out));
}

ExponentIndex ExponentIndex::minus(const DesignSpace& space, const ExponentIndex& beta) const {
  std::vector<int> out(alpha_.size());
  for (std::size_t j = 0; j < alpha_.size(); ++j) {
    const int s = space.levels(j);
    out[j] = ((alpha_[j] - beta.alpha_[j]) % s + s) % s;
  }
  return ExponentIndex(space, std::move(out));
}

void for_each_exponent(const DesignSpace& space, std::size_t max_order,
                       const std::function<void(const ExponentIndex&)>& visit) {
  const std::size_t m = space.factors();
  std::vector<int> alpha(m, 0);
  std::size_t order = 0;
  while (true) {
    if (order <= max_order) visit(ExponentIndex(space, alpha));
    // odometer, last factor fastest
    std::size_t j = m;
    while (j > 0) {
      --j;
      if (alpha[j] == 0) ++order;
      if (++alpha[j] < space.levels(j)) break;
      alpha[j] = 0;
      --order;
      if (j == 0) return;
    }
  }
}

Complex coefficient(const Fraction& fraction, const ExponentIndex& alpha) {
  if (alpha.alpha().size() != fraction.space().factors()) throw StructuralError("exponent does not fit the fraction");
  return coefficient_with(RootTable(fraction.space()), fraction, alpha.alpha());
}

CoefficientTable coefficient_table(const Fraction& fraction, std::size_t max_order) {
  const DesignSpace& space = fraction.space();
  if (max_order > space.factors()) throw StructuralError("max_order exceeds the number of factors");
  const RootTable roots(space);
  CoefficientTable table;
  table.c0 = static_cast<double>(fraction.size()) / static_cast<double>(space.full_size());
  for_each_exponent(space, max_order, [&](const ExponentIndex& alpha) {
    table.coefficients.emplace(alpha, alpha.is_zero() ? Complex{table.c0, 0.0}
                                                      : coefficient_with(roots, fraction, alpha.alpha()));
  });
  return table;
}

Complex counting_value(const CoefficientTable& table, const DesignSpace& space, const Run& point) {
  if (!valid_run(space, point)) throw StructuralError("point outside the design space");
  const RootTable roots(space);
  Complex sum{0.0, 0.0};
  for (const auto& [alpha, c] : table.coefficients) {
    Complex term = c;
    for (std::size_t j = 0; j < space.factors(); ++j) {
      term *= roots(space.levels(j), static_cast<long long>(alpha.alpha()[j]) * point.codes[j]);
    }
    sum += term;
  }
  return sum;
}

double aberration(const Fraction& fraction, const ExponentIndex& alpha) {
  if (alpha.is_zero()) throw StructuralError("the aberration of the constant term is not defined here");
  const double c0 = static_cast<double>(fraction.size()) / static_cast<double>(fraction.space().full_size());
  return std::norm(coefficient(fraction, alpha)) / (c0 * c0);
}

std::vector<double> gwlp_direct(const Fraction& fraction) {
  const DesignSpace& space = fraction.space();
  if (space.full_size() > kDirectGridLimit) {
    throw CapacityError("direct GWLP needs the full grid of " + std::to_string(space.full_size()) +
                        " points, limit is " + std::to_string(kDirectGridLimit));
  }
  const RootTable roots(space);
  const double c0 = static_cast<double>(fraction.size()) / static_cast<double>(space.full_size());
  std::vector<double> gwlp(space.factors() + 1, 0.0);
  for_each_exponent(space, space.factors(), [&](const ExponentIndex& alpha) {
    if (alpha.is_zero()) {
      gwlp[0] += 1.0;
      return;
    }
    gwlp[alpha.order()] += std::norm(coefficient_with(roots, fraction, alpha.alpha())) / (c0 * c0);
  });
  return gwlp;
}

bool is_centered(const Fraction& fraction, const ExponentIndex& alpha) {
  return std::abs(coefficient(fraction, alpha)) < zero_tolerance(fraction);
}

bool are_orthogonal(const Fraction& fraction, const ExponentIndex& alpha, const ExponentIndex& beta) {
  return is_centered(fraction, alpha.minus(fraction.space(), beta));
}

bool projects_factorially(const Fraction& fraction, const std::vector<std::size_t>& factors) {
  const DesignSpace& space = fraction.space();
  std::int64_t cells = 1;
  for (std::size_t j : factors) {
    if (j >= space.factors()) throw StructuralError("factor index out of range");
    cells *= space.levels(j);
    if (cells > static_cast<std::int64_t>(fraction.size())) return false;
  }
  if (static_cast<std::int64_t>(fraction.size()) % cells != 0) return false;
  std::vector<std::int64_t> counts(static_cast<std::size_t>(cells), 0);
  for (const Run& run : fraction.runs()) {
    std::int64_t cell = 0;
    for (std::size_t j : factors) cell = cell * space.levels(j) + run.codes[j];
    ++counts[static_cast<std::size_t>(cell)];
  }
  const std::int64_t expected = static_cast<std::int64_t>(fraction.size()) / cells;
  for (std::int64_t c : counts) {
    if (c != expected) return false;
  }
  return true;
}

std::size_t strength(const Fraction& fraction) {
  const std::size_t m = fraction.space().factors();
  std::size_t t = 0;
  while (t < m) {
    const std::size_t k = t + 1;
    // all k-subsets of factors, lexicographic
    std::vector<std::size_t> subset(k);
    for (std::size_t i = 0; i < k; ++i) subset[i] = i;
    bool balanced = true;
    while (balanced) {
      balanced = projects_factorially(fraction, subset);
      std::size_t i = k;
      while (i > 0 && subset[i - 1] == m - k + (i - 1)) --i;
      if (i == 0) break;
      ++subset[i - 1];
      for (std::size_t r = i; r < k; ++r) subset[r] = subset[r - 1] + 1;
    }
    if (!balanced) break;
    t = k;
  }
  return t;
}

}  // namespace gwlp::counting
