#pragma once

// Reference computations over the complex coding of the factor levels.
//
// Level k of a factor with s levels is coded as exp(2*pi*i*k/s). The counting
// function R of a fraction is expanded in the monomial basis X^alpha,
// alpha in Z_{s_1} x ... x Z_{s_m}. Everything here is floating point and
// brute force; it exists to cross-check the exact integer path in wstack.hpp.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "gwlp/design.hpp"

namespace gwlp::counting {

using Complex = std::complex<double>;

/// Exponent alpha of the monomial X^alpha.
class ExponentIndex {
 public:
  ExponentIndex(const DesignSpace& space, std::vector<int> alpha);

  const std::vector<int>& alpha() const noexcept { return alpha_; }
  /// Number of nonzero entries.
  std::size_t order() const noexcept { return order_; }
  bool is_zero() const noexcept { return order_ == 0; }

  /// [-alpha], componentwise modulo s_j.
  ExponentIndex negated(const DesignSpace& space) const;
  /// [alpha - beta], componentwise modulo s_j.
  ExponentIndex minus(const DesignSpace& space, const ExponentIndex& beta) const;

  friend bool operator==(const ExponentIndex&, const ExponentIndex&) = default;
  friend auto operator<=>(const ExponentIndex& a, const ExponentIndex& b) { return a.alpha_ <=> b.alpha_; }

 private:
  std::vector<int> alpha_;
  std::size_t order_ = 0;
};

/// Visits every alpha in the exponent set with order() <= max_order, in
/// lexicographic order.
void for_each_exponent(const DesignSpace& space, std::size_t max_order,
                       const std::function<void(const ExponentIndex&)>& visit);

struct CoefficientTable {
  std::map<ExponentIndex, Complex> coefficients;
  /// c_0 = n / #D.
  double c0 = 0.0;

  Complex at(const ExponentIndex& alpha) const { return coefficients.at(alpha); }
};

/// c_alpha = (1/#D) * sum over runs of conj(X^alpha(run)).
Complex coefficient(const Fraction& fraction, const ExponentIndex& alpha);

CoefficientTable coefficient_table(const Fraction& fraction, std::size_t max_order);

/// R(point) = sum_alpha c_alpha X^alpha(point). Needs a full table
/// (max_order = m) to reproduce the multiplicity.
Complex counting_value(const CoefficientTable& table, const DesignSpace& space, const Run& point);

/// a_alpha = |c_alpha|^2 / c_0^2; alpha must be nonzero.
double aberration(const Fraction& fraction, const ExponentIndex& alpha);

/// Largest #D accepted by gwlp_direct.
inline constexpr std::int64_t kDirectGridLimit = 1'000'000;

/// GWLP by summing aberrations over the whole exponent set.
std::vector<double> gwlp_direct(const Fraction& fraction);

bool is_centered(const Fraction& fraction, const ExponentIndex& alpha);
bool are_orthogonal(const Fraction& fraction, const ExponentIndex& alpha, const ExponentIndex& beta);

/// Largest t such that every t-factor projection is a replicated full
/// factorial. Exact integer counting.
std::size_t strength(const Fraction& fraction);

/// True if the projection onto the given factors is balanced.
bool projects_factorially(const Fraction& fraction, const std::vector<std::size_t>& factors);

}  // namespace gwlp::counting
