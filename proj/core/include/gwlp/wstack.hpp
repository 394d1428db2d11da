#pragma once

// Exact integer GWLP engine.
//
// For two runs f, g let S_i = s_i - 1 if f_i == g_i and -1 otherwise. The
// pair contribution of order j is W_j(f, g) = e_j(S_1, ..., S_m), the j-th
// elementary symmetric polynomial of the S-vector, and
//
//   n^2 A_j(F) = sum_f sum_g W_j(f, g).
//
// All quantities are integers; no floating point is involved.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gwlp/design.hpp"

namespace gwlp {

struct SVector {
  std::vector<std::int64_t> entries;
};

SVector s_vector(const DesignSpace& space, const Run& f, const Run& g);

/// (e_0, ..., e_m) of the S-vector, read off prod_i (1 + S_i x).
std::vector<std::int64_t> w_entries_all_orders(const SVector& svec);

/// Upper bound on n^2 * (m + 1) stored entries.
inline constexpr std::size_t kMaxWStackEntries = std::size_t{1} << 27;

/// The symmetric matrices W_0..W_m of a fraction, rows in run order.
class WStack {
 public:
  WStack(std::size_t n, std::size_t factors);

  std::size_t size() const noexcept { return n_; }
  std::size_t factors() const noexcept { return m_; }

  std::int64_t at(std::size_t order, std::size_t f, std::size_t g) const { return data_[index(order, f, g)]; }
  std::int64_t& at(std::size_t order, std::size_t f, std::size_t g) { return data_[index(order, f, g)]; }

  std::span<const std::int64_t> row(std::size_t order, std::size_t f) const {
    return {data_.data() + index(order, f, 0), n_};
  }

  friend bool operator==(const WStack&, const WStack&) = default;

 private:
  std::size_t index(std::size_t order, std::size_t f, std::size_t g) const noexcept {
    return (order * n_ + f) * n_ + g;
  }

  std::size_t n_;
  std::size_t m_;
  std::vector<std::int64_t> data_;
};

WStack build_wstack(const Fraction& fraction);

/// Same stack for two-level fractions through W_0 = J, W_1 = X X^t and
///   j W_j = W_1 .* W_{j-1} - (m - j + 2) W_{j-2},
/// X being the +-1 design matrix. Throws UnsupportedError unless every
/// factor has two levels.
WStack twolevel_wstack(const Fraction& fraction);

GwlpExact gwlp_from_wstack(const WStack& w);

/// w_{j,f} = sum_c W_j(f,c) + sum_r W_j(r,f) - W_j(f,f), so that
/// n^2 A_j(F) = (n-1)^2 A_j(F minus f) + w_{j,f}. Position is 0-based.
std::int64_t w_marginal(const WStack& w, std::size_t order, std::size_t position);

/// GWLP numerators of a single point: e_j(s_1 - 1, ..., s_m - 1).
std::vector<std::int64_t> singleton_gwlp(const DesignSpace& space);

/// GWLP of the multiset union of the parts.
GwlpExact union_gwlp(std::span<const Fraction> parts);

}  // namespace gwlp
