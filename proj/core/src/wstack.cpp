#include "gwlp/wstack.hpp"

#include "gwlp/checked.hpp"
#include "gwlp/error.hpp"

namespace gwlp {

SVector s_vector(const DesignSpace& space, const Run& f, const Run& g) {
  if (!valid_run(space, f) || !valid_run(space, g)) throw StructuralError("run outside the design space");
  SVector out;
  out.entries.resize(space.factors());
  for (std::size_t i = 0; i < space.factors(); ++i) {
    out.entries[i] = f.codes[i] == g.codes[i] ? space.levels(i) - 1 : -1;
  }
  return out;
}

std::vector<std::int64_t> w_entries_all_orders(const SVector& svec) {
  std::vector<std::int64_t> e(svec.entries.size() + 1, 0);
  e[0] = 1;
  std::size_t degree = 0;
  for (std::int64_t s : svec.entries) {
    ++degree;
    for (std::size_t k = degree; k > 0; --k) e[k] = checked::add(e[k], checked::mul(e[k - 1], s));
  }
  return e;
}

WStack::WStack(std::size_t n, std::size_t factors) : n_(n), m_(factors) {
  if (n_ == 0) throw StructuralError("empty W-stack");
  const __int128 entries = static_cast<__int128>(n_) * n_ * (m_ + 1);
  if (entries > static_cast<__int128>(kMaxWStackEntries)) {
    throw CapacityError("W-stack for n=" + std::to_string(n_) + ", m=" + std::to_string(m_) +
                        " exceeds the entry limit of " + std::to_string(kMaxWStackEntries));
  }
  data_.assign(static_cast<std::size_t>(entries), 0);
}

WStack build_wstack(const Fraction& fraction) {
  const DesignSpace& space = fraction.space();
  const std::size_t n = fraction.size();
  const std::size_t m = space.factors();
  WStack w(n, m);
  for (std::size_t f = 0; f < n; ++f) {
    for (std::size_t g = f; g < n; ++g) {
      const auto e = w_entries_all_orders(s_vector(space, fraction.run(f), fraction.run(g)));
      for (std::size_t j = 0; j <= m; ++j) {
        w.at(j, f, g) = e[j];
        w.at(j, g, f) = e[j];
      }
    }
  }
  return w;
}

WStack twolevel_wstack(const Fraction& fraction) {
  const DesignSpace& space = fraction.space();
  if (!space.two_level()) throw UnsupportedError("the two-level recursion needs every factor at 2 levels");
  const std::size_t n = fraction.size();
  const std::size_t m = space.factors();
  const auto sign = [](int code) { return code == 0 ? 1 : -1; };

  WStack w(n, m);
  for (std::size_t f = 0; f < n; ++f) {
    for (std::size_t g = 0; g < n; ++g) {
      w.at(0, f, g) = 1;
      std::int64_t inner = 0;
      for (std::size_t i = 0; i < m; ++i) inner += sign(fraction.run(f).codes[i]) * sign(fraction.run(g).codes[i]);
      w.at(1, f, g) = inner;
    }
  }
  for (std::size_t j = 2; j <= m; ++j) {
    const auto j64 = static_cast<std::int64_t>(j);
    const auto weight = static_cast<std::int64_t>(m) - j64 + 2;
    for (std::size_t f = 0; f < n; ++f) {
      for (std::size_t g = 0; g < n; ++g) {
        const std::int64_t scaled =
            checked::sub(checked::mul(w.at(1, f, g), w.at(j - 1, f, g)), checked::mul(weight, w.at(j - 2, f, g)));
        if (scaled % j64 != 0) {
          throw InternalError("two-level recursion produced a non-integer entry at order " + std::to_string(j));
        }
        w.at(j, f, g) = scaled / j64;
      }
    }
  }
  return w;
}

GwlpExact gwlp_from_wstack(const WStack& w) {
  const std::size_t n = w.size();
  std::vector<std::int64_t> numerators(w.factors() + 1, 0);
  for (std::size_t j = 0; j <= w.factors(); ++j) {
    std::int64_t total = 0;
    for (std::size_t f = 0; f < n; ++f) {
      for (std::int64_t v : w.row(j, f)) total = checked::add(total, v);
    }
    numerators[j] = total;
  }
  const auto n64 = static_cast<std::int64_t>(n);
  return GwlpExact(std::move(numerators), checked::mul(n64, n64), n64);
}

std::int64_t w_marginal(const WStack& w, std::size_t order, std::size_t position) {
  if (order > w.factors()) throw StructuralError("order out of range");
  if (position >= w.size()) throw StructuralError("run position out of range");
  std::int64_t row_sum = 0;
  std::int64_t col_sum = 0;
  for (std::size_t c = 0; c < w.size(); ++c) {
    row_sum = checked::add(row_sum, w.at(order, position, c));
    col_sum = checked::add(col_sum, w.at(order, c, position));
  }
  return checked::sub(checked::add(row_sum, col_sum), w.at(order, position, position));
}

std::vector<std::int64_t> singleton_gwlp(const DesignSpace& space) {
  SVector all_agree;
  for (int s : space.levels()) all_agree.entries.push_back(s - 1);
  return w_entries_all_orders(all_agree);
}

GwlpExact union_gwlp(std::span<const Fraction> parts) {
  return gwlp_from_wstack(build_wstack(Fraction::concat(parts)));
}

}  // namespace gwlp
