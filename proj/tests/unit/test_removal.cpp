#include <doctest.h>

#include <map>
#include <random>

#include "gwlp/counting.hpp"
#include "gwlp/error.hpp"
#include "gwlp/removal.hpp"
#include "test_support.hpp"

using namespace gwlp;

namespace {

GwlpExact rebuild(const Fraction& f, const std::vector<std::size_t>& positions) {
  return gwlp_from_wstack(build_wstack(f.without(positions)));
}

std::vector<std::size_t> one_based(const std::vector<std::size_t>& positions) {
  std::vector<std::size_t> out;
  for (std::size_t p : positions) out.push_back(p + 1);
  return out;
}

}  // namespace

TEST_CASE("removal subset validation") {
  CHECK(RemovalSubset({10, 3}, 12).indices()[0] == 3);
  CHECK_THROWS_AS(RemovalSubset({}, 12), StructuralError);
  CHECK_THROWS_AS(RemovalSubset({0}, 12), StructuralError);
  CHECK_THROWS_AS(RemovalSubset({13}, 12), StructuralError);
  CHECK_THROWS_AS(RemovalSubset({2, 2}, 12), StructuralError);
  CHECK_THROWS_AS(RemovalSubset({1, 2}, 2), StructuralError);
}

TEST_CASE("GWLP after removal: reference values") {
  const WStack w = build_wstack(testing::fixture("oa12_2_5.txt"));
  const GwlpExact f1 = gwlp_after_removal(w, RemovalSubset({1}, 12));
  CHECK(f1.denominator() == 121);
  CHECK(f1.numerator(1) == 5);
  CHECK(f1.numerator(2) == 10);
  CHECK(f1.numerator(3) == 138);
  CHECK(f1.numerator(5) == 1);
  CHECK(gwlp_after_removal(w, RemovalSubset({3}, 12)).numerator(3) == 170);
  const GwlpExact pair = gwlp_after_removal(w, RemovalSubset({3, 10}, 12));
  CHECK(pair.numerator(1) == 0);
  CHECK(pair.denominator() == 100);
}

TEST_CASE("removal agrees with rebuilding the sub-fraction") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 12; ++trial) {
    const Fraction f = testing::random_fraction(rng, {.max_factors = 4, .max_distinct = 8});
    if (f.size() < 2) continue;
    const WStack w = build_wstack(f);
    const RemovalEvaluator eval(w);
    for (std::size_t p = 1; p <= std::min<std::size_t>(3, f.size() - 1); ++p) {
      for (const auto& subset : testing::all_subsets(f.size(), p)) {
        const GwlpExact expected = rebuild(f, subset);
        CHECK(eval.after_removal(RemovalSubset(one_based(subset), f.size())) == expected);
        std::vector<std::int64_t> fast(f.space().factors() + 1);
        eval.numerators_after(subset, fast);
        CHECK(std::equal(fast.begin(), fast.end(), expected.numerators().begin()));
      }
    }
  }
}

TEST_CASE("single removal equals the marginal identity") {
  const WStack w = build_wstack(testing::fixture("oa18_2_3_3_3.txt"));
  const GwlpExact whole = gwlp_from_wstack(w);
  for (std::size_t f = 1; f <= w.size(); ++f) {
    const GwlpExact g = gwlp_after_removal(w, RemovalSubset({f}, w.size()));
    for (std::size_t j = 0; j <= w.factors(); ++j) {
      CHECK(whole.numerator(j) == g.numerator(j) + w_marginal(w, j, f - 1));
    }
  }
}

TEST_CASE("chained single removals equal a pair removal") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 10; ++trial) {
    const Fraction f = testing::random_fraction(rng, {.max_factors = 4, .max_distinct = 9});
    if (f.size() < 3) continue;
    const WStack w = build_wstack(f);
    for (std::size_t a = 0; a < f.size(); ++a) {
      const std::vector<std::size_t> first{a};
      const Fraction reduced = f.without(first);
      const WStack wr = build_wstack(reduced);
      const GwlpExact after_a = gwlp_from_wstack(wr);
      for (std::size_t b = 0; b < reduced.size(); ++b) {
        const std::size_t b_orig = b < a ? b : b + 1;
        const GwlpExact pair = gwlp_after_removal(w, RemovalSubset({a + 1, b_orig + 1}, f.size()));
        for (std::size_t j = 0; j <= f.space().factors(); ++j) {
          CHECK(pair.numerator(j) == after_a.numerator(j) - w_marginal(wr, j, b));
        }
      }
    }
  }
}

TEST_CASE("rank single removals") {
  SUBCASE("12-run OA: runs 3 and 10 rank last") {
    const WStack w = build_wstack(testing::fixture("oa12_2_5.txt"));
    const auto ranking = rank_single_removals(w);
    REQUIRE(ranking.size() == 12);
    const std::vector<std::size_t> expected{1, 2, 4, 5, 6, 7, 8, 9, 11, 12, 3, 10};
    for (std::size_t i = 0; i < 12; ++i) CHECK(ranking[i].index == expected[i]);
    CHECK(ranking.front().gwlp.numerator(3) == 138);
    CHECK(ranking.back().gwlp.numerator(3) == 170);
  }
  SUBCASE("Plackett-Burman: all removals tie") {
    const auto ranking = rank_single_removals(build_wstack(testing::fixture("pb12.txt")));
    for (std::size_t i = 0; i < ranking.size(); ++i) {
      CHECK(ranking[i].index == i + 1);
      CHECK(ranking[i].gwlp == ranking.front().gwlp);
    }
    CHECK(ranking.front().gwlp.numerator(3) == 2365);
    CHECK(ranking.front().gwlp.denominator() == 121);
  }
  SUBCASE("two distinct runs tie") {
    const auto ranking = rank_single_removals(build_wstack(testing::make_fraction({3, 2}, {{0, 1}, {2, 0}})));
    CHECK(ranking[0].gwlp == ranking[1].gwlp);
    CHECK(ranking[0].index == 1);
  }
  SUBCASE("order follows descending marginals") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
      const Fraction f = testing::random_fraction(rng);
      if (f.size() < 2) continue;
      const WStack w = build_wstack(f);
      const auto ranking = rank_single_removals(w);
      for (std::size_t i = 0; i + 1 < ranking.size(); ++i) {
        const auto& a = ranking[i];
        const auto& b = ranking[i + 1];
        std::size_t j = 0;
        while (j < a.gwlp.length() && a.gwlp.numerator(j) == b.gwlp.numerator(j)) ++j;
        if (j == a.gwlp.length()) {
          CHECK(a.index < b.index);
        } else {
          CHECK(w_marginal(w, j, a.index - 1) > w_marginal(w, j, b.index - 1));
        }
      }
    }
  }
  CHECK_THROWS_AS(rank_single_removals(build_wstack(testing::fixture("singleton.txt"))), StructuralError);
}

TEST_CASE("binomial") {
  CHECK(binomial(12, 3) == 220);
  CHECK(binomial(5, 0) == 1);
  CHECK(binomial(3, 5) == 0);
  CHECK(binomial(1000, 500) == UINT64_MAX);
}

TEST_CASE("exhaustive search: reference group structures") {
  const WStack pb = build_wstack(testing::fixture("pb12.txt"));
  const RemovalReport two = exhaustive_search(pb, 2);
  REQUIRE(two.groups.size() == 1);
  CHECK(two.total_subsets == 66);
  CHECK(two.groups[0].count == 66);
  CHECK(two.groups[0].gwlp.numerator(1) == 20);
  CHECK(two.groups[0].gwlp.numerator(2) == 100);
  CHECK(two.groups[0].gwlp.numerator(3) == 2100);

  const RemovalReport three = exhaustive_search(pb, 3);
  REQUIRE(three.groups.size() == 1);
  CHECK(three.groups[0].count == 220);
  CHECK(three.groups[0].gwlp.denominator() == 81);
  CHECK(three.groups[0].gwlp.numerator(3) == 1845);

  const RemovalReport oa = exhaustive_search(build_wstack(testing::fixture("oa12_2_5.txt")), 1);
  REQUIRE(oa.groups.size() == 2);
  CHECK(oa.groups[0].count == 10);
  CHECK(oa.groups[0].gwlp.numerator(3) == 138);
  CHECK(oa.groups[1].count == 2);
  CHECK(oa.groups[1].gwlp.numerator(3) == 170);
  CHECK(oa.groups[1].representatives == std::vector<RemovalSubset>{RemovalSubset({3}, 12), RemovalSubset({10}, 12)});
}

TEST_CASE("exhaustive search: capacity") {
  const WStack pb = build_wstack(testing::fixture("pb12.txt"));
  ExhaustiveOptions small;
  small.max_subsets = 100;
  CHECK_THROWS_AS(exhaustive_search(pb, 3, small), CapacityError);
  small.force = true;
  CHECK(exhaustive_search(pb, 3, small).total_subsets == 220);
  CHECK_THROWS_AS(exhaustive_search(pb, 12), StructuralError);
  CHECK_THROWS_AS(exhaustive_search(pb, 0), StructuralError);
}

TEST_CASE("exhaustive search: completeness, grouping and determinism") {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 10; ++trial) {
    const Fraction f = testing::random_fraction(rng, {.max_factors = 4, .max_distinct = 10});
    if (f.size() < 3) continue;
    const WStack w = build_wstack(f);
    for (std::size_t p = 1; p <= std::min<std::size_t>(3, f.size() - 1); ++p) {
      ExhaustiveOptions opts;
      opts.representatives_per_group = 2;
      const RemovalReport serial = exhaustive_search(w, p, opts);

      // brute-force grouping oracle
      std::map<std::vector<std::int64_t>, std::vector<std::vector<std::size_t>>> oracle;
      for (const auto& s : testing::all_subsets(f.size(), p)) {
        const GwlpExact g = rebuild(f, s);
        oracle[{g.numerators().begin(), g.numerators().end()}].push_back(one_based(s));
      }
      REQUIRE(serial.groups.size() == oracle.size());
      std::uint64_t total = 0;
      std::size_t i = 0;
      for (const auto& [key, members] : oracle) {
        const RemovalGroup& g = serial.groups[i++];
        CHECK(std::equal(key.begin(), key.end(), g.gwlp.numerators().begin()));
        CHECK(g.count == members.size());
        REQUIRE(g.representatives.size() == std::min<std::size_t>(2, members.size()));
        for (std::size_t r = 0; r < g.representatives.size(); ++r) {
          CHECK(std::equal(members[r].begin(), members[r].end(), g.representatives[r].indices().begin()));
        }
        total += g.count;
      }
      CHECK(total == serial.total_subsets);
      CHECK(total == binomial(f.size(), p));
      for (std::size_t k = 1; k < serial.groups.size(); ++k) {
        CHECK(gma_compare(serial.groups[k - 1].gwlp, serial.groups[k].gwlp) == GmaOrder::FirstBetter);
      }

      for (unsigned threads : {2u, 3u, 8u}) {
        opts.threads = threads;
        const RemovalReport parallel = exhaustive_search(w, p, opts);
        REQUIRE(parallel.groups.size() == serial.groups.size());
        for (std::size_t k = 0; k < serial.groups.size(); ++k) {
          CHECK(parallel.groups[k].gwlp == serial.groups[k].gwlp);
          CHECK(parallel.groups[k].count == serial.groups[k].count);
          CHECK(parallel.groups[k].representatives == serial.groups[k].representatives);
        }
      }
    }
  }
}

TEST_CASE("greedy sequential removal") {
  const WStack w = build_wstack(testing::fixture("oa12_2_5.txt"));

  SUBCASE("forced first pick") {
    const auto steps = greedy_sequential(w, 2, 1);
    REQUIRE(steps.size() == 2);
    CHECK(steps[0].removed == 1);
    CHECK(steps[1].removed == 6);
    CHECK(steps[1].gwlp.numerator(1) == 4);
    CHECK(steps[1].gwlp.denominator() == 100);
    // f_9 is the other best second pick
    CHECK(gwlp_after_removal(w, RemovalSubset({1, 9}, 12)) == steps[1].gwlp);
    for (std::size_t g = 2; g <= 12; ++g) {
      const GwlpExact other = gwlp_after_removal(w, RemovalSubset({1, g}, 12));
      CHECK(gma_compare(other, steps[1].gwlp) != GmaOrder::FirstBetter);
    }
  }
  SUBCASE("one step is the top single removal") {
    const auto steps = greedy_sequential(w, 1);
    const auto ranking = rank_single_removals(w);
    CHECK(steps[0].removed == ranking[0].index);
    CHECK(steps[0].gwlp == ranking[0].gwlp);
  }
  SUBCASE("greedy is not optimal for two removals") {
    const auto steps = greedy_sequential(w, 2);
    const RemovalReport best = exhaustive_search(w, 2);
    CHECK(gma_compare(best.groups[0].gwlp, steps.back().gwlp) == GmaOrder::FirstBetter);
    CHECK(best.groups[0].gwlp.numerator(1) == 0);
    CHECK(best.groups[0].representatives.front() == RemovalSubset({3, 10}, 12));
  }
  SUBCASE("greedy steps match rebuilt sub-fractions") {
    const Fraction oa = testing::fixture("oa12_2_5.txt");
    const auto steps = greedy_sequential(w, 4, 5);
    std::vector<std::size_t> removed;
    for (const GreedyStep& s : steps) {
      removed.push_back(s.removed - 1);
      CHECK(s.gwlp == rebuild(oa, removed));
    }
  }
  CHECK_THROWS_AS(greedy_sequential(w, 12), StructuralError);
  CHECK_THROWS_AS(greedy_sequential(w, 2, 13), StructuralError);
}

TEST_CASE("exhaustive best dominates greedy") {
  std::mt19937_64 rng(25);
  std::vector<Fraction> cases{testing::fixture("oa12_2_5.txt"), testing::fixture("oa18_2_3_3_3.txt"),
                              testing::fixture("oa16_2_4_4_2.txt")};
  for (int i = 0; i < 15; ++i) cases.push_back(testing::random_fraction(rng));
  for (const Fraction& f : cases) {
    const WStack w = build_wstack(f);
    for (std::size_t p = 1; p <= std::min<std::size_t>(3, f.size() - 1); ++p) {
      const auto greedy = greedy_sequential(w, p);
      CHECK(gma_compare(exhaustive_search(w, p).groups.front().gwlp, greedy.back().gwlp) != GmaOrder::SecondBetter);
    }
  }
}

TEST_CASE("single-removal law for strength-2 arrays") {
  for (const char* name : {"oa12_2_5.txt", "pb12.txt", "oa18_2_3_3_3.txt", "oa16_2_4_4_2.txt"}) {
    const Fraction f = testing::fixture(name);
    const std::size_t t = counting::strength(f);
    CHECK(t == 2);
    const auto e = singleton_gwlp(f.space());
    const WStack w = build_wstack(f);
    const auto n1 = static_cast<std::int64_t>(f.size() - 1);
    for (std::size_t run = 1; run <= f.size(); ++run) {
      const GwlpExact g = gwlp_after_removal(w, RemovalSubset({run}, f.size()));
      CHECK(g.denominator() == n1 * n1);
      for (std::size_t j = 1; j <= t; ++j) CHECK(g.numerator(j) == e[j]);
    }
  }
}
