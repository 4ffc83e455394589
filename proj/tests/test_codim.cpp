#include <doctest.h>

#include <random>

#include "fhv/codim.hpp"
#include "fhv/error.hpp"
#include "oracles.hpp"

using namespace fhv;

namespace {

std::int64_t c(int n, int d, std::vector<int> a) { return codim(n, d, a); }

}  // namespace

TEST_CASE("spot values") {
  CHECK(c(2, 4, {1, 1, 3, 3}) == 1);
  CHECK(c(2, 5, {1, 1, 4, 4}) == 2);
  CHECK(c(2, 5, {1, 1, 1, 1}) == 0);
  CHECK(c(2, 4, {2, 2, 2, 2}) == 1);
  CHECK(expected_rank_linear_pair(2, 5, -1) == 4);
  CHECK(expected_rank_linear_pair(2, 7, -1) == 8);
  CHECK(expected_rank_linear_pair(2, 4, -1) == 2);
  CHECK(expected_rank_ci(2, 4, std::vector<int>{1, 1}) == 1);
  CHECK(expected_rank_ci(2, 5, std::vector<int>{1, 1}) == 2);
  CHECK(expected_rank_ci(2, 4, std::vector<int>{2, 2}) == 1);
  CHECK(expected_rank_ci_all_ones(2, 4) == 1);
  CHECK(expected_rank_ci_all_ones(2, 5) == 2);
  CHECK(expected_rank_ci_all_ones(4, 3) == 1);
  CHECK(expected_rank_ci_all_ones(10, 3) == 20);
}

TEST_CASE("argument checks") {
  CHECK_THROWS_AS(c(2, 4, {}), Error);
  CHECK_THROWS_AS(c(2, 4, {0, 1}), Error);
  CHECK_THROWS_AS(c(3, 4, {1}), Error);
  CHECK_THROWS_AS(expected_rank_linear_pair(2, 5, 2), Error);
  CHECK_THROWS_AS(expected_rank_linear_pair(2, 5, -2), Error);
  CHECK_THROWS_AS(expected_rank_ci(2, 4, std::vector<int>{1, 4}), Error);
  CHECK_THROWS_AS(expected_rank_ci(2, 4, std::vector<int>{0, 1}), Error);
  CHECK_THROWS_AS(expected_rank_ci(2, 4, std::vector<int>{1, 1, 1}), Error);
  CHECK(repeated(3, 0).empty());
  CHECK(repeated(3, -1).empty());
}

TEST_CASE("agrees with the literal definition") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 300; ++t) {
    const int n = 2 * static_cast<int>(rng() % 6), d = 2 + static_cast<int>(rng() % 10);
    std::vector<int> a(1 + rng() % 8);
    for (auto& v : a) v = 1 + static_cast<int>(rng() % static_cast<unsigned>(d + 2));
    CHECK(codim(n, d, a) == oracle::codim(n, d, a).get_si());
  }
}

TEST_CASE("empty cycle and permutation invariance") {
  for (int n = 0; n <= 10; n += 2)
    for (int d = 2; d <= 12; ++d) CHECK(c(n, d, repeated(1, n + 2)) == 0);
  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    std::vector<int> a(2 + rng() % 6);
    for (auto& v : a) v = 1 + static_cast<int>(rng() % 6);
    const auto base = codim(4, 7, a);
    std::shuffle(a.begin(), a.end(), rng);
    CHECK(codim(4, 7, a) == base);
  }
}

TEST_CASE("all-ones formula matches the general one") {
  for (int n = 2; n <= 10; n += 2)
    for (int d = 3; d <= 8; ++d)
      CHECK(expected_rank_ci_all_ones(n, d) == expected_rank_ci(n, d, repeated(1, n / 2 + 1)));
  // d = 2: no rows, the general count is 0 while the closed form goes negative.
  for (int n = 2; n <= 10; n += 2) {
    const int h = n / 2;
    CHECK(expected_rank_ci(n, 2, repeated(1, h + 1)) == 0);
    CHECK(expected_rank_ci_all_ones(n, 2) == -(h + 1) * h / 2);
  }
}

TEST_CASE("monotonicity as an entry grows toward d") {
  std::size_t increases = 0, steps = 0, decreases_long = 0;
  std::mt19937_64 rng(8);
  for (int n = 0; n <= 8; n += 2)
    for (int d = 2; d <= 9; ++d)
      for (int t = 0; t < 100; ++t) {
        std::vector<int> a(1 + rng() % static_cast<unsigned>(n + 4));
        for (auto& v : a) v = 1 + static_cast<int>(rng() % static_cast<unsigned>(d));
        const std::size_t k = rng() % a.size();
        if (a[k] >= d) continue;
        auto b = a;
        ++b[k];
        const auto before = codim(n, d, a), after = codim(n, d, b);
        ++steps;
        if (after > before) ++increases;
        if (a.size() <= static_cast<std::size_t>(n + 2))
          CHECK(after >= before);
        else if (after < before)
          ++decreases_long;
      }
  MESSAGE("non-increasing violated on " << increases << " of " << steps << " steps; "
          << decreases_long << " decreases, all with more than n+2 entries");
  CHECK(steps > 1000);
}
