#include <doctest.h>

#include <random>
#include <set>

#include "fhv/combinatorics.hpp"
#include "fhv/error.hpp"
#include "oracles.hpp"

using namespace fhv;

namespace {

std::vector<std::vector<int>> as_vectors(const std::vector<ExponentIndex>& v) {
  std::vector<std::vector<int>> out;
  for (const auto& i : v) out.emplace_back(i.entries().begin(), i.entries().end());
  return out;
}

}  // namespace

TEST_CASE("parameters") {
  CHECK_THROWS_AS(FermatParams::make(3, 4), Error);
  CHECK_THROWS_AS(FermatParams::make(0, 4), Error);
  CHECK_THROWS_AS(FermatParams::make(2, 1), Error);
  const auto p = FermatParams::make(4, 5);
  CHECK(p.variables() == 6);
  CHECK(p.order() == 10);
  CHECK(p.period_degree() == 9);
  CHECK(p.row_degree() == 4);
}

TEST_CASE("index set examples") {
  const auto p23 = FermatParams::make(2, 3);
  CHECK(as_vectors(enumerate_index_set(p23, 3)) ==
        std::vector<std::vector<int>>{{0, 1, 1, 1}, {1, 0, 1, 1}, {1, 1, 0, 1}, {1, 1, 1, 0}});
  CHECK(enumerate_index_set(p23, -1).empty());
  CHECK(index_set_size(p23, -1) == 0);
  CHECK(enumerate_index_set(FermatParams::make(2, 5), 5).size() == 40);
  CHECK(index_set_size(FermatParams::make(6, 4), 4) == 266);
  CHECK(index_set_size(FermatParams::make(10, 3), 3) == 220);
  CHECK(index_set_size(FermatParams::make(10, 6), 18) == 9551894);
}

TEST_CASE("index sets match brute force and inclusion-exclusion") {
  int cases = 0;
  for (int n : {2, 4, 6})
    for (int d = 2; d <= 5; ++d) {
      const auto p = FermatParams::make(n, d);
      const int top = (n + 2) * (d - 2);
      for (int N = -1; N <= top + 1; ++N) {
        if (n == 6 && d == 5 && N % 3) continue;
        const auto got = as_vectors(enumerate_index_set(p, N));
        CHECK(got == oracle::brute_index_set(n + 2, d - 2, N));
        CHECK(index_set_size(p, N) == oracle::index_set_count(n, d, N));
        CHECK(index_set_size(p, N) == got.size());
        CHECK(std::is_sorted(got.begin(), got.end()));
        if (N >= 0 && N <= top) CHECK(index_set_size(p, N) == index_set_size(p, top - N));
        ++cases;
      }
    }
  CHECK(cases >= 50);
}

TEST_CASE("check set") {
  const auto p23 = FermatParams::make(2, 3);
  CHECK(in_check_set(p23, ExponentIndex{1, 0, 1, 0}));
  CHECK_FALSE(in_check_set(p23, ExponentIndex{1, 1, 0, 0}));
  CHECK(in_check_set(FermatParams::make(2, 5), ExponentIndex{3, 0, 0, 3}));
  CHECK_THROWS_AS(in_check_set(FermatParams::make(2, 5), ExponentIndex{3, 0, 0}), Error);
}

TEST_CASE("permutation sign") {
  CHECK(permutation_sign(std::vector<int>{0, 1, 2, 3}) == 1);
  CHECK(permutation_sign(std::vector<int>{1, 0, 2, 3}) == -1);
  CHECK(permutation_sign(std::vector<int>{1, 2, 0, 3}) == 1);
  CHECK_THROWS_AS(permutation_sign(std::vector<int>{0, 0, 2, 3}), Error);
  CHECK_THROWS_AS(permutation_sign(std::vector<int>{0, 4, 2, 3}), Error);
  std::mt19937_64 rng(1);
  for (int t = 0; t < 200; ++t) {
    std::vector<int> perm(8);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    CHECK(permutation_sign(perm) == oracle::parity(perm));
  }
}

TEST_CASE("linear cycles") {
  CHECK(linear_cycle_count(FermatParams::make(2, 3)) == 27);
  CHECK(linear_cycle_count(FermatParams::make(2, 4)) == 48);
  CHECK(linear_cycle_count(FermatParams::make(4, 3)) == 405);
  CHECK_THROWS_AS(LinearCycle::make(FermatParams::make(2, 3), {0, 3}, {0, 1, 2, 3}), Error);
  CHECK_THROWS_AS(LinearCycle::make(FermatParams::make(2, 3), {0}, {0, 1, 2, 3}), Error);
  CHECK(LinearCycle::make(FermatParams::make(2, 3), {0, 1}, {0, 2, 1, 3}).sign == -1);

  for (int n : {2, 4, 6})
    for (int d = 2; d <= 5; ++d) {
      const auto p = FermatParams::make(n, d);
      const auto cycles = enumerate_linear_cycles(p);
      CHECK(cycles.size() == linear_cycle_count(p));
      std::set<std::pair<std::vector<int>, std::vector<int>>> distinct;
      for (const auto& c : cycles) {
        CHECK(c.is_canonical());
        CHECK(c.sign == oracle::parity(c.b));
        distinct.insert({c.a, c.b});
      }
      CHECK(distinct.size() == cycles.size());
      if (n <= 4) CHECK(oracle::distinct_linear_cycles(n, d) == cycles.size());
    }
}

TEST_CASE("binomial") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(5, 7) == 0);
  CHECK(binomial(5, -1) == 0);
  CHECK(binomial(60, 30) == oracle::binom(60, 30));
}
