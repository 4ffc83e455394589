#pragma once

// The inclusion-exclusion number C_a and the expected ranks built from it.

#include <cstdint>
#include <span>
#include <vector>

namespace fhv {

/// C(n+1+d, n+1) - sum_{k>=1} (-1)^{k-1} sum_{|S|=k, sum_S a <= d} C(n+1+d-sum_S a, n+1),
/// S ranging over index subsets of the multiset `a` (repeats counted by position).
std::int64_t codim(int n, int d, std::span<const int> a);

/// Multiset value^count.
std::vector<int> repeated(int value, int count);

/// 2 C_{1^{n/2+1},(d-1)^{n/2+1}} - C_{1^{n-m+1},(d-1)^{m+1}}.
std::int64_t expected_rank_linear_pair(int n, int d, int m);

/// C_{d_1,...,d_{n/2+1}, d-d_1, ..., d-d_{n/2+1}}.
std::int64_t expected_rank_ci(int n, int d, std::span<const int> degrees);

/// C(n/2+d, d) - (n/2+1)^2.
std::int64_t expected_rank_ci_all_ones(int n, int d);

}  // namespace fhv
