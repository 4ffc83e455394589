#pragma once

// Exponent index sets and linear cycles on the Fermat variety
// x_0^d + ... + x_{n+1}^d = 0.

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "fhv/cyclotomic.hpp"

namespace fhv {

struct FermatParams {
  int n = 2;  // even dimension
  int d = 3;  // degree

  /// Validating constructor: n even and >= 2, d >= 2.
  static FermatParams make(int n, int d);

  int half() const noexcept { return n / 2; }
  int variables() const noexcept { return n + 2; }
  int order() const noexcept { return 2 * d; }
  /// Total degree (n/2 + 1) d - n - 2 at which periods live.
  int period_degree() const noexcept { return (half() + 1) * d - n - 2; }
  /// Total degree (n/2) d - n - 2 of the row index set.
  int row_degree() const noexcept { return half() * d - n - 2; }

  friend bool operator==(const FermatParams&, const FermatParams&) = default;
};

/// Exponent tuple (i_0, ..., i_{n+1}).
class ExponentIndex {
 public:
  ExponentIndex() = default;
  explicit ExponentIndex(std::vector<int> entries) : entries_(std::move(entries)) {}
  ExponentIndex(std::initializer_list<int> entries) : entries_(entries) {}

  std::size_t size() const noexcept { return entries_.size(); }
  int operator[](std::size_t k) const { return entries_[k]; }
  int& operator[](std::size_t k) { return entries_[k]; }
  std::span<const int> entries() const noexcept { return entries_; }
  int total() const;

  /// Sum i_{2l-2} + i_{2l-1} of the l-th consecutive pair, l = 1, ..., size/2.
  int pair_sum(std::size_t l) const { return entries_[2 * l - 2] + entries_[2 * l - 1]; }

  friend ExponentIndex operator+(const ExponentIndex& x, const ExponentIndex& y);
  friend auto operator<=>(const ExponentIndex&, const ExponentIndex&) = default;
  friend bool operator==(const ExponentIndex&, const ExponentIndex&) = default;

  std::string to_string() const;

 private:
  std::vector<int> entries_;
};

/// All `parts`-tuples with entries in [0, cap] summing to `total`, in
/// lexicographic order.
std::vector<std::vector<int>> enumerate_compositions(std::size_t parts, int cap, int total);

/// All tuples with 0 <= i_e <= d-2 summing to `total`, lexicographically
/// ordered.  Empty if total lies outside [0, (n+2)(d-2)].
std::vector<ExponentIndex> enumerate_index_set(const FermatParams& params, int total);

/// |I_total| by inclusion-exclusion, independent of the enumerator.
BigInt index_set_size(const FermatParams& params, int total);

/// Membership in the check set: i in I_{period_degree} and every consecutive
/// pair sums to d - 2.
bool in_check_set(const FermatParams& params, const ExponentIndex& i);

/// Validates that `b` is a permutation of {0, ..., size-1} and returns its
/// parity (+1 even, -1 odd).
int permutation_sign(std::span<const int> b);

/// The linear cycle x_{b_{2e}} = zeta_{2d}^{1 + 2 a_e} x_{b_{2e+1}},
/// e = 0, ..., n/2.  `a` holds a_1, a_3, ..., a_{n+1} in order.
struct LinearCycle {
  std::vector<int> a;
  std::vector<int> b;
  int sign = 1;

  /// Validates ranges and the permutation, computes the sign.
  static LinearCycle make(const FermatParams& params, std::vector<int> a, std::vector<int> b);

  /// b_0 = 0 and every even position holds the smallest index not used before.
  bool is_canonical() const;

  friend bool operator==(const LinearCycle&, const LinearCycle&) = default;
};

std::vector<LinearCycle> enumerate_linear_cycles(const FermatParams& params);

/// 1 * 3 * ... * (n+1) * d^{n/2 + 1}.
BigInt linear_cycle_count(const FermatParams& params);

BigInt binomial(long n, long k);

}  // namespace fhv
