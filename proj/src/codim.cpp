#include "fhv/codim.hpp"

#include <string>

#include "fhv/combinatorics.hpp"
#include "fhv/error.hpp"

namespace fhv {

namespace {

void check_nd(int n, int d) { FermatParams::make(n, d); }

std::int64_t to_int64(const BigInt& v) {
  if (!v.fits_slong_p()) throw Error(ErrorCode::Internal, "value does not fit in 64 bits: " + v.get_str());
  return v.get_si();
}

}  // namespace

std::int64_t codim(int n, int d, std::span<const int> a) {
  if (n < 0 || n % 2 != 0 || d < 1) invalid_argument("codim needs even n >= 0 and d >= 1");
  if (a.empty()) invalid_argument("codim needs a nonempty multiset");
  if (a.size() > 30) invalid_argument("codim multiset too large");
  for (int v : a)
    if (v < 1) invalid_argument("codim entries must be positive");
  BigInt c = binomial(n + 1 + d, n + 1);
  const std::uint32_t subsets = std::uint32_t{1} << a.size();
  for (std::uint32_t mask = 1; mask < subsets; ++mask) {
    long sum = 0;
    int k = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (mask >> i & 1u) {
        sum += a[i];
        ++k;
      }
    if (sum > d) continue;
    const BigInt term = binomial(n + 1 + d - sum, n + 1);
    // Subtracting (-1)^{k-1} term.
    if (k % 2 == 1)
      c -= term;
    else
      c += term;
  }
  return to_int64(c);
}

std::vector<int> repeated(int value, int count) {
  return std::vector<int>(static_cast<std::size_t>(std::max(count, 0)), value);
}

std::int64_t expected_rank_linear_pair(int n, int d, int m) {
  check_nd(n, d);
  const int h = n / 2;
  if (m < -1 || m > h) invalid_argument("m must satisfy -1 <= m <= n/2, got " + std::to_string(m));
  auto both = repeated(1, h + 1);
  const auto top = repeated(d - 1, h + 1);
  both.insert(both.end(), top.begin(), top.end());
  auto inter = repeated(1, n - m + 1);
  const auto inter_top = repeated(d - 1, m + 1);
  inter.insert(inter.end(), inter_top.begin(), inter_top.end());
  return 2 * codim(n, d, both) - codim(n, d, inter);
}

std::int64_t expected_rank_ci(int n, int d, std::span<const int> degrees) {
  check_nd(n, d);
  if (degrees.size() != static_cast<std::size_t>(n / 2 + 1))
    invalid_argument("expected n/2+1 degrees, got " + std::to_string(degrees.size()));
  std::vector<int> a(degrees.begin(), degrees.end());
  for (int dk : degrees) {
    if (dk < 1 || dk >= d) invalid_argument("degree " + std::to_string(dk) + " outside [1, d-1]");
    a.push_back(d - dk);
  }
  return codim(n, d, a);
}

std::int64_t expected_rank_ci_all_ones(int n, int d) {
  check_nd(n, d);
  const int h = n / 2;
  return to_int64(binomial(h + d, d)) - static_cast<std::int64_t>(h + 1) * (h + 1);
}

}  // namespace fhv
