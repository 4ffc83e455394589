#include "fhv/combinatorics.hpp"

#include <algorithm>
#include <numeric>

#include "fhv/error.hpp"

namespace fhv {

FermatParams FermatParams::make(int n, int d) {
  if (n < 2 || n % 2 != 0) invalid_argument("n must be even and >= 2, got " + std::to_string(n));
  if (d < 2) invalid_argument("d must be >= 2, got " + std::to_string(d));
  return FermatParams{n, d};
}

int ExponentIndex::total() const { return std::accumulate(entries_.begin(), entries_.end(), 0); }

ExponentIndex operator+(const ExponentIndex& x, const ExponentIndex& y) {
  if (x.size() != y.size()) invalid_argument("exponent index length mismatch");
  std::vector<int> out(x.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = x.entries_[k] + y.entries_[k];
  return ExponentIndex(std::move(out));
}

std::string ExponentIndex::to_string() const {
  std::string s = "(";
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    if (k) s += ',';
    s += std::to_string(entries_[k]);
  }
  return s + ")";
}

namespace {

void enumerate_rec(std::vector<int>& cur, std::size_t pos, int remaining, int cap,
                   std::vector<std::vector<int>>& out) {
  const int slots_left = static_cast<int>(cur.size() - pos - 1);
  if (pos + 1 == cur.size()) {
    if (remaining <= cap) {
      cur[pos] = remaining;
      out.push_back(cur);
    }
    return;
  }
  const int lo = std::max(0, remaining - slots_left * cap);
  const int hi = std::min(cap, remaining);
  for (int v = lo; v <= hi; ++v) {
    cur[pos] = v;
    enumerate_rec(cur, pos + 1, remaining - v, cap, out);
  }
}

}  // namespace

std::vector<std::vector<int>> enumerate_compositions(std::size_t parts, int cap, int total) {
  std::vector<std::vector<int>> out;
  if (parts == 0 || cap < 0 || total < 0 || total > static_cast<int>(parts) * cap) return out;
  std::vector<int> cur(parts, 0);
  enumerate_rec(cur, 0, total, cap, out);
  return out;
}

std::vector<ExponentIndex> enumerate_index_set(const FermatParams& params, int total) {
  auto tuples = enumerate_compositions(static_cast<std::size_t>(params.variables()), params.d - 2, total);
  std::vector<ExponentIndex> out;
  out.reserve(tuples.size());
  for (auto& t : tuples) out.emplace_back(std::move(t));
  return out;
}

BigInt binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

BigInt index_set_size(const FermatParams& params, int total) {
  // Number of solutions of i_0 + ... + i_{n+1} = N with 0 <= i_e <= d-2:
  // sum_k (-1)^k C(n+2, k) C(N - k(d-1) + n+1, n+1).
  if (total < 0) return 0;
  const long vars = params.variables();
  BigInt count = 0;
  for (long k = 0; k <= vars; ++k) {
    const long rest = total - k * (params.d - 1);
    if (rest < 0) break;
    const BigInt term = binomial(vars, k) * binomial(rest + vars - 1, vars - 1);
    if (k % 2 == 0)
      count += term;
    else
      count -= term;
  }
  return count;
}

bool in_check_set(const FermatParams& params, const ExponentIndex& i) {
  if (i.size() != static_cast<std::size_t>(params.variables()))
    invalid_argument("exponent index must have n+2 entries");
  const auto entries = i.entries();
  if (std::any_of(entries.begin(), entries.end(), [&](int v) { return v < 0 || v > params.d - 2; }))
    return false;
  if (i.total() != params.period_degree()) return false;
  for (std::size_t l = 1; l <= i.size() / 2; ++l)
    if (i.pair_sum(l) != params.d - 2) return false;
  return true;
}

int permutation_sign(std::span<const int> b) {
  const std::size_t n = b.size();
  std::vector<char> seen(n, 0);
  for (int v : b) {
    if (v < 0 || static_cast<std::size_t>(v) >= n || seen[static_cast<std::size_t>(v)])
      invalid_argument("not a permutation of {0,...," + std::to_string(n - 1) + "}");
    seen[static_cast<std::size_t>(v)] = 1;
  }
  // Parity from the cycle decomposition: a cycle of length L contributes L-1
  // transpositions.
  std::fill(seen.begin(), seen.end(), 0);
  std::size_t transpositions = 0;
  for (std::size_t start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::size_t len = 0;
    for (std::size_t k = start; !seen[k]; k = static_cast<std::size_t>(b[k])) {
      seen[k] = 1;
      ++len;
    }
    transpositions += len - 1;
  }
  return transpositions % 2 == 0 ? 1 : -1;
}

LinearCycle LinearCycle::make(const FermatParams& params, std::vector<int> a, std::vector<int> b) {
  if (a.size() != static_cast<std::size_t>(params.half() + 1))
    invalid_argument("linear cycle needs n/2+1 entries in a");
  if (b.size() != static_cast<std::size_t>(params.variables()))
    invalid_argument("linear cycle needs n+2 entries in b");
  for (int v : a)
    if (v < 0 || v > params.d - 1) invalid_argument("entries of a must lie in [0, d-1]");
  const int sign = permutation_sign(b);
  return LinearCycle{std::move(a), std::move(b), sign};
}

bool LinearCycle::is_canonical() const {
  std::vector<char> used(b.size(), 0);
  for (std::size_t k = 0; k < b.size(); ++k) {
    if (k % 2 == 0) {
      const auto first_free = std::find(used.begin(), used.end(), 0) - used.begin();
      if (b[k] != first_free) return false;
    }
    used[static_cast<std::size_t>(b[k])] = 1;
  }
  return true;
}

namespace {

void canonical_perms_rec(std::vector<int>& b, std::vector<char>& used, std::size_t pos,
                         std::vector<std::vector<int>>& out) {
  if (pos == b.size()) {
    out.push_back(b);
    return;
  }
  if (pos % 2 == 0) {
    const auto v = static_cast<std::size_t>(std::find(used.begin(), used.end(), 0) - used.begin());
    b[pos] = static_cast<int>(v);
    used[v] = 1;
    canonical_perms_rec(b, used, pos + 1, out);
    used[v] = 0;
    return;
  }
  for (std::size_t v = 0; v < used.size(); ++v) {
    if (used[v]) continue;
    b[pos] = static_cast<int>(v);
    used[v] = 1;
    canonical_perms_rec(b, used, pos + 1, out);
    used[v] = 0;
  }
}

}  // namespace

std::vector<LinearCycle> enumerate_linear_cycles(const FermatParams& params) {
  const auto vars = static_cast<std::size_t>(params.variables());
  const auto pairs = static_cast<std::size_t>(params.half() + 1);
  std::vector<std::vector<int>> perms;
  std::vector<int> b(vars, 0);
  std::vector<char> used(vars, 0);
  canonical_perms_rec(b, used, 0, perms);

  std::vector<LinearCycle> out;
  std::vector<int> a(pairs, 0);
  for (const auto& perm : perms) {
    const int sign = permutation_sign(perm);
    std::fill(a.begin(), a.end(), 0);
    while (true) {
      out.push_back(LinearCycle{a, perm, sign});
      std::size_t k = pairs;
      while (k > 0 && a[k - 1] == params.d - 1) a[--k] = 0;
      if (k == 0) break;
      ++a[k - 1];
    }
  }
  return out;
}

BigInt linear_cycle_count(const FermatParams& params) {
  BigInt count = 1;
  for (int k = 1; k <= params.n + 1; k += 2) count *= k;
  BigInt power;
  mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(params.d),
                static_cast<unsigned long>(params.half() + 1));
  return count * power;
}

}  // namespace fhv
