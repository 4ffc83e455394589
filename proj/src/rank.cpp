#include "fhv/rank.hpp"

#include <algorithm>
#include <future>
#include <numeric>

#include "fhv/error.hpp"

namespace fhv {

std::string to_string(RankMethod m) {
  switch (m) {
    case RankMethod::Exact:
      return "exact";
    case RankMethod::Modular:
      return "modular";
    case RankMethod::Auto:
      return "auto";
  }
  return "?";
}

RankMethod rank_method_from_string(const std::string& s) {
  if (s == "exact") return RankMethod::Exact;
  if (s == "modular") return RankMethod::Modular;
  if (s == "auto") return RankMethod::Auto;
  invalid_argument("unknown rank method '" + s + "' (expected exact, modular or auto)");
}

std::string RankResult::method_label() const {
  if (used_exact && !primes.empty()) return "modular+exact";
  if (used_exact) return "exact";
  return "modular";
}

RankResult& RankResult::operator+=(const RankResult& block) {
  if (primes != block.primes || used_exact != block.used_exact)
    invalid_argument("cannot combine rank results computed by different methods");
  rank += block.rank;
  exact_rank += block.exact_rank;
  for (std::size_t k = 0; k < prime_ranks.size(); ++k) prime_ranks[k] += block.prime_ranks[k];
  certified = certified && block.certified;
  return *this;
}

nlohmann::json to_json(const RankResult& r) {
  nlohmann::json j{{"rank", r.rank}, {"method", r.method_label()}, {"certified", r.certified}};
  if (r.used_exact) j["exact_rank"] = r.exact_rank;
  if (!r.primes.empty()) {
    j["primes"] = r.primes;
    j["prime_ranks"] = r.prime_ranks;
  }
  return j;
}

namespace {

// Connected components of the bipartite graph rows <-> columns given by the
// nonzero coefficient pattern.  A matrix is block diagonal over these, so its
// rank is the sum of the component ranks.
struct Component {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
};

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

std::vector<Component> components(const CycMatrix& m) {
  DisjointSets sets(m.rows + m.cols);
  std::vector<char> row_used(m.rows, 0), col_used(m.cols, 0);
  for (std::size_t r = 0; r < m.rows; ++r)
    for (std::size_t c = 0; c < m.cols; ++c)
      if (!m.at(r, c).is_zero()) {
        sets.unite(r, m.rows + c);
        row_used[r] = col_used[c] = 1;
      }
  // Roots are the smallest member, so components come out ordered by their
  // first row.
  std::vector<std::size_t> slot(m.rows + m.cols, SIZE_MAX);
  std::vector<Component> out;
  for (std::size_t r = 0; r < m.rows; ++r) {
    if (!row_used[r]) continue;
    const std::size_t root = sets.find(r);
    if (slot[root] == SIZE_MAX) {
      slot[root] = out.size();
      out.emplace_back();
    }
    out[slot[root]].rows.push_back(r);
  }
  for (std::size_t c = 0; c < m.cols; ++c) {
    if (!col_used[c]) continue;
    out[slot[sets.find(m.rows + c)]].cols.push_back(c);
  }
  return out;
}

// ------------------------------------------------------------------ exact

using IntElt = std::vector<BigInt>;
using SparseRow = std::vector<std::pair<std::uint32_t, IntElt>>;

bool is_zero(const IntElt& x) {
  return std::all_of(x.begin(), x.end(), [](const BigInt& c) { return c == 0; });
}

const IntElt* find_entry(const SparseRow& row, std::uint32_t col) {
  auto it = std::lower_bound(row.begin(), row.end(), col,
                             [](const auto& e, std::uint32_t c) { return e.first < c; });
  return (it != row.end() && it->first == col) ? &it->second : nullptr;
}

// Divides the row by the gcd of all its integer coefficients.
void remove_content(SparseRow& row) {
  BigInt g = 0;
  for (const auto& [c, x] : row)
    for (const auto& v : x) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
      if (g == 1) return;
    }
  if (g == 0 || g == 1) return;
  for (auto& [c, x] : row)
    for (auto& v : x) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

struct ExactPivot {
  std::uint32_t col;
  BigInt value;  // the pivot entry, an integer after normalisation
  SparseRow row;
};

class ExactEliminator {
 public:
  explicit ExactEliminator(const CyclotomicField& field) : field_(field) {}

  // Reduces `v` against the current pivots; appends it as a pivot if nonzero.
  void insert(SparseRow v) {
    for (const auto& p : pivots_) {
      const IntElt* f = find_entry(v, p.col);
      if (!f) continue;
      v = combine(v, p, *f);
      if (v.empty()) return;
    }
    if (v.empty()) return;
    add_pivot(std::move(v));
  }

  std::size_t rank() const { return pivots_.size(); }

 private:
  // value * v - f * p.row, which cancels column p.col.
  SparseRow combine(const SparseRow& v, const ExactPivot& p, const IntElt& f_ref) const {
    const IntElt f = f_ref;
    SparseRow out;
    out.reserve(v.size() + p.row.size());
    auto a = v.begin();
    auto b = p.row.begin();
    while (a != v.end() || b != p.row.end()) {
      IntElt x;
      std::uint32_t col;
      if (b == p.row.end() || (a != v.end() && a->first < b->first)) {
        col = a->first;
        x = a->second;
        for (auto& c : x) c *= p.value;
        ++a;
      } else if (a == v.end() || b->first < a->first) {
        col = b->first;
        x = field_.mul_integral(f, b->second);
        for (auto& c : x) c = -c;
        ++b;
      } else {
        col = a->first;
        x = a->second;
        for (auto& c : x) c *= p.value;
        const IntElt t = field_.mul_integral(f, b->second);
        for (std::size_t k = 0; k < x.size(); ++k) x[k] -= t[k];
        ++a;
        ++b;
      }
      if (!is_zero(x)) out.emplace_back(col, std::move(x));
    }
    remove_content(out);
    return out;
  }

  // Scales the row so that its leading entry becomes a positive integer.
  void add_pivot(SparseRow v) {
    const IntElt lead = v.front().second;
    const bool integral = std::all_of(lead.begin() + 1, lead.end(), [](const BigInt& c) { return c == 0; });
    if (!integral) {
      FieldElt as_rational(lead.begin(), lead.end());
      const FieldElt inv = field_.inverse(as_rational);
      BigInt den = 1;
      for (const auto& q : inv) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
      IntElt cofactor(inv.size());
      for (std::size_t k = 0; k < inv.size(); ++k) cofactor[k] = BigInt(inv[k] * den);
      for (auto& [c, x] : v) x = field_.mul_integral(x, cofactor);
    }
    remove_content(v);
    if (v.front().second[0] < 0)
      for (auto& [c, x] : v)
        for (auto& coeff : x) coeff = -coeff;
    ExactPivot p{v.front().first, v.front().second[0], std::move(v)};
    pivots_.push_back(std::move(p));
  }

  const CyclotomicField& field_;
  std::vector<ExactPivot> pivots_;
};

std::size_t exact_component_rank(const CycMatrix& m, const Component& comp,
                                 const CyclotomicField& field) {
  ExactEliminator elim(field);
  for (std::size_t r : comp.rows) {
    SparseRow row;
    for (std::uint32_t k = 0; k < comp.cols.size(); ++k) {
      const CycElt& e = m.at(r, comp.cols[k]);
      if (e.is_zero()) continue;
      IntElt x = field.reduce_integral(e);
      if (!is_zero(x)) row.emplace_back(k, std::move(x));
    }
    if (row.empty()) continue;
    remove_content(row);
    elim.insert(std::move(row));
    if (elim.rank() == comp.cols.size()) break;
  }
  return elim.rank();
}

// ---------------------------------------------------------------- modular

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p) {
  std::uint64_t result = 1, base = a % p, exp = p - 2;
  while (exp) {
    if (exp & 1) result = result * base % p;
    base = base * base % p;
    exp >>= 1;
  }
  return result;
}

std::size_t modular_component_rank(const CycMatrix& m, const Component& comp, std::uint64_t omega,
                                   std::uint64_t p) {
  const std::size_t width = comp.cols.size();
  std::vector<std::vector<std::uint64_t>> pivots;
  std::vector<std::size_t> pivot_cols;
  std::vector<std::uint64_t> v(width);
  for (std::size_t r : comp.rows) {
    bool any = false;
    for (std::size_t k = 0; k < width; ++k) {
      const CycElt& e = m.at(r, comp.cols[k]);
      v[k] = e.is_zero() ? 0 : to_residue(e, omega, p);
      any = any || v[k] != 0;
    }
    if (!any) continue;
    for (std::size_t q = 0; q < pivots.size(); ++q) {
      const std::uint64_t f = v[pivot_cols[q]];
      if (f == 0) continue;
      const auto& prow = pivots[q];
      for (std::size_t k = pivot_cols[q]; k < width; ++k)
        if (prow[k]) v[k] = (v[k] + (p - f) * prow[k]) % p;
      // Entries left of the pivot column are zero in prow.
    }
    const auto lead = std::find_if(v.begin(), v.end(), [](std::uint64_t x) { return x != 0; });
    if (lead == v.end()) continue;
    const std::uint64_t inv = inverse_mod(*lead, p);
    for (auto& x : v) x = x * inv % p;
    pivot_cols.push_back(static_cast<std::size_t>(lead - v.begin()));
    pivots.push_back(v);
    if (pivots.size() == width) break;
  }
  return pivots.size();
}

}  // namespace

RankResult rank_exact(const CycMatrix& matrix) {
  const CyclotomicField field(matrix.order);
  RankResult out;
  out.used_exact = true;
  for (const auto& comp : components(matrix)) out.exact_rank += exact_component_rank(matrix, comp, field);
  out.rank = out.exact_rank;
  out.certified = true;
  return out;
}

RankResult rank_modular(const CycMatrix& matrix, std::size_t prime_count) {
  if (prime_count < 1) invalid_argument("prime_count must be >= 1");
  const auto comps = components(matrix);
  RankResult out;
  out.primes = admissible_primes(matrix.order, prime_count);
  std::vector<std::future<std::size_t>> futures;
  for (std::uint64_t p : out.primes) {
    futures.push_back(std::async(std::launch::async, [&matrix, &comps, p] {
      const std::uint64_t omega = modular_embedding(matrix.order, p);
      std::size_t r = 0;
      for (const auto& comp : comps) r += modular_component_rank(matrix, comp, omega, p);
      return r;
    }));
  }
  for (auto& f : futures) out.prime_ranks.push_back(f.get());
  out.rank = *std::max_element(out.prime_ranks.begin(), out.prime_ranks.end());
  out.certified = std::all_of(out.prime_ranks.begin(), out.prime_ranks.end(),
                              [&](std::size_t r) { return r == out.rank; });
  return out;
}

RankResult rank_confirmed(const CycMatrix& matrix, std::size_t prime_count) {
  RankResult out = rank_modular(matrix, prime_count);
  const RankResult exact = rank_exact(matrix);
  out.used_exact = true;
  out.exact_rank = exact.exact_rank;
  out.certified = out.certified && exact.exact_rank == out.rank;
  out.rank = exact.exact_rank;
  return out;
}

RankResult rank_auto(const CycMatrix& matrix, std::size_t prime_count, std::size_t column_threshold) {
  if (matrix.cols <= column_threshold) return rank_exact(matrix);
  return rank_confirmed(matrix, prime_count);
}

RankResult compute_rank(const CycMatrix& matrix, RankMethod method, std::size_t prime_count,
                        std::size_t column_threshold) {
  switch (method) {
    case RankMethod::Exact:
      return rank_exact(matrix);
    case RankMethod::Modular:
      return rank_modular(matrix, prime_count);
    case RankMethod::Auto:
      return rank_auto(matrix, prime_count, column_threshold);
  }
  throw Error(ErrorCode::Internal, "unknown rank method");
}

}  // namespace fhv
