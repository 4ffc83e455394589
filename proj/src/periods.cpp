#include "fhv/periods.hpp"

#include <algorithm>
#include <set>

#include "fhv/error.hpp"

namespace fhv {

BigRational linear_period_scalar(const FermatParams& params) {
  BigInt den;
  mpz_ui_pow_ui(den.get_mpz_t(), static_cast<unsigned long>(params.d),
                static_cast<unsigned long>(params.half() + 1));
  BigInt fact;
  mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(params.half()));
  BigRational s(BigInt(1), den * fact);
  s.canonicalize();
  return s;
}

namespace {

void check_degrees(const FermatParams& params, const std::vector<int>& degrees) {
  if (degrees.size() != static_cast<std::size_t>(params.half() + 1))
    invalid_argument("degree vector needs n/2+1 entries, got " + std::to_string(degrees.size()));
  for (int dk : degrees)
    if (dk < 1 || dk >= params.d)
      invalid_argument("degree " + std::to_string(dk) + " outside [1, d-1]");
}

}  // namespace

DegreeVector DegreeVector::canonical(const FermatParams& params, std::vector<int> degrees) {
  check_degrees(params, degrees);
  std::vector<std::vector<int>> roots;
  roots.reserve(degrees.size());
  for (int dk : degrees) {
    std::vector<int> b;
    for (int a = 0; a < dk; ++a) b.push_back(1 + 2 * a);
    roots.push_back(std::move(b));
  }
  return DegreeVector{std::move(degrees), std::move(roots)};
}

DegreeVector DegreeVector::with_roots(const FermatParams& params, std::vector<int> degrees,
                                      std::vector<std::vector<int>> roots) {
  check_degrees(params, degrees);
  if (roots.size() != degrees.size()) invalid_argument("one root set per degree required");
  for (std::size_t k = 0; k < roots.size(); ++k) {
    if (roots[k].size() != static_cast<std::size_t>(degrees[k]))
      invalid_argument("root set " + std::to_string(k + 1) + " must have d_k elements");
    std::set<int> distinct(roots[k].begin(), roots[k].end());
    if (distinct.size() != roots[k].size()) invalid_argument("repeated root in a root set");
    for (int e : roots[k])
      if (e < 1 || e > 2 * params.d - 1 || e % 2 == 0)
        invalid_argument("root exponent " + std::to_string(e) +
                         " is not an odd number in [1, 2d-1]");
  }
  return DegreeVector{std::move(degrees), std::move(roots)};
}

namespace {

bool linear_cycle_vanishes(const FermatParams& params, const LinearCycle& cycle,
                           const ExponentIndex& i) {
  for (int e = 1; e <= params.half() + 1; ++e) {
    const auto lo = static_cast<std::size_t>(cycle.b[static_cast<std::size_t>(2 * e - 2)]);
    const auto hi = static_cast<std::size_t>(cycle.b[static_cast<std::size_t>(2 * e - 1)]);
    if (i[lo] + i[hi] != params.d - 2) return true;
  }
  return false;
}

// Normalized value assuming the non-vanishing branch.
CycElt linear_cycle_value(const FermatParams& params, const LinearCycle& cycle,
                          const ExponentIndex& i) {
  long long exponent = 0;
  for (int e = 0; e <= params.half(); ++e) {
    const auto pos = static_cast<std::size_t>(cycle.b[static_cast<std::size_t>(2 * e)]);
    exponent += static_cast<long long>(i[pos] + 1) * (1 + 2 * cycle.a[static_cast<std::size_t>(e)]);
  }
  CycElt value = root_power(params.order(), exponent);
  const int sign = cycle.sign * (params.half() % 2 == 0 ? 1 : -1);
  return sign > 0 ? value : -value;
}

}  // namespace

PeriodValue linear_cycle_period(const FermatParams& params, const LinearCycle& cycle,
                                const ExponentIndex& i) {
  if (i.size() != static_cast<std::size_t>(params.variables()))
    invalid_argument("exponent index must have n+2 entries");
  if (cycle.a.size() != static_cast<std::size_t>(params.half() + 1) ||
      cycle.b.size() != static_cast<std::size_t>(params.variables()))
    invalid_argument("linear cycle does not match (n, d)");
  const auto entries = i.entries();
  if (std::any_of(entries.begin(), entries.end(), [](int v) { return v < 0; }))
    invalid_argument("exponent index has a negative entry");
  if (i.total() != params.period_degree())
    invalid_argument("exponent index " + i.to_string() + " has total degree " +
                     std::to_string(i.total()) + ", expected " +
                     std::to_string(params.period_degree()));
  PeriodValue out{CycElt::zero(params.order()), linear_period_scalar(params)};
  if (!linear_cycle_vanishes(params, cycle, i)) out.normalized = linear_cycle_value(params, cycle, i);
  return out;
}

LinearCycle pair_partner_cycle(const FermatParams& params, int m) {
  if (m < -1 || m > params.half())
    invalid_argument("m must satisfy -1 <= m <= n/2, got " + std::to_string(m));
  std::vector<int> a(static_cast<std::size_t>(params.half() + 1), 1);
  std::fill(a.begin(), a.begin() + (m + 1), 0);
  std::vector<int> b(static_cast<std::size_t>(params.variables()));
  for (std::size_t k = 0; k < b.size(); ++k) b[k] = static_cast<int>(k);
  return LinearCycle{std::move(a), std::move(b), 1};
}

PeriodValue pair_period(const FermatParams& params, int m, const ExponentIndex& i) {
  const LinearCycle partner = pair_partner_cycle(params, m);
  if (i.size() != static_cast<std::size_t>(params.variables()))
    invalid_argument("exponent index must have n+2 entries");
  PeriodValue out{CycElt::zero(params.order()), linear_period_scalar(params)};
  const auto entries = i.entries();
  if (i.total() != params.period_degree() ||
      std::any_of(entries.begin(), entries.end(), [&](int v) { return v < 0 || v > params.d - 2; }))
    return out;
  // Both cycles share b = identity, hence the same vanishing condition.
  if (linear_cycle_vanishes(params, partner, i)) return out;
  LinearCycle base = partner;
  std::fill(base.a.begin(), base.a.end(), 0);
  out.normalized = linear_cycle_value(params, base, i) + linear_cycle_value(params, partner, i);
  return out;
}

CycElt ci_period(const FermatParams& params, const DegreeVector& dv, const ExponentIndex& i) {
  const int order = params.order();
  if (!in_check_set(params, i)) return CycElt::zero(order);
  // Singleton root sets only shift the exponent; defer building a CycElt
  // until a genuine sum appears.
  long long exponent = 0;
  CycElt product;
  bool have_product = false;
  for (std::size_t k = 0; k < dv.root_exponents.size(); ++k) {
    const int power = i[2 * k] + 1;
    const auto& roots = dv.root_exponents[k];
    if (roots.size() == 1) {
      exponent += static_cast<long long>(roots.front()) * power;
      continue;
    }
    CycElt factor(order);
    for (int e : roots) factor += root_power(order, static_cast<long long>(e) * power);
    if (!have_product) {
      product = std::move(factor);
      have_product = true;
    } else {
      product *= factor;
    }
  }
  if (!have_product) return root_power(order, exponent);
  return product.shifted(exponent);
}

}  // namespace fhv
