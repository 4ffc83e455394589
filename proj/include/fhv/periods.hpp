#pragma once

// Closed-form periods of linear cycles, of the pair P + P-check sharing
// b = identity, and of complete-intersection cycles.

#include <vector>

#include "fhv/combinatorics.hpp"
#include "fhv/cyclotomic.hpp"

namespace fhv {

/// period = scalar * normalized.  `normalized` carries sign(b) (-1)^{n/2}.
struct PeriodValue {
  CycElt normalized;
  BigRational scalar;

  bool is_zero() const { return normalized.is_zero(); }
  friend bool operator==(const PeriodValue&, const PeriodValue&) = default;
};

/// 1 / (d^{n/2+1} (n/2)!).
BigRational linear_period_scalar(const FermatParams& params);

/// Degrees d_1, ..., d_{n/2+1} together with root sets B_k, each B_k stored as
/// exponents e (odd, 1 <= e <= 2d-1) of zeta_{2d}, so that zeta^e is a root of
/// zeta^d + 1 = 0.
struct DegreeVector {
  std::vector<int> degrees;
  std::vector<std::vector<int>> root_exponents;

  /// B_k = {zeta^{1+2a} : a = 0, ..., d_k - 1}.
  static DegreeVector canonical(const FermatParams& params, std::vector<int> degrees);
  /// Explicit root sets; validated (sizes, odd exponents in range, no repeats).
  static DegreeVector with_roots(const FermatParams& params, std::vector<int> degrees,
                                 std::vector<std::vector<int>> roots);

  friend bool operator==(const DegreeVector&, const DegreeVector&) = default;
};

/// Closed form.  Throws if i has the wrong length, a negative
/// entry, or total degree other than params.period_degree().
PeriodValue linear_cycle_period(const FermatParams& params, const LinearCycle& cycle,
                                const ExponentIndex& i);

/// Second cycle of the pair: a = (0^{m+1}, 1, ..., 1).
LinearCycle pair_partner_cycle(const FermatParams& params, int m);

/// Sum of the periods of a = 0 and a = (0^{m+1}, 1^{n/2-m}), both with
/// b = identity.  Zero (not an error) when i lies outside I_{period_degree}.
/// Throws unless -1 <= m <= n/2.
PeriodValue pair_period(const FermatParams& params, int m, const ExponentIndex& i);

/// prod_k sum_{zeta in B_{k+1}} zeta^{i_{2k}+1} on the check set, 0 elsewhere.
CycElt ci_period(const FermatParams& params, const DegreeVector& dv, const ExponentIndex& i);

}  // namespace fhv
