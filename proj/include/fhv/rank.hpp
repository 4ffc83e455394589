#pragma once

// Rank of a matrix over Q(zeta_{2d}), exactly or through reductions modulo
// primes p = 1 (mod 2d).

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "fhv/period_matrix.hpp"

namespace fhv {

enum class RankMethod { Exact, Modular, Auto };

std::string to_string(RankMethod m);
RankMethod rank_method_from_string(const std::string& s);

struct RankResult {
  std::size_t rank = 0;
  // Exact and/or modular evidence that produced `rank`.
  bool used_exact = false;
  std::size_t exact_rank = 0;
  std::vector<std::uint64_t> primes;
  std::vector<std::size_t> prime_ranks;
  bool certified = false;

  std::string method_label() const;

  /// Sum of ranks of diagonal blocks.  Both results must use the same primes.
  RankResult& operator+=(const RankResult& block);
};

nlohmann::json to_json(const RankResult& r);

/// Rank over Q(zeta_order).  Entries are reduced modulo Phi_order and the
/// matrix is split into connected components of its nonzero pattern; each
/// component is eliminated row by row with an integral pivot.
RankResult rank_exact(const CycMatrix& matrix);

/// Ranks over F_p for the first `prime_count` admissible primes; reports the
/// maximum, certified iff all agree.  Distinct primes run concurrently.
RankResult rank_modular(const CycMatrix& matrix, std::size_t prime_count);

/// Modular with `prime_count` primes, then an exact run; the exact rank is
/// reported, certified iff every prime agrees with it.
RankResult rank_confirmed(const CycMatrix& matrix, std::size_t prime_count);

/// Exact for at most `column_threshold` columns; otherwise modular with
/// `prime_count` primes followed by an exact confirmation, certified iff the
/// two agree.
RankResult rank_auto(const CycMatrix& matrix, std::size_t prime_count,
                     std::size_t column_threshold = 500);

RankResult compute_rank(const CycMatrix& matrix, RankMethod method, std::size_t prime_count,
                        std::size_t column_threshold = 500);

}  // namespace fhv
