#pragma once

// The matrix [p_{i+j}]: rows indexed by I_{(n/2)d-n-2}, columns by I_d, both
// in lexicographic order.

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "fhv/combinatorics.hpp"
#include "fhv/cyclotomic.hpp"
#include "fhv/periods.hpp"

namespace fhv {

/// Which period function fills the matrix.
struct Provenance {
  enum class Kind { LinearPair, CompleteIntersection, SingleCycle };

  Kind kind = Kind::LinearPair;
  int m = -1;             // LinearPair
  DegreeVector degrees;   // CompleteIntersection
  LinearCycle cycle;      // SingleCycle

  static Provenance linear_pair(int m);
  static Provenance complete_intersection(DegreeVector dv);
  static Provenance single_cycle(LinearCycle cycle);

  /// Throws if the parameters do not fit (n, d).
  void validate(const FermatParams& params) const;

  /// Positions of the variable pairs whose sums govern vanishing: b-pairs for
  /// a single cycle, (0,1), (2,3), ... otherwise.
  std::vector<std::pair<int, int>> pairs(const FermatParams& params) const;

  /// Normalized period at exponent index i (zero outside the support).
  CycElt period(const FermatParams& params, const ExponentIndex& i) const;

  /// Global scalar that multiplies every normalized entry.
  BigRational scalar(const FermatParams& params) const;

  std::string label() const;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

nlohmann::json to_json(const Provenance& p);
Provenance provenance_from_json(const FermatParams& params, const nlohmann::json& j);

/// Dense row-major matrix over Z[zeta_order].
struct CycMatrix {
  int order = 2;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<CycElt> entries;

  CycMatrix() = default;
  CycMatrix(int order, std::size_t rows, std::size_t cols);

  CycElt& at(std::size_t r, std::size_t c) { return entries[r * cols + c]; }
  const CycElt& at(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }

  friend bool operator==(const CycMatrix&, const CycMatrix&) = default;
};

struct PeriodMatrix {
  FermatParams params;
  Provenance provenance;
  std::vector<ExponentIndex> row_index;
  std::vector<ExponentIndex> col_index;
  CycMatrix entries;
  BigRational scalar;

  friend bool operator==(const PeriodMatrix&, const PeriodMatrix&) = default;
};

/// Materializes every entry.  Rows are split across `jobs` threads; the result
/// does not depend on `jobs`.
PeriodMatrix build_matrix(const FermatParams& params, const Provenance& provenance,
                          unsigned jobs = 1);

/// One diagonal block of the matrix after permuting rows and columns by the
/// pair-sum profile.  Rows whose profile has a pair sum above d-2 vanish and
/// belong to no block; every entry outside the blocks is zero.
struct MatrixBlock {
  std::vector<int> profile;  // pair sums of the block's rows
  std::vector<ExponentIndex> row_index;
  std::vector<ExponentIndex> col_index;
  CycMatrix entries;
};

/// Streams the nonzero diagonal blocks in lexicographic profile order without
/// materializing the full matrix.
void for_each_block(const FermatParams& params, const Provenance& provenance,
                    const std::function<void(const MatrixBlock&)>& visit);

/// Shape of the full matrix, without building it.
std::pair<BigInt, BigInt> matrix_shape(const FermatParams& params);

enum class MatrixFormat { Json, Tsv };

std::string dump(const PeriodMatrix& matrix, MatrixFormat format);
/// Throws Error(Parse) with a location on malformed input.
PeriodMatrix load(std::string_view text, MatrixFormat format);

/// Result of checking p_{i+.} = zeta^{i_0+i_2+...+i_n} p_{phi(j)+.} for every
/// non-vanishing row i of the all-ones complete-intersection matrix.
struct RowGenerationReport {
  std::size_t rows_checked = 0;
  std::size_t entries_checked = 0;
  std::size_t mismatches = 0;
  std::size_t basis_rows = 0;  // |A|: rows with all even entries zero

  bool holds() const { return mismatches == 0; }
};

/// Entrywise over all columns of a materialized matrix.
RowGenerationReport check_row_generation(const PeriodMatrix& matrix);

/// Adds the checks for one row set (a whole matrix or one block) to `report`.
/// Rows whose generator is not among `rows` count every column as a mismatch.
void check_row_generation_rows(const FermatParams& params, const std::vector<ExponentIndex>& rows,
                               const CycMatrix& entries, RowGenerationReport& report);

/// Blockwise: within each block's columns (outside them both rows vanish, as
/// i and phi(j) share a pair-sum profile).
RowGenerationReport check_row_generation_blocks(const FermatParams& params,
                                                const Provenance& provenance);

}  // namespace fhv
