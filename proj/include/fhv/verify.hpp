#pragma once

// Verification suites: each case builds a period matrix, computes its rank and
// compares it with the closed-form expectation.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fhv/period_matrix.hpp"
#include "fhv/rank.hpp"

namespace fhv {

enum class SuiteKind { Theorem2, Conjecture1, Prop3 };
enum class CaseStatus { Pass, Fail, Error };

std::string to_string(SuiteKind k);
std::string to_string(CaseStatus s);

struct CaseSpec {
  SuiteKind kind = SuiteKind::Theorem2;
  int n = 2;
  int d = 5;
  int m = -1;                // linear pair
  std::vector<int> degrees;  // complete intersection

  std::string label() const;
};

struct SuiteConfig {
  RankMethod method = RankMethod::Auto;
  std::size_t prime_count = 3;
  unsigned jobs = 1;
  std::optional<int> n_filter;
  std::optional<int> d_filter;
  /// Complete intersections: every degree multiset for every (n, d), not only n = 2, d <= 8.
  bool exhaustive = false;
  /// Multisets sampled per (n, d) when not exhaustive (at least 3).
  std::size_t samples_per_case = 4;
  /// Compare one alternative root choice per (n, d).
  bool check_root_independence = true;
  /// All-ones grid: largest degree.
  int prop3_max_d = 6;
  /// Matrices with more entries than this are processed block by block.
  std::size_t dense_entry_limit = 4'000'000;
  std::size_t column_threshold = 500;
  /// Seed for the alternative root sets; a fixed default keeps runs reproducible.
  std::uint64_t seed = 20170321;
};

struct VerificationCase {
  CaseSpec spec;
  std::int64_t expected = 0;
  RankResult computed;
  CaseStatus status = CaseStatus::Error;
  double wall_time = 0.0;
  std::string rows;
  std::string cols;
  std::string storage;  // "dense" or "blocked"
  std::string detail;
  std::optional<RowGenerationReport> row_generation;
};

/// A logged observation that is not part of the pass/fail verdict.
struct PropertyCheck {
  std::string name;
  std::string case_label;
  bool holds = false;
  std::string detail;
};

struct Report {
  std::string suite;
  std::vector<VerificationCase> cases;
  std::vector<PropertyCheck> properties;
  double wall_time = 0.0;

  std::size_t passed() const;
  std::size_t failed() const;
  std::size_t errors() const;
  /// 0 iff every executed case passed, 1 otherwise.
  int exit_code() const;

  nlohmann::json to_json() const;
  std::string to_text() const;
  std::string to_tsv() const;
};

std::vector<CaseSpec> theorem2_cases();
std::vector<CaseSpec> conjecture1_cases(const SuiteConfig& config);
std::vector<CaseSpec> prop3_cases(const SuiteConfig& config);

/// All nondecreasing (n/2+1)-tuples over [1, d-1], lexicographic.
std::vector<std::vector<int>> degree_multisets(int n, int d);

/// Rank of the matrix for (params, provenance) under the config's method and
/// storage policy.  Fills rows/cols/storage of `out`.
RankResult case_rank(const FermatParams& params, const Provenance& provenance,
                     const SuiteConfig& config, VerificationCase& out);

VerificationCase run_case(const CaseSpec& spec, const SuiteConfig& config);

Report run_theorem2_suite(const SuiteConfig& config);
Report run_conjecture1_suite(const SuiteConfig& config);
Report run_prop3_suite(const SuiteConfig& config);
Report run_suite(SuiteKind kind, const SuiteConfig& config);

}  // namespace fhv
