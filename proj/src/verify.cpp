#include "fhv/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "fhv/codim.hpp"
#include "fhv/error.hpp"

namespace fhv {

std::string to_string(SuiteKind k) {
  switch (k) {
    case SuiteKind::Theorem2:
      return "theorem2";
    case SuiteKind::Conjecture1:
      return "conjecture1";
    case SuiteKind::Prop3:
      return "prop3";
  }
  return "?";
}

std::string to_string(CaseStatus s) {
  switch (s) {
    case CaseStatus::Pass:
      return "pass";
    case CaseStatus::Fail:
      return "fail";
    case CaseStatus::Error:
      return "error";
  }
  return "?";
}

namespace {

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) s += ',';
    s += std::to_string(v[k]);
  }
  return s;
}

bool admissible_ci_degree(int n, int d) { return n * d >= 2 * n + 4; }  // d >= 2 + 4/n

bool passes_filter(const SuiteConfig& config, int n, int d) {
  return (!config.n_filter || *config.n_filter == n) && (!config.d_filter || *config.d_filter == d);
}

}  // namespace

std::string CaseSpec::label() const {
  if (kind == SuiteKind::Theorem2)
    return "(" + std::to_string(n) + "," + std::to_string(d) + "," + std::to_string(m) + ")";
  return "(" + std::to_string(n) + "," + std::to_string(d) + ";" + join(degrees) + ")";
}

std::vector<CaseSpec> theorem2_cases() {
  std::vector<CaseSpec> out;
  auto add = [&](int n, int d, int m) { out.push_back(CaseSpec{SuiteKind::Theorem2, n, d, m, {}}); };
  for (int d = 5; d <= 14; ++d) add(2, d, -1);
  add(4, 4, -1);
  add(4, 5, -1);
  add(4, 6, -1);
  add(4, 5, 0);
  add(4, 6, 0);
  add(6, 3, -1);
  add(6, 4, -1);
  add(6, 4, 0);
  add(8, 3, -1);
  add(8, 3, 0);
  add(10, 3, -1);
  add(10, 3, 0);
  add(10, 3, 1);
  return out;
}

std::vector<std::vector<int>> degree_multisets(int n, int d) {
  const std::size_t len = static_cast<std::size_t>(n / 2 + 1);
  std::vector<std::vector<int>> out;
  if (d < 2) return out;
  std::vector<int> cur(len, 1);
  while (true) {
    out.push_back(cur);
    std::size_t k = len;
    while (k > 0 && cur[k - 1] == d - 1) --k;
    if (k == 0) break;
    const int v = cur[k - 1] + 1;
    for (std::size_t j = k - 1; j < len; ++j) cur[j] = v;
  }
  return out;
}

namespace {

struct CiRange {
  int n;
  int d_lo;
  int d_hi;
};

constexpr CiRange kCiRanges[] = {{2, 4, 15}, {4, 3, 6}, {6, 3, 4}};

// Evenly spaced picks from `all`, always including the first and last.
std::vector<std::vector<int>> sample_multisets(const std::vector<std::vector<int>>& all, std::size_t count) {
  if (all.size() <= count) return all;
  std::vector<std::vector<int>> out;
  std::set<std::size_t> picked;
  for (std::size_t k = 0; k < count; ++k) picked.insert(k * (all.size() - 1) / (count - 1));
  for (std::size_t idx : picked) out.push_back(all[idx]);
  return out;
}

}  // namespace

std::vector<CaseSpec> conjecture1_cases(const SuiteConfig& config) {
  const std::size_t samples = std::max<std::size_t>(config.samples_per_case, 3);
  std::vector<CaseSpec> out;
  for (const auto& range : kCiRanges) {
    for (int d = range.d_lo; d <= range.d_hi; ++d) {
      if (!passes_filter(config, range.n, d)) continue;
      const auto all = degree_multisets(range.n, d);
      const bool exhaustive = config.exhaustive || (range.n == 2 && d <= 8);
      for (auto& degrees : exhaustive ? all : sample_multisets(all, samples))
        out.push_back(CaseSpec{SuiteKind::Conjecture1, range.n, d, -1, degrees});
    }
  }
  return out;
}

std::vector<CaseSpec> prop3_cases(const SuiteConfig& config) {
  std::vector<CaseSpec> out;
  for (int n : {2, 4, 6, 8, 10})
    for (int d = 2; d <= config.prop3_max_d; ++d) {
      if (!admissible_ci_degree(n, d) || !passes_filter(config, n, d)) continue;
      out.push_back(CaseSpec{SuiteKind::Prop3, n, d, -1, std::vector<int>(static_cast<std::size_t>(n / 2 + 1), 1)});
    }
  return out;
}

namespace {

enum class Mode { Exact, Modular, Confirmed };

Mode resolve_mode(const SuiteConfig& config, const BigInt& cols) {
  switch (config.method) {
    case RankMethod::Exact:
      return Mode::Exact;
    case RankMethod::Modular:
      return Mode::Modular;
    case RankMethod::Auto:
      return cols <= static_cast<unsigned long>(config.column_threshold) ? Mode::Exact : Mode::Confirmed;
  }
  return Mode::Exact;
}

RankResult rank_with(const CycMatrix& m, Mode mode, std::size_t primes) {
  switch (mode) {
    case Mode::Exact:
      return rank_exact(m);
    case Mode::Modular:
      return rank_modular(m, primes);
    case Mode::Confirmed:
      return rank_confirmed(m, primes);
  }
  throw Error(ErrorCode::Internal, "unknown rank mode");
}

// Rank of the whole matrix, optionally checking the row-generation identity in
// the same pass.
RankResult matrix_rank(const FermatParams& params, const Provenance& provenance, const SuiteConfig& config,
                       VerificationCase& out, RowGenerationReport* rowgen, unsigned build_jobs) {
  const auto [rows, cols] = matrix_shape(params);
  out.rows = rows.get_str();
  out.cols = cols.get_str();
  const Mode mode = resolve_mode(config, cols);
  if (config.prime_count < 1) invalid_argument("prime_count must be >= 1");

  if (rows * cols <= static_cast<unsigned long>(config.dense_entry_limit)) {
    out.storage = "dense";
    const PeriodMatrix matrix = build_matrix(params, provenance, build_jobs);
    if (rowgen) check_row_generation_rows(params, matrix.row_index, matrix.entries, *rowgen);
    return rank_with(matrix.entries, mode, config.prime_count);
  }

  out.storage = "blocked";
  RankResult total;
  total.used_exact = mode != Mode::Modular;
  if (mode != Mode::Exact) {
    total.primes = admissible_primes(params.order(), config.prime_count);
    total.prime_ranks.assign(total.primes.size(), 0);
  }
  total.certified = true;
  for_each_block(params, provenance, [&](const MatrixBlock& block) {
    if (rowgen) check_row_generation_rows(params, block.row_index, block.entries, *rowgen);
    total += rank_with(block.entries, mode, config.prime_count);
  });
  return total;
}

Provenance case_provenance(const CaseSpec& spec, const FermatParams& params) {
  if (spec.kind == SuiteKind::Theorem2) return Provenance::linear_pair(spec.m);
  return Provenance::complete_intersection(DegreeVector::canonical(params, spec.degrees));
}

std::int64_t case_expected(const CaseSpec& spec) {
  switch (spec.kind) {
    case SuiteKind::Theorem2:
      return expected_rank_linear_pair(spec.n, spec.d, spec.m);
    case SuiteKind::Conjecture1:
      return expected_rank_ci(spec.n, spec.d, spec.degrees);
    case SuiteKind::Prop3:
      return expected_rank_ci_all_ones(spec.n, spec.d);
  }
  return 0;
}

VerificationCase run_case_with(const CaseSpec& spec, const SuiteConfig& config, unsigned build_jobs) {
  const auto start = std::chrono::steady_clock::now();
  VerificationCase c;
  c.spec = spec;
  try {
    const FermatParams params = FermatParams::make(spec.n, spec.d);
    const Provenance provenance = case_provenance(spec, params);
    c.expected = case_expected(spec);
    RowGenerationReport rowgen;
    const bool want_rowgen = spec.kind == SuiteKind::Prop3;
    c.computed = matrix_rank(params, provenance, config, c, want_rowgen ? &rowgen : nullptr, build_jobs);
    const bool rank_ok = c.computed.rank == static_cast<std::size_t>(std::max<std::int64_t>(c.expected, 0)) &&
                         c.expected >= 0 && c.computed.certified;
    bool ok = rank_ok;
    if (want_rowgen) {
      c.row_generation = rowgen;
      ok = ok && rowgen.holds();
      if (!rowgen.holds()) c.detail = std::to_string(rowgen.mismatches) + " row-generation mismatches";
    }
    if (!rank_ok)
      c.detail = c.computed.certified ? "rank differs from the expected value"
                                      : "rank not certified (prime ranks disagree)";
    c.status = ok ? CaseStatus::Pass : CaseStatus::Fail;
  } catch (const std::exception& e) {
    c.status = CaseStatus::Error;
    c.detail = e.what();
  }
  c.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return c;
}

// Alternative root sets of the same cardinalities, drawn from a seeded PRNG.
DegreeVector alternative_roots(const FermatParams& params, const std::vector<int>& degrees, std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(params.n), static_cast<std::uint32_t>(params.d)};
  std::mt19937_64 rng(seq);
  std::vector<std::vector<int>> roots;
  for (int dk : degrees) {
    std::vector<int> all;
    for (int a = 0; a < params.d; ++a) all.push_back(1 + 2 * a);
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(static_cast<std::size_t>(dk));
    std::sort(all.begin(), all.end());
    roots.push_back(std::move(all));
  }
  return DegreeVector::with_roots(params, degrees, std::move(roots));
}

std::vector<VerificationCase> run_cases(const std::vector<CaseSpec>& specs, const SuiteConfig& config) {
  std::vector<VerificationCase> results(specs.size());
  const unsigned workers = std::max(1u, std::min<unsigned>(config.jobs, static_cast<unsigned>(std::max<std::size_t>(specs.size(), 1))));
  if (workers == 1) {
    for (std::size_t k = 0; k < specs.size(); ++k) results[k] = run_case_with(specs[k], config, config.jobs);
    return results;
  }
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t k; (k = next.fetch_add(1)) < specs.size();) results[k] = run_case_with(specs[k], config, 1);
      });
  }
  return results;
}

Report make_report(SuiteKind kind, const std::vector<CaseSpec>& specs, const SuiteConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  Report report;
  report.suite = to_string(kind);
  report.cases = run_cases(specs, config);
  report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace

RankResult case_rank(const FermatParams& params, const Provenance& provenance, const SuiteConfig& config,
                     VerificationCase& out) {
  return matrix_rank(params, provenance, config, out, nullptr, config.jobs);
}

VerificationCase run_case(const CaseSpec& spec, const SuiteConfig& config) {
  return run_case_with(spec, config, config.jobs);
}

Report run_theorem2_suite(const SuiteConfig& config) {
  std::vector<CaseSpec> specs;
  for (auto& s : theorem2_cases())
    if (passes_filter(config, s.n, s.d)) specs.push_back(s);
  return make_report(SuiteKind::Theorem2, specs, config);
}

Report run_conjecture1_suite(const SuiteConfig& config) {
  const auto specs = conjecture1_cases(config);
  Report report = make_report(SuiteKind::Conjecture1, specs, config);
  if (!config.check_root_independence) return report;
  // One case per (n, d): the first sampled multiset with a degree strictly
  // between 1 and d-1, where the root choice is not a mere relabelling.
  std::set<std::pair<int, int>> done;
  for (const auto& c : report.cases) {
    const auto& s = c.spec;
    if (done.count({s.n, s.d}) || c.status == CaseStatus::Error) continue;
    if (std::none_of(s.degrees.begin(), s.degrees.end(), [&](int dk) { return dk > 1 && dk < s.d - 1; })) continue;
    done.insert({s.n, s.d});
    PropertyCheck prop;
    prop.name = "root-set independence";
    prop.case_label = s.label();
    try {
      const FermatParams params = FermatParams::make(s.n, s.d);
      const DegreeVector alt = alternative_roots(params, s.degrees, config.seed);
      VerificationCase scratch;
      const RankResult r = case_rank(params, Provenance::complete_intersection(alt), config, scratch);
      prop.holds = r.rank == c.computed.rank && r.certified;
      std::string roots;
      for (const auto& b : alt.root_exponents) roots += "{" + join(b) + "}";
      prop.detail = "roots " + roots + ": rank " + std::to_string(r.rank) + " vs canonical " +
                    std::to_string(c.computed.rank);
    } catch (const std::exception& e) {
      prop.holds = false;
      prop.detail = e.what();
    }
    report.properties.push_back(std::move(prop));
  }
  return report;
}

Report run_prop3_suite(const SuiteConfig& config) {
  return make_report(SuiteKind::Prop3, prop3_cases(config), config);
}

Report run_suite(SuiteKind kind, const SuiteConfig& config) {
  switch (kind) {
    case SuiteKind::Theorem2:
      return run_theorem2_suite(config);
    case SuiteKind::Conjecture1:
      return run_conjecture1_suite(config);
    case SuiteKind::Prop3:
      return run_prop3_suite(config);
  }
  throw Error(ErrorCode::Internal, "unknown suite");
}

std::size_t Report::passed() const {
  return static_cast<std::size_t>(
      std::count_if(cases.begin(), cases.end(), [](const auto& c) { return c.status == CaseStatus::Pass; }));
}

std::size_t Report::failed() const {
  return static_cast<std::size_t>(
      std::count_if(cases.begin(), cases.end(), [](const auto& c) { return c.status == CaseStatus::Fail; }));
}

std::size_t Report::errors() const {
  return static_cast<std::size_t>(
      std::count_if(cases.begin(), cases.end(), [](const auto& c) { return c.status == CaseStatus::Error; }));
}

int Report::exit_code() const { return passed() == cases.size() ? 0 : 1; }

nlohmann::json Report::to_json() const {
  nlohmann::json jcases = nlohmann::json::array();
  for (const auto& c : cases) {
    nlohmann::json j{{"kind", to_string(c.spec.kind)},
                     {"n", c.spec.n},
                     {"d", c.spec.d},
                     {"expected", c.expected},
                     {"computed", fhv::to_json(c.computed)},
                     {"status", to_string(c.status)},
                     {"rows", c.rows},
                     {"cols", c.cols},
                     {"storage", c.storage},
                     {"wall_time", c.wall_time}};
    if (c.spec.kind == SuiteKind::Theorem2)
      j["m"] = c.spec.m;
    else
      j["degrees"] = c.spec.degrees;
    if (!c.detail.empty()) j["detail"] = c.detail;
    if (c.row_generation)
      j["row_generation"] = {{"rows_checked", c.row_generation->rows_checked},
                             {"entries_checked", c.row_generation->entries_checked},
                             {"mismatches", c.row_generation->mismatches},
                             {"basis_rows", c.row_generation->basis_rows}};
    jcases.push_back(std::move(j));
  }
  nlohmann::json jprops = nlohmann::json::array();
  for (const auto& p : properties)
    jprops.push_back({{"name", p.name}, {"case", p.case_label}, {"holds", p.holds}, {"detail", p.detail}});
  const auto props_failed =
      std::count_if(properties.begin(), properties.end(), [](const auto& p) { return !p.holds; });
  return {{"suite", suite},
          {"cases", std::move(jcases)},
          {"properties", std::move(jprops)},
          {"summary",
           {{"total", cases.size()},
            {"passed", passed()},
            {"failed", failed()},
            {"errors", errors()},
            {"properties_failed", props_failed},
            {"wall_time", wall_time}}}};
}

std::string Report::to_text() const {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%-22s %10s %10s %9s %9s %-14s %-6s %9s\n", "case", "rows", "cols", "expected",
                "rank", "method", "status", "seconds");
  out << "suite " << suite << "\n" << line;
  for (const auto& c : cases) {
    std::snprintf(line, sizeof line, "%-22s %10s %10s %9lld %9zu %-14s %-6s %9.2f\n", c.spec.label().c_str(),
                  c.rows.c_str(), c.cols.c_str(), static_cast<long long>(c.expected), c.computed.rank,
                  c.computed.method_label().c_str(), to_string(c.status).c_str(), c.wall_time);
    out << line;
    if (!c.detail.empty()) out << "    " << c.detail << "\n";
  }
  for (const auto& p : properties)
    out << "property " << p.name << " " << p.case_label << ": " << (p.holds ? "holds" : "VIOLATED") << " ("
        << p.detail << ")\n";
  out << "summary: " << passed() << "/" << cases.size() << " passed, " << failed() << " failed, " << errors()
      << " errors";
  std::snprintf(line, sizeof line, " in %.1f s\n", wall_time);
  out << line;
  return out.str();
}

std::string Report::to_tsv() const {
  std::ostringstream out;
  out << "suite\tcase\tn\td\tparams\trows\tcols\texpected\trank\tmethod\tcertified\tstatus\twall_time\n";
  for (const auto& c : cases) {
    out << suite << '\t' << c.spec.label() << '\t' << c.spec.n << '\t' << c.spec.d << '\t'
        << (c.spec.kind == SuiteKind::Theorem2 ? std::to_string(c.spec.m) : join(c.spec.degrees)) << '\t' << c.rows
        << '\t' << c.cols << '\t' << c.expected << '\t' << c.computed.rank << '\t' << c.computed.method_label() << '\t'
        << (c.computed.certified ? "true" : "false") << '\t' << to_string(c.status) << '\t' << c.wall_time << '\n';
  }
  return out.str();
}

}  // namespace fhv
