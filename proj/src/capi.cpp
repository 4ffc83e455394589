#include "fhv/fhv.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <span>
#include <sstream>
#include <string>

#include "fhv/codim.hpp"
#include "fhv/error.hpp"
#include "fhv/period_matrix.hpp"
#include "fhv/periods.hpp"
#include "fhv/rank.hpp"
#include "fhv/verify.hpp"

struct fhv_matrix {
  fhv::PeriodMatrix value;
};

struct fhv_report {
  fhv::Report value;
};

namespace {

thread_local std::string last_error;

fhv_status fail(fhv_status status, const std::string& what) {
  last_error = what;
  return status;
}

fhv_status status_of(fhv::ErrorCode code) {
  switch (code) {
    case fhv::ErrorCode::InvalidArgument:
      return FHV_ERR_INVALID_ARGUMENT;
    case fhv::ErrorCode::Parse:
      return FHV_ERR_PARSE;
    case fhv::ErrorCode::Io:
      return FHV_ERR_IO;
    case fhv::ErrorCode::Internal:
      return FHV_ERR_INTERNAL;
  }
  return FHV_ERR_INTERNAL;
}

template <class F>
fhv_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return FHV_OK;
  } catch (const fhv::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(FHV_ERR_PARSE, e.what());
  } catch (const std::bad_alloc&) {
    return fail(FHV_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(FHV_ERR_INTERNAL, e.what());
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

std::vector<int> to_vector(const int* data, std::size_t len) {
  if (len && !data) fhv::invalid_argument("null array with nonzero length");
  return std::vector<int>(data, data + len);
}

nlohmann::json period_json(const fhv::CycElt& normalized, const fhv::BigRational& scalar) {
  return {{"scalar", scalar.get_str()}, {"normalized", fhv::to_json(normalized)}};
}

fhv::RankMethod rank_method(fhv_rank_method m) {
  switch (m) {
    case FHV_RANK_EXACT:
      return fhv::RankMethod::Exact;
    case FHV_RANK_MODULAR:
      return fhv::RankMethod::Modular;
    case FHV_RANK_AUTO:
      return fhv::RankMethod::Auto;
  }
  fhv::invalid_argument("unknown rank method");
}

}  // namespace

extern "C" {

const char* fhv_last_error(void) { return last_error.c_str(); }

void fhv_string_free(char* s) { std::free(s); }

fhv_status fhv_count_cycles(int n, int d, char** decimal) {
  if (!decimal) return fail(FHV_ERR_NULL, "null output");
  return guarded([&] { *decimal = copy_string(fhv::linear_cycle_count(fhv::FermatParams::make(n, d)).get_str()); });
}

fhv_status fhv_index_set_size(int n, int d, int total, char** decimal) {
  if (!decimal) return fail(FHV_ERR_NULL, "null output");
  return guarded(
      [&] { *decimal = copy_string(fhv::index_set_size(fhv::FermatParams::make(n, d), total).get_str()); });
}

fhv_status fhv_enumerate_index_set(int n, int d, int total, char** json) {
  if (!json) return fail(FHV_ERR_NULL, "null output");
  return guarded([&] {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& i : fhv::enumerate_index_set(fhv::FermatParams::make(n, d), total))
      out.push_back(std::vector<int>(i.entries().begin(), i.entries().end()));
    *json = copy_string(out.dump());
  });
}

fhv_status fhv_enumerate_cycles(int n, int d, char** json) {
  if (!json) return fail(FHV_ERR_NULL, "null output");
  return guarded([&] {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& c : fhv::enumerate_linear_cycles(fhv::FermatParams::make(n, d)))
      out.push_back({{"a", c.a}, {"b", c.b}, {"sign", c.sign}});
    *json = copy_string(out.dump());
  });
}

fhv_status fhv_codim(int n, int d, const int* a, size_t len, int64_t* out) {
  if (!out) return fail(FHV_ERR_NULL, "null output");
  return guarded([&] { *out = fhv::codim(n, d, to_vector(a, len)); });
}

fhv_status fhv_expected_rank_linear_pair(int n, int d, int m, int64_t* out) {
  if (!out) return fail(FHV_ERR_NULL, "null output");
  return guarded([&] { *out = fhv::expected_rank_linear_pair(n, d, m); });
}

fhv_status fhv_expected_rank_ci(int n, int d, const int* degrees, size_t len, int64_t* out) {
  if (!out) return fail(FHV_ERR_NULL, "null output");
  return guarded([&] { *out = fhv::expected_rank_ci(n, d, to_vector(degrees, len)); });
}

fhv_status fhv_expected_rank_ci_all_ones(int n, int d, int64_t* out) {
  if (!out) return fail(FHV_ERR_NULL, "null output");
  return guarded([&] { *out = fhv::expected_rank_ci_all_ones(n, d); });
}

fhv_status fhv_period_linear(int n, int d, const int* a, size_t a_len, const int* b, size_t b_len, const int* i,
                             size_t i_len, char** json) {
  if (!json) return fail(FHV_ERR_NULL, "null output");
  return guarded([&] {
    const auto params = fhv::FermatParams::make(n, d);
    const auto cycle = fhv::LinearCycle::make(params, to_vector(a, a_len), to_vector(b, b_len));
    const auto p = fhv::linear_cycle_period(params, cycle, fhv::ExponentIndex(to_vector(i, i_len)));
    *json = copy_string(period_json(p.normalized, p.scalar).dump());
  });
}

fhv_status fhv_period_pair(int n, int d, int m, const int* i, size_t i_len, char** json) {
  if (!json) return fail(FHV_ERR_NULL, "null output");
  return guarded([&] {
    const auto params = fhv::FermatParams::make(n, d);
    const auto p = fhv::pair_period(params, m, fhv::ExponentIndex(to_vector(i, i_len)));
    *json = copy_string(period_json(p.normalized, p.scalar).dump());
  });
}

fhv_status fhv_period_ci(int n, int d, const int* degrees, size_t deg_len, const int* i, size_t i_len,
                         char** json) {
  if (!json) return fail(FHV_ERR_NULL, "null output");
  return guarded([&] {
    const auto params = fhv::FermatParams::make(n, d);
    const auto dv = fhv::DegreeVector::canonical(params, to_vector(degrees, deg_len));
    const auto p = fhv::ci_period(params, dv, fhv::ExponentIndex(to_vector(i, i_len)));
    *json = copy_string(period_json(p, fhv::BigRational(1)).dump());
  });
}

fhv_status fhv_matrix_build(int n, int d, const char* provenance_json, unsigned jobs, fhv_matrix** out) {
  if (!provenance_json || !out) return fail(FHV_ERR_NULL, "null argument");
  return guarded([&] {
    const auto params = fhv::FermatParams::make(n, d);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(provenance_json);
    } catch (const nlohmann::json::exception& e) {
      throw fhv::Error(fhv::ErrorCode::Parse, std::string("provenance: ") + e.what());
    }
    const auto provenance = fhv::provenance_from_json(params, j);
    *out = new fhv_matrix{fhv::build_matrix(params, provenance, jobs)};
  });
}

fhv_status fhv_matrix_load(const char* text, size_t len, fhv_format format, fhv_matrix** out) {
  if (!text || !out) return fail(FHV_ERR_NULL, "null argument");
  return guarded([&] {
    if (format == FHV_FORMAT_TEXT) fhv::invalid_argument("matrices load from json or tsv only");
    const auto f = format == FHV_FORMAT_JSON ? fhv::MatrixFormat::Json : fhv::MatrixFormat::Tsv;
    *out = new fhv_matrix{fhv::load(std::string_view(text, len), f)};
  });
}

fhv_status fhv_matrix_load_file(const char* path, fhv_matrix** out) {
  if (!path || !out) return fail(FHV_ERR_NULL, "null argument");
  return guarded([&] {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw fhv::Error(fhv::ErrorCode::Io, std::string("cannot open ") + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw fhv::Error(fhv::ErrorCode::Parse, std::string(path) + ": empty file");
    const auto f = text[first] == '#' ? fhv::MatrixFormat::Tsv : fhv::MatrixFormat::Json;
    *out = new fhv_matrix{fhv::load(text, f)};
  });
}

fhv_status fhv_matrix_dump(const fhv_matrix* m, fhv_format format, char** text) {
  if (!m || !text) return fail(FHV_ERR_NULL, "null argument");
  return guarded([&] {
    if (format == FHV_FORMAT_TEXT) fhv::invalid_argument("matrices dump as json or tsv only");
    *text = copy_string(
        fhv::dump(m->value, format == FHV_FORMAT_JSON ? fhv::MatrixFormat::Json : fhv::MatrixFormat::Tsv));
  });
}

fhv_status fhv_matrix_shape(const fhv_matrix* m, size_t* rows, size_t* cols) {
  if (!m || !rows || !cols) return fail(FHV_ERR_NULL, "null argument");
  *rows = m->value.entries.rows;
  *cols = m->value.entries.cols;
  return FHV_OK;
}

fhv_status fhv_matrix_rank(const fhv_matrix* m, fhv_rank_method method, size_t prime_count, char** json) {
  if (!m || !json) return fail(FHV_ERR_NULL, "null argument");
  return guarded([&] {
    if (prime_count < 1) fhv::invalid_argument("prime count must be >= 1");
    const auto r = fhv::compute_rank(m->value.entries, rank_method(method), prime_count);
    *json = copy_string(fhv::to_json(r).dump());
  });
}

fhv_status fhv_matrix_rank_value(const fhv_matrix* m, fhv_rank_method method, size_t prime_count, size_t* rank,
                                 int* certified) {
  if (!m || !rank || !certified) return fail(FHV_ERR_NULL, "null argument");
  return guarded([&] {
    if (prime_count < 1) fhv::invalid_argument("prime count must be >= 1");
    const auto r = fhv::compute_rank(m->value.entries, rank_method(method), prime_count);
    *rank = r.rank;
    *certified = r.certified ? 1 : 0;
  });
}

void fhv_matrix_free(fhv_matrix* m) { delete m; }

void fhv_suite_config_default(fhv_suite_config* config) {
  if (!config) return;
  const fhv::SuiteConfig def;
  config->method = FHV_RANK_AUTO;
  config->prime_count = def.prime_count;
  config->jobs = def.jobs;
  config->n_filter = 0;
  config->d_filter = 0;
  config->exhaustive = def.exhaustive;
  config->samples_per_case = def.samples_per_case;
  config->check_root_independence = def.check_root_independence;
  config->prop3_max_d = def.prop3_max_d;
  config->seed = def.seed;
}

fhv_status fhv_suite_run(fhv_suite_kind kind, const fhv_suite_config* config, fhv_report** out) {
  if (!out) return fail(FHV_ERR_NULL, "null output");
  return guarded([&] {
    fhv_suite_config c;
    fhv_suite_config_default(&c);
    if (config) c = *config;
    if (c.prime_count < 1) fhv::invalid_argument("prime count must be >= 1");
    if (c.jobs < 1) fhv::invalid_argument("jobs must be >= 1");
    fhv::SuiteConfig sc;
    sc.method = rank_method(c.method);
    sc.prime_count = c.prime_count;
    sc.jobs = c.jobs;
    if (c.n_filter) sc.n_filter = c.n_filter;
    if (c.d_filter) sc.d_filter = c.d_filter;
    sc.exhaustive = c.exhaustive != 0;
    sc.samples_per_case = c.samples_per_case;
    sc.check_root_independence = c.check_root_independence != 0;
    sc.prop3_max_d = c.prop3_max_d;
    sc.seed = c.seed;
    fhv::SuiteKind k;
    switch (kind) {
      case FHV_SUITE_THEOREM2:
        k = fhv::SuiteKind::Theorem2;
        break;
      case FHV_SUITE_CONJECTURE1:
        k = fhv::SuiteKind::Conjecture1;
        break;
      case FHV_SUITE_PROP3:
        k = fhv::SuiteKind::Prop3;
        break;
      default:
        fhv::invalid_argument("unknown suite");
    }
    *out = new fhv_report{fhv::run_suite(k, sc)};
  });
}

fhv_status fhv_report_render(const fhv_report* r, fhv_format format, char** text) {
  if (!r || !text) return fail(FHV_ERR_NULL, "null argument");
  return guarded([&] {
    switch (format) {
      case FHV_FORMAT_JSON:
        *text = copy_string(r->value.to_json().dump(2) + "\n");
        return;
      case FHV_FORMAT_TSV:
        *text = copy_string(r->value.to_tsv());
        return;
      case FHV_FORMAT_TEXT:
        *text = copy_string(r->value.to_text());
        return;
    }
    fhv::invalid_argument("unknown format");
  });
}

int fhv_report_exit_code(const fhv_report* r) { return r ? r->value.exit_code() : 1; }

size_t fhv_report_case_count(const fhv_report* r) { return r ? r->value.cases.size() : 0; }

void fhv_report_free(fhv_report* r) { delete r; }

}  // extern "C"
