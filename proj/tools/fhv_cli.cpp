// fhv: periods, period matrices, ranks and the verification suites.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fhv/fhv.h"

namespace {

constexpr int kUsage = 2;

struct Owned {
  char* p = nullptr;
  ~Owned() { fhv_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

// Invalid input maps to the usage exit code; anything else is a failure.
int report_error(fhv_status s) {
  std::cerr << "fhv: " << fhv_last_error() << "\n";
  return s == FHV_ERR_INTERNAL ? 1 : kUsage;
}

bool write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return true;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    std::cerr << "fhv: cannot write " << path << "\n";
    return false;
  }
  return true;
}

std::string coeffs_text(const nlohmann::json& cyc) {
  std::string s = "[";
  for (std::size_t k = 0; k < cyc.at("coeffs").size(); ++k) {
    if (k) s += ",";
    s += cyc["coeffs"][k].get<std::string>();
  }
  return s + "]";
}

struct Common {
  int n = 0;
  int d = 0;
  std::optional<int> m;
  std::vector<int> degrees;
  std::vector<int> a;
  std::vector<int> b;
  std::vector<int> i;
  std::string method = "auto";
  std::size_t primes = 3;
  unsigned jobs = 1;
  std::string out;
  std::string format;
};

const std::map<std::string, fhv_rank_method> kMethods{
    {"exact", FHV_RANK_EXACT}, {"modular", FHV_RANK_MODULAR}, {"auto", FHV_RANK_AUTO}};
const std::map<std::string, fhv_format> kFormats{
    {"json", FHV_FORMAT_JSON}, {"tsv", FHV_FORMAT_TSV}, {"text", FHV_FORMAT_TEXT}};

void add_nd(CLI::App* app, Common& c, bool required = true) {
  auto* n = app->add_option("--n", c.n, "even dimension n");
  auto* d = app->add_option("--d", c.d, "degree d");
  if (required) {
    n->required();
    d->required();
  }
}

CLI::Option* add_list(CLI::App* app, const std::string& name, std::vector<int>& target, const std::string& help) {
  return app->add_option(name, target, help)->delimiter(',');
}

void add_method(CLI::App* app, Common& c) {
  app->add_option("--method", c.method, "exact, modular or auto")->check(CLI::IsMember({"exact", "modular", "auto"}));
  app->add_option("--primes", c.primes, "number of primes for modular ranks")->check(CLI::PositiveNumber);
}

void add_output(CLI::App* app, Common& c, std::vector<std::string> formats) {
  app->add_option("--out", c.out, "output path (stdout if omitted)");
  app->add_option("--format", c.format, "output format")->check(CLI::IsMember(formats));
}

// Provenance from --m, --degrees or --a/--b, in that order.
std::optional<std::string> provenance_json(const Common& c) {
  if (c.m) return nlohmann::json{{"kind", "linear-pair"}, {"m", *c.m}}.dump();
  if (!c.degrees.empty()) return nlohmann::json{{"kind", "complete-intersection"}, {"degrees", c.degrees}}.dump();
  if (!c.b.empty()) return nlohmann::json{{"kind", "single-cycle"}, {"a", c.a}, {"b", c.b}}.dump();
  return std::nullopt;
}

int cmd_period(const Common& c) {
  Owned json;
  fhv_status s;
  if (!c.degrees.empty())
    s = fhv_period_ci(c.n, c.d, c.degrees.data(), c.degrees.size(), c.i.data(), c.i.size(), &json.p);
  else if (c.m)
    s = fhv_period_pair(c.n, c.d, *c.m, c.i.data(), c.i.size(), &json.p);
  else if (!c.b.empty())
    s = fhv_period_linear(c.n, c.d, c.a.data(), c.a.size(), c.b.data(), c.b.size(), c.i.data(), c.i.size(),
                          &json.p);
  else {
    std::cerr << "fhv: period needs --a/--b, --m or --degrees\n";
    return kUsage;
  }
  if (s != FHV_OK) return report_error(s);
  if (c.format == "json") return write_output(c.out, json.str() + "\n") ? 0 : 1;
  const auto j = nlohmann::json::parse(json.str());
  return write_output(c.out, "scalar " + j["scalar"].get<std::string>() + "\nnormalized " +
                                 coeffs_text(j["normalized"]) + "\n")
             ? 0
             : 1;
}

int cmd_matrix(const Common& c) {
  const auto prov = provenance_json(c);
  if (!prov) {
    std::cerr << "fhv: matrix needs --m, --degrees or --a/--b\n";
    return kUsage;
  }
  fhv_matrix* m = nullptr;
  if (auto s = fhv_matrix_build(c.n, c.d, prov->c_str(), c.jobs, &m); s != FHV_OK) return report_error(s);
  Owned text;
  const auto s = fhv_matrix_dump(m, c.format == "tsv" ? FHV_FORMAT_TSV : FHV_FORMAT_JSON, &text.p);
  fhv_matrix_free(m);
  if (s != FHV_OK) return report_error(s);
  return write_output(c.out, text.str()) ? 0 : 1;
}

int cmd_rank(const Common& c, const std::string& input) {
  fhv_matrix* m = nullptr;
  fhv_status s;
  if (!input.empty()) {
    s = fhv_matrix_load_file(input.c_str(), &m);
  } else {
    const auto prov = provenance_json(c);
    if (!prov || c.n == 0 || c.d == 0) {
      std::cerr << "fhv: rank needs a matrix file or --n --d with --m, --degrees or --a/--b\n";
      return kUsage;
    }
    s = fhv_matrix_build(c.n, c.d, prov->c_str(), c.jobs, &m);
  }
  if (s != FHV_OK) return report_error(s);
  Owned json;
  s = fhv_matrix_rank(m, kMethods.at(c.method), c.primes, &json.p);
  std::size_t rows = 0, cols = 0;
  fhv_matrix_shape(m, &rows, &cols);
  fhv_matrix_free(m);
  if (s != FHV_OK) return report_error(s);
  auto j = nlohmann::json::parse(json.str());
  if (c.format == "json") {
    j["rows"] = rows;
    j["cols"] = cols;
    return write_output(c.out, j.dump(2) + "\n") ? 0 : 1;
  }
  std::string text = std::to_string(j["rank"].get<std::size_t>()) + "\n";
  std::cerr << rows << "x" << cols << " " << j["method"].get<std::string>()
            << (j["certified"].get<bool>() ? " certified" : " NOT certified") << "\n";
  return write_output(c.out, text) ? 0 : 1;
}

int cmd_codim(const Common& c) {
  std::int64_t v = 0;
  if (auto s = fhv_codim(c.n, c.d, c.a.data(), c.a.size(), &v); s != FHV_OK) return report_error(s);
  return write_output(c.out, std::to_string(v) + "\n") ? 0 : 1;
}

int cmd_count_cycles(const Common& c) {
  Owned v;
  if (auto s = fhv_count_cycles(c.n, c.d, &v.p); s != FHV_OK) return report_error(s);
  return write_output(c.out, v.str() + "\n") ? 0 : 1;
}

int cmd_enumerate(const Common& c, std::optional<int> total, bool cycles) {
  if (cycles == total.has_value()) {
    std::cerr << "fhv: enumerate needs exactly one of --N or --cycles\n";
    return kUsage;
  }
  Owned json;
  const auto s = cycles ? fhv_enumerate_cycles(c.n, c.d, &json.p) : fhv_enumerate_index_set(c.n, c.d, *total, &json.p);
  if (s != FHV_OK) return report_error(s);
  if (c.format == "json") return write_output(c.out, json.str() + "\n") ? 0 : 1;
  std::string text;
  for (const auto& item : nlohmann::json::parse(json.str())) {
    if (cycles)
      text += "a=" + item["a"].dump() + " b=" + item["b"].dump() + " sign=" + item["sign"].dump() + "\n";
    else
      text += item.dump() + "\n";
  }
  return write_output(c.out, text) ? 0 : 1;
}

struct SuiteFlags {
  bool exhaustive = false;
  std::size_t samples = 4;
  bool no_root_check = false;
  int max_d = 6;
};

int cmd_suite(fhv_suite_kind kind, const Common& c, const SuiteFlags& f) {
  fhv_suite_config config;
  fhv_suite_config_default(&config);
  config.method = kMethods.at(c.method);
  config.prime_count = c.primes;
  config.jobs = c.jobs;
  config.n_filter = c.n;
  config.d_filter = c.d;
  config.exhaustive = f.exhaustive;
  config.samples_per_case = f.samples;
  config.check_root_independence = !f.no_root_check;
  config.prop3_max_d = f.max_d;
  if (const char* seed = std::getenv("FHV_SEED")) {
    try {
      config.seed = std::stoull(seed);
    } catch (const std::exception&) {
      std::cerr << "fhv: FHV_SEED must be an unsigned integer\n";
      return kUsage;
    }
  }
  fhv_report* report = nullptr;
  if (auto s = fhv_suite_run(kind, &config, &report); s != FHV_OK) return report_error(s);
  const int code = fhv_report_exit_code(report);
  Owned table, text;
  fhv_status s = fhv_report_render(report, FHV_FORMAT_TEXT, &table.p);
  if (s == FHV_OK && !c.out.empty())
    s = fhv_report_render(report, kFormats.at(c.format.empty() ? "json" : c.format), &text.p);
  else if (s == FHV_OK && !c.format.empty() && c.format != "text")
    s = fhv_report_render(report, kFormats.at(c.format), &text.p);
  fhv_report_free(report);
  if (s != FHV_OK) return report_error(s);
  if (!c.out.empty()) {
    std::cout << table.str();
    if (!write_output(c.out, text.str())) return 1;
  } else {
    std::cout << (text.p ? text.str() : table.str());
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Periods of algebraic cycles on Fermat varieties and the rank checks built on them"};
  app.require_subcommand(1);
  Common c;
  std::optional<int> total;
  bool cycles = false;
  std::string input;
  SuiteFlags sf;

  auto* period = app.add_subcommand("period", "closed-form period at one exponent index");
  add_nd(period, c);
  period->add_option("--m", c.m, "pair period with partner index m");
  add_list(period, "--degrees", c.degrees, "complete-intersection degrees");
  add_list(period, "--a", c.a, "cycle exponents a");
  add_list(period, "--b", c.b, "cycle permutation b");
  add_list(period, "--i", c.i, "exponent index i")->required();
  add_output(period, c, {"json", "text"});

  auto* matrix = app.add_subcommand("matrix", "build and dump [p_{i+j}]");
  add_nd(matrix, c);
  matrix->add_option("--m", c.m, "linear pair with partner index m");
  add_list(matrix, "--degrees", c.degrees, "complete-intersection degrees");
  add_list(matrix, "--a", c.a, "single cycle exponents a");
  add_list(matrix, "--b", c.b, "single cycle permutation b");
  matrix->add_option("--jobs", c.jobs, "threads")->check(CLI::PositiveNumber);
  add_output(matrix, c, {"json", "tsv"});

  auto* rank = app.add_subcommand("rank", "rank of a dumped matrix, or of one built from parameters");
  rank->add_option("file", input, "matrix dump (json or tsv)");
  add_nd(rank, c, false);
  rank->add_option("--m", c.m, "linear pair with partner index m");
  add_list(rank, "--degrees", c.degrees, "complete-intersection degrees");
  add_list(rank, "--a", c.a, "single cycle exponents a");
  add_list(rank, "--b", c.b, "single cycle permutation b");
  rank->add_option("--jobs", c.jobs, "threads")->check(CLI::PositiveNumber);
  add_method(rank, c);
  add_output(rank, c, {"json", "text"});

  auto* codim = app.add_subcommand("codim", "the inclusion-exclusion number C_a");
  add_nd(codim, c);
  add_list(codim, "--a", c.a, "multiset a")->required();
  add_output(codim, c, {"text"});

  auto* count = app.add_subcommand("count-cycles", "number of linear cycles");
  add_nd(count, c);
  add_output(count, c, {"text"});

  auto* enumerate = app.add_subcommand("enumerate", "list I_N or the canonical linear cycles");
  add_nd(enumerate, c);
  enumerate->add_option("--N,--total", total, "total degree N");
  enumerate->add_flag("--cycles", cycles, "list linear cycles");
  add_output(enumerate, c, {"json", "text"});

  auto add_suite = [&](const char* name, const char* help) {
    auto* s = app.add_subcommand(name, help);
    add_nd(s, c, false);
    add_method(s, c);
    s->add_option("--jobs", c.jobs, "cases run concurrently")->check(CLI::PositiveNumber);
    add_output(s, c, {"json", "tsv", "text"});
    return s;
  };
  auto* theorem2 = add_suite("theorem2", "rank identities for the linear-pair triples");
  auto* conjecture1 = add_suite("conjecture1", "rank identities for complete-intersection cycles");
  conjecture1->add_flag("--exhaustive", sf.exhaustive, "every degree multiset for every (n, d)");
  conjecture1->add_option("--samples", sf.samples, "multisets per (n, d) when sampling")->check(CLI::Range(3, 1 << 20));
  conjecture1->add_flag("--no-root-check", sf.no_root_check, "skip the alternative root-set comparison");
  auto* prop3 = add_suite("prop3", "all-ones complete intersections and the row-generation identity");
  prop3->add_option("--max-d", sf.max_d, "largest degree in the grid")->check(CLI::Range(2, 64));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  if (*period) return cmd_period(c);
  if (*matrix) return cmd_matrix(c);
  if (*rank) return cmd_rank(c, input);
  if (*codim) return cmd_codim(c);
  if (*count) return cmd_count_cycles(c);
  if (*enumerate) return cmd_enumerate(c, total, cycles);
  if (*theorem2) return cmd_suite(FHV_SUITE_THEOREM2, c, sf);
  if (*conjecture1) return cmd_suite(FHV_SUITE_CONJECTURE1, c, sf);
  if (*prop3) return cmd_suite(FHV_SUITE_PROP3, c, sf);
  return kUsage;
}
