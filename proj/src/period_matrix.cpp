#include "fhv/period_matrix.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <thread>

#include "fhv/error.hpp"

namespace fhv {

Provenance Provenance::linear_pair(int m) {
  Provenance p;
  p.kind = Kind::LinearPair;
  p.m = m;
  return p;
}

Provenance Provenance::complete_intersection(DegreeVector dv) {
  Provenance p;
  p.kind = Kind::CompleteIntersection;
  p.degrees = std::move(dv);
  return p;
}

Provenance Provenance::single_cycle(LinearCycle cycle) {
  Provenance p;
  p.kind = Kind::SingleCycle;
  p.cycle = std::move(cycle);
  return p;
}

void Provenance::validate(const FermatParams& params) const {
  switch (kind) {
    case Kind::LinearPair:
      pair_partner_cycle(params, m);
      break;
    case Kind::CompleteIntersection:
      DegreeVector::with_roots(params, degrees.degrees, degrees.root_exponents);
      break;
    case Kind::SingleCycle: {
      const auto checked = LinearCycle::make(params, cycle.a, cycle.b);
      if (checked.sign != cycle.sign) invalid_argument("cycle sign does not match the parity of b");
      break;
    }
  }
}

std::vector<std::pair<int, int>> Provenance::pairs(const FermatParams& params) const {
  std::vector<std::pair<int, int>> out;
  for (int l = 0; l <= params.half(); ++l) {
    if (kind == Kind::SingleCycle)
      out.emplace_back(cycle.b[static_cast<std::size_t>(2 * l)],
                       cycle.b[static_cast<std::size_t>(2 * l + 1)]);
    else
      out.emplace_back(2 * l, 2 * l + 1);
  }
  return out;
}

CycElt Provenance::period(const FermatParams& params, const ExponentIndex& i) const {
  switch (kind) {
    case Kind::LinearPair:
      return pair_period(params, m, i).normalized;
    case Kind::CompleteIntersection:
      return ci_period(params, degrees, i);
    case Kind::SingleCycle: {
      const auto entries = i.entries();
      if (i.total() != params.period_degree() ||
          std::any_of(entries.begin(), entries.end(), [&](int v) { return v < 0 || v > params.d - 2; }))
        return CycElt::zero(params.order());
      return linear_cycle_period(params, cycle, i).normalized;
    }
  }
  throw Error(ErrorCode::Internal, "unknown provenance");
}

BigRational Provenance::scalar(const FermatParams& params) const {
  if (kind == Kind::CompleteIntersection) return BigRational(1);
  return linear_period_scalar(params);
}

namespace {

std::string join(std::span<const int> v, char sep = ',') {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) s += sep;
    s += std::to_string(v[k]);
  }
  return s;
}

}  // namespace

std::string Provenance::label() const {
  switch (kind) {
    case Kind::LinearPair:
      return "linear-pair(m=" + std::to_string(m) + ")";
    case Kind::CompleteIntersection:
      return "complete-intersection(" + join(degrees.degrees) + ")";
    case Kind::SingleCycle:
      return "single-cycle(a=" + join(cycle.a) + ";b=" + join(cycle.b) + ")";
  }
  return "unknown";
}

nlohmann::json to_json(const Provenance& p) {
  switch (p.kind) {
    case Provenance::Kind::LinearPair:
      return {{"kind", "linear-pair"}, {"m", p.m}};
    case Provenance::Kind::CompleteIntersection:
      return {{"kind", "complete-intersection"},
              {"degrees", p.degrees.degrees},
              {"roots", p.degrees.root_exponents}};
    case Provenance::Kind::SingleCycle:
      return {{"kind", "single-cycle"}, {"a", p.cycle.a}, {"b", p.cycle.b}, {"sign", p.cycle.sign}};
  }
  return {};
}

Provenance provenance_from_json(const FermatParams& params, const nlohmann::json& j) {
  try {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "linear-pair") {
      auto p = Provenance::linear_pair(j.at("m").get<int>());
      p.validate(params);
      return p;
    }
    if (kind == "complete-intersection") {
      auto degrees = j.at("degrees").get<std::vector<int>>();
      if (j.contains("roots"))
        return Provenance::complete_intersection(DegreeVector::with_roots(
            params, std::move(degrees), j.at("roots").get<std::vector<std::vector<int>>>()));
      return Provenance::complete_intersection(DegreeVector::canonical(params, std::move(degrees)));
    }
    if (kind == "single-cycle")
      return Provenance::single_cycle(LinearCycle::make(params, j.at("a").get<std::vector<int>>(),
                                                        j.at("b").get<std::vector<int>>()));
    throw Error(ErrorCode::Parse, "unknown provenance kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("malformed provenance: ") + e.what());
  } catch (const Error& e) {
    throw Error(ErrorCode::Parse, std::string("invalid provenance: ") + e.what());
  }
}

CycMatrix::CycMatrix(int order, std::size_t rows, std::size_t cols)
    : order(order), rows(rows), cols(cols), entries(rows * cols, CycElt::zero(order)) {}

PeriodMatrix build_matrix(const FermatParams& params, const Provenance& provenance, unsigned jobs) {
  provenance.validate(params);
  PeriodMatrix out;
  out.params = params;
  out.provenance = provenance;
  out.row_index = enumerate_index_set(params, params.row_degree());
  out.col_index = enumerate_index_set(params, params.d);
  out.scalar = provenance.scalar(params);
  out.entries = CycMatrix(params.order(), out.row_index.size(), out.col_index.size());

  auto fill_rows = [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r)
      for (std::size_t c = 0; c < out.col_index.size(); ++c)
        out.entries.at(r, c) = provenance.period(params, out.row_index[r] + out.col_index[c]);
  };
  const std::size_t rows = out.row_index.size();
  const std::size_t workers = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(rows, 1));
  if (workers == 1) {
    fill_rows(0, rows);
    return out;
  }
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back(fill_rows, rows * w / workers, rows * (w + 1) / workers);
  return out;
}

std::pair<BigInt, BigInt> matrix_shape(const FermatParams& params) {
  return {index_set_size(params, params.row_degree()), index_set_size(params, params.d)};
}

namespace {

// All tuples whose pair (pairs[l].first, pairs[l].second) sums to sums[l],
// sorted lexicographically.
std::vector<ExponentIndex> tuples_with_profile(const FermatParams& params,
                                               const std::vector<std::pair<int, int>>& pairs,
                                               const std::vector<int>& sums) {
  std::vector<ExponentIndex> out;
  std::vector<int> cur(static_cast<std::size_t>(params.variables()), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t l) {
    if (l == pairs.size()) {
      out.emplace_back(cur);
      return;
    }
    const int s = sums[l];
    const int lo = std::max(0, s - (params.d - 2));
    const int hi = std::min(s, params.d - 2);
    for (int x = lo; x <= hi; ++x) {
      cur[static_cast<std::size_t>(pairs[l].first)] = x;
      cur[static_cast<std::size_t>(pairs[l].second)] = s - x;
      rec(l + 1);
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

void for_each_block(const FermatParams& params, const Provenance& provenance,
                    const std::function<void(const MatrixBlock&)>& visit) {
  provenance.validate(params);
  const auto pairs = provenance.pairs(params);
  const int cap = params.d - 2;
  for (auto& profile : enumerate_compositions(pairs.size(), cap, params.row_degree())) {
    MatrixBlock block;
    std::vector<int> complement(profile.size());
    for (std::size_t l = 0; l < profile.size(); ++l) complement[l] = cap - profile[l];
    block.row_index = tuples_with_profile(params, pairs, profile);
    block.col_index = tuples_with_profile(params, pairs, complement);
    block.profile = std::move(profile);
    block.entries = CycMatrix(params.order(), block.row_index.size(), block.col_index.size());
    for (std::size_t r = 0; r < block.row_index.size(); ++r)
      for (std::size_t c = 0; c < block.col_index.size(); ++c)
        block.entries.at(r, c) = provenance.period(params, block.row_index[r] + block.col_index[c]);
    visit(block);
  }
}

// ---------------------------------------------------------------- dump / load

namespace {

nlohmann::json index_list(const std::vector<ExponentIndex>& idx) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& i : idx) arr.push_back(std::vector<int>(i.entries().begin(), i.entries().end()));
  return arr;
}

std::string rational_string(const BigRational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

BigRational parse_rational(const std::string& s, const std::string& where) {
  BigRational q;
  if (q.set_str(s, 10) != 0 || q.get_den() == 0)
    throw Error(ErrorCode::Parse, where + ": bad rational '" + s + "'");
  q.canonicalize();
  return q;
}

std::vector<ExponentIndex> parse_index_list(const nlohmann::json& arr, std::size_t width,
                                            const std::string& where) {
  if (!arr.is_array()) throw Error(ErrorCode::Parse, where + " must be an array");
  std::vector<ExponentIndex> out;
  for (std::size_t k = 0; k < arr.size(); ++k) {
    auto v = arr[k].get<std::vector<int>>();
    if (v.size() != width)
      throw Error(ErrorCode::Parse, where + "[" + std::to_string(k) + "] must have n+2 entries");
    out.emplace_back(std::move(v));
  }
  return out;
}

std::string dump_json(const PeriodMatrix& m) {
  nlohmann::json doc;
  doc["format"] = "fhv-period-matrix";
  doc["version"] = 1;
  doc["n"] = m.params.n;
  doc["d"] = m.params.d;
  doc["provenance"] = to_json(m.provenance);
  doc["scalar"] = rational_string(m.scalar);
  doc["rows"] = index_list(m.row_index);
  doc["cols"] = index_list(m.col_index);
  nlohmann::json entries = nlohmann::json::array();
  for (std::size_t r = 0; r < m.entries.rows; ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < m.entries.cols; ++c) row.push_back(to_json(m.entries.at(r, c)));
    entries.push_back(std::move(row));
  }
  doc["entries"] = std::move(entries);
  return doc.dump() + "\n";
}

PeriodMatrix load_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::Parse, "JSON parse error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  try {
    PeriodMatrix m;
    m.params = FermatParams::make(doc.at("n").get<int>(), doc.at("d").get<int>());
    m.provenance = provenance_from_json(m.params, doc.at("provenance"));
    m.scalar = parse_rational(doc.at("scalar").get<std::string>(), "scalar");
    const auto width = static_cast<std::size_t>(m.params.variables());
    m.row_index = parse_index_list(doc.at("rows"), width, "rows");
    m.col_index = parse_index_list(doc.at("cols"), width, "cols");
    const auto& entries = doc.at("entries");
    if (!entries.is_array() || entries.size() != m.row_index.size())
      throw Error(ErrorCode::Parse, "entries must have one array per row");
    m.entries = CycMatrix(m.params.order(), m.row_index.size(), m.col_index.size());
    for (std::size_t r = 0; r < m.entries.rows; ++r) {
      const auto& row = entries[r];
      if (!row.is_array() || row.size() != m.col_index.size())
        throw Error(ErrorCode::Parse, "entries[" + std::to_string(r) + "] must have one entry per column");
      for (std::size_t c = 0; c < m.entries.cols; ++c) {
        CycElt x;
        try {
          x = cyc_from_json(row[c]);
        } catch (const Error& e) {
          throw Error(ErrorCode::Parse,
                      "entries[" + std::to_string(r) + "][" + std::to_string(c) + "]: " + e.what());
        }
        if (x.order() != m.params.order())
          throw Error(ErrorCode::Parse, "entries[" + std::to_string(r) + "][" + std::to_string(c) +
                                            "] has the wrong order");
        m.entries.at(r, c) = std::move(x);
      }
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("malformed period matrix: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Parse) throw;
    throw Error(ErrorCode::Parse, std::string("invalid period matrix: ") + e.what());
  }
}

// TSV layout:
//   #fhv-period-matrix<TAB>tsv<TAB>1
//   #n<TAB>2, #d<TAB>5, #scalar<TAB>1/25, #provenance<TAB><json>
//   #cols<TAB><j,j,j,j><TAB>...
//   <i,i,i,i><TAB><c0,c1,...><TAB>...            one line per matrix row
std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(line);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::string dump_tsv(const PeriodMatrix& m) {
  std::ostringstream out;
  out << "#fhv-period-matrix\ttsv\t1\n";
  out << "#n\t" << m.params.n << "\n#d\t" << m.params.d << "\n";
  out << "#scalar\t" << rational_string(m.scalar) << "\n";
  out << "#provenance\t" << to_json(m.provenance).dump() << "\n";
  out << "#cols";
  for (const auto& j : m.col_index) out << '\t' << join(j.entries());
  out << '\n';
  for (std::size_t r = 0; r < m.entries.rows; ++r) {
    out << join(m.row_index[r].entries());
    for (std::size_t c = 0; c < m.entries.cols; ++c) {
      out << '\t';
      const auto coeffs = m.entries.at(r, c).coeffs();
      for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (k) out << ',';
        out << coeffs[k].get_str();
      }
    }
    out << '\n';
  }
  return out.str();
}

std::vector<int> parse_int_list(const std::string& field, const std::string& where) {
  std::vector<int> out;
  for (const auto& tok : split(field, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (tok.empty() || used != tok.size()) throw Error(ErrorCode::Parse, where + ": bad integer '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

PeriodMatrix load_tsv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  std::map<std::string, std::string> header;
  std::vector<std::string> cols_fields;
  std::vector<std::pair<std::size_t, std::string>> body;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto tab = line.find('\t');
      const std::string key = line.substr(1, tab == std::string::npos ? std::string::npos : tab - 1);
      const std::string value = tab == std::string::npos ? "" : line.substr(tab + 1);
      if (key == "cols") {
        cols_fields = split(value, '\t');
        if (value.empty()) cols_fields.clear();
      }
      header[key] = value;
    } else {
      body.emplace_back(lineno, line);
    }
  }
  for (const char* key : {"fhv-period-matrix", "n", "d", "scalar", "provenance", "cols"})
    if (!header.count(key))
      throw Error(ErrorCode::Parse, "TSV line " + std::to_string(lineno) + ": missing header '#" + key + "'");

  PeriodMatrix m;
  try {
    m.params = FermatParams::make(std::stoi(header["n"]), std::stoi(header["d"]));
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::Parse, "TSV header: bad n or d");
  }
  try {
    m.provenance = provenance_from_json(m.params, nlohmann::json::parse(header["provenance"]));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("TSV header provenance: ") + e.what());
  }
  m.scalar = parse_rational(header["scalar"], "TSV header scalar");
  const auto width = static_cast<std::size_t>(m.params.variables());
  for (std::size_t k = 0; k < cols_fields.size(); ++k) {
    auto v = parse_int_list(cols_fields[k], "TSV #cols field " + std::to_string(k + 1));
    if (v.size() != width) throw Error(ErrorCode::Parse, "TSV #cols field " + std::to_string(k + 1) + ": need n+2 entries");
    m.col_index.emplace_back(std::move(v));
  }
  const auto d = static_cast<std::size_t>(m.params.d);
  m.entries = CycMatrix(m.params.order(), body.size(), m.col_index.size());
  for (std::size_t r = 0; r < body.size(); ++r) {
    const auto& [ln, text_line] = body[r];
    const std::string where = "TSV line " + std::to_string(ln);
    const auto fields = split(text_line, '\t');
    if (fields.size() != m.col_index.size() + 1)
      throw Error(ErrorCode::Parse, where + ": expected " + std::to_string(m.col_index.size() + 1) +
                                        " fields, found " + std::to_string(fields.size()));
    auto idx = parse_int_list(fields[0], where + " row index");
    if (idx.size() != width) throw Error(ErrorCode::Parse, where + ": row index needs n+2 entries");
    m.row_index.emplace_back(std::move(idx));
    for (std::size_t c = 0; c < m.col_index.size(); ++c) {
      const auto toks = split(fields[c + 1], ',');
      if (toks.size() != d)
        throw Error(ErrorCode::Parse, where + " column " + std::to_string(c + 1) + ": expected d coefficients");
      std::vector<BigInt> coeffs(d);
      for (std::size_t k = 0; k < d; ++k)
        if (coeffs[k].set_str(toks[k], 10) != 0)
          throw Error(ErrorCode::Parse, where + " column " + std::to_string(c + 1) + ": bad integer '" + toks[k] + "'");
      m.entries.at(r, c) = CycElt(m.params.order(), std::span<const BigInt>(coeffs));
    }
  }
  return m;
}

}  // namespace

std::string dump(const PeriodMatrix& matrix, MatrixFormat format) {
  return format == MatrixFormat::Json ? dump_json(matrix) : dump_tsv(matrix);
}

PeriodMatrix load(std::string_view text, MatrixFormat format) {
  return format == MatrixFormat::Json ? load_json(text) : load_tsv(text);
}

// ------------------------------------------------------------ row generation

namespace {

void require_all_ones(const FermatParams& params, const Provenance& provenance) {
  const auto expected = DegreeVector::canonical(params, std::vector<int>(static_cast<std::size_t>(params.half() + 1), 1));
  if (provenance.kind != Provenance::Kind::CompleteIntersection || !(provenance.degrees == expected))
    invalid_argument("row-generation identity applies to the all-ones complete intersection with B_k = {zeta}");
}

// phi(j) for the unique completion j of row i: (0, s_1, 0, s_2, ...).
ExponentIndex generator_row(const ExponentIndex& i) {
  std::vector<int> r(i.size(), 0);
  for (std::size_t l = 1; l <= i.size() / 2; ++l) r[2 * l - 1] = i.pair_sum(l);
  return ExponentIndex(std::move(r));
}

bool vanishing_row(const FermatParams& params, const ExponentIndex& i) {
  for (std::size_t l = 1; l <= i.size() / 2; ++l)
    if (i.pair_sum(l) > params.d - 2) return true;
  return false;
}

long long even_sum(const ExponentIndex& i) {
  long long s = 0;
  for (std::size_t k = 0; k < i.size(); k += 2) s += i[k];
  return s;
}

bool is_basis_row(const ExponentIndex& i) { return even_sum(i) == 0; }

}  // namespace

void check_row_generation_rows(const FermatParams& params, const std::vector<ExponentIndex>& rows,
                               const CycMatrix& entries, RowGenerationReport& report) {
  std::map<ExponentIndex, std::size_t> position;
  for (std::size_t r = 0; r < rows.size(); ++r) position.emplace(rows[r], r);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& i = rows[r];
    if (vanishing_row(params, i)) continue;
    if (is_basis_row(i)) ++report.basis_rows;
    const auto it = position.find(generator_row(i));
    ++report.rows_checked;
    if (it == position.end()) {
      report.mismatches += entries.cols;
      continue;
    }
    const long long shift = even_sum(i);
    for (std::size_t c = 0; c < entries.cols; ++c) {
      ++report.entries_checked;
      if (!(entries.at(r, c) == entries.at(it->second, c).shifted(shift))) ++report.mismatches;
    }
  }
}

RowGenerationReport check_row_generation(const PeriodMatrix& matrix) {
  require_all_ones(matrix.params, matrix.provenance);
  RowGenerationReport report;
  check_row_generation_rows(matrix.params, matrix.row_index, matrix.entries, report);
  return report;
}

RowGenerationReport check_row_generation_blocks(const FermatParams& params,
                                                const Provenance& provenance) {
  require_all_ones(params, provenance);
  RowGenerationReport report;
  for_each_block(params, provenance, [&](const MatrixBlock& block) {
    check_row_generation_rows(params, block.row_index, block.entries, report);
  });
  return report;
}

}  // namespace fhv
