#include <doctest.h>

#include <set>

#include "fhv/error.hpp"
#include "fhv/period_matrix.hpp"
#include "fhv/rank.hpp"

using namespace fhv;

namespace {

Provenance all_ones(const FermatParams& p) {
  return Provenance::complete_intersection(
      DegreeVector::canonical(p, std::vector<int>(static_cast<std::size_t>(p.half() + 1), 1)));
}

ErrorCode parse_code(std::string_view text, MatrixFormat f) {
  try {
    load(text, f);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

}  // namespace

TEST_CASE("shapes") {
  const auto p25 = FermatParams::make(2, 5);
  const auto m = build_matrix(p25, Provenance::linear_pair(-1));
  CHECK(m.entries.rows == 4);
  CHECK(m.entries.cols == 40);
  CHECK(m.scalar == BigRational(1, 25));
  CHECK(matrix_shape(p25) == std::pair<BigInt, BigInt>{4, 40});

  const auto p23 = FermatParams::make(2, 3);
  const auto empty = build_matrix(p23, all_ones(p23));
  CHECK(empty.entries.rows == 0);
  CHECK(empty.entries.cols == 4);
  CHECK(rank_exact(empty.entries).rank == 0);

  const auto p64 = FermatParams::make(6, 4);
  CHECK(matrix_shape(p64) == std::pair<BigInt, BigInt>{266, 266});
  CHECK(build_matrix(p64, all_ones(p64)).entries.rows == 266);
  CHECK(matrix_shape(FermatParams::make(10, 3)) == std::pair<BigInt, BigInt>{220, 220});
}

TEST_CASE("provenance validation and json") {
  const auto p = FermatParams::make(4, 4);
  CHECK_THROWS_AS(build_matrix(p, Provenance::linear_pair(3)), Error);
  CHECK_THROWS_AS(build_matrix(FermatParams::make(2, 4), all_ones(p)), Error);
  for (const auto& prov : {Provenance::linear_pair(0), all_ones(p),
                           Provenance::complete_intersection(DegreeVector::with_roots(p, {1, 2, 3}, {{3}, {1, 7}, {1, 3, 5}})),
                           Provenance::single_cycle(LinearCycle::make(p, {0, 1, 3}, {2, 0, 1, 3, 4, 5}))})
    CHECK(provenance_from_json(p, to_json(prov)) == prov);
  CHECK_THROWS_AS(provenance_from_json(p, nlohmann::json{{"kind", "nope"}}), Error);
  CHECK_THROWS_AS(provenance_from_json(p, nlohmann::json{{"kind", "linear-pair"}}), Error);
}

TEST_CASE("dump and load round trip") {
  const auto p25 = FermatParams::make(2, 5);
  const auto m = build_matrix(p25, Provenance::linear_pair(-1));
  for (auto f : {MatrixFormat::Json, MatrixFormat::Tsv}) {
    const auto text = dump(m, f);
    CHECK(load(text, f) == m);
    CHECK(dump(build_matrix(p25, Provenance::linear_pair(-1), 3), f) == text);
    CHECK(parse_code(text.substr(0, text.size() / 2), f) == ErrorCode::Parse);
    CHECK(parse_code("", f) == ErrorCode::Parse);
  }
  const auto p44 = FermatParams::make(4, 4);
  const auto ci = build_matrix(p44, Provenance::complete_intersection(DegreeVector::with_roots(p44, {1, 2, 3}, {{3}, {1, 7}, {1, 3, 5}})));
  CHECK(load(dump(ci, MatrixFormat::Tsv), MatrixFormat::Tsv) == ci);
  CHECK(load(dump(ci, MatrixFormat::Json), MatrixFormat::Json) == ci);

  const auto p23 = FermatParams::make(2, 3);
  const auto empty = build_matrix(p23, all_ones(p23));
  const auto doc = nlohmann::json::parse(dump(empty, MatrixFormat::Json));
  CHECK(doc["rows"].empty());
  CHECK(doc["cols"].size() == 4);
  CHECK(load(dump(empty, MatrixFormat::Json), MatrixFormat::Json) == empty);
  CHECK(load(dump(empty, MatrixFormat::Tsv), MatrixFormat::Tsv) == empty);

  auto tampered = nlohmann::json::parse(dump(m, MatrixFormat::Json));
  tampered["entries"][1][2]["coeffs"][0] = "1x";
  try {
    load(tampered.dump(), MatrixFormat::Json);
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Parse);
    CHECK(std::string(e.what()).find("entries[1][2]") != std::string::npos);
  }
}

TEST_CASE("zero pattern outside the profile blocks") {
  for (auto [n, d] : {std::pair{2, 6}, {4, 4}, {4, 5}, {6, 4}}) {
    const auto p = FermatParams::make(n, d);
    for (const auto& prov : {Provenance::linear_pair(-1), Provenance::linear_pair(0), all_ones(p)}) {
      const auto m = build_matrix(p, prov);
      std::map<std::pair<ExponentIndex, ExponentIndex>, CycElt> in_blocks;
      std::size_t block_rows = 0;
      for_each_block(p, prov, [&](const MatrixBlock& b) {
        block_rows += b.row_index.size();
        for (std::size_t r = 0; r < b.row_index.size(); ++r)
          for (std::size_t c = 0; c < b.col_index.size(); ++c)
            in_blocks.emplace(std::pair{b.row_index[r], b.col_index[c]}, b.entries.at(r, c));
      });
      std::size_t nonvanishing_rows = 0;
      for (std::size_t r = 0; r < m.entries.rows; ++r) {
        bool small = true;
        for (std::size_t l = 1; l <= static_cast<std::size_t>(p.half() + 1); ++l)
          small = small && m.row_index[r].pair_sum(l) <= d - 2;
        nonvanishing_rows += small;
        for (std::size_t c = 0; c < m.entries.cols; ++c) {
          const auto it = in_blocks.find({m.row_index[r], m.col_index[c]});
          if (it == in_blocks.end())
            CHECK(m.entries.at(r, c).is_zero());
          else
            CHECK(it->second == m.entries.at(r, c));
          const auto sum = m.row_index[r] + m.col_index[c];
          for (std::size_t l = 1; l <= static_cast<std::size_t>(p.half() + 1); ++l)
            if (sum.pair_sum(l) > d - 2) CHECK(m.entries.at(r, c).is_zero());
        }
      }
      CHECK(block_rows == nonvanishing_rows);
    }
  }
}

TEST_CASE("row generation identity") {
  for (auto [n, d] : {std::pair{2, 5}, {2, 7}, {4, 4}, {4, 5}, {6, 4}, {10, 3}}) {
    const auto p = FermatParams::make(n, d);
    const auto m = build_matrix(p, all_ones(p));
    const auto dense = check_row_generation(m);
    const auto blocked = check_row_generation_blocks(p, all_ones(p));
    CHECK(dense.holds());
    CHECK(blocked.holds());
    CHECK(dense.rows_checked == blocked.rows_checked);
    CHECK(dense.basis_rows == blocked.basis_rows);
    CHECK(dense.rows_checked > 0);
  }
  // A wrong generator must be caught.
  const auto p = FermatParams::make(2, 5);
  auto m = build_matrix(p, all_ones(p));
  for (std::size_t c = 0; c < m.entries.cols; ++c)
    if (!m.entries.at(0, c).is_zero()) m.entries.at(0, c) = m.entries.at(0, c).shifted(1);
  CHECK_FALSE(check_row_generation(m).holds());
  CHECK_THROWS_AS(check_row_generation(build_matrix(p, Provenance::linear_pair(-1))), Error);
}
