#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <random>
#include <string>

#include "pstab/error.hpp"
#include "pstab/io.hpp"
#include "support/oracles.hpp"
#include "support/tempdir.hpp"

using pstab::Matrix;
using pstab::MatrixFormat;
using testsupport::TempDir;

namespace {

std::string error_message(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const pstab::Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("csv basic load") {
  TempDir dir;
  const auto path = dir.file("m.csv");
  testsupport::write_text(path, "0,0\n1,0\n0,1\n");
  Matrix m = pstab::load_matrix(path, MatrixFormat::csv);
  CHECK(m.rows == 3);
  CHECK(m.cols == 2);
  CHECK(m.values == std::vector<double>{0, 0, 1, 0, 0, 1});
}

TEST_CASE("csv header is honored and checked") {
  TempDir dir;
  const auto good = dir.file("good.csv");
  testsupport::write_text(good, "# 2 2\n1,2\n3,4\n");
  Matrix m = pstab::load_matrix(good, MatrixFormat::csv);
  CHECK(m.rows == 2);
  CHECK(m.at(1, 1) == 4);

  const auto bad = dir.file("bad.csv");
  testsupport::write_text(bad, "# 3 2\n1,2\n3,4\n");
  const auto msg = error_message([&] { pstab::load_matrix(bad, MatrixFormat::csv); });
  CHECK(msg.find("header") != std::string::npos);
}

TEST_CASE("csv parse error names row and column") {
  TempDir dir;
  const auto path = dir.file("bad.csv");
  testsupport::write_text(path, "1,2\n3,abc\n");
  const auto msg = error_message([&] { pstab::load_matrix(path, MatrixFormat::csv); });
  CHECK(msg.find("row 2") != std::string::npos);
  CHECK(msg.find("column 2") != std::string::npos);
  CHECK(msg.find("abc") != std::string::npos);
}

TEST_CASE("csv rejects non-finite values") {
  TempDir dir;
  const auto path = dir.file("nan.csv");
  testsupport::write_text(path, "1,2\nnan,4\n");
  CHECK_THROWS_AS(pstab::load_matrix(path, MatrixFormat::csv), pstab::Error);
  const auto inf = dir.file("inf.csv");
  testsupport::write_text(inf, "inf\n");
  CHECK_THROWS_AS(pstab::load_matrix(inf, MatrixFormat::csv), pstab::Error);
}

TEST_CASE("csv ragged rows rejected") {
  TempDir dir;
  const auto path = dir.file("ragged.csv");
  testsupport::write_text(path, "1,2\n3\n");
  CHECK_THROWS_AS(pstab::load_matrix(path, MatrixFormat::csv), pstab::Error);
}

TEST_CASE("csv tolerates CRLF and trailing blank lines") {
  TempDir dir;
  const auto path = dir.file("crlf.csv");
  testsupport::write_text(path, "1,2\r\n3,4\r\n\r\n");
  Matrix m = pstab::load_matrix(path, MatrixFormat::csv);
  CHECK(m.rows == 2);
  CHECK(m.at(1, 0) == 3);
}

TEST_CASE("csv round trip preserves values exactly") {
  TempDir dir;
  std::mt19937_64 gen(5);
  Matrix m = oracle::random_matrix(7, 3, gen, 3.0);
  m.at(0, 0) = 1.0 / 3.0;
  m.at(0, 1) = -0.0;
  const auto path = dir.file("round.csv");
  pstab::write_matrix(m, path, MatrixFormat::csv);
  Matrix back = pstab::load_matrix(path, MatrixFormat::csv);
  REQUIRE(back.same_shape(m));
  for (std::size_t k = 0; k < m.values.size(); ++k) {
    CHECK(back.values[k] == m.values[k]);
  }
}

TEST_CASE("binary round trip is bit exact and stable") {
  TempDir dir;
  std::mt19937_64 gen(6);
  Matrix m = oracle::random_matrix(11, 4, gen, 2.0);
  const auto p1 = dir.file("a.bin");
  const auto p2 = dir.file("b.bin");
  pstab::write_matrix(m, p1, MatrixFormat::binary);
  Matrix back = pstab::load_matrix(p1, MatrixFormat::binary);
  CHECK(back.values == m.values);
  pstab::write_matrix(back, p2, MatrixFormat::binary);
  CHECK(testsupport::read_bytes(p1) == testsupport::read_bytes(p2));
}

TEST_CASE("binary corrupt magic and truncation") {
  TempDir dir;
  Matrix m(2, 2, std::vector<double>{1, 2, 3, 4});
  const auto path = dir.file("m.bin");
  pstab::write_matrix(m, path, MatrixFormat::binary);
  auto bytes = testsupport::read_bytes(path);

  auto corrupt = bytes;
  corrupt[0] = 'X';
  const auto bad_magic = dir.file("bad.bin");
  testsupport::write_text(bad_magic, corrupt);
  const auto msg =
      error_message([&] { pstab::load_matrix(bad_magic, MatrixFormat::binary); });
  CHECK(msg.find("magic") != std::string::npos);

  const auto truncated = dir.file("trunc.bin");
  testsupport::write_text(truncated, bytes.substr(0, bytes.size() - 5));
  CHECK_THROWS_AS(pstab::load_matrix(truncated, MatrixFormat::binary), pstab::Error);

  auto versioned = bytes;
  versioned[4] = 9;
  const auto bad_version = dir.file("ver.bin");
  testsupport::write_text(bad_version, versioned);
  CHECK_THROWS_AS(pstab::load_matrix(bad_version, MatrixFormat::binary), pstab::Error);
}

TEST_CASE("autodetect picks binary by magic and csv otherwise") {
  TempDir dir;
  Matrix m(2, 2, std::vector<double>{1, 2, 3, 4});
  const auto bin = dir.file("m.dat");
  pstab::write_matrix(m, bin, MatrixFormat::binary);
  Matrix from_bin = pstab::load_matrix(bin);
  CHECK(from_bin.values == m.values);

  const auto csv = dir.file("m.txt");
  pstab::write_matrix(m, csv, MatrixFormat::csv);
  Matrix from_csv = pstab::load_matrix(csv);
  CHECK(from_csv.values == m.values);
}

TEST_CASE("format names round trip") {
  CHECK(pstab::matrix_format_from_name("csv") == MatrixFormat::csv);
  CHECK(pstab::matrix_format_from_name("binary") == MatrixFormat::binary);
  CHECK(pstab::matrix_format_from_name("auto") == MatrixFormat::autodetect);
  CHECK_THROWS_AS(pstab::matrix_format_from_name("xml"), pstab::Error);
  CHECK(std::string(pstab::matrix_format_name(MatrixFormat::csv)) == "csv");
}

TEST_CASE("missing file errors") {
  CHECK_THROWS_AS(pstab::load_matrix("/nonexistent/x.csv", MatrixFormat::csv),
                  pstab::Error);
  CHECK_THROWS_AS(pstab::load_labels("/nonexistent/y.txt"), pstab::Error);
}

TEST_CASE("labels basic") {
  TempDir dir;
  const auto path = dir.file("l.txt");
  testsupport::write_text(path, "0\n1\n0\n");
  pstab::Labels l = pstab::load_labels(path);
  CHECK(l.values == std::vector<int>{0, 1, 0});
  CHECK(l.class_count == 2);
  CHECK(l.original_ids == std::vector<long long>{0, 1});
}

TEST_CASE("labels gap remap keeps mapping") {
  TempDir dir;
  const auto path = dir.file("l.txt");
  testsupport::write_text(path, "2\n5\n2\n");
  pstab::Labels l = pstab::load_labels(path);
  CHECK(l.values == std::vector<int>{0, 1, 0});
  CHECK(l.class_count == 2);
  CHECK(l.original_ids == std::vector<long long>{2, 5});
}

TEST_CASE("labels error cases") {
  TempDir dir;
  const auto neg = dir.file("neg.txt");
  testsupport::write_text(neg, "-1\n");
  CHECK_THROWS_AS(pstab::load_labels(neg), pstab::Error);

  const auto empty = dir.file("empty.txt");
  testsupport::write_text(empty, "");
  CHECK_THROWS_AS(pstab::load_labels(empty), pstab::Error);

  const auto junk = dir.file("junk.txt");
  testsupport::write_text(junk, "1\ntwo\n");
  const auto msg = error_message([&] { pstab::load_labels(junk); });
  CHECK(msg.find("row 2") != std::string::npos);
}

TEST_CASE("labels round trip") {
  TempDir dir;
  pstab::Labels l;
  l.values = {0, 2, 1, 1};
  l.class_count = 3;
  const auto path = dir.file("l.txt");
  pstab::write_labels(l, path);
  pstab::Labels back = pstab::load_labels(path);
  CHECK(back.values == l.values);
  CHECK(back.class_count == 3);
}
