#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <string>

#include "pstab/canonical_json.hpp"
#include "pstab/error.hpp"
#include "support/tempdir.hpp"

using nlohmann::json;

TEST_CASE("object keys are sorted") {
  json doc;
  doc["zeta"] = 1;
  doc["alpha"] = 2;
  doc["mid"] = json::array({1, 2});
  CHECK(pstab::canonical_json(doc) == R"({"alpha":2,"mid":[1,2],"zeta":1})");
}

TEST_CASE("number formatting") {
  CHECK(pstab::canonical_json(json(1)) == "1");
  CHECK(pstab::canonical_json(json(-42)) == "-42");
  CHECK(pstab::canonical_json(json(18446744073709551615ull)) == "18446744073709551615");
  CHECK(pstab::canonical_json(json(0.1)) == "0.10000000000000001");
  CHECK(pstab::canonical_json(json(2.0)) == "2");
  CHECK(pstab::canonical_json(json(-0.0)) == "0");
  CHECK(pstab::canonical_json(json(1e300)) == "1.0000000000000001e+300");
  CHECK(pstab::canonical_json(json(true)) == "true");
  CHECK(pstab::canonical_json(json(nullptr)) == "null");
}

TEST_CASE("non-finite numbers are rejected") {
  CHECK_THROWS_AS(pstab::canonical_json(json(std::nan(""))), pstab::Error);
  CHECK_THROWS_AS(pstab::canonical_json(json(std::numeric_limits<double>::infinity())),
                  pstab::Error);
  json nested;
  nested["values"] = json::array({1.0, -std::numeric_limits<double>::infinity()});
  CHECK_THROWS_AS(pstab::canonical_json(nested), pstab::Error);
}

TEST_CASE("string escaping") {
  CHECK(pstab::canonical_json(json("a\"b\\c")) == R"("a\"b\\c")");
  CHECK(pstab::canonical_json(json("line\nbreak\tand\x01")) ==
        "\"line\\nbreak\\tand\\u0001\"");
  CHECK(pstab::canonical_json(json("caf\xc3\xa9")) == "\"caf\xc3\xa9\"");
}

using namespace testsupport;

TEST_CASE("write, parse, rewrite is byte identical") {
  TempDir dir;
  json doc;
  doc["metrics"] = {{"mse", 0.1}, {"t_avg", 0.987654321098765}, {"count", 7}};
  doc["seeds"] = json::array({0, 1, 2});
  doc["name"] = "run \"alpha\"";
  doc["flag"] = true;
  doc["nothing"] = nullptr;
  doc["tiny"] = 5e-324;
  const std::string first = dir.file("a.json");
  const std::string second = dir.file("b.json");
  pstab::write_canonical_json(doc, first);
  const json reparsed = pstab::load_json(first);
  pstab::write_canonical_json(reparsed, second);
  CHECK(read_bytes(first) == read_bytes(second));
  CHECK(!read_bytes(first).empty());
}

TEST_CASE("load rejects malformed files") {
  TempDir dir;
  const std::string path = dir.file("bad.json");
  write_text(path, "{not json");
  CHECK_THROWS_AS(pstab::load_json(path), pstab::Error);
  CHECK_THROWS_AS(pstab::load_json(dir.file("missing.json")), pstab::Error);
}

TEST_CASE("canonical hash is stable and sensitive") {
  json doc;
  doc["a"] = 1;
  const std::string h1 = pstab::canonical_hash_hex(doc);
  CHECK(h1.size() == 16);
  CHECK(h1.find_first_not_of("0123456789abcdef") == std::string::npos);
  CHECK(pstab::canonical_hash_hex(doc) == h1);
  json other = doc;
  other["a"] = 2;
  CHECK(pstab::canonical_hash_hex(other) != h1);
  json reordered;
  reordered["a"] = 1;
  CHECK(pstab::canonical_hash_hex(reordered) == h1);
}
