#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "orbitgf/error.hpp"
#include "support.hpp"

using namespace orbitgf;
using nlohmann::json;
using testing::builtin_catalog;
using testing::group;

namespace fs = std::filesystem;

namespace {

std::string spec_error(const std::string& text) {
  try {
    parse_spec_text(text);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SpecParse);
    return e.what();
  }
  FAIL("spec accepted: " << text);
  return {};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("orbitgf-test-" + std::to_string(std::rand()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

const ScanPair* find_pair(const ScanReport& r, const std::string& a, const std::string& b) {
  for (const auto& p : r.pairs) {
    if ((p.first == a && p.second == b) || (p.first == b && p.second == a)) return &p;
  }
  return nullptr;
}

}  // namespace

TEST_SUITE("spec io") {
  TEST_CASE("specs round trip through JSON") {
    for (const auto& name : builtin_names()) {
      const auto spec = named_spec(name);
      const auto j = spec_to_json(spec);
      INFO(name);
      CHECK(spec_to_json(spec_from_json(j)) == j);
      CHECK(canonical_dump(spec_to_json(parse_spec_text(canonical_dump(j)))) == canonical_dump(j));
    }
  }

  TEST_CASE("every shipped spec file parses") {
    for (const auto& [file, text] : embedded_spec_files()) {
      INFO(file);
      CHECK_NOTHROW(parse_spec_text(text));
    }
  }

  TEST_CASE("named references") {
    CHECK(build(named_spec("cyclic:7")).order() == 7);
    CHECK(build(named_spec("dihedral:18")).table() == group("G18_1").table());
    CHECK(build(named_spec("quaternion:16")).order() == 16);
    CHECK(build(named_spec("extraspecial:2:32:two")).order() == 32);
    CHECK(build(named_spec("stem:phi3:3")).order() == 81);
    CHECK(build(parse_spec_text(R"({"kind": "direct_product", "factors": ["Q8", "cyclic:3"]})")) ==
          group("Q8xC3"));
    CHECK_THROWS_AS(named_spec("cyclic:x"), Error);
    CHECK_THROWS_AS(named_spec("no-such-group"), Error);
  }

  TEST_CASE("table and permutation specs") {
    const auto c3 = build(parse_spec_text(R"({"kind": "table", "rows": [[0,1,2],[1,2,0],[2,0,1]]})"));
    CHECK(c3.order() == 3);
    const auto s3 = build(
        parse_spec_text(R"({"kind": "permutations", "degree": 3, "generators": [[1,0,2],[1,2,0]]})"));
    CHECK(class_equation(s3) == class_equation(group("S3")));
    try {
      build(parse_spec_text(R"({"kind": "table", "rows": [[0,1],[1,1]]})"));
      FAIL("bad table accepted");
    } catch (const Error& e) {
      CHECK(e.code() != ErrorCode::SpecParse);
    }
  }

  TEST_CASE("schema violations carry a JSON path") {
    const auto bad_word = spec_error(R"({
      "kind": "pc", "relative_orders": [2, 3, 3],
      "conjugates": [{"gen": 2, "by": 0, "word": [[2, 1]]}, {"gen": 2, "by": 1, "word": [[0, 1]]}]
    })");
    CHECK(bad_word.find("$.conjugates[1].word[0]") != std::string::npos);

    const auto pair = spec_error(R"({"kind": "pc", "relative_orders": [2, 2], "powers": [{"gen": 0, "word": [[1]]}]})");
    CHECK(pair.find("$.powers[0].word[0]") != std::string::npos);

    CHECK(spec_error(R"({"kind": "cyclic", "n": 4, "extra": 1})").find("$.extra") != std::string::npos);
    CHECK(spec_error(R"({"kind": "cyclic"})").find("$.n") != std::string::npos);
    CHECK(spec_error(R"({"kind": "nope"})").find("$.kind") != std::string::npos);
    CHECK(spec_error(R"({"kind": "pc", "relative_orders": [2, 1]})").find("$.relative_orders[1]") !=
          std::string::npos);
    CHECK(spec_error("{ not json").find("$") != std::string::npos);
    CHECK(spec_error(R"({"kind": "direct_product", "factors": [{"kind": "cyclic", "n": -2}]})")
              .find("$.factors[0].n") != std::string::npos);
  }
}

TEST_SUITE("catalog") {
  TEST_CASE("records round trip") {
    for (const char* name : {"Q8", "G54_6", "frob72", "Phi10_p3"}) {
      const auto r = compute_record(group(name));
      const auto j = record_to_json(r);
      INFO(name);
      CHECK(record_from_json(j) == r);
      CHECK(canonical_dump(record_to_json(record_from_json(json::parse(canonical_dump(j))))) ==
            canonical_dump(j));
    }
  }

  TEST_CASE("exact rationals are strings") {
    const auto j = record_to_json(compute_record(group("Q8")));
    CHECK(j["A_pf"][0]["residue"] == "1/4");
    CHECK(j["A_pf"][0]["m"] == "8");
    CHECK(j["B"]["num"] == json::array({"1", "-1"}));
  }

  TEST_CASE("non-canonical records are rejected") {
    auto j = record_to_json(compute_record(group("Q8")));
    j["A"]["num"][0] = "2/4";
    CHECK_THROWS_AS(record_from_json(j), Error);
    j = record_to_json(compute_record(group("Q8")));
    j["B"]["den"][0] = "2";
    CHECK_THROWS_AS(record_from_json(j), Error);
    j = record_to_json(compute_record(group("Q8")));
    j["A_pf"][0]["residue"] = "1/3";
    try {
      record_from_json(j);
      FAIL("bad partial fractions accepted");
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find("$.A_pf") != std::string::npos);
    }
  }

  TEST_CASE("Q8 entry re-serializes to identical bytes") {
    Catalog c;
    c.entries.push_back(compute_entry("Q8", named_spec("Q8")));
    const auto text = canonical_dump(catalog_to_json(c));
    CHECK(canonical_dump(catalog_to_json(catalog_from_json(json::parse(text)))) == text);
  }

  TEST_CASE("builder failures become unavailable entries") {
    const auto e = compute_entry("G128_2022", named_spec("G128_2022"));
    CHECK_FALSE(e.computed());
    CHECK(e.reason.find("InconsistentPresentation") == 0);
  }

  TEST_CASE("catalog files load and recompute identically") {
    TempDir dir;
    const auto file = dir.path / "catalog.json";
    save_catalog(builtin_catalog(), file);
    const auto loaded = load_catalog(file);
    REQUIRE(loaded.entries.size() == builtin_catalog().entries.size());
    for (std::size_t i = 0; i < loaded.entries.size(); ++i) {
      const auto& e = loaded.entries[i];
      INFO(e.name);
      CHECK(e.name == builtin_catalog().entries[i].name);
      CHECK(e.record == builtin_catalog().entries[i].record);
      const auto again = compute_entry(e.name, e.spec);
      CHECK(again.record == e.record);
    }
    std::ifstream in(file);
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(text == canonical_dump(catalog_to_json(builtin_catalog())));
  }

  TEST_CASE("catalog schema violations") {
    CHECK_THROWS_AS(catalog_from_json(json{{"schema", "other"}, {"entries", json::array()}}), Error);
    auto j = catalog_to_json(builtin_catalog());
    j["entries"][1]["status"] = "maybe";
    try {
      catalog_from_json(j);
      FAIL("bad status accepted");
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find("$.entries[1].status") != std::string::npos);
    }
  }

  TEST_CASE("record cache") {
    TempDir dir;
    const auto& g = group("D12");
    const auto first = cached_record(g, dir.path);
    const auto file = dir.path / (group_id(g) + ".json");
    REQUIRE(fs::exists(file));
    CHECK(cached_record(g, dir.path) == first);
    std::ofstream(file) << "garbage";
    CHECK(cached_record(g, dir.path) == first);
  }

  TEST_CASE("scan predicates") {
    const auto& c = builtin_catalog();
    const auto b_not_a = scan(c, ScanPredicate::BNotA);
    CHECK(find_pair(b_not_a, "G54_6", "G54_8") != nullptr);
    const auto both = scan(c, parse_scan_predicate("ab-not-normalized-distinguishable"));
    const auto* p18 = find_pair(both, "G18_1", "G18_4");
    REQUIRE(p18 != nullptr);
    CHECK(p18->a_equivalent);
    CHECK(p18->b_equivalent);
    const auto a_not_b = scan(c, ScanPredicate::ANotB);
    CHECK(find_pair(a_not_b, "G128_1758", "G128_2022_completed") != nullptr);
    REQUIRE(a_not_b.unavailable.size() == 1);
    CHECK(a_not_b.unavailable[0].first == "G128_2022");
    CHECK_THROWS_AS(parse_scan_predicate("sideways"), Error);
  }

  TEST_CASE("scan reports are sorted and symmetric") {
    const auto r = scan(builtin_catalog(), ScanPredicate::All);
    for (std::size_t i = 1; i < r.pairs.size(); ++i) {
      const auto& a = r.pairs[i - 1];
      const auto& b = r.pairs[i];
      CHECK(std::tie(a.order_first, a.first, a.order_second, a.second) <
            std::tie(b.order_first, b.first, b.order_second, b.second));
    }
    const auto flipped = scan(builtin_catalog(), ScanPredicate::All, {"G54_8", "G54_6"});
    REQUIRE(flipped.pairs.size() == 1);
    const auto* p = find_pair(r, "G54_6", "G54_8");
    REQUIRE(p != nullptr);
    CHECK(flipped.pairs[0].a_equivalent == p->a_equivalent);
    CHECK(flipped.pairs[0].b_equivalent == p->b_equivalent);
    CHECK(flipped.pairs[0].same_normalized_A == p->same_normalized_A);
  }

  TEST_CASE("scan needs two computed entries") {
    auto code = [](const std::function<void()>& f) {
      try {
        f();
      } catch (const Error& e) {
        return e.code();
      }
      return ErrorCode::Parse;
    };
    CHECK(code([] { scan(Catalog{}, ScanPredicate::All); }) == ErrorCode::Unavailable);
    CHECK(code([] { scan(builtin_catalog(), ScanPredicate::All, {"G128_2022", "G128_1758"}); }) ==
          ErrorCode::Unavailable);
    CHECK(code([] { scan(builtin_catalog(), ScanPredicate::All, {"Q8", "missing"}); }) ==
          ErrorCode::Unavailable);
  }

  TEST_CASE("scan cross-checks A-equivalence against class equations") {
    Catalog c;
    c.entries.push_back(compute_entry("C4", named_spec("C4")));
    c.entries.push_back(compute_entry("C2xC2", named_spec("C2xC2")));
    c.entries[1].record->spectrum.counts = {{2, 4}};
    CHECK_THROWS_AS(scan(c, ScanPredicate::All), std::logic_error);
  }

  TEST_CASE("scan JSON") {
    const auto j = scan_to_json(scan(builtin_catalog(), ScanPredicate::BNotA));
    CHECK(j["schema"] == kScanSchema);
    CHECK(j["predicate"] == "b-not-a");
    CHECK(j["pairs"][0]["first"] == "G54_6");
  }
}

TEST_SUITE("catalog properties") {
  TEST_CASE("catalog output is deterministic") {
    const auto one = canonical_dump(catalog_to_json(build_builtin_catalog(1)));
    const auto many = canonical_dump(catalog_to_json(build_builtin_catalog(4)));
    CHECK(one == many);
    CHECK(one == canonical_dump(catalog_to_json(builtin_catalog())));
  }

  TEST_CASE("built-in catalog reproduces the counterexample relationships") {
    const auto& c = builtin_catalog();
    const auto r = scan(c, ScanPredicate::All);
    const auto* p18 = find_pair(r, "G18_1", "G18_4");
    const auto* p54 = find_pair(r, "G54_6", "G54_8");
    const auto* p128 = find_pair(r, "G128_1758", "G128_2022_completed");
    REQUIRE(p18);
    REQUIRE(p54);
    REQUIRE(p128);
    CHECK(p18->a_equivalent);
    CHECK(p18->b_equivalent);
    CHECK_FALSE(p54->a_equivalent);
    CHECK(p54->b_equivalent);
    CHECK(p128->a_equivalent);
    CHECK_FALSE(p128->b_equivalent);
    CHECK_FALSE(c.find("G128_2022")->computed());
    CHECK(find_pair(r, "G128_1758", "G128_2022") == nullptr);
  }
}
