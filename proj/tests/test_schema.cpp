#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "grouplink/schema.hpp"

using namespace grouplink;

TEST_SUITE_BEGIN("schema");

TEST_CASE("normalize_value trims, collapses and case-folds") {
    CHECK(normalize_value("  Home  Depot, The ") == "home depot, the");
    CHECK(normalize_value("808") == "808");
    CHECK(normalize_value("") == "");
    CHECK(normalize_value("\tA  B\t C ") == "a b c");
}

TEST_CASE("normalize_value is idempotent on random strings") {
    std::mt19937_64 rng(7);
    const std::string alphabet = "aA zZ\t09-,.";
    for (int trial = 0; trial < 200; ++trial) {
        std::string raw;
        const auto len = rng() % 24;
        for (std::size_t i = 0; i < len; ++i) raw.push_back(alphabet[rng() % alphabet.size()]);
        const auto once = normalize_value(raw);
        CHECK(normalize_value(once) == once);
    }
}

TEST_CASE("schema requires a common and a dominant attribute") {
    CHECK_THROWS_AS(schema({{"a", attribute_role::common_value, false}}), std::invalid_argument);
    CHECK_THROWS_AS(schema({{"a", attribute_role::common_value, false},
                            {"a", attribute_role::dominant_value, false}}),
                    std::invalid_argument); // duplicate name
}

TEST_CASE("fixture file parses into 20 records") {
    const auto data = testutil::load_listings();
    REQUIRE(data.records.size() == 20);
    const auto& r13 = data.by_id("r13");
    CHECK(r13.values_of("url") == std::set<std::string>{"tacocasa", "tacocasatexas"});
    CHECK(data.by_id("r1").values_of("name") == std::set<std::string>{"home depot, the"});
    CHECK(data.by_id("r11").values_of("phone").empty());
    CHECK(data.by_id("r19").values_of("category") == std::set<std::string>{"food store"});
}

TEST_CASE("empty data section yields an empty dataset") {
    const auto data = parse_dataset("id,name,phone,url\n", testutil::listing_schema());
    CHECK(data.records.empty());
}

TEST_CASE("duplicate ids are rejected with the row number") {
    const std::string text = "id,name,phone,url\nr1,a,1,x\nr1,b,2,y\n";
    CHECK_THROWS_WITH_AS(parse_dataset(text, testutil::listing_schema()),
                         doctest::Contains("row 3"), parse_error);
}

TEST_CASE("unknown columns and malformed rows are rejected") {
    CHECK_THROWS_AS(parse_dataset("id,bogus\nr1,x\n", testutil::listing_schema()), parse_error);
    CHECK_THROWS_WITH_AS(parse_dataset("id,name,phone\nr1,a\n", testutil::listing_schema()),
                         doctest::Contains("row 2"), parse_error);
}

TEST_CASE("quoted comma fields round-trip") {
    const std::string text = "id,name,phone,url\nr1,\"depot, the\",808,\n";
    const auto data = parse_dataset(text, testutil::listing_schema());
    CHECK(data.by_id("r1").values_of("name") == std::set<std::string>{"depot, the"});
}

TEST_CASE("parse then serialize then re-parse round-trips") {
    const auto data = testutil::load_listings();
    parse_options options;
    options.delimiter = '\t';
    const auto text = serialize_dataset(data, options);
    const auto again = parse_dataset(text, data.schema, options);
    REQUIRE(again.records.size() == data.records.size());
    for (std::size_t i = 0; i < data.records.size(); ++i) {
        CHECK(again.records[i].id == data.records[i].id);
        CHECK(again.records[i].values == data.records[i].values);
    }
    CHECK(serialize_dataset(again, options) == text);
}

TEST_CASE("gold standard parses and serializes") {
    const auto gold = parse_gold_standard_file(testutil::fixture_path("table2_gold.tsv"));
    REQUIRE(gold.size() == 20);
    CHECK(gold.at("r13") == "ch2");
    CHECK(parse_gold_standard(serialize_gold_standard(gold)) == gold);
}

TEST_SUITE_END();
