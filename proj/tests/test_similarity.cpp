#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "grouplink/jaro_winkler.hpp"
#include "grouplink/signature.hpp"
#include "grouplink/similarity.hpp"

using namespace grouplink;

TEST_SUITE_BEGIN("similarity");

TEST_CASE("jaro_winkler basics") {
    CHECK(jaro_winkler("home depot, the", "home depot, the") == 1.0);
    CHECK(jaro_winkler("abc", "") == 0.0);
    CHECK(jaro_winkler("", "") == 1.0);
    CHECK(jaro("martha", "marhta") == doctest::Approx(0.944444).epsilon(1e-5));
    CHECK(jaro_winkler("martha", "marhta") == doctest::Approx(0.9611).epsilon(1e-4));
}

TEST_CASE("jaro_winkler is symmetric and 1 only for equal strings") {
    std::mt19937_64 rng(11);
    const std::string alphabet = "abcdef ";
    auto random_string = [&] {
        std::string s;
        const auto len = rng() % 10;
        for (std::size_t i = 0; i < len; ++i) s.push_back(alphabet[rng() % alphabet.size()]);
        return s;
    };
    for (int trial = 0; trial < 300; ++trial) {
        const auto a = random_string();
        const auto b = random_string();
        const double ab = jaro_winkler(a, b);
        CHECK(ab == jaro_winkler(b, a));
        CHECK(ab >= 0.0);
        CHECK(ab <= 1.0);
        if (a != b) CHECK(ab < 1.0);
    }
}

TEST_CASE("shared-prefix extension does not lower the score") {
    std::mt19937_64 rng(13);
    const std::string alphabet = "abcdef";
    auto random_string = [&] {
        std::string s;
        const auto len = 1 + rng() % 8;
        for (std::size_t i = 0; i < len; ++i) s.push_back(alphabet[rng() % alphabet.size()]);
        return s;
    };
    for (int trial = 0; trial < 200; ++trial) {
        const auto a = random_string();
        const auto b = random_string();
        const auto base = jaro_winkler(a, b);
        CHECK(jaro_winkler("xy" + a, "xy" + b) >= base - 1e-9);
    }
}

TEST_CASE("signature weights follow value popularity") {
    const auto data = testutil::load_listings();
    std::vector<const record*> cr1;
    for (const auto& id : {"r1", "r2", "r3", "r4", "r5", "r6", "r7"}) cr1.push_back(&data.by_id(id));
    const auto sig = build_signature(cr1, data.schema);
    CHECK(sig.weight_of("phone", "808") == 5.0 / 7.0);
    CHECK(sig.weight_of("phone", "101") == 1.0 / 7.0);
    CHECK(sig.weight_of("phone", "102") == 1.0 / 7.0);
    CHECK(sig.weight_of("url", "homedepot") == 5.0 / 7.0);
    CHECK(sig.record_count == 7);

    const auto singleton = build_signature(std::vector<const record*>{&data.by_id("r8")}, data.schema);
    for (const auto& [attr, values] : singleton.weights)
        for (const auto& [value, weight] : values) {
            (void)attr;
            (void)value;
            CHECK(weight == 1.0);
        }
    CHECK_THROWS_AS(build_signature(std::vector<const record*>{}, data.schema), std::invalid_argument);
}

TEST_CASE("accumulator matches a fresh signature after adds and removes") {
    const auto data = testutil::load_listings();
    signature_accumulator acc;
    for (const auto& id : {"r1", "r2", "r3", "r8"}) acc.add(data.by_id(id));
    acc.remove(data.by_id("r8"));
    std::vector<const record*> expected{&data.by_id("r1"), &data.by_id("r2"), &data.by_id("r3")};
    CHECK(acc.snapshot().weights == build_signature(expected, data.schema).weights);
}

namespace {

signature make_sig(std::map<std::string, std::map<std::string, double>> weights, int count) {
    signature sig;
    sig.weights = std::move(weights);
    sig.record_count = count;
    return sig;
}

} // namespace

TEST_CASE("sim_dom reproduces the worked primary-value probabilities") {
    const auto sch = testutil::listing_schema();
    similarity_params params;
    params.p = 0.9;
    // One shared URL with cluster-side weight .71, no phone match.
    const auto e = make_sig({{"url", {{"homedepot", 1.0}}}, {"phone", {{"103", 1.0}}}}, 1);
    const auto cl = make_sig({{"url", {{"homedepot", 0.71}}},
                              {"phone", {{"808", 0.71}, {"101", 0.14}, {"102", 0.14}}}},
                             7);
    CHECK(sim_dom(e, cl, sch, params) == doctest::Approx(0.639).epsilon(1e-3));

    const auto cl_rare = make_sig({{"url", {{"homedepot", 0.14}}}}, 7);
    CHECK(sim_dom(e, cl_rare, sch, params) == doctest::Approx(0.126).epsilon(1e-3));

    const auto no_dom = make_sig({{"name", {{"x", 1.0}}}}, 1);
    CHECK(sim_dom(no_dom, cl, sch, params) == 0.0);
}

TEST_CASE("sim_dom is monotone in matching-pair weight") {
    const auto sch = testutil::listing_schema();
    similarity_params params;
    const auto e = make_sig({{"url", {{"homedepot", 1.0}}}}, 1);
    double previous = -1.0;
    for (double w = 0.1; w <= 1.0; w += 0.1) {
        const auto cl = make_sig({{"url", {{"homedepot", w}}}}, 5);
        const double sim = sim_dom(e, cl, sch, params);
        CHECK(sim >= previous);
        previous = sim;
    }
}

TEST_CASE("sim_com uses the best weighted match per attribute") {
    const auto sch = testutil::listing_schema();
    similarity_params params;
    const auto unanimous = make_sig({{"name", {{"home depot, the", 1.0}}}}, 7);
    CHECK(sim_com(make_sig({{"name", {{"home depot, the", 1.0}}}}, 1), unanimous, sch, params) == 1.0);
    CHECK(sim_com(make_sig({}, 1), unanimous, sch, params) == 0.0); // one side empty
    const auto e = make_sig({{"name", {{"home depot, usa", 1.0}}}}, 1);
    CHECK(sim_com(e, unanimous, sch, params) ==
          doctest::Approx(jaro_winkler("home depot, usa", "home depot, the")));
    // mutually absent common attribute counts as no evidence against
    CHECK(sim_com(make_sig({}, 1), make_sig({}, 1), sch, params) == 1.0);
}

TEST_CASE("sim_multi is a threshold Jaccard averaged over multi attributes") {
    const auto sch = testutil::listing_schema();
    similarity_params params;
    const auto both = make_sig({{"category", {{"restaurant", 1.0}}}, {"location", {{"al", 1.0}}}}, 1);
    CHECK(sim_multi(both, both, sch, params) == 1.0);
    const auto disjoint = make_sig({{"category", {{"bank", 1.0}}}, {"location", {{"tx", 1.0}}}}, 1);
    CHECK(sim_multi(both, disjoint, sch, params) == 0.0);
    const auto superset =
        make_sig({{"category", {{"restaurant", 0.5}, {"food store", 0.5}}}, {"location", {{"al", 1.0}}}}, 2);
    CHECK(sim_multi(both, superset, sch, params) == doctest::Approx(0.75)); // (0.5 + 1) / 2
}

TEST_CASE("element_cluster_sim combines the parts per the threshold rule") {
    const auto sch = testutil::listing_schema();
    similarity_params params; // w_c = w_o = 1
    // common agreement only: sim_s = .5 < theta_th, multi evidence suppressed
    const auto e = make_sig({{"name", {{"acme", 1.0}}}, {"category", {{"bank", 1.0}}}}, 1);
    const auto cl = make_sig({{"name", {{"acme", 1.0}}}, {"category", {{"bank", 1.0}}}}, 3);
    CHECK(element_cluster_sim(e, cl, sch, params) == doctest::Approx(0.5));

    // everything matches: clamped at 1
    const auto full_e = make_sig(
        {{"name", {{"acme", 1.0}}}, {"phone", {{"808", 1.0}}}, {"category", {{"bank", 1.0}}}}, 1);
    const auto full_cl = make_sig(
        {{"name", {{"acme", 1.0}}}, {"phone", {{"808", 1.0}}}, {"category", {{"bank", 1.0}}}}, 3);
    // multi evidence averages category (1) with the absent location (0)
    CHECK(element_cluster_sim(full_e, full_cl, sch, params) == doctest::Approx(0.95));

    // sim_s exactly at theta_th: the multi bonus applies (boundary inclusive)
    const auto edge_e = make_sig(
        {{"name", {{"acme", 1.0}}}, {"phone", {{"808", 1.0}}}, {"category", {{"bank", 1.0}}}}, 1);
    const auto edge_cl = make_sig(
        {{"name", {{"acme", 1.0}}}, {"phone", {{"808", 0.25}}}, {"category", {{"bank", 1.0}}}}, 4);
    // sim_s = (1 + .8*.25)/2 = .6 exactly; bonus .1 * (1 + 0)/2
    CHECK(element_cluster_sim(edge_e, edge_cl, sch, params) == doctest::Approx(0.65));

    // full agreement on every attribute clamps at 1
    const auto clamp_e = make_sig({{"name", {{"acme", 1.0}}},
                                   {"phone", {{"808", 1.0}}},
                                   {"category", {{"bank", 1.0}}},
                                   {"location", {{"tx", 1.0}}}},
                                  1);
    const auto clamp_cl = make_sig({{"name", {{"acme", 1.0}}},
                                    {"phone", {{"808", 1.0}}},
                                    {"category", {{"bank", 1.0}}},
                                    {"location", {{"tx", 1.0}}}},
                                   3);
    CHECK(element_cluster_sim(clamp_e, clamp_cl, sch, params) == 1.0);
}

TEST_CASE("element_cluster_sim stays in range on random signatures") {
    const auto sch = testutil::listing_schema();
    similarity_params params;
    std::mt19937_64 rng(17);
    auto random_sig = [&] {
        std::map<std::string, std::map<std::string, double>> weights;
        for (const auto& attr : {"name", "phone", "url", "category"}) {
            if (rng() % 3 == 0) continue;
            const int n = 1 + rng() % 3;
            for (int i = 0; i < n; ++i)
                weights[attr][std::string("v") + std::to_string(rng() % 6)] = (1 + rng() % 10) / 10.0;
        }
        return make_sig(std::move(weights), 1 + rng() % 5);
    };
    for (int trial = 0; trial < 200; ++trial) {
        const double sim = element_cluster_sim(random_sig(), random_sig(), sch, params);
        CHECK(sim >= 0.0);
        CHECK(sim <= 1.0);
    }
}

TEST_CASE("similarity does not depend on schema attribute order") {
    const schema forward({{"name", attribute_role::common_value, false},
                          {"phone", attribute_role::dominant_value, false},
                          {"url", attribute_role::dominant_value, true},
                          {"category", attribute_role::multi_value, true}});
    const schema reversed({{"category", attribute_role::multi_value, true},
                           {"url", attribute_role::dominant_value, true},
                           {"phone", attribute_role::dominant_value, false},
                           {"name", attribute_role::common_value, false}});
    similarity_params params;
    std::mt19937_64 rng(19);
    auto random_sig = [&] {
        std::map<std::string, std::map<std::string, double>> weights;
        for (const auto& attr : {"name", "phone", "url", "category"}) {
            if (rng() % 4 == 0) continue;
            const int n = 1 + rng() % 3;
            for (int i = 0; i < n; ++i)
                weights[attr][std::string("v") + std::to_string(rng() % 5)] = (1 + rng() % 10) / 10.0;
        }
        return make_sig(std::move(weights), 1 + rng() % 4);
    };
    for (int trial = 0; trial < 100; ++trial) {
        const auto e = random_sig();
        const auto cl = random_sig();
        CHECK(element_cluster_sim(e, cl, forward, params) ==
              doctest::Approx(element_cluster_sim(e, cl, reversed, params)).epsilon(1e-12));
    }
}

TEST_CASE("signature weights per attribute sum to the average values per record") {
    const auto data = testutil::load_listings();
    std::vector<const record*> all;
    for (const auto& rec : data.records) all.push_back(&rec);
    const auto sig = build_signature(all, data.schema);
    for (const auto& [attr, values] : sig.weights) {
        double weight_sum = 0.0;
        for (const auto& [value, weight] : values) {
            (void)value;
            CHECK(weight > 0.0);
            CHECK(weight <= 1.0);
            weight_sum += weight;
        }
        double value_count = 0.0;
        for (const record* rec : all) value_count += rec->values_of(attr).size();
        CHECK(weight_sum == doctest::Approx(value_count / all.size()));
    }
}

TEST_CASE("distinct values get boosted weights") {
    const auto sch = testutil::listing_schema();
    similarity_params params;
    const auto e = make_sig({{"name", {{"acme", 1.0}}}, {"url", {{"acme-web", 1.0}}}}, 1);
    const auto cl = make_sig({{"name", {{"acme", 1.0}}}, {"url", {{"acme-web", 0.5}}}}, 4);
    const double plain = element_cluster_sim(e, cl, sch, params);
    auto all_distinct = [](const std::string&, const std::string&) { return true; };
    const double boosted = element_cluster_sim(e, cl, sch, params, all_distinct);
    CHECK(boosted > plain); // cluster-side .5 -> .75
}

TEST_CASE("shares_primary_dominant_value gates on both-side weight") {
    const auto sch = testutil::listing_schema();
    similarity_params params; // primary threshold .5
    const auto a = make_sig({{"phone", {{"900", 0.8}}}, {"url", {{"tacocasa", 0.6}}}}, 5);
    const auto b = make_sig({{"url", {{"tacocasa", 1.0}}}}, 1);
    CHECK(shares_primary_dominant_value(a, b, sch, params));
    const auto c = make_sig({{"url", {{"tacocasatexas", 1.0}}}, {"phone", {{"701", 0.33}}}}, 3);
    const auto weak = make_sig({{"phone", {{"900", 0.8}}}, {"url", {{"tacocasatexas", 0.2}}}}, 5);
    CHECK_FALSE(shares_primary_dominant_value(weak, c, sch, params));
    params.primary_merge_threshold = 0.0; // disabled gate admits everything
    CHECK(shares_primary_dominant_value(weak, c, sch, params));
}

TEST_SUITE_END();
