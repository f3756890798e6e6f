#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "grouplink/jaro_winkler.hpp"
#include "grouplink/simgraph.hpp"

using namespace grouplink;

namespace {

// (attribute, value) -> sorted record ids, for order-insensitive comparison
std::set<std::pair<std::string, std::vector<std::string>>> clique_fingerprint(const similarity_graph& g) {
    std::set<std::pair<std::string, std::vector<std::string>>> out;
    for (const auto& clique : g.cliques) {
        std::vector<std::string> records;
        for (int node : clique.members)
            records.insert(records.end(), g.nodes[node].records.begin(), g.nodes[node].records.end());
        std::sort(records.begin(), records.end());
        out.insert({clique.attribute + "=" + clique.value, std::move(records)});
    }
    return out;
}

} // namespace

TEST_SUITE_BEGIN("simgraph");

TEST_CASE("name_equivalence groups chained similar names") {
    const auto sch = testutil::listing_schema();
    std::vector<record> recs;
    auto add = [&recs](const std::string& id, const std::string& name) {
        record r;
        r.id = id;
        r.values["name"].insert(name);
        recs.push_back(std::move(r));
    };
    // "home depot, usa" and "home depot usa" clear .95; "home depot, the"
    // and "home depot - tools" do not reach either of them.
    add("a", "home depot, the");
    add("b", "home depot, usa");
    add("c", "home depot usa");
    add("d", "home depot - tools");
    REQUIRE(jaro_winkler("home depot, usa", "home depot usa") >= 0.95);
    REQUIRE(jaro_winkler("home depot, the", "home depot, usa") < 0.95);

    const auto classes = name_equivalence(testutil::record_ptrs(recs), sch, 0.95);
    CHECK(classes[1] == classes[2]);
    CHECK(classes[0] != classes[1]);
    CHECK(classes[0] != classes[3]);
    CHECK(classes[1] != classes[3]);

    // at the .8 blocking level all four variants chain together
    const auto blocks = name_equivalence(testutil::record_ptrs(recs), sch, 0.8);
    CHECK(blocks == std::vector<int>{blocks[0], blocks[0], blocks[0], blocks[0]});
}

TEST_CASE("name_equivalence trivial cases") {
    const auto sch = testutil::listing_schema();
    std::vector<record> recs;
    for (const auto& [id, name] : std::vector<std::pair<std::string, std::string>>{
             {"a", "alpha works"}, {"b", "alpha works"}, {"c", "zeta supply"}, {"d", "omega parts"}}) {
        record r;
        r.id = id;
        r.values["name"].insert(name);
        recs.push_back(std::move(r));
    }
    const auto classes = name_equivalence(testutil::record_ptrs(recs), sch, 0.99);
    CHECK(classes[0] == classes[1]); // identical names merge at any threshold
    CHECK(classes[2] != classes[3]);
    CHECK(classes[0] != classes[2]);
}

TEST_CASE("fixture graph has exactly the five expected v-cliques") {
    const auto data = testutil::load_listings();
    const auto graph = build_graph(testutil::record_ptrs(data), data.schema, 0.95);
    const auto cliques = clique_fingerprint(graph);
    const std::set<std::pair<std::string, std::vector<std::string>>> expected{
        {"phone=808", {"r1", "r2", "r3", "r4", "r5"}},
        {"url=homedepot", {"r3", "r4", "r5", "r6", "r7"}},
        {"url=tacocasa", {"r11", "r12", "r13"}},
        {"phone=900", {"r12", "r13", "r14", "r15"}},
        {"url=tacocasatexas", {"r13", "r16", "r17", "r18"}},
    };
    CHECK(cliques == expected);
    CHECK(graph.consistent());
}

TEST_CASE("no shared dominant values means no cliques") {
    const auto sch = testutil::listing_schema();
    std::vector<record> recs;
    for (int i = 0; i < 4; ++i) {
        record r;
        r.id = "r" + std::to_string(i);
        r.values["name"].insert("same name");
        r.values["phone"].insert("p" + std::to_string(i));
        recs.push_back(std::move(r));
    }
    const auto graph = build_graph(testutil::record_ptrs(recs), sch, 0.95);
    CHECK(graph.cliques.empty());
    CHECK(graph.nodes.empty());
}

TEST_CASE("build_graph is independent of record order") {
    const auto data = testutil::load_listings();
    const auto baseline = clique_fingerprint(build_graph(testutil::record_ptrs(data), data.schema, 0.95));
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        auto shuffled = data;
        std::shuffle(shuffled.records.begin(), shuffled.records.end(), rng);
        const auto graph = build_graph(testutil::record_ptrs(shuffled.records), shuffled.schema, 0.95);
        CHECK(clique_fingerprint(graph) == baseline);
    }
}

TEST_CASE("no stored clique is a subset of another") {
    std::mt19937_64 rng(29);
    const auto sch = testutil::listing_schema();
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<record> recs;
        const int n = 6 + rng() % 6;
        for (int i = 0; i < n; ++i) {
            record r;
            r.id = "r" + std::to_string(i);
            r.values["name"].insert("shared name");
            const int values = 1 + rng() % 3;
            for (int v = 0; v < values; ++v) r.values["phone"].insert("p" + std::to_string(rng() % 5));
            recs.push_back(std::move(r));
        }
        const auto graph = build_graph(testutil::record_ptrs(recs), sch, 0.95);
        CHECK(graph.consistent());
        for (std::size_t i = 0; i < graph.cliques.size(); ++i)
            for (std::size_t j = 0; j < graph.cliques.size(); ++j) {
                if (i == j) continue;
                const auto& small = graph.cliques[i].members;
                const auto& large = graph.cliques[j].members;
                CHECK_FALSE(std::includes(large.begin(), large.end(), small.begin(), small.end()));
            }
    }
}

TEST_CASE("simplify compresses the fixture index to ten entries") {
    const auto data = testutil::load_listings();
    const auto graph = simplify(build_graph(testutil::record_ptrs(data), data.schema, 0.95));
    REQUIRE(graph.nodes.size() == 10);
    std::set<std::string> ids;
    for (const auto& node : graph.nodes) ids.insert(node.id);
    const std::set<std::string> expected{"r1/r2", "r3",  "r4",      "r5",  "r6/r7",
                                         "r11",   "r12", "r13",     "r14/r15", "r16/r17/r18"};
    CHECK(ids == expected);
    CHECK(graph.record_count() == 15); // r8-r10, r19, r20 sit in no clique
    CHECK(graph.consistent());
}

TEST_CASE("simplify leaves multi-clique nodes and lone cliques alone") {
    const auto sch = testutil::listing_schema();
    std::vector<record> recs;
    auto add = [&recs](const std::string& id, const std::string& phone, const std::string& url) {
        record r;
        r.id = id;
        r.values["name"].insert("same");
        if (!phone.empty()) r.values["phone"].insert(phone);
        if (!url.empty()) r.values["url"].insert(url);
        recs.push_back(std::move(r));
    };
    // every node in both cliques: nothing merges
    add("a", "1", "x");
    add("b", "1", "x");
    add("c", "1", "x");
    auto graph = build_graph(testutil::record_ptrs(recs), sch, 0.95);
    // single clique of n nodes (phone=1 and url=x collapse to one maximal clique)
    REQUIRE(graph.cliques.size() == 1);
    const auto simplified = simplify(graph);
    CHECK(simplified.nodes.size() == 1);
    CHECK(simplified.nodes[0].records.size() == 3);
}

TEST_CASE("clique dump is stable and tab-separated") {
    const auto data = testutil::load_listings();
    const auto graph = simplify(build_graph(testutil::record_ptrs(data), data.schema, 0.95));
    const auto dump = dump_cliques(graph);
    CHECK(dump.find("phone=808\tr1,r2,r3,r4,r5\n") != std::string::npos);
    CHECK(dump.find("url=tacocasatexas\tr13,r16,r17,r18\n") != std::string::npos);
    CHECK(dump == dump_cliques(graph));
}

TEST_SUITE_END();
