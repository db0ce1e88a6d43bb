#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include "network.hpp"

using namespace bcn;

namespace {

std::string fx(const char* name) { return std::string(FIXTURE_DIR "/") + name; }

} // namespace

TEST_CASE("fixture networks load with the declared dimensions") {
    Network ex7 = parseNetworkPath(fx("ex7.json"));
    CHECK(ex7.n == 2);
    CHECK(ex7.m == 1);
    CHECK(ex7.d == 1);
    CHECK(ex7.L == LogicalMatrix(4, {1, 2, 3, 4, 1, 2, 3, 3, 3, 4, 1, 3, 4, 4, 2, 3}));
    CHECK_FALSE(ex7.isSubsystemMatrix());
    CHECK(ex7.H == LogicalMatrix(4, {1, 2, 3, 4})); // synthesized substate identity

    Network ex13 = parseNetworkPath(fx("ex13.json"));
    CHECK(ex13.n == 3);
    CHECK(ex13.s == 2);
    CHECK(ex13.L.rows == 4);
    CHECK(ex13.isSubsystemMatrix());

    Network ex12 = parseNetworkPath(fx("ex12.json"));
    CHECK(ex12.order == SignalOrder::UXDF);
    CHECK(ex12.t == 1);
}

TEST_CASE("column indexing covers the tail in declared order") {
    Network ex12 = parseNetworkPath(fx("ex12.json"));
    // u,x,d,f order: consecutive fault values, then disturbance divisions.
    CHECK(ex12.colIndex(1, 1, 1, 1) == 1);
    CHECK(ex12.colIndex(1, 1, 1, 2) == 2);
    CHECK(ex12.colIndex(1, 1, 2, 1) == 3);
    CHECK(ex12.colIndex(1, 2, 1, 1) == 5);
    CHECK(ex12.colIndex(2, 1, 1, 1) == 17);
}

TEST_CASE("subsystem successors on the layered fixture") {
    Network net = parseNetworkPath(fx("ex7.json"));
    CHECK(subsystemSuccessors(net, 1, 1) == std::vector<int>{1, 2});
    CHECK(subsystemSuccessors(net, 1, 2) == std::vector<int>{3, 4});
    CHECK(subsystemSuccessors(net, 2, 1) == std::vector<int>{3, 4});
    CHECK(subsystemSuccessors(net, 2, 2) == std::vector<int>{1, 3});
    CHECK(subsystemSuccessors(net, 3, 2) == std::vector<int>{4});
    CHECK(subsystemSuccessors(net, 4, 1) == std::vector<int>{3});
}

TEST_CASE("output sets partition the state space") {
    Network net = parseNetworkPath(fx("ex5.json"));
    OutputPartition part = outputSets(net);
    REQUIRE(part.sets.size() == 2);
    CHECK(part.sets[0] == std::vector<int>{2, 4}); // H = d2[2 1 2 1]
    CHECK(part.sets[1] == std::vector<int>{1, 3});
}

TEST_CASE("update rules compile to the algebraic form") {
    Network net = parseNetworkPath(fx("toy_rules.json"));
    CHECK(net.n == 2);
    CHECK(net.m == 1);
    // x1' = u1 & (x1 | x2), x2' = !x1 evaluated over all (u, x) columns.
    CHECK(net.L == LogicalMatrix(4, {2, 2, 1, 3, 4, 4, 3, 3}));
}

TEST_CASE("explicit L conflicting with rules is rejected") {
    std::string good = R"({"name":"t","n":1,"m":0,
        "rules":{"state":["!x1"]},
        "L":{"rows":2,"cols":[2,1]}})";
    CHECK_NOTHROW(parseNetworkString(good));
    std::string bad = R"({"name":"t","n":1,"m":0,
        "rules":{"state":["!x1"]},
        "L":{"rows":2,"cols":[1,2]}})";
    try {
        parseNetworkString(bad);
        FAIL("expected a conflict");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ConflictingDefinition);
    }
}

TEST_CASE("output rules synthesize H and reorder output-friendly variables") {
    std::string doc = R"({"name":"t","n":2,"m":0,
        "rules":{"state":["x2","x1"],"output":["x2"]}})";
    Network net = parseNetworkString(doc);
    CHECK(net.s == 1);
    CHECK(net.p == 1);
    // x2 is output-friendly, so it moves to the leading position.
    CHECK(net.statePermutation == std::vector<int>{2, 1});
    // Internal dynamics still swap the two variables.
    CHECK(net.L == LogicalMatrix(4, {1, 3, 2, 4}));
    CHECK(net.H == LogicalMatrix(2, {1, 1, 2, 2}));
}

TEST_CASE("schema validation") {
    CHECK_THROWS_AS(parseNetworkString("{}"), Error);
    CHECK_THROWS_AS(parseNetworkString("not json"), Error);
    // Wrong column count for L.
    CHECK_THROWS_AS(parseNetworkString(R"({"n":2,"L":{"rows":4,"cols":[1,2]}})"), Error);
    // Oversized variable count.
    CHECK_THROWS_AS(parseNetworkString(R"({"n":20,"m":10,"L":{"rows":4,"cols":[1]}})"), Error);
    // s out of range.
    CHECK_THROWS_AS(
        parseNetworkString(R"({"n":2,"s":3,"L":{"rows":4,"cols":[1,1,1,1]}})"), Error);
    // Bad signal order.
    CHECK_THROWS_AS(parseNetworkString(
                        R"({"n":1,"signal_order":["x","u"],"L":{"rows":2,"cols":[1,1]}})"),
                    Error);
}

TEST_CASE("H must be constant on substate blocks") {
    std::string doc = R"({"name":"t","n":2,"s":1,
        "L":{"rows":4,"cols":[1,2,3,4]},
        "H":{"rows":2,"cols":[1,2,1,2]}})";
    CHECK_THROWS_AS(parseNetworkString(doc), Error);
}

TEST_CASE("round trip through writeNetworkFile") {
    Network net = parseNetworkPath(fx("ex5.json"));
    Network again = parseNetworkFile(writeNetworkFile(net));
    CHECK(again.L == net.L);
    CHECK(again.H == net.H);
    CHECK(again.n == net.n);
    CHECK(again.s == net.s);
    CHECK(networkFingerprint(again) == networkFingerprint(net));
}

TEST_CASE("fingerprints distinguish different networks") {
    Network a = parseNetworkPath(fx("ex7.json"));
    Network b = parseNetworkPath(fx("ex8.json"));
    CHECK(networkFingerprint(a) != networkFingerprint(b));
    CHECK(networkFingerprint(a) == networkFingerprint(parseNetworkPath(fx("ex7.json"))));
}
