#include <doctest.h>

#include "ttc/oracle.hpp"

using namespace ttc;
using Ivs = std::vector<Interval>;

namespace {

// a=0, b=1, c=2, d=3
const std::vector<Contact> kFiveContacts{{0, 1, 1}, {0, 1, 2}, {1, 3, 3}, {2, 0, 4}, {2, 3, 5}};

}  // namespace

TEST_CASE("minimal intervals of the five-contact example") {
    const auto m = oracle::minimal_intervals(kFiveContacts, {4, 0, 1});
    CHECK(m[0][1] == Ivs{{1, 2}, {2, 3}});
    CHECK(m[0][3] == Ivs{{2, 4}});
    CHECK(m[1][3] == Ivs{{3, 4}});
    CHECK(m[2][0] == Ivs{{4, 5}});
    CHECK(m[2][3] == Ivs{{5, 6}});
    std::size_t total = 0;
    for (const auto& row : m)
        for (const auto& cell : row) total += cell.size();
    CHECK(total == 6);
}

TEST_CASE("hand-checked small instances") {
    const auto none = oracle::minimal_intervals({}, {3, 0, 1});
    for (const auto& row : none)
        for (const auto& cell : row) CHECK(cell.empty());

    const auto two = oracle::minimal_intervals({{0, 1, 1}, {0, 1, 3}}, {2, 0, 1});
    CHECK(two[0][1] == Ivs{{1, 2}, {3, 4}});

    // Chain 0 -> 1 -> 2 with latency 2: the second hop must wait.
    const std::vector<Contact> chain{{0, 1, 1}, {1, 2, 2}, {1, 2, 3}};
    const auto m = oracle::minimal_intervals(chain, {3, 0, 2});
    CHECK(m[0][2] == Ivs{{1, 5}});
    CHECK(m[1][2] == Ivs{{2, 4}, {3, 5}});
    CHECK(oracle::can_reach(chain, {3, 0, 2}, 0, 2, 1, 5));
    CHECK_FALSE(oracle::can_reach(chain, {3, 0, 2}, 0, 2, 1, 4));
    CHECK_FALSE(oracle::can_reach(chain, {3, 0, 2}, 0, 2, 2, 10));
}

TEST_CASE("reachability on the five-contact example") {
    const GraphParams p{4, 0, 1};
    CHECK(oracle::can_reach(kFiveContacts, p, 0, 3, 1, 4));
    CHECK_FALSE(oracle::can_reach(kFiveContacts, p, 0, 3, 3, 10));
    CHECK_FALSE(oracle::can_reach(kFiveContacts, p, 3, 0, 1, 10));
    CHECK(oracle::can_reach(kFiveContacts, p, 3, 3, 1, 1));
    CHECK_FALSE(oracle::can_reach(kFiveContacts, p, 3, 3, 2, 1));
}

TEST_CASE("journey checker") {
    const GraphParams p{4, 0, 1};
    Journey good{{{0, 1, 2}, {1, 3, 3}}, 2, 4};
    CHECK(oracle::check_journey(good, kFiveContacts, p, 0, 3, 1, 6).empty());
    CHECK_FALSE(oracle::check_journey(good, kFiveContacts, p, 0, 3, 3, 6).empty());
    CHECK_FALSE(oracle::check_journey(good, kFiveContacts, p, 0, 3, 1, 3).empty());
    CHECK_FALSE(oracle::check_journey(good, kFiveContacts, p, 1, 3, 1, 6).empty());

    Journey too_fast{{{0, 1, 2}, {1, 3, 2}}, 2, 3};
    CHECK_FALSE(oracle::check_journey(too_fast, kFiveContacts, p, 0, 3, 1, 6).empty());
    Journey broken{{{0, 1, 1}, {2, 3, 5}}, 1, 6};
    CHECK_FALSE(oracle::check_journey(broken, kFiveContacts, p, 0, 3, 1, 6).empty());
    Journey made_up{{{0, 3, 1}}, 1, 2};
    CHECK_FALSE(oracle::check_journey(made_up, kFiveContacts, p, 0, 3, 1, 6).empty());
}

TEST_CASE("antichain oracle") {
    oracle::OracleIntervalSet s;
    CHECK(s.insert(2, 6));
    CHECK_FALSE(s.insert(1, 6));
    CHECK(s.insert(1, 5));
    CHECK(s.insert(3, 4));
    CHECK(s.enumerate() == Ivs{{3, 4}});
    CHECK(oracle::minimal_antichain({{1, 9}, {2, 3}, {2, 3}, {4, 8}, {5, 6}}) == Ivs{{2, 3}, {5, 6}});
}

TEST_CASE("flat bits") {
    auto f = oracle::FlatBits::from_string("0110");
    CHECK(f.rank1(100) == 2);
    CHECK(f.select1(2) == 3);
    CHECK_FALSE(f.access(0));
    CHECK_FALSE(f.access(9));
    f.unset_range(1, 2);
    CHECK(f.to_string() == "0000");
    CHECK_THROWS_AS(f.select1(1), contract_violation);
}
