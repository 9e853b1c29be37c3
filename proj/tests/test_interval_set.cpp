#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "ttc/bplus_interval_set.hpp"
#include "ttc/interval_set.hpp"
#include "ttc/oracle.hpp"

using ttc::BitVectorParams;
using ttc::Interval;
using ttc::RemovalStrategy;
using ttc::oracle::OracleIntervalSet;

using Ivs = std::vector<Interval>;

namespace {

constexpr BitVectorParams kTiny{4, 64, 4};

struct DenseSet : ttc::DenseIntervalSet {
    DenseSet() : ttc::DenseIntervalSet(kTiny) {}
};
struct SparseSet : ttc::SparseIntervalSet {
    SparseSet() : ttc::SparseIntervalSet(kTiny) {}
};
struct SparseIterative : ttc::SparseIntervalSet {
    SparseIterative() : ttc::SparseIntervalSet(kTiny, RemovalStrategy::iterative) {}
};
struct DenseUnset : ttc::DenseIntervalSet {
    DenseUnset() : ttc::DenseIntervalSet(kTiny, RemovalStrategy::unset_range) {}
};
using Baseline = ttc::BPlusIntervalSet<>;
using SmallBaseline = ttc::BPlusIntervalSet<ttc::NoPayload, 4>;

bool increasing_antichain(const Ivs& v) {
    for (std::size_t k = 1; k < v.size(); ++k)
        if (!(v[k - 1].departure < v[k].departure && v[k - 1].arrival < v[k].arrival)) return false;
    return true;
}

}  // namespace

#define ALL_SETS ttc::DenseIntervalSet, ttc::SparseIntervalSet, DenseSet, SparseSet, SparseIterative, DenseUnset, \
                 Baseline, SmallBaseline

TEST_CASE_TEMPLATE("two-interval example", Set, ALL_SETS) {
    Set s;
    s.insert(1, 4);
    s.insert(3, 6);
    CHECK(s.enumerate() == Ivs{{1, 4}, {3, 6}});
    CHECK(s.find_prev(5) == Interval{1, 4});
    CHECK(s.find_next(2) == Interval{3, 6});
    CHECK_FALSE(s.find_next(4));
    CHECK_FALSE(s.find_prev(3));

    Set empty;
    CHECK_FALSE(empty.find_prev(10));
    CHECK_FALSE(empty.find_next(1));
    CHECK(empty.enumerate().empty());
}

TEST_CASE_TEMPLATE("four-step insertion script", Set, ALL_SETS) {
    Set s;
    s.insert(2, 6);
    CHECK(s.enumerate() == Ivs{{2, 6}});
    s.insert(1, 6);
    CHECK(s.enumerate() == Ivs{{2, 6}});
    s.insert(1, 5);
    CHECK(s.enumerate() == Ivs{{1, 5}, {2, 6}});
    s.insert(3, 4);
    CHECK(s.enumerate() == Ivs{{3, 4}});
    CHECK(s.audit().empty());
}

TEST_CASE("bit-vector states of the insertion script") {
    ttc::DenseIntervalSet s;
    auto ones = [](const ttc::DenseBitVector& bv) {
        std::vector<std::uint64_t> out;
        for (std::uint64_t j = 1; j <= bv.ones(); ++j) out.push_back(bv.select1(j));
        return out;
    };
    using P = std::vector<std::uint64_t>;
    CHECK(s.insert(2, 6).inserted);
    CHECK(ones(s.departures()) == P{2});
    CHECK(ones(s.arrivals()) == P{6});
    CHECK(s.departures().size() >= 6);
    CHECK_FALSE(s.insert(1, 6).inserted);
    CHECK(ones(s.departures()) == P{2});
    CHECK(ones(s.arrivals()) == P{6});
    const auto third = s.insert(1, 5);
    CHECK(third.index == 0);
    CHECK(third.removed == 0);
    CHECK(ones(s.departures()) == P{1, 2});
    CHECK(ones(s.arrivals()) == P{5, 6});
    const auto fourth = s.insert(3, 4);
    CHECK(fourth.index == 0);
    CHECK(fourth.removed == 2);
    CHECK(ones(s.departures()) == P{3});
    CHECK(ones(s.arrivals()) == P{4});
}

TEST_CASE_TEMPLATE("insert preconditions", Set, ttc::DenseIntervalSet, ttc::SparseIntervalSet, Baseline) {
    Set s;
    CHECK_THROWS_AS(s.insert(0, 3), ttc::contract_violation);
    CHECK_THROWS_AS(s.insert(5, 4), ttc::contract_violation);
}

TEST_CASE_TEMPLATE("idempotence and order insensitivity", Set, ALL_SETS) {
    std::mt19937_64 rng(31);
    for (int round = 0; round < 30; ++round) {
        Ivs input;
        for (int k = 0; k < 60; ++k) {
            const auto a = 1 + static_cast<ttc::Time>(rng() % 100);
            input.push_back({a, a + static_cast<ttc::Time>(rng() % 20)});
        }
        Set first;
        for (const auto& iv : input) first.insert(iv.departure, iv.arrival);
        const auto ref = first.enumerate();
        CHECK(increasing_antichain(ref));
        for (const auto& iv : ref) first.insert(iv.departure, iv.arrival);
        CHECK(first.enumerate() == ref);

        std::shuffle(input.begin(), input.end(), rng);
        Set second;
        for (const auto& iv : input) second.insert(iv.departure, iv.arrival);
        CHECK(second.enumerate() == ref);
    }
}

TEST_CASE_TEMPLATE("random operations against the sorted-list oracle", Set, ALL_SETS) {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        std::mt19937_64 rng(seed);
        const ttc::Time tau = 1 << (6 + seed);
        Set s;
        OracleIntervalSet ref;
        for (int op = 0; op < 6000; ++op) {
            const auto t = 1 + static_cast<ttc::Time>(rng() % tau);
            switch (rng() % 3) {
                case 0: {
                    const auto t2 = t + static_cast<ttc::Time>(rng() % std::min<ttc::Time>(tau - t + 1, 40));
                    s.insert(t, t2);
                    ref.insert(t, t2);
                    break;
                }
                case 1: REQUIRE(s.find_prev(t) == ref.find_prev(t)); break;
                default: REQUIRE(s.find_next(t) == ref.find_next(t)); break;
            }
            if (op % 500 == 0) {
                const auto problems = s.audit();
                const std::string first = problems.empty() ? std::string() : problems.front();
                INFO(first);
                REQUIRE(problems.empty());
                REQUIRE(s.enumerate() == ref.enumerate());
            }
        }
        REQUIRE(s.audit().empty());
        CHECK(s.enumerate() == ref.enumerate());
        CHECK(s.size() <= tau);
    }
}

TEST_CASE("find_prev and find_next bracket the query time") {
    std::mt19937_64 rng(8);
    ttc::SparseIntervalSet s;
    for (int k = 0; k < 400; ++k) {
        const auto a = 1 + static_cast<ttc::Time>(rng() % 1000);
        s.insert(a, a + static_cast<ttc::Time>(rng() % 30));
    }
    const auto all = s.enumerate();
    for (ttc::Time t = 1; t <= 1040; ++t) {
        if (const auto p = s.locate_prev(t)) {
            CHECK(p->interval.arrival <= t);
            if (p->index + 1 < all.size()) CHECK(all[p->index + 1].arrival > t);
            CHECK(all[p->index] == p->interval);
        }
        if (const auto n = s.locate_next(t)) {
            CHECK(n->interval.departure >= t);
            if (n->index > 0) CHECK(all[n->index - 1].departure < t);
        }
    }
}

TEST_CASE("dense, sparse and baseline sets agree step by step") {
    std::mt19937_64 rng(77);
    ttc::DenseIntervalSet dense;
    ttc::SparseIntervalSet sparse;
    Baseline tree;
    for (int op = 0; op < 20000; ++op) {
        const auto t1 = 1 + static_cast<ttc::Time>(rng() % 2048);
        const auto t2 = t1 + static_cast<ttc::Time>(rng() % 64);
        const auto a = dense.insert(t1, t2);
        const auto b = sparse.insert(t1, t2);
        const bool c = tree.insert(t1, t2);
        REQUIRE(a.inserted == b.inserted);
        REQUIRE(a.inserted == c);
        REQUIRE(a.index == b.index);
        REQUIRE(a.removed == b.removed);
        const auto q = 1 + static_cast<ttc::Time>(rng() % 2200);
        REQUIRE(dense.find_prev(q) == tree.find_prev(q));
        REQUIRE(sparse.find_next(q) == tree.find_next(q));
    }
    CHECK(dense.enumerate() == tree.enumerate());
    CHECK(sparse.enumerate() == tree.enumerate());
}

TEST_CASE("sets stay small until large timestamps arrive") {
    ttc::DenseIntervalSet s;
    s.insert(3, 5);
    CHECK(s.departures().size() == 64);
    CHECK(s.arrivals().size() == 64);
    s.insert(100, 1000);
    CHECK(s.arrivals().size() == 1024);
    CHECK(s.departures().size() == 128);
}

TEST_CASE("baseline tree shape under growth and shrinkage") {
    SmallBaseline tree;
    for (ttc::Time t = 1; t <= 3000; ++t) tree.insert(2 * t, 2 * t + 1);
    CHECK(tree.size() == 3000);
    CHECK(tree.height() > 4);
    CHECK(tree.audit().empty());
    // Each singleton removes exactly the interval around it.
    for (ttc::Time t = 3000; t >= 1; --t) {
        tree.insert(2 * t, 2 * t);
        if (t % 250 == 0) REQUIRE(tree.audit().empty());
    }
    CHECK(tree.size() == 3000);
    // One wide insertion cannot remove anything; one narrow one removes all
    // but the covered singletons.
    CHECK_FALSE(tree.insert(1, 10000));
    SmallBaseline wide;
    for (ttc::Time t = 1; t <= 500; ++t) wide.insert(t, t + 1000);
    wide.insert(600, 600);
    CHECK(wide.enumerate() == Ivs{{600, 600}});
    CHECK(wide.audit().empty());

    SmallBaseline copy = tree;
    CHECK(copy.enumerate() == tree.enumerate());
    CHECK(copy.memory_bytes() > 0);
}
