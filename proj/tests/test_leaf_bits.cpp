#include <doctest.h>

#include <random>
#include <string>

#include "ttc/leaf_bits.hpp"

using ttc::DenseLeaf;
using ttc::SparseLeaf;

namespace {

std::string random_bits(std::mt19937_64& rng, std::size_t n, double density) {
    std::bernoulli_distribution coin(density);
    std::string s(n, '0');
    for (auto& c : s) c = coin(rng) ? '1' : '0';
    return s;
}

std::size_t count_ones(const std::string& s, std::size_t n) {
    std::size_t r = 0;
    for (std::size_t k = 0; k < n; ++k) r += s[k] == '1';
    return r;
}

}  // namespace

TEST_CASE_TEMPLATE("leaf queries on small examples", Leaf, DenseLeaf, SparseLeaf) {
    CHECK(Leaf::from_string("1000").access(0));
    CHECK(Leaf::from_string("1010").rank(4) == 2);
    CHECK(Leaf::from_string("0100").select(1) == 1);
    CHECK(Leaf::from_string("0001").select(1) == 3);

    const auto zeros = Leaf::zeros(100);
    for (std::uint64_t i = 0; i < 100; ++i) CHECK_FALSE(zeros.access(i));
    CHECK(zeros.rank(0) == 0);
    CHECK(zeros.rank(100) == 0);
}

TEST_CASE_TEMPLATE("leaf preconditions", Leaf, DenseLeaf, SparseLeaf) {
    auto leaf = Leaf::from_string("0110");
    CHECK_THROWS_AS(leaf.access(4), ttc::contract_violation);
    CHECK_THROWS_AS(leaf.rank(5), ttc::contract_violation);
    CHECK_THROWS_AS(leaf.select(0), ttc::contract_violation);
    CHECK_THROWS_AS(leaf.select(3), ttc::contract_violation);
    CHECK_THROWS_AS(leaf.set(4, true), ttc::contract_violation);
    CHECK_THROWS_AS(leaf.insert(5, 0, 1), ttc::contract_violation);
    CHECK_THROWS_AS(leaf.remove(4), ttc::contract_violation);
}

TEST_CASE_TEMPLATE("leaf updates", Leaf, DenseLeaf, SparseLeaf) {
    auto leaf = Leaf::from_string("0000");
    CHECK(leaf.set(1, true) == 1);
    CHECK(leaf.to_string() == "0100");
    CHECK(leaf.set(1, true) == 0);
    CHECK(leaf.set(1, false) == -1);
    CHECK(leaf.to_string() == "0000");

    auto two = Leaf::from_string("10");
    two.insert(2, 0, 1);
    CHECK(two.to_string() == "100");
    two.insert(1, 0b101, 3);
    CHECK(two.to_string() == "110100");
    CHECK(two.remove(0));
    CHECK(two.to_string() == "10100");
    CHECK(two.check().empty());
}

TEST_CASE("sparse leaf gap layout") {
    auto leaf = SparseLeaf::from_string("0011000");
    CHECK(leaf.gaps() == std::vector<std::uint64_t>{2, 1});
    CHECK(leaf.access(2));
    CHECK(leaf.access(3));
    CHECK_FALSE(leaf.access(6));
    CHECK(leaf.size() == 7);

    // A zero word at the end only extends the length.
    const auto before = leaf.gaps();
    leaf.insert(leaf.size(), 0, 64);
    CHECK(leaf.size() == 71);
    CHECK(leaf.gaps() == before);

    // Setting a bit between two ones re-splits the gap.
    auto mid = SparseLeaf::from_string("1000010");
    mid.set(3, true);
    CHECK(mid.gaps() == std::vector<std::uint64_t>{0, 3, 2});
    CHECK(mid.check().empty());
}

TEST_CASE("full dense leaf overflows by one bit and splits evenly") {
    ttc::BitVectorParams p;
    auto leaf = DenseLeaf::zeros(p.leaf_bits);
    CHECK_FALSE(leaf.overflows(p));
    leaf.insert(0, 1, 1);
    CHECK(leaf.overflows(p));

    auto full = DenseLeaf::zeros(4096);
    auto right = full.split_half();
    CHECK(full.size() == 2048);
    CHECK(right.size() == 2048);
}

TEST_CASE("sparse leaf at capacity splits by ones") {
    ttc::BitVectorParams p;
    std::mt19937_64 rng(7);
    std::string bits(1000, '0');
    std::uniform_int_distribution<std::size_t> pos(0, bits.size() - 1);
    for (std::size_t placed = 0; placed < p.sparse_ones + 1;) {
        auto& c = bits[pos(rng)];
        if (c == '0') {
            c = '1';
            ++placed;
        }
    }
    auto leaf = SparseLeaf::from_string(bits);
    CHECK(leaf.overflows(p));
    auto right = leaf.split_half();
    CHECK(leaf.ones() == (p.sparse_ones + 2) / 2);
    CHECK(right.ones() == (p.sparse_ones + 1) / 2);
    CHECK(leaf.to_string() + right.to_string() == bits);

    auto exact = SparseLeaf::from_string(std::string(p.sparse_ones, '1'));
    auto other = exact.split_half();
    CHECK(exact.ones() == (p.sparse_ones + 1) / 2);
    CHECK(other.ones() == p.sparse_ones / 2);
}

TEST_CASE_TEMPLATE("leaf queries against a scan", Leaf, DenseLeaf, SparseLeaf) {
    std::mt19937_64 rng(42);
    for (double density : {0.02, 0.5, 0.97}) {
        const auto bits = random_bits(rng, 4096, density);
        const auto leaf = Leaf::from_string(bits);
        REQUIRE(leaf.check().empty());
        CHECK(leaf.ones() == count_ones(bits, bits.size()));
        std::uniform_int_distribution<std::size_t> pick(0, bits.size());
        for (int q = 0; q < 300; ++q) {
            const auto i = pick(rng);
            CHECK(leaf.rank(i) == count_ones(bits, i));
            if (i < bits.size()) {
                CHECK(leaf.access(i) == (bits[i] == '1'));
                CHECK(leaf.rank(i + 1) - leaf.rank(i) == (leaf.access(i) ? 1u : 0u));
            }
            const auto r = leaf.rank(i);
            if (r >= 1) CHECK(leaf.select(r) < i);
        }
        for (std::uint64_t j = 1; j <= leaf.ones(); ++j) {
            const auto p = leaf.select(j);
            CHECK(bits[p] == '1');
            CHECK(count_ones(bits, p) == j - 1);
        }
    }
}

TEST_CASE("dense and sparse leaves agree under random edits") {
    std::mt19937_64 rng(3);
    for (int round = 0; round < 20; ++round) {
        auto bits = random_bits(rng, 200, 0.1);
        auto dense = DenseLeaf::from_string(bits);
        auto sparse = SparseLeaf::from_string(bits);
        for (int step = 0; step < 200; ++step) {
            const int kind = static_cast<int>(rng() % 4);
            if (kind == 0 && !bits.empty()) {
                const auto i = rng() % bits.size();
                const bool b = rng() % 2;
                CHECK(dense.set(i, b) == sparse.set(i, b));
                bits[i] = b ? '1' : '0';
            } else if (kind == 1) {
                const auto i = rng() % (bits.size() + 1);
                const unsigned n = 1 + static_cast<unsigned>(rng() % 64);
                const std::uint64_t w = rng() & rng() & rng();
                dense.insert(i, w, n);
                sparse.insert(i, w, n);
                std::string run;
                for (unsigned k = 0; k < n; ++k) run.push_back((w >> k) & 1 ? '1' : '0');
                bits.insert(i, run);
            } else if (kind == 2 && !bits.empty()) {
                const auto i = rng() % bits.size();
                CHECK(dense.remove(i) == sparse.remove(i));
                bits.erase(i, 1);
            } else if (!bits.empty()) {
                const auto i = rng() % (bits.size() + 1);
                CHECK(dense.rank(i) == sparse.rank(i));
                if (dense.ones() > 0) {
                    const auto j = 1 + rng() % dense.ones();
                    CHECK(dense.select(j) == sparse.select(j));
                }
            }
        }
        CHECK(dense.to_string() == bits);
        CHECK(sparse.to_string() == bits);
        CHECK(dense.check().empty());
        CHECK(sparse.check().empty());
    }
}

TEST_CASE_TEMPLATE("split then append is the identity", Leaf, DenseLeaf, SparseLeaf) {
    std::mt19937_64 rng(11);
    for (int round = 0; round < 50; ++round) {
        const auto bits = random_bits(rng, 1 + rng() % 3000, 0.3);
        auto left = Leaf::from_string(bits);
        auto right = left.split_off(rng() % (bits.size() + 1));
        CHECK(left.to_string() + right.to_string() == bits);
        left.append(right);
        CHECK(left.to_string() == bits);
        CHECK(left.check().empty());

        auto whole = Leaf::from_string(bits);
        auto half = whole.split_half();
        CHECK(whole.to_string() + half.to_string() == bits);
    }
}
