#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ttc/bench.hpp"

using namespace ttc;
using namespace ttc::bench;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "ttc_bench");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    return cli_main(static_cast<int>(argv.size()), argv.data());
}

}  // namespace

TEST_CASE("workload generation") {
    auto ivs = interval_workload(3, 1);
    CHECK(ivs.size() == 6);
    std::sort(ivs.begin(), ivs.end());
    CHECK(ivs == std::vector<Interval>{{1, 1}, {1, 2}, {1, 3}, {2, 2}, {2, 3}, {3, 3}});
    CHECK(interval_workload(40, 9) == interval_workload(40, 9));
    CHECK(interval_workload(40, 9) != interval_workload(40, 10));
    CHECK(interval_workload(0, 1).empty());

    CHECK(contact_workload(2, 2, 1, 5).size() == 4);
    CHECK(contact_workload(5, 10, 3, 5).size() == 5 * 4 * 8);
    CHECK(contact_workload(1, 10, 1, 5).empty());
    CHECK(contact_workload(3, 10, 1, 5) == contact_workload(3, 10, 1, 5));
}

TEST_CASE("bounded draws stay in range and cover it") {
    std::mt19937_64 rng(1);
    std::vector<int> hits(7);
    for (int k = 0; k < 7000; ++k) {
        const auto r = bounded(rng, 7);
        REQUIRE(r < 7);
        ++hits[r];
    }
    for (int h : hits) CHECK(h > 800);
}

TEST_CASE("runs sample every k-th operation and always the last") {
    Spec spec;
    spec.tau = 20;
    spec.reps = 1;
    spec.sample_every = 8;
    const auto r = run_once(spec, 0);
    CHECK(r.ops == 210);
    REQUIRE(r.samples.size() == 27);
    CHECK(r.samples.back().op_index == 210);
    for (std::size_t k = 1; k < r.samples.size(); ++k) {
        CHECK(r.samples[k].op_index > r.samples[k - 1].op_index);
        CHECK(r.samples[k].cumulative_ns >= r.samples[k - 1].cumulative_ns);
    }
    CHECK(r.final_bytes == r.samples.back().accounted_bytes);
}

TEST_CASE("implementations end with the same structure") {
    for (auto w : {Workload::intervals, Workload::contacts}) {
        Spec spec;
        spec.workload = w;
        spec.tau = w == Workload::intervals ? 8 : 12;
        spec.n = 4;
        std::vector<std::string> dumps;
        for (auto impl : {Impl::compact_dense, Impl::compact_sparse, Impl::bptree}) {
            spec.impl = impl;
            dumps.push_back(run_once(spec, 0).dump);
        }
        CHECK(dumps[0] == dumps[1]);
        CHECK(dumps[0] == dumps[2]);
        CHECK_FALSE(dumps[0].empty());
    }
}

TEST_CASE("compact closure uses less memory than the B+-tree") {
    Spec spec;
    spec.workload = Workload::contacts;
    spec.tau = 1024;
    spec.n = 8;
    spec.sample_every = 1 << 30;
    spec.impl = Impl::compact_dense;
    const auto compact = run_once(spec, 0);
    spec.impl = Impl::bptree;
    const auto tree = run_once(spec, 0);
    CHECK(compact.final_bytes < tree.final_bytes);
}

TEST_CASE("parallel repetitions give the same results as sequential ones") {
    Spec spec;
    spec.tau = 30;
    spec.reps = 4;
    const auto seq = run_all(spec, 1);
    const auto par = run_all(spec, 3);
    REQUIRE(seq.size() == par.size());
    for (std::size_t r = 0; r < seq.size(); ++r) {
        CHECK(seq[r].dump == par[r].dump);
        CHECK(seq[r].final_bytes == par[r].final_bytes);
    }
}

TEST_CASE("command line output files") {
    const auto dir = std::filesystem::temp_directory_path() / "ttc_bench_test";
    std::filesystem::create_directories(dir);
    const auto csv = (dir / "run.csv").string();
    const auto dump = (dir / "run.dump").string();
    REQUIRE(run_cli({"--workload", "contacts", "--tau", "6", "--n", "3", "--reps", "2", "--impl", "compact-sparse",
                     "--out", csv, "--dump", dump}) == 0);
    const auto text = slurp(csv);
    CHECK(text.rfind("rep,op_index,cumulative_ns,accounted_bytes\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 2 * 3 * 2 * 6);
    CHECK(slurp(csv + ".summary.csv").rfind("rep,ops,total_ns,final_bytes\n", 0) == 0);
    CHECK(slurp(csv + ".gp").find("set datafile separator") != std::string::npos);
    CHECK(slurp(dump).find("# rep 1") != std::string::npos);

    REQUIRE(run_cli({"--workload", "intervals", "--tau", "0", "--reps", "1", "--impl", "bptree", "--out", csv}) == 0);
    CHECK(slurp(csv) == "rep,op_index,cumulative_ns,accounted_bytes\n");

    CHECK(run_cli({"--workload", "intervals", "--tau", "4", "--impl", "nope"}) != 0);
    CHECK(run_cli({"--workload", "intervals", "--tau", "4", "--impl", "bptree", "--out",
                   (dir / "missing" / "x.csv").string()}) != 0);
    std::filesystem::remove_all(dir);
}
