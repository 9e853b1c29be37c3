#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <utility>
#include <string>
#include <vector>

#include "ttc/interval.hpp"
#include "ttc/temporal.hpp"

namespace ttc::bench {

enum class Workload { intervals, contacts };
enum class Impl { compact_dense, compact_sparse, bptree };

struct Spec {
    Workload workload = Workload::intervals;
    Time tau = 0;
    Vertex n = 32;
    Time delta = 1;
    std::uint64_t seed = 1;
    unsigned reps = 10;
    Impl impl = Impl::compact_dense;
    std::uint64_t sample_every = 1;
};

struct Sample {
    std::uint64_t op_index = 0;
    std::uint64_t cumulative_ns = 0;
    std::uint64_t accounted_bytes = 0;
};

struct RunResult {
    std::vector<Sample> samples;
    std::uint64_t ops = 0;
    std::uint64_t total_ns = 0;
    std::uint64_t final_bytes = 0;
    /// Text rendering of the final structure; timing-free.
    std::string dump;
};

/// Uniform draw in [0, bound) that does not depend on the standard library's
/// distribution implementation.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound);

/// In-place Fisher-Yates shuffle seeded by `seed`.
template <class T>
void shuffle(std::vector<T>& items, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (std::size_t i = items.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(bounded(rng, i));
        std::swap(items[i - 1], items[j]);
    }
}

/// Every [t1, t2] with 1 <= t1 <= t2 <= tau, in seeded random order.
std::vector<Interval> interval_workload(Time tau, std::uint64_t seed);

/// Every contact (u, v, t) with u != v whose arrival fits [1, tau + 1], in
/// seeded random order.
std::vector<Contact> contact_workload(Vertex n, Time tau, Time delta, std::uint64_t seed);

/// One repetition; rep r shuffles with seed + r.
RunResult run_once(const Spec& spec, unsigned rep);

/// All repetitions, in parallel up to `threads` at a time.
std::vector<RunResult> run_all(const Spec& spec, unsigned threads);

void write_csv(std::ostream& os, const std::vector<RunResult>& runs);
void write_summary(std::ostream& os, const std::vector<RunResult>& runs);
void write_gnuplot(std::ostream& os, const std::string& csv_path, const Spec& spec);

const char* to_string(Impl impl);
const char* to_string(Workload w);

/// Entry point of the ttc_bench tool; returns the process exit code.
int cli_main(int argc, char** argv);

}  // namespace ttc::bench
